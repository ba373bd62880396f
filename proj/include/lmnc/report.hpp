#pragma once

// Check reports: the uniform result format shared by all CLI commands.
// A report is a named list of checks, each carrying the independently
// predicted value, the computed value, and a provenance note saying where
// the prediction came from.  Serialisable as JSON (stable key order),
// flattened CSV, or aligned text.

#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <atomic>

#include "json.hpp"
#include "lmnc/errors.hpp"

namespace lmnc {

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  std::string provenance;
  bool pass = false;
  long long millis = 0;
};

struct CheckReport {
  std::string command;
  std::map<std::string, std::string> params;
  std::vector<Check> checks;
  nlohmann::json data;  // optional command-specific payload

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// A check whose value is still to be computed.  `compute` returns the
// actual value; the check passes when it equals `expected`, unless the
// computation overrides the verdict (used for tolerated known mismatches).
struct CheckOutcome {
  std::string actual;
  std::optional<bool> pass;
};

struct PendingCheck {
  std::string name;
  std::string expected;
  std::string provenance;
  std::function<CheckOutcome()> compute;
};

// Runs checks with the requested parallelism; result order always matches
// input order, and the first failure (by input order) is rethrown if a
// computation throws.
inline std::vector<Check> run_checks(const std::vector<PendingCheck>& pending,
                                     int jobs) {
  require(jobs >= 1, ErrorCode::bad_argument, "jobs must be at least 1");
  std::vector<Check> out(pending.size());
  std::vector<std::exception_ptr> errors(pending.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i = next.fetch_add(1); i < pending.size();
         i = next.fetch_add(1)) {
      const auto& p = pending[i];
      Check c{p.name, p.expected, "", p.provenance, false, 0};
      const auto t0 = std::chrono::steady_clock::now();
      try {
        CheckOutcome r = p.compute();
        c.actual = std::move(r.actual);
        c.pass = r.pass.value_or(c.actual == c.expected);
      } catch (...) {
        errors[i] = std::current_exception();
      }
      c.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
      out[i] = std::move(c);
    }
  };
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"expected", c.expected},
                      {"actual", c.actual},
                      {"provenance", c.provenance},
                      {"pass", c.pass},
                      {"millis", c.millis}});
  nlohmann::json j{{"command", r.command},
                   {"params", r.params},
                   {"checks", checks},
                   {"pass", r.pass()}};
  if (!r.data.is_null()) j["data"] = r.data;
  return j;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline std::string to_csv(const CheckReport& r) {
  std::ostringstream os;
  os << "command,check,expected,actual,provenance,pass,millis\n";
  for (const auto& c : r.checks)
    os << csv_escape(r.command) << ',' << csv_escape(c.name) << ','
       << csv_escape(c.expected) << ',' << csv_escape(c.actual) << ','
       << csv_escape(c.provenance) << ',' << (c.pass ? "true" : "false")
       << ',' << c.millis << "\n";
  return os.str();
}

inline std::string to_text(const CheckReport& r) {
  std::ostringstream os;
  os << r.command;
  if (!r.params.empty()) {
    os << " (";
    bool first = true;
    for (const auto& [k, v] : r.params) {
      if (!first) os << ", ";
      os << k << "=" << v;
      first = false;
    }
    os << ")";
  }
  os << "\n";
  size_t width = 4;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  for (const auto& c : r.checks) {
    os << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.name
       << std::string(width - c.name.size() + 2, ' ') << "expected "
       << c.expected << ", got " << c.actual << "  [" << c.provenance
       << "]\n";
  }
  os << (r.pass() ? "all checks passed" : "CHECKS FAILED") << "\n";
  return os.str();
}

}  // namespace lmnc
