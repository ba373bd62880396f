// lmnc — exact-arithmetic verification CLI.
//
// Subcommands compute character sums, quadric point counts, special-fiber
// enumerations, spectral-page reductions, and point-count consistency
// checks, and emit a structured pass/fail report (json, csv, or text).
//
// Exit codes: 0 all checks passed, 1 a check failed or an internal
// consistency assertion tripped, 2 invalid input, 3 a scale guard refused
// the requested size.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lmnc/commands.hpp"

namespace {

std::string default_extension(const std::string& format) {
  if (format == "json") return ".json";
  if (format == "csv") return ".csv";
  return ".txt";
}

void write_report(const lmnc::CheckReport& report, const std::string& format,
                  std::string out_path, const std::string& stem) {
  const std::string text = lmnc::format_report(report, format);
  std::cout << text;
  if (out_path.empty()) {
    if (const char* dir = std::getenv("LMNC_OUT_DIR"))
      out_path = std::string(dir) + "/" + stem + default_extension(format);
  }
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "error: cannot open " << out_path << " for writing\n";
      std::exit(2);
    }
    f << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact-arithmetic verification of character sums, quadric point "
      "counts, special-fiber moduli, and nearby-cycle weights"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string out_path;
  lmnc::RunConfig cfg;
  std::string suite = "all";

  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", out_path, "also write the report to this file");
  app.add_option("--jobs", cfg.jobs, "worker threads for check batches")
      ->check(CLI::PositiveNumber);

  auto add_field_opts = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "odd prime residue characteristic")
        ->required();
    sub->add_option("--k", cfg.k, "field extension degree (q = p^k)");
  };
  auto add_form_opts = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "rank of the diagonal form")->required();
    sub->add_option("--form", cfg.form,
                    "split | nonsplit | comma-separated diagonal entries");
  };

  CLI::App* jac = app.add_subcommand(
      "jacobi", "character-sum values against the closed form");
  jac->fallthrough();
  add_field_opts(jac);
  jac->add_option("--m", cfg.m, "sum index (1..4); omit to run all");

  CLI::App* quad = app.add_subcommand(
      "quadric", "projective quadric point counts and classification");
  quad->fallthrough();
  add_field_opts(quad);
  add_form_opts(quad);

  CLI::App* lm = app.add_subcommand(
      "localmodel", "special-fiber and resolution enumeration");
  lm->fallthrough();
  add_field_opts(lm);
  add_form_opts(lm);

  CLI::App* nc = app.add_subcommand(
      "nearby-cycles", "stalk tables, spectral pages, point-count checks");
  nc->fallthrough();
  add_field_opts(nc);
  add_form_opts(nc);

  CLI::App* ver = app.add_subcommand("verify", "run a full check battery");
  ver->fallthrough();
  ver->add_option("--suite", suite,
                  "jacobi | quadric | localmodel | spectral | stalks | "
                  "lefschetz | all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    lmnc::CheckReport report;
    std::string stem;
    if (jac->parsed()) {
      report = lmnc::cmd_jacobi(cfg);
      stem = "jacobi";
    } else if (quad->parsed()) {
      report = lmnc::cmd_quadric(cfg);
      stem = "quadric";
    } else if (lm->parsed()) {
      report = lmnc::cmd_localmodel(cfg);
      stem = "localmodel";
    } else if (nc->parsed()) {
      report = lmnc::cmd_nearby_cycles(cfg);
      stem = "nearby-cycles";
    } else {
      report = lmnc::cmd_verify(cfg, suite);
      stem = "verify-" + suite;
    }
    write_report(report, format, out_path, stem);
    return report.pass() ? 0 : 1;
  } catch (const lmnc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lmnc::exit_code_for(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
