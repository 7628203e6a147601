// Command-line driver: `ioident analyze` and `ioident extend`.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ioident/ioident.h"

namespace {

int report_error(ioident_status st, const std::string& where, const std::string& msg = ioident_last_error()) {
  std::cerr << "ioident: ";
  if (st == IOIDENT_ERR_PARSE) std::cerr << where << ": ";
  std::cerr << msg << "\n";
  return static_cast<int>(st);
}

int print_and_free(char* s) {
  std::fputs(s, stdout);
  ioident_string_free(s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Input-output equations and identifiable functions of rational ODE models"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "text";
  ioident_options opts;
  ioident_options_init(&opts);
  std::uint64_t seed = 0;
  int depth = -1;
  int series_order = 0;
  int trials = 5;
  int fi_degree = 3;
  std::vector<std::string> checks;

  auto* analyze = app.add_subcommand("analyze", "Compute IO equations, identifiable fields and certificates");
  analyze->add_option("file", file, "Model file")->required();
  analyze->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  analyze->add_option("--seed", seed, "Master seed for sampling");
  analyze->add_option("--depth", depth, "Maximal prolongation depth (default: number of states)")
      ->check(CLI::NonNegativeNumber);
  analyze->add_option("--series-order", series_order, "Series truncation order (default: automatic)")
      ->check(CLI::NonNegativeNumber);
  analyze->add_option("--trials", trials, "Sample points per membership test")->check(CLI::PositiveNumber);
  analyze->add_option("--first-integral-degree", fi_degree, "Degree bound for polynomial first integrals")
      ->check(CLI::NonNegativeNumber);
  analyze->add_option("--check-function", checks, "Function of the parameters to test for IO-identifiability");

  std::string ext_file, function;
  auto* extend = app.add_subcommand("extend", "Print the model extended by a state tracking a function");
  extend->add_option("file", ext_file, "Model file")->required();
  extend->add_option("--function", function, "Function of states and parameters")->required();

  CLI11_PARSE(app, argc, argv);

  const std::string& path = analyze->parsed() ? file : ext_file;
  ioident_model* model = nullptr;
  if (ioident_status st = ioident_model_load(path.c_str(), &model); st != IOIDENT_OK) return report_error(st, path);

  int code = 0;
  if (analyze->parsed()) {
    opts.seed = seed;
    opts.depth = depth;
    opts.series_order = series_order;
    opts.trials = trials;
    opts.first_integral_degree = fi_degree;
    std::vector<const char*> cs;
    for (const auto& c : checks) cs.push_back(c.c_str());
    ioident_report* rep = nullptr;
    ioident_status st = ioident_analyze(model, &opts, cs.data(), cs.size(), &rep);
    std::string msg = ioident_last_error();
    if (rep) {
      char* out = nullptr;
      ioident_report_render(rep, format == "json" ? IOIDENT_FORMAT_JSON : IOIDENT_FORMAT_TEXT, &out);
      if (out) print_and_free(out);
      ioident_report_free(rep);
    }
    if (st != IOIDENT_OK) code = report_error(st, "--check-function", msg);
  } else {
    ioident_model* ext = nullptr;
    ioident_status st = ioident_model_extend(model, function.c_str(), &ext);
    if (st == IOIDENT_OK) {
      char* out = nullptr;
      ioident_model_denominator(model, &out);
      std::string q = out ? out : "1";
      ioident_string_free(out);
      if (q != "1") std::cout << "# the new state equation is divided by the common denominator Q = " << q << "\n";
      ioident_model_to_string(ext, &out);
      print_and_free(out);
      ioident_model_free(ext);
    } else {
      code = report_error(st, "--function");
    }
  }
  ioident_model_free(model);
  return code;
}
