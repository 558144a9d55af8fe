#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nhgalois/nhgalois.h"

namespace {

struct Options {
  std::string input;
  std::string output;
  std::optional<int> order;
  std::optional<std::string> base_point;
  std::optional<double> rtol;
  std::optional<double> tolerance;
  std::optional<int> word_length;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  bool no_timing = false;
  bool compact = false;
};

using ProblemPtr = std::unique_ptr<nhg_problem, decltype(&nhg_problem_free)>;
using ReportPtr = std::unique_ptr<nhg_report, decltype(&nhg_report_free)>;

bool parse_complex(const std::string& text, double& re, double& im) {
  std::istringstream in(text);
  char comma = 0;
  if (!(in >> re)) return false;
  if (!(in >> comma)) {
    im = 0.0;
    return true;
  }
  return comma == ',' && static_cast<bool>(in >> im) && (in >> std::ws).eof();
}

int emit(nhg_report* report, const Options& o) {
  const char* text = nhg_report_json(report, o.compact ? -1 : 2, o.no_timing ? 0 : 1);
  if (o.output.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream out(o.output, std::ios::binary);
    out << text << '\n';
    if (!out) {
      std::cerr << "nhgalois: cannot write '" << o.output << "'\n";
      return 2;
    }
  }
  return nhg_report_exit_code(report);
}

int fail_early(const std::string& command, const Options& o) {
  std::cerr << "nhgalois: " << nhg_last_error();
  if (*nhg_last_error_field()) std::cerr << " [" << nhg_last_error_field() << "]";
  if (nhg_last_error_position() >= 0) std::cerr << " at position " << nhg_last_error_position();
  std::cerr << '\n';
  nhg_report* raw = nullptr;
  if (nhg_error_report(command.c_str(), &raw) != NHG_OK) return 2;
  ReportPtr report(raw, nhg_report_free);
  emit(report.get(), o);
  return 2;
}

int execute(const std::string& command, const Options& o) {
  nhg_problem* raw = nullptr;
  if (nhg_problem_load(o.input.c_str(), &raw) != NHG_OK) return fail_early(command, o);
  ProblemPtr problem(raw, nhg_problem_free);

  nhg_status s = NHG_OK;
  if (o.order && s == NHG_OK) s = nhg_problem_set_order(problem.get(), *o.order);
  if (o.base_point && s == NHG_OK) {
    double re = 0.0, im = 0.0;
    if (!parse_complex(*o.base_point, re, im)) {
      std::cerr << "nhgalois: --base-point expects RE,IM\n";
      return 2;
    }
    s = nhg_problem_set_base_point(problem.get(), re, im);
  }
  if (o.rtol && s == NHG_OK) s = nhg_problem_set_rtol(problem.get(), *o.rtol);
  if (o.tolerance && s == NHG_OK) s = nhg_problem_set_tolerance(problem.get(), *o.tolerance);
  if (o.word_length && s == NHG_OK) s = nhg_problem_set_word_length(problem.get(), *o.word_length);
  if (o.samples && s == NHG_OK) s = nhg_problem_set_samples(problem.get(), *o.samples);
  if (o.seed && s == NHG_OK) s = nhg_problem_set_seed(problem.get(), *o.seed);
  if (s != NHG_OK) return fail_early(command, o);

  nhg_report* rep = nullptr;
  if (nhg_run(problem.get(), command.c_str(), &rep) != NHG_OK) return fail_early(command, o);
  ReportPtr report(rep, nhg_report_free);
  const int code = emit(report.get(), o);
  if (code == 2 && std::string(nhg_report_status(report.get())) == "error") {
    std::cerr << "nhgalois: " << command << " stopped with an error (see the report's error field)\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cotangent-lift integrability and variational-equation monodromy toolkit", "nhgalois"};
  app.set_version_flag("--version", std::string("nhgalois ") + nhg_version());
  app.require_subcommand(1);

  Options o;
  const char* commands[][2] = {
      {"lift", "print the cotangent lift and its fiber Hamiltonian"},
      {"certify", "verify an integrability certificate and its lifted Liouville certificate"},
      {"ve", "build the first-order and the order-n dual variational equations"},
      {"monodromy", "locate singularities and compute monodromy generators"},
      {"analyze", "run every stage and report abelianity verdicts"},
      {"lift-compare", "compare the variational equations of a field and of its cotangent lift"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--input,-i", o.input, "problem definition (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--order,-n", o.order, "variational order");
    sub->add_option("--base-point", o.base_point, "base point RE,IM");
    sub->add_option("--rtol", o.rtol, "integrator relative tolerance");
    sub->add_option("--tolerance", o.tolerance, "abelianity tolerance");
    sub->add_option("--word-length", o.word_length, "maximal word length");
    sub->add_option("--samples", o.samples, "random sample points for rank checks");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--output,-o", o.output, "write the report to this file");
    sub->add_flag("--no-timing", o.no_timing, "omit the timing field");
    sub->add_flag("--compact", o.compact, "single-line JSON");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (const CLI::App* sub : app.get_subcommands()) return execute(sub->get_name(), o);
  return 2;
}
