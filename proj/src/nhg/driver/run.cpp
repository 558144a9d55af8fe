#include "nhg/driver/run.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <memory>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "nhg/variational/lift_compare.hpp"

#ifndef NHG_VERSION
#define NHG_VERSION "0.0.0"
#endif

namespace nhg {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

/// Level from NHGALOIS_LOG (trace, debug, info, warn, error, off; default warn).
spdlog::logger& log() {
  static const std::shared_ptr<spdlog::logger> logger = [] {
    auto l = std::make_shared<spdlog::logger>(kToolName, std::make_shared<spdlog::sinks::stderr_sink_mt>());
    l->set_pattern("[%l] %v");
    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char* env = std::getenv("NHGALOIS_LOG")) level = spdlog::level::from_str(env);
    l->set_level(level);
    return l;
  }();
  return *logger;
}

constexpr const char* kCaveat =
    "abelianity verdicts test a monodromy-level necessary condition; they do not decide integrability";

json matrix_to_json(const MatrixC& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json identity_to_json(const IdentityCheck& c) {
  json j = {{"kind", c.kind}, {"i", c.i}, {"j", c.j}};
  j["verdict"] = c.verdict ? json(verdict_name(*c.verdict)) : json(nullptr);
  if (!c.residual.empty()) j["residual"] = c.residual;
  if (!c.error.empty()) j["error"] = c.error;
  return j;
}

json certificate_to_json(const CertificateReport& r) {
  json ids = json::array();
  for (const auto& c : r.identities) ids.push_back(identity_to_json(c));
  json ind = json::array();
  for (const auto& c : r.independence) {
    ind.push_back({{"kind", c.kind},
                   {"expected_rank", c.expected_rank},
                   {"ranks", c.ranks},
                   {"best_rank", c.best_rank},
                   {"failed_points", c.failed_points},
                   {"holds", c.holds}});
  }
  return {{"verdict", verdict_name(r.overall)},
          {"structural_ok", r.structural_ok},
          {"structural_errors", r.structural_errors},
          {"identities", ids},
          {"independence", ind},
          {"all_exact", r.all_exact()}};
}

json strings(const std::vector<Expression>& es) {
  json out = json::array();
  for (const auto& e : es) out.push_back(e.to_string());
  return out;
}

json system_to_json(const LinearVariationalSystem& sys) {
  json idx = json::array();
  for (const auto& a : sys.index_set.indices()) idx.push_back(to_string(a));
  json rows = json::array();
  for (const auto& row : sys.coefficients) rows.push_back(strings(row));
  bool triangular = true;
  if (sys.kind == SystemKind::kDualVe) {
    for (std::size_t i = 0; i < sys.dimension(); ++i) {
      for (std::size_t j = 0; j < sys.dimension(); ++j) {
        if (degree(sys.index_set[j]) > degree(sys.index_set[i]) && !sys.coefficients[i][j].rational_form().is_zero()) {
          triangular = false;
        }
      }
    }
  }
  json j = {{"system", system_kind_name(sys.kind)},
            {"order", sys.order},
            {"dimension", sys.dimension()},
            {"parameter", sys.parameter},
            {"index_set", idx},
            {"coefficients", rows}};
  if (sys.kind == SystemKind::kDualVe) j["block_lower_triangular"] = triangular;
  return j;
}

json singularities_to_json(const SingularitySet& s) {
  json out = json::array();
  for (std::size_t k = 0; k < s.points.size(); ++k) {
    out.push_back({{"point", complex_to_json(s.points[k])}, {"multiplicity", s.multiplicity[k]}});
  }
  return out;
}

json monodromy_to_json(const LinearVariationalSystem& sys, const SingularitySet& sing, const MonodromySample& m) {
  json gens = json::array();
  for (const auto& g : m.generators) gens.push_back(matrix_to_json(g));
  return {{"system", system_kind_name(sys.kind)},
          {"order", sys.order},
          {"dimension", sys.dimension()},
          {"base_point", complex_to_json(m.base_point)},
          {"singularities", singularities_to_json(sing)},
          {"radii", m.radii},
          {"generators", gens},
          {"condition_numbers", m.condition_numbers},
          {"rtol", m.rtol}};
}

json abelianity_to_json(const LinearVariationalSystem& sys, const AbelianityVerdict& v) {
  return {{"system", system_kind_name(sys.kind)},
          {"order", sys.order},
          {"verdict", verdict_name(v.verdict)},
          {"worst_deviation", v.worst_deviation},
          {"word_length", v.word_length},
          {"words", v.words},
          {"commutators_vanish", v.commutators_vanish},
          {"monomial_structure", v.monomial_structure},
          {"diagnostics", v.diagnostics}};
}

json lift_compare_to_json(const LiftCompareReport& r) {
  json j = {{"verdict", r.pass ? "pass" : "fail"},
            {"order", r.order},
            {"mode", r.mode},
            {"base_dimension", r.base_dimension},
            {"lifted_dimension", r.lifted_dimension},
            {"samples", r.samples},
            {"message", r.message}};
  if (r.mode == "block") {
    j["permutation"] = r.permutation;
    j["block_residual"] = r.block_residual;
  } else {
    j["degree_bound"] = r.degree_bound;
    j["basis_size"] = r.basis_size;
    j["monomials"] = r.monomials;
    j["required_samples"] = r.required_samples;
    j["span_residual"] = r.span_residual;
  }
  return j;
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::kFail || b == Verdict::kFail) return Verdict::kFail;
  if (a == Verdict::kInconclusive || b == Verdict::kInconclusive) return Verdict::kInconclusive;
  return Verdict::kPass;
}

class Session {
 public:
  Session(Command command, const ProblemDefinition& p) : command_(command), p_(p) {
    check_.samples = p.options.samples;
    check_.seed = p.options.seed;
    transport_.integrator.rtol = p.options.rtol;
    transport_.integrator.atol = p.options.rtol;
  }

  RunResult execute() {
    const auto start = Clock::now();
    report_["tool"] = {{"name", kToolName}, {"version", tool_version()}};
    report_["command"] = command_name(command_);
    report_["seed"] = p_.options.seed;
    report_["input"] = p_.to_json();
    int exit_code = 0;
    try {
      switch (command_) {
        case Command::kLift: stage("lift", [&] { lift(); }); break;
        case Command::kCertify: certify(); break;
        case Command::kVe: stage("ve", [&] { ve(); }); break;
        case Command::kMonodromy: stage("monodromy", [&] { monodromy(false); }); break;
        case Command::kAnalyze: analyze(); break;
        case Command::kLiftCompare: stage("lift_compare", [&] { lift_compare(p_.options.order); }); break;
      }
      report_["status"] = verdict_name(status_);
      exit_code = status_ == Verdict::kFail ? 1 : 0;
    } catch (const Error& e) {
      log().error("{}: {}", error_code_name(e.code()), e.what());
      report_["error"] = error_json(e);
      report_["status"] = "error";
      exit_code = 2;
    }
    report_["exit_code"] = exit_code;
    timing_["total_seconds"] = seconds_since(start);
    report_["timing"] = timing_;
    return {report_, exit_code};
  }

  static json error_json(const Error& e) {
    json j = {{"code", error_code_name(e.code())}, {"message", e.what()}};
    if (e.position()) j["position"] = *e.position();
    if (const auto* fe = dynamic_cast<const FieldError*>(&e)) j["field"] = fe->field();
    return j;
  }

 private:
  static double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
  }

  void stage(const std::string& name, const std::function<void()>& body) {
    log().info("stage {} started", name);
    const auto t = Clock::now();
    body();
    timing_["stages"][name] = seconds_since(t);
    log().info("stage {} finished", name);
  }

  void note(Verdict v) { status_ = combine(status_, v); }

  void lift() {
    const CotangentContext cc(p_.context());
    const VectorField X = p_.field();
    json lifted = json::array();
    const VectorField xh = cotangent_lift_field(X, cc);
    for (std::size_t i = 0; i < xh.dimension(); ++i) lifted.push_back(xh[i].to_string());
    report_["lift"] = {{"extended_variables", cc.extended().names()},
                       {"hamiltonian", fiber_hamiltonian(X, cc).value().to_string()},
                       {"lifted_field", lifted}};
  }

  void certify() {
    if (!p_.certificate && !p_.liouville_hamiltonians) {
      throw FieldError(ErrorCode::kMissingSection, "certificate", "certificate required");
    }
    if (p_.certificate) {
      stage("certificate", [&] {
        const IntegrabilityCertificate cert = p_.integrability_certificate();
        const CertificateReport cr = verify_certificate(cert, check_);
        report_["certificate"] = certificate_to_json(cr);
        note(cr.overall);
        const LiouvilleCertificate lc = lift_certificate(cert);
        json hs = json::array();
        for (const auto& h : lc.hamiltonians) hs.push_back(h.value().to_string());
        const CertificateReport lr = verify_liouville(lc, check_);
        report_["liouville"] = certificate_to_json(lr);
        report_["liouville"]["hamiltonians"] = hs;
        note(lr.overall);
      });
    }
    if (p_.liouville_hamiltonians) {
      stage("liouville_certificate", [&] {
        const CertificateReport lr = verify_liouville(p_.liouville_certificate(), check_);
        report_["liouville_certificate"] = certificate_to_json(lr);
        report_["liouville_certificate"]["hamiltonians"] = *p_.liouville_hamiltonians;
        note(lr.overall);
      });
    }
  }

  SolutionCurve checked_curve() {
    const SolutionCurve gamma = p_.curve();
    const SolutionCheck check = verify_solution(p_.field(), gamma);
    json comps = json::array();
    for (const auto v : check.components) comps.push_back(verdict_name(v));
    report_["solution_check"] = {{"verdict", verdict_name(check.verdict)},
                                 {"components", comps},
                                 {"stationary", check.stationary},
                                 {"ok", check.ok()}};
    if (!check.ok()) throw FieldError(ErrorCode::kSolutionCheck, "solution", "solution check failed: " + check.message);
    return gamma;
  }

  void ve() {
    const SolutionCurve gamma = checked_curve();
    const VectorField X = p_.field();
    json systems = json::array();
    systems.push_back(system_to_json(build_ve1(X, gamma)));
    systems.push_back(system_to_json(build_dual_ve_unchecked(X, gamma, p_.options.order)));
    report_["variational"] = systems;
  }

  std::vector<LinearVariationalSystem> systems_for_orders(const SolutionCurve& gamma) {
    const VectorField X = p_.field();
    std::vector<LinearVariationalSystem> out{build_ve1(X, gamma)};
    for (int k = 1; k <= p_.options.order; ++k) out.push_back(build_dual_ve_unchecked(X, gamma, k));
    return out;
  }

  void monodromy(bool with_abelianity) {
    const SolutionCurve gamma = checked_curve();
    json summaries = json::array();
    json samples = json::array();
    json verdicts = json::array();
    for (const auto& sys : systems_for_orders(gamma)) {
      log().debug("monodromy of {} order {} (dimension {})", system_kind_name(sys.kind), sys.order, sys.dimension());
      const SingularitySet sing = find_singularities(sys, p_.options.box(), gamma.excluded_points);
      summaries.push_back({{"system", system_kind_name(sys.kind)},
                           {"order", sys.order},
                           {"dimension", sys.dimension()},
                           {"singularities", singularities_to_json(sing)}});
      const MonodromySample m = monodromy_generators(sys, p_.options.base_point, sing, transport_);
      samples.push_back(monodromy_to_json(sys, sing, m));
      if (with_abelianity) {
        const AbelianityVerdict v =
            virtual_abelianity_test(m.generators, p_.options.word_length, p_.options.tolerance, p_.options.seed);
        verdicts.push_back(abelianity_to_json(sys, v));
        note(v.verdict);
      }
    }
    report_["variational_summary"] = summaries;
    report_["monodromy"] = samples;
    if (with_abelianity) {
      report_["abelianity"] = verdicts;
      report_["caveat"] = kCaveat;
    }
  }

  void lift_compare(int order) {
    const SolutionCurve gamma = checked_curve();
    LiftCompareOptions o;
    o.transport = transport_;
    const LiftCompareReport r = lift_ve_compare_auto(p_.field(), gamma, order, p_.options.base_point, p_.options.seed, o);
    report_["lift_compare"] = lift_compare_to_json(r);
    note(r.pass ? Verdict::kPass : Verdict::kFail);
  }

  void analyze() {
    stage("lift", [&] { lift(); });
    if (p_.certificate || p_.liouville_hamiltonians) certify();
    if (p_.solution) {
      stage("monodromy", [&] { monodromy(true); });
      stage("lift_compare", [&] { lift_compare(1); });
    } else {
      report_["notes"] = json::array({"no solution section: variational and monodromy stages skipped"});
    }
  }

  Command command_;
  const ProblemDefinition& p_;
  CheckOptions check_;
  TransportOptions transport_;
  json report_ = json::object();
  json timing_ = json::object();
  Verdict status_ = Verdict::kPass;
};

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::kLift: return "lift";
    case Command::kCertify: return "certify";
    case Command::kVe: return "ve";
    case Command::kMonodromy: return "monodromy";
    case Command::kAnalyze: return "analyze";
    case Command::kLiftCompare: return "lift-compare";
  }
  return "unknown";
}

std::optional<Command> command_from_name(std::string_view name) {
  for (const Command c : {Command::kLift, Command::kCertify, Command::kVe, Command::kMonodromy, Command::kAnalyze,
                          Command::kLiftCompare}) {
    if (name == command_name(c)) return c;
  }
  return std::nullopt;
}

const char* tool_version() { return NHG_VERSION; }

RunResult run(Command command, const ProblemDefinition& problem) { return Session(command, problem).execute(); }

RunResult error_result(std::string_view command, const Error& error) {
  json report = {{"tool", {{"name", kToolName}, {"version", tool_version()}}},
                 {"command", std::string(command)},
                 {"status", "error"},
                 {"error", Session::error_json(error)},
                 {"exit_code", 2},
                 {"timing", json::object()}};
  return {report, 2};
}

}  // namespace nhg
