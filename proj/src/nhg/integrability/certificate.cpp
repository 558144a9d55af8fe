#include "nhg/integrability/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "nhg/error.hpp"
#include "nhg/expr/evaluate.hpp"
#include "nhg/numeric/linalg.hpp"
#include "nhg/util/parallel.hpp"

namespace nhg {

namespace {

/// One identity to decide: a list of residual components that must all vanish.
struct IdentityTask {
  std::string kind;
  std::size_t i;
  std::size_t j;
  std::function<std::vector<Expression>()> residuals;
};

IdentityCheck run_identity(const IdentityTask& task, const ZeroTestOptions& zt) {
  IdentityCheck check;
  check.kind = task.kind;
  check.i = task.i;
  check.j = task.j;
  try {
    ZeroVerdict v = ZeroVerdict::kExactZero;
    for (const auto& r : task.residuals()) {
      const ZeroVerdict rv = is_zero(r, zt);
      v = weakest(v, rv);
      if (rv == ZeroVerdict::kNonzero && check.residual.empty()) check.residual = normalize(r).to_string();
    }
    check.verdict = v;
  } catch (const Error& e) {
    check.error = e.what();
  }
  return check;
}

std::vector<IdentityCheck> run_identities(const std::vector<IdentityTask>& tasks, const ZeroTestOptions& zt) {
  return parallel_map(tasks.size(), [&](std::size_t k) { return run_identity(tasks[k], zt); });
}

/// A family of expressions whose value matrix (rows x cols) must reach a
/// target rank somewhere.
struct RankFamily {
  std::string kind;
  int expected_rank;
  std::size_t rows;
  std::size_t cols;
  std::vector<CompiledScalar> entries;  // row-major
};

void sample_ranks(const VariableContext& ctx, std::vector<RankFamily>& families,
                  std::vector<IndependenceCheck>& out, const CheckOptions& options) {
  out.clear();
  for (const auto& f : families) {
    IndependenceCheck c;
    c.kind = f.kind;
    c.expected_rank = f.expected_rank;
    out.push_back(c);
  }
  std::mt19937_64 rng(options.seed);
  std::vector<Complex> point(ctx.dimension());
  for (int s = 0; s < options.samples; ++s) {
    bool evaluated = false;
    std::vector<MatrixC> values;
    for (int attempt = 0; attempt < options.max_resample_attempts && !evaluated; ++attempt) {
      for (auto& x : point) x = random_sample_coordinate(rng);
      values.clear();
      try {
        for (const auto& f : families) {
          MatrixC m(static_cast<Eigen::Index>(f.rows), static_cast<Eigen::Index>(f.cols));
          for (std::size_t r = 0; r < f.rows; ++r) {
            for (std::size_t c = 0; c < f.cols; ++c) {
              const Complex v = f.entries[r * f.cols + c](point);
              if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw Error(ErrorCode::kNonFinite, "non-finite sample");
              }
              m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
            }
          }
          values.push_back(std::move(m));
        }
        evaluated = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kPole && e.code() != ErrorCode::kDomain && e.code() != ErrorCode::kNonFinite) {
          throw;
        }
      }
    }
    for (std::size_t k = 0; k < families.size(); ++k) {
      if (!evaluated) {
        ++out[k].failed_points;
        continue;
      }
      const int rank = numeric_rank(values[k], options.rank_threshold);
      out[k].ranks.push_back(rank);
      out[k].best_rank = std::max(out[k].best_rank, rank);
    }
  }
  for (auto& c : out) c.holds = c.expected_rank == 0 || c.best_rank >= c.expected_rank;
}

RankFamily gradient_family(const std::string& kind, const VariableContext& ctx, const std::vector<Expression>& fns) {
  RankFamily fam{kind, static_cast<int>(fns.size()), fns.size(), ctx.dimension(), {}};
  for (const auto& f : fns) {
    for (std::size_t j = 0; j < ctx.dimension(); ++j) {
      fam.entries.emplace_back(differentiate(f, ctx[j]), ctx.names());
    }
  }
  return fam;
}

void finish(CertificateReport& report) {
  bool failed = !report.structural_ok;
  bool undecided = false;
  for (const auto& id : report.identities) {
    if (!id.verdict) undecided = true;
    else if (*id.verdict == ZeroVerdict::kNonzero) failed = true;
  }
  for (const auto& ind : report.independence) {
    if (!ind.holds) {
      if (ind.ranks.empty()) undecided = true;
      else failed = true;
    }
  }
  report.overall = failed ? Verdict::kFail : (undecided ? Verdict::kInconclusive : Verdict::kPass);
}

}  // namespace

bool CertificateReport::all_exact() const {
  return std::all_of(identities.begin(), identities.end(), [](const IdentityCheck& c) {
    return c.verdict && *c.verdict == ZeroVerdict::kExactZero;
  });
}

CertificateReport verify_certificate(const IntegrabilityCertificate& cert, const CheckOptions& options) {
  CertificateReport report;
  const VariableContext& ctx = cert.system.ctx();
  const std::size_t m = ctx.dimension();
  const std::size_t k = cert.commuting_fields.size();
  const std::size_t l = cert.first_integrals.size();

  auto structural = [&](const std::string& msg) {
    report.structural_ok = false;
    report.structural_errors.push_back(msg);
  };
  if (k < 1) structural("at least one commuting field is required");
  if (k + l != m) {
    structural("k + l = " + std::to_string(k + l) + " does not equal the dimension " + std::to_string(m));
  }
  bool contexts_ok = true;
  for (std::size_t i = 0; i < k; ++i) {
    if (cert.commuting_fields[i].ctx() != ctx) {
      structural("commuting field " + std::to_string(i + 1) + " uses a different variable context");
      contexts_ok = false;
    }
  }
  for (std::size_t j = 0; j < l; ++j) {
    if (cert.first_integrals[j].ctx() != ctx) {
      structural("first integral " + std::to_string(j + 1) + " uses a different variable context");
      contexts_ok = false;
    }
  }
  if (k >= 1 && contexts_ok && !cert.commuting_fields[0].equals(cert.system)) {
    structural("the first commuting field must equal the system");
  }
  if (!contexts_ok) {
    finish(report);
    return report;
  }

  std::vector<IdentityTask> tasks;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      tasks.push_back({"bracket", i, j, [&cert, i, j] {
                         return lie_bracket(cert.commuting_fields[i], cert.commuting_fields[j]).components();
                       }});
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      tasks.push_back({"first_integral", i, j, [&cert, i, j] {
                         return std::vector<Expression>{
                             apply_field(cert.commuting_fields[i], cert.first_integrals[j]).value()};
                       }});
    }
  }
  report.identities = run_identities(tasks, options.zero_test);

  std::vector<RankFamily> families;
  RankFamily fields{"commuting_fields", static_cast<int>(k), m, k, {}};
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < k; ++c) fields.entries.emplace_back(cert.commuting_fields[c][r], ctx.names());
  }
  families.push_back(std::move(fields));
  std::vector<Expression> fns;
  for (const auto& f : cert.first_integrals) fns.push_back(f.value());
  families.push_back(gradient_family("first_integrals", ctx, fns));
  sample_ranks(ctx, families, report.independence, options);

  finish(report);
  return report;
}

LiouvilleCertificate lift_certificate(const IntegrabilityCertificate& cert) {
  CotangentContext cc(cert.system.ctx());
  std::vector<ScalarField> hs;
  for (const auto& X : cert.commuting_fields) hs.push_back(fiber_hamiltonian(X, cc));
  for (const auto& f : cert.first_integrals) hs.push_back(pull_to_extended(f, cc));
  std::optional<VectorField> source;
  if (!cert.commuting_fields.empty()) source = cert.commuting_fields.front();
  return LiouvilleCertificate{cc, std::move(hs), std::move(source)};
}

CertificateReport verify_liouville(const LiouvilleCertificate& lc, const CheckOptions& options) {
  CertificateReport report;
  const auto& cc = lc.cc;
  const VariableContext& ext = cc.extended();
  const std::size_t m = cc.base_dimension();
  auto structural = [&](const std::string& msg) {
    report.structural_ok = false;
    report.structural_errors.push_back(msg);
  };
  if (lc.hamiltonians.size() != m) {
    structural(std::to_string(lc.hamiltonians.size()) + " Hamiltonians for base dimension " + std::to_string(m));
  }
  for (std::size_t i = 0; i < lc.hamiltonians.size(); ++i) {
    if (lc.hamiltonians[i].ctx() != ext) {
      structural("Hamiltonian " + std::to_string(i + 1) + " is not over the extended context");
      finish(report);
      return report;
    }
  }
  if (lc.source && lc.source->ctx() != cc.base()) {
    structural("source field is not over the base context");
    finish(report);
    return report;
  }
  if (lc.source && !lc.hamiltonians.empty()) {
    const Expression h = fiber_hamiltonian(*lc.source, cc).value();
    if (!(h.rational_form() == lc.hamiltonians[0].value().rational_form())) {
      structural("the first Hamiltonian must be the fiber-linear function of the source field");
    }
  }

  std::vector<IdentityTask> tasks;
  const std::size_t n = lc.hamiltonians.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      tasks.push_back({"involution", i, j, [&lc, &cc, i, j] {
                         return std::vector<Expression>{
                             poisson_bracket(lc.hamiltonians[i], lc.hamiltonians[j], cc).value()};
                       }});
    }
  }
  if (lc.source && n > 0) {
    tasks.push_back({"lift_hamiltonian", 0, 0, [&lc, &cc] {
                       const VectorField a = hamiltonian_vector_field(lc.hamiltonians[0], cc);
                       const VectorField b = cotangent_lift_field(*lc.source, cc);
                       std::vector<Expression> diff;
                       for (std::size_t i = 0; i < a.dimension(); ++i) diff.push_back(a[i] - b[i]);
                       return diff;
                     }});
  }
  report.identities = run_identities(tasks, options.zero_test);

  std::vector<Expression> fns;
  for (const auto& h : lc.hamiltonians) fns.push_back(h.value());
  std::vector<RankFamily> families;
  families.push_back(gradient_family("hamiltonians", ext, fns));
  families.back().expected_rank = static_cast<int>(m);
  sample_ranks(ext, families, report.independence, options);

  finish(report);
  return report;
}

}  // namespace nhg
