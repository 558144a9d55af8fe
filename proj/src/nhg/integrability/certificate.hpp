#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nhg/expr/zero_test.hpp"
#include "nhg/verdict.hpp"
#include "nhg/vf/vector_field.hpp"

namespace nhg {

/// X together with commuting fields X_1 = X, ..., X_k and common first
/// integrals f_1, ..., f_l.
struct IntegrabilityCertificate {
  VectorField system;
  std::vector<VectorField> commuting_fields;
  std::vector<ScalarField> first_integrals;
};

struct LiouvilleCertificate {
  CotangentContext cc;
  std::vector<ScalarField> hamiltonians;
  /// The base field whose lift H_1 should generate, when known.
  std::optional<VectorField> source;
};

struct IdentityCheck {
  std::string kind;  // "bracket", "first_integral", "involution", "lift_hamiltonian"
  std::size_t i = 0;
  std::size_t j = 0;
  std::optional<ZeroVerdict> verdict;
  /// Printed residual when the verdict is nonzero.
  std::string residual;
  /// Set when the zero test itself could not decide.
  std::string error;
};

struct IndependenceCheck {
  std::string kind;  // "commuting_fields", "first_integrals", "hamiltonians"
  int expected_rank = 0;
  /// Rank at each sample point that evaluated without a pole.
  std::vector<int> ranks;
  int best_rank = 0;
  int failed_points = 0;
  bool holds = false;
};

struct CertificateReport {
  bool structural_ok = true;
  std::vector<std::string> structural_errors;
  std::vector<IdentityCheck> identities;
  std::vector<IndependenceCheck> independence;
  Verdict overall = Verdict::kFail;
  /// True when every identity verdict is exact_zero.
  bool all_exact() const;
};

struct CheckOptions {
  int samples = 5;
  std::uint64_t seed = 0;
  double rank_threshold = 1e-8;
  int max_resample_attempts = 50;
  ZeroTestOptions zero_test{};
};

CertificateReport verify_certificate(const IntegrabilityCertificate& cert, const CheckOptions& options = {});

/// H_i = h_{X_i} for the commuting fields, then the first integrals viewed
/// on the cotangent bundle. Does not check the hypotheses.
LiouvilleCertificate lift_certificate(const IntegrabilityCertificate& cert);

CertificateReport verify_liouville(const LiouvilleCertificate& lc, const CheckOptions& options = {});

}  // namespace nhg
