#pragma once

// Seeded generators for random polynomial inputs used by the property tests.

#include <random>
#include <string>
#include <vector>

#include "nhg/expr/expression.hpp"

namespace nhg::testing {

inline Rational random_rational(std::mt19937_64& rng, int span = 5) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, 3);
  return Rational(num(rng), den(rng));
}

/// Random polynomial over `vars` with total degree <= `max_degree`, built
/// as an unnormalized sum of products so the normalizer has work to do.
inline Expression random_polynomial(std::mt19937_64& rng, const std::vector<std::string>& vars,
                                    int max_degree, int max_terms = 4) {
  std::uniform_int_distribution<int> terms(1, max_terms);
  std::uniform_int_distribution<int> degree(0, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  Expression sum = Expression::constant(random_rational(rng));
  const int n = terms(rng);
  for (int t = 0; t < n; ++t) {
    Expression term = Expression::constant(random_rational(rng));
    const int d = degree(rng);
    for (int k = 0; k < d; ++k) term = term * Expression::variable(vars[pick(rng)]);
    sum = sum + term;
  }
  return sum;
}

inline std::vector<Expression> random_components(std::mt19937_64& rng,
                                                 const std::vector<std::string>& vars,
                                                 int max_degree) {
  std::vector<Expression> out;
  for (std::size_t i = 0; i < vars.size(); ++i) out.push_back(random_polynomial(rng, vars, max_degree));
  return out;
}

inline std::vector<std::string> base_names(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= m; ++i) out.push_back("z" + std::to_string(i));
  return out;
}

}  // namespace nhg::testing
