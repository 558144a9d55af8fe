#pragma once

// Canonical form for the rational fragment of the expression language:
// multivariate polynomials with exact rational coefficients over "atoms"
// (plain variables or transcendental kernels), and numerator/denominator
// pairs of those.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nhg {

using Rational = mpq_class;

enum class FuncHead { kExp, kLog, kSin, kCos };

const char* func_head_name(FuncHead head);

class RationalFunction;

/// An indeterminate of the polynomial ring. Variables are keyed by their
/// name; kernels by the printed form of head and normalized argument, so
/// two kernels with equal keys are the same indeterminate.
struct AtomData {
  std::string key;
  bool is_variable = true;
  FuncHead head = FuncHead::kExp;
  std::shared_ptr<const RationalFunction> argument;  // kernels only
};
using Atom = std::shared_ptr<const AtomData>;

Atom make_variable_atom(const std::string& name);

struct Factor {
  Atom atom;
  int exponent = 0;
};

/// Sparse power product, factors sorted by atom key, exponents > 0.
class Monomial {
 public:
  Monomial() = default;
  static Monomial of(const Atom& atom, int exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }
  int degree() const { return degree_; }
  int exponent_of(const std::string& key) const;

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Requires divides(other): returns other / *this.
  Monomial quotient_of(const Monomial& other) const;
  Monomial gcd(const Monomial& other) const;
  /// This monomial with the exponent of `key` lowered by one (must be > 0).
  Monomial lowered(const std::string& key) const;

  bool operator==(const Monomial& other) const;

 private:
  std::vector<Factor> factors_;
  int degree_ = 0;
};

/// Graded-lexicographic order, "greater first": maps keyed with this
/// comparator iterate from the leading monomial down.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  Polynomial() = default;
  static Polynomial constant(const Rational& value);
  static Polynomial atom(const Atom& atom);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero when absent).
  Rational constant_term() const;
  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;
  int total_degree() const;
  std::size_t size() const { return terms_.size(); }

  /// Distinct atoms, sorted by key.
  std::vector<Atom> atoms() const;
  /// The single atom when the polynomial involves exactly one.
  std::optional<Atom> sole_atom() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(const Rational& factor) const;
  Polynomial times_monomial(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned exponent) const;

  /// Quotient when `divisor` divides this polynomial exactly.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;
  /// Largest monomial dividing every term.
  Monomial monomial_content() const;
  /// Formal partial derivative with respect to the atom with key `key`.
  Polynomial formal_derivative(const std::string& key) const;

  bool operator==(const Polynomial& other) const;
  bool operator!=(const Polynomial& other) const { return !(*this == other); }

  void add_term(const Monomial& m, const Rational& c);

 private:
  TermMap terms_;
};

/// Dense univariate view used by the gcd and root-finding code; index i
/// holds the coefficient of x^i.
std::vector<Rational> univariate_coefficients(const Polynomial& p, const std::string& key);
Polynomial from_univariate(const std::vector<Rational>& coeffs, const Atom& atom);
/// Monic gcd of two univariate coefficient vectors.
std::vector<Rational> univariate_gcd(std::vector<Rational> a, std::vector<Rational> b);

/// Numerator/denominator pair kept in canonical form: denominator monic
/// (leading coefficient one in grlex order), monomial content removed,
/// exact-division and univariate-gcd cancellations applied. Zero is 0/1.
class RationalFunction {
 public:
  RationalFunction() : den_(Polynomial::constant(1)) {}
  explicit RationalFunction(Polynomial num) : num_(std::move(num)), den_(Polynomial::constant(1)) {}
  static RationalFunction constant(const Rational& value);
  /// Throws kDivisionByZero when `den` is the zero polynomial.
  static RationalFunction make(Polynomial num, Polynomial den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;
  std::vector<Atom> atoms() const;

  RationalFunction operator-() const;
  RationalFunction operator+(const RationalFunction& other) const;
  RationalFunction operator-(const RationalFunction& other) const;
  RationalFunction operator*(const RationalFunction& other) const;
  RationalFunction operator/(const RationalFunction& other) const;
  RationalFunction pow(int exponent) const;
  RationalFunction inverse() const;

  bool operator==(const RationalFunction& other) const {
    return num_ == other.num_ && den_ == other.den_;
  }

 private:
  RationalFunction(Polynomial num, Polynomial den, bool /*canonical*/)
      : num_(std::move(num)), den_(std::move(den)) {}

  Polynomial num_;
  Polynomial den_;
};

}  // namespace nhg
