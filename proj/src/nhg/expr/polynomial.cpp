#include "nhg/expr/polynomial.hpp"

#include <algorithm>
#include <set>

#include "nhg/error.hpp"

namespace nhg {

const char* func_head_name(FuncHead head) {
  switch (head) {
    case FuncHead::kExp: return "exp";
    case FuncHead::kLog: return "log";
    case FuncHead::kSin: return "sin";
    case FuncHead::kCos: return "cos";
  }
  return "?";
}

Atom make_variable_atom(const std::string& name) {
  auto data = std::make_shared<AtomData>();
  data->key = name;
  data->is_variable = true;
  return data;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(const Atom& atom, int exponent) {
  Monomial m;
  if (exponent > 0) {
    m.factors_.push_back({atom, exponent});
    m.degree_ = exponent;
  }
  return m;
}

int Monomial::exponent_of(const std::string& key) const {
  for (const auto& f : factors_) {
    if (f.atom->key == key) return f.exponent;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->atom->key < b->atom->key)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->atom->key < a->atom->key) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.push_back({a->atom, a->exponent + b->exponent});
      ++a;
      ++b;
    }
  }
  out.degree_ = degree_ + other.degree_;
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  auto b = other.factors_.begin();
  for (const auto& f : factors_) {
    while (b != other.factors_.end() && b->atom->key < f.atom->key) ++b;
    if (b == other.factors_.end() || b->atom->key != f.atom->key || b->exponent < f.exponent) {
      return false;
    }
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial out;
  auto a = factors_.begin();
  for (const auto& f : other.factors_) {
    int e = f.exponent;
    if (a != factors_.end() && a->atom->key == f.atom->key) {
      e -= a->exponent;
      ++a;
    }
    if (e > 0) out.factors_.push_back({f.atom, e});
  }
  out.degree_ = other.degree_ - degree_;
  return out;
}

Monomial Monomial::gcd(const Monomial& other) const {
  Monomial out;
  auto b = other.factors_.begin();
  for (const auto& f : factors_) {
    while (b != other.factors_.end() && b->atom->key < f.atom->key) ++b;
    if (b != other.factors_.end() && b->atom->key == f.atom->key) {
      int e = std::min(f.exponent, b->exponent);
      out.factors_.push_back({f.atom, e});
      out.degree_ += e;
    }
  }
  return out;
}

Monomial Monomial::lowered(const std::string& key) const {
  Monomial out;
  for (const auto& f : factors_) {
    if (f.atom->key == key) {
      if (f.exponent > 1) out.factors_.push_back({f.atom, f.exponent - 1});
    } else {
      out.factors_.push_back(f);
    }
  }
  out.degree_ = degree_ - 1;
  return out;
}

bool Monomial::operator==(const Monomial& other) const {
  if (degree_ != other.degree_ || factors_.size() != other.factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].exponent != other.factors_[i].exponent ||
        factors_[i].atom->key != other.factors_[i].atom->key) {
      return false;
    }
  }
  return true;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() && j < fb.size()) {
    const int c = fa[i].atom->key.compare(fb[j].atom->key);
    if (c < 0) return true;
    if (c > 0) return false;
    if (fa[i].exponent != fb[j].exponent) return fa[i].exponent > fb[j].exponent;
    ++i;
    ++j;
  }
  return i < fa.size() && j == fb.size();
}

// -------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(const Rational& value) {
  Polynomial p;
  if (value != 0) p.terms_.emplace(Monomial{}, value);
  return p;
}

Polynomial Polynomial::atom(const Atom& a) {
  Polynomial p;
  p.terms_.emplace(Monomial::of(a, 1), Rational(1));
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw Error(ErrorCode::kInternal, "leading monomial of zero polynomial");
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw Error(ErrorCode::kInternal, "leading coefficient of zero polynomial");
  return terms_.begin()->second;
}

int Polynomial::total_degree() const {
  return terms_.empty() ? -1 : terms_.begin()->first.degree();
}

std::vector<Atom> Polynomial::atoms() const {
  std::map<std::string, Atom> seen;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) seen.emplace(f.atom->key, f.atom);
  }
  std::vector<Atom> out;
  out.reserve(seen.size());
  for (auto& [k, a] : seen) out.push_back(a);
  return out;
}

std::optional<Atom> Polynomial::sole_atom() const {
  auto all = atoms();
  if (all.size() == 1) return all.front();
  return std::nullopt;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, -c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial out;
  if (is_zero() || other.is_zero()) return out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      out.add_term(ma * mb, Rational(ca * cb));
    }
  }
  return out;
}

Polynomial Polynomial::scaled(const Rational& factor) const {
  Polynomial out;
  if (factor == 0) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, Rational(c * factor));
  return out;
}

Polynomial Polynomial::times_monomial(const Monomial& mono, const Rational& coeff) const {
  Polynomial out;
  if (coeff == 0) return out;
  // Multiplying by a monomial preserves the term order.
  for (const auto& [m, c] : terms_) {
    out.terms_.emplace_hint(out.terms_.end(), m * mono, Rational(c * coeff));
  }
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = Polynomial::constant(1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::kDivisionByZero, "division by zero polynomial");
  if (is_zero()) return Polynomial{};
  if (divisor.total_degree() > total_degree()) return std::nullopt;
  const Monomial& lead_m = divisor.leading_monomial();
  const Rational& lead_c = divisor.leading_coefficient();
  Polynomial quotient;
  Polynomial rest = *this;
  while (!rest.is_zero()) {
    const Monomial& rm = rest.leading_monomial();
    if (!lead_m.divides(rm)) return std::nullopt;
    Monomial qm = lead_m.quotient_of(rm);
    Rational qc = rest.leading_coefficient() / lead_c;
    quotient.add_term(qm, qc);
    rest = rest - divisor.times_monomial(qm, qc);
  }
  return quotient;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return {};
  auto it = terms_.begin();
  Monomial g = it->first;
  for (++it; it != terms_.end() && !g.empty(); ++it) g = g.gcd(it->first);
  return g;
}

Polynomial Polynomial::formal_derivative(const std::string& key) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    const int e = m.exponent_of(key);
    if (e == 0) continue;
    out.add_term(m.lowered(key), Rational(c * e));
  }
  return out;
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  for (; a != terms_.end(); ++a, ++b) {
    if (!(a->first == b->first) || a->second != b->second) return false;
  }
  return true;
}

namespace {

Polynomial divide_by_monomial(const Polynomial& p, const Monomial& m) {
  Polynomial out;
  for (const auto& [term, c] : p.terms()) out.add_term(m.quotient_of(term), c);
  return out;
}

void trim(std::vector<Rational>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

}  // namespace

std::vector<Rational> univariate_coefficients(const Polynomial& p, const std::string& key) {
  std::vector<Rational> out;
  for (const auto& [m, c] : p.terms()) {
    const int e = m.exponent_of(key);
    if (static_cast<int>(m.factors().size()) > (e > 0 ? 1 : 0)) {
      throw Error(ErrorCode::kInternal, "polynomial is not univariate in " + key);
    }
    if (static_cast<std::size_t>(e) >= out.size()) out.resize(static_cast<std::size_t>(e) + 1);
    out[static_cast<std::size_t>(e)] = c;
  }
  return out;
}

Polynomial from_univariate(const std::vector<Rational>& coeffs, const Atom& atom) {
  Polynomial p;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    p.add_term(Monomial::of(atom, static_cast<int>(i)), coeffs[i]);
  }
  return p;
}

std::vector<Rational> univariate_gcd(std::vector<Rational> a, std::vector<Rational> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a <- a mod b
    while (a.size() >= b.size() && !a.empty()) {
      const Rational factor = a.back() / b.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
      a.pop_back();
      trim(a);
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

// -------------------------------------------------------- RationalFunction

RationalFunction RationalFunction::constant(const Rational& value) {
  return RationalFunction(Polynomial::constant(value));
}

RationalFunction RationalFunction::make(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw Error(ErrorCode::kDivisionByZero, "division by zero");
  if (num.is_zero()) return RationalFunction{};

  for (;;) {
    bool changed = false;
    if (den.is_constant()) break;

    const Monomial content = num.monomial_content().gcd(den.monomial_content());
    if (!content.empty()) {
      num = divide_by_monomial(num, content);
      den = divide_by_monomial(den, content);
      changed = true;
      if (den.is_constant()) break;
    }
    if (auto q = num.divide_exact(den)) {
      num = std::move(*q);
      den = Polynomial::constant(1);
      break;
    }
    if (!num.is_constant()) {
      if (auto q = den.divide_exact(num)) {
        den = std::move(*q);
        num = Polynomial::constant(1);
        continue;
      }
    }
    auto num_atoms = num.atoms();
    auto den_atoms = den.atoms();
    if (den_atoms.size() == 1 && num_atoms.size() <= 1 &&
        (num_atoms.empty() || num_atoms.front()->key == den_atoms.front()->key)) {
      const Atom& x = den_atoms.front();
      auto g = univariate_gcd(univariate_coefficients(num, x->key),
                              univariate_coefficients(den, x->key));
      if (g.size() > 1) {
        Polynomial gp = from_univariate(g, x);
        num = *num.divide_exact(gp);
        den = *den.divide_exact(gp);
        changed = true;
      }
    }
    if (!changed) break;
  }

  const Rational lead = den.leading_coefficient();
  if (lead != 1) {
    const Rational inv = 1 / lead;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  return RationalFunction(std::move(num), std::move(den), true);
}

Rational RationalFunction::constant_value() const {
  return num_.constant_term() / den_.constant_term();
}

std::vector<Atom> RationalFunction::atoms() const {
  std::map<std::string, Atom> seen;
  for (const auto& a : num_.atoms()) seen.emplace(a->key, a);
  for (const auto& a : den_.atoms()) seen.emplace(a->key, a);
  std::vector<Atom> out;
  for (auto& [k, a] : seen) out.push_back(a);
  return out;
}

RationalFunction RationalFunction::operator-() const {
  return RationalFunction(-num_, den_, true);
}

RationalFunction RationalFunction::operator+(const RationalFunction& other) const {
  if (is_zero()) return other;
  if (other.is_zero()) return *this;
  if (den_ == other.den_) return make(num_ + other.num_, den_);
  if (is_polynomial()) return make(num_ * other.den_ + other.num_, other.den_);
  if (other.is_polynomial()) return make(num_ + other.num_ * den_, den_);
  if (auto q = other.den_.divide_exact(den_)) return make(num_ * *q + other.num_, other.den_);
  if (auto q = den_.divide_exact(other.den_)) return make(num_ + other.num_ * *q, den_);
  return make(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& other) const {
  return *this + (-other);
}

RationalFunction RationalFunction::operator*(const RationalFunction& other) const {
  if (is_zero() || other.is_zero()) return RationalFunction{};
  if (is_polynomial() && other.is_polynomial()) return RationalFunction(num_ * other.num_);
  Polynomial a = num_;
  Polynomial b = den_;
  Polynomial c = other.num_;
  Polynomial d = other.den_;
  if (!d.is_constant()) {
    if (auto q = a.divide_exact(d)) {
      a = std::move(*q);
      d = Polynomial::constant(1);
    }
  }
  if (!b.is_constant()) {
    if (auto q = c.divide_exact(b)) {
      c = std::move(*q);
      b = Polynomial::constant(1);
    }
  }
  return make(a * c, b * d);
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw Error(ErrorCode::kDivisionByZero, "division by zero");
  return make(den_, num_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& other) const {
  return *this * other.inverse();
}

RationalFunction RationalFunction::pow(int exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  if (exponent == 0) return constant(1);
  const auto e = static_cast<unsigned>(exponent);
  if (is_polynomial()) return RationalFunction(num_.pow(e));
  return RationalFunction(num_.pow(e), den_.pow(e), true);
}

}  // namespace nhg
