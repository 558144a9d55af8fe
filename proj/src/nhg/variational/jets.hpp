#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nhg/numeric/dop853.hpp"
#include "nhg/variational/multi_index.hpp"
#include "nhg/vf/vector_field.hpp"

namespace nhg {

/// Index set (with the constant term) plus the product table for
/// truncated multiplication.
class SeriesLayout {
 public:
  static std::shared_ptr<const SeriesLayout> make(std::size_t m, int n);
  const MultiIndexSet& indices() const { return set_; }
  std::size_t size() const { return set_.size(); }
  int order() const { return set_.order(); }
  /// (i, j, k): coefficient i times coefficient j lands in slot k.
  const std::vector<std::array<std::uint32_t, 3>>& products() const { return products_; }

 private:
  MultiIndexSet set_;
  std::vector<std::array<std::uint32_t, 3>> products_;
};

/// Taylor polynomial in m variables truncated above total degree n.
class TruncatedSeries {
 public:
  using Layout = std::shared_ptr<const SeriesLayout>;

  explicit TruncatedSeries(Layout layout);
  static TruncatedSeries constant(const Layout& layout, Complex value);
  /// value + w_i
  static TruncatedSeries variable(const Layout& layout, std::size_t i, Complex value);

  const Layout& layout() const { return layout_; }
  std::vector<Complex>& coefficients() { return c_; }
  const std::vector<Complex>& coefficients() const { return c_; }
  Complex constant_term() const { return c_[0]; }

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator-() const;
  TruncatedSeries scaled(Complex k) const;
  /// Throws kPole when the constant term vanishes.
  TruncatedSeries reciprocal() const;
  TruncatedSeries pow(int k) const;
  TruncatedSeries exp() const;
  /// Throws kDomain when the constant term vanishes.
  TruncatedSeries log() const;
  TruncatedSeries sin() const;
  TruncatedSeries cos() const;

 private:
  /// sum_k weights[k] g^k with g the non-constant part.
  TruncatedSeries compose_power_series(const std::vector<Complex>& weights) const;

  Layout layout_;
  std::vector<Complex> c_;
};

/// Evaluates `e` with each variable replaced by its series.
TruncatedSeries evaluate_series(const Expression& e, const std::map<std::string, TruncatedSeries>& values);

/// Raw partial derivatives d^a (phi_s)_i (x0) for 1 <= |a| <= n.
struct FlowJet {
  MultiIndexSet index_set;
  std::vector<Complex> value;                     // phi_s(x0)
  std::vector<std::vector<Complex>> derivatives;  // [component][index]
};

struct FlowJetOptions {
  double rtol = 1e-13;
  double atol = 1e-13;
  double blowup = 1e12;
};

/// Integrates the prolonged flow of X from x0 along the straight complex
/// time segment [0, s] using truncated series arithmetic.
FlowJet flow_jet_oracle(const VectorField& X, const std::vector<Complex>& x0, Complex s, int n,
                        const FlowJetOptions& options = {});

}  // namespace nhg
