#include "nhg/variational/jets.hpp"

#include <cmath>

#include "nhg/error.hpp"
#include "nhg/expr/evaluate.hpp"

namespace nhg {

std::shared_ptr<const SeriesLayout> SeriesLayout::make(std::size_t m, int n) {
  auto layout = std::make_shared<SeriesLayout>();
  layout->set_ = MultiIndexSet(m, n, 0);
  const auto& idx = layout->set_.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (degree(idx[i]) + degree(idx[j]) > n) continue;
      MultiIndex sum(m);
      for (std::size_t q = 0; q < m; ++q) sum[q] = idx[i][q] + idx[j][q];
      layout->products_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                   static_cast<std::uint32_t>(layout->set_.position(sum))});
    }
  }
  return layout;
}

TruncatedSeries::TruncatedSeries(Layout layout) : layout_(std::move(layout)), c_(layout_->size(), Complex(0.0)) {}

TruncatedSeries TruncatedSeries::constant(const Layout& layout, Complex value) {
  TruncatedSeries s(layout);
  s.c_[0] = value;
  return s;
}

TruncatedSeries TruncatedSeries::variable(const Layout& layout, std::size_t i, Complex value) {
  TruncatedSeries s = constant(layout, value);
  if (layout->order() >= 1) {
    MultiIndex e(layout->indices().dimension(), 0);
    e[i] = 1;
    s.c_[layout->indices().position(e)] = 1.0;
  }
  return s;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  TruncatedSeries r(*this);
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  TruncatedSeries r(*this);
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] -= o.c_[k];
  return r;
}

TruncatedSeries TruncatedSeries::operator-() const { return scaled(-1.0); }

TruncatedSeries TruncatedSeries::scaled(Complex k) const {
  TruncatedSeries r(*this);
  for (auto& v : r.c_) v *= k;
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  TruncatedSeries r(layout_);
  for (const auto& [i, j, k] : layout_->products()) r.c_[k] += c_[i] * o.c_[j];
  return r;
}

TruncatedSeries TruncatedSeries::compose_power_series(const std::vector<Complex>& weights) const {
  TruncatedSeries g(*this);
  g.c_[0] = 0.0;
  TruncatedSeries result = constant(layout_, weights.empty() ? Complex(0.0) : weights[0]);
  TruncatedSeries power = constant(layout_, 1.0);
  for (std::size_t k = 1; k < weights.size(); ++k) {
    power = power * g;
    if (weights[k] != Complex(0.0)) result = result + power.scaled(weights[k]);
  }
  return result;
}

TruncatedSeries TruncatedSeries::reciprocal() const {
  const Complex f0 = c_[0];
  if (std::abs(f0) <= kPoleThreshold) throw Error(ErrorCode::kPole, "series reciprocal of a vanishing value");
  const int n = layout_->order();
  std::vector<Complex> w(static_cast<std::size_t>(n) + 1);
  Complex term = 1.0 / f0;
  for (int k = 0; k <= n; ++k) {
    w[static_cast<std::size_t>(k)] = term;
    term *= -1.0 / f0;
  }
  return compose_power_series(w);
}

TruncatedSeries TruncatedSeries::pow(int k) const {
  if (k < 0) return reciprocal().pow(-k);
  TruncatedSeries result = constant(layout_, 1.0);
  TruncatedSeries base(*this);
  auto e = static_cast<unsigned>(k);
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

TruncatedSeries TruncatedSeries::exp() const {
  const int n = layout_->order();
  std::vector<Complex> w(static_cast<std::size_t>(n) + 1);
  Complex term = std::exp(c_[0]);
  for (int k = 0; k <= n; ++k) {
    w[static_cast<std::size_t>(k)] = term;
    term /= static_cast<double>(k + 1);
  }
  return compose_power_series(w);
}

TruncatedSeries TruncatedSeries::log() const {
  const Complex f0 = c_[0];
  if (std::abs(f0) <= kPoleThreshold) throw Error(ErrorCode::kDomain, "series log of a vanishing value");
  const int n = layout_->order();
  std::vector<Complex> w(static_cast<std::size_t>(n) + 1);
  w[0] = std::log(f0);
  Complex inv_pow = 1.0;
  for (int k = 1; k <= n; ++k) {
    inv_pow /= f0;
    w[static_cast<std::size_t>(k)] = (k % 2 == 1 ? 1.0 : -1.0) * inv_pow / static_cast<double>(k);
  }
  return compose_power_series(w);
}

TruncatedSeries TruncatedSeries::sin() const {
  // sin(f0 + g) = sin f0 cos g + cos f0 sin g
  const int n = layout_->order();
  const Complex s0 = std::sin(c_[0]);
  const Complex c0 = std::cos(c_[0]);
  std::vector<Complex> w(static_cast<std::size_t>(n) + 1);
  double fact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) fact *= k;
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    w[static_cast<std::size_t>(k)] = (k % 2 == 0 ? s0 : c0) * sign / fact;
  }
  return compose_power_series(w);
}

TruncatedSeries TruncatedSeries::cos() const {
  // cos(f0 + g) = cos f0 cos g - sin f0 sin g
  const int n = layout_->order();
  const Complex s0 = std::sin(c_[0]);
  const Complex c0 = std::cos(c_[0]);
  std::vector<Complex> w(static_cast<std::size_t>(n) + 1);
  double fact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) fact *= k;
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    w[static_cast<std::size_t>(k)] = (k % 2 == 0 ? c0 : -s0) * sign / fact;
  }
  return compose_power_series(w);
}

TruncatedSeries evaluate_series(const Expression& e, const std::map<std::string, TruncatedSeries>& values) {
  const auto& layout = values.begin()->second.layout();
  switch (e.kind()) {
    case NodeKind::kVariable: {
      auto it = values.find(e.name());
      if (it == values.end()) throw Error(ErrorCode::kInvalidArgument, "unbound variable '" + e.name() + "'");
      return it->second;
    }
    case NodeKind::kConstant: return TruncatedSeries::constant(layout, e.value().get_d());
    case NodeKind::kAdd: return evaluate_series(e.children()[0], values) + evaluate_series(e.children()[1], values);
    case NodeKind::kSub: return evaluate_series(e.children()[0], values) - evaluate_series(e.children()[1], values);
    case NodeKind::kMul: return evaluate_series(e.children()[0], values) * evaluate_series(e.children()[1], values);
    case NodeKind::kDiv:
      return evaluate_series(e.children()[0], values) * evaluate_series(e.children()[1], values).reciprocal();
    case NodeKind::kNeg: return -evaluate_series(e.children()[0], values);
    case NodeKind::kPow: return evaluate_series(e.children()[0], values).pow(e.exponent());
    case NodeKind::kFunc: {
      const TruncatedSeries a = evaluate_series(e.children()[0], values);
      switch (e.head()) {
        case FuncHead::kExp: return a.exp();
        case FuncHead::kLog: return a.log();
        case FuncHead::kSin: return a.sin();
        case FuncHead::kCos: return a.cos();
      }
    }
  }
  throw Error(ErrorCode::kInternal, "unknown node kind");
}

FlowJet flow_jet_oracle(const VectorField& X, const std::vector<Complex>& x0, Complex s, int n,
                        const FlowJetOptions& options) {
  const std::size_t m = X.dimension();
  if (x0.size() != m) throw Error(ErrorCode::kInvalidArgument, "initial point has the wrong dimension");
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "jet order must be at least 1");
  const auto layout = SeriesLayout::make(m, n);
  const std::size_t width = layout->size();

  std::vector<Complex> state(m * width, Complex(0.0));
  for (std::size_t i = 0; i < m; ++i) {
    const auto v = TruncatedSeries::variable(layout, i, x0[i]);
    std::copy(v.coefficients().begin(), v.coefficients().end(), state.begin() + static_cast<long>(i * width));
  }

  if (s != Complex(0.0)) {
    const ComplexRhs rhs = [&](double, const Complex* y, Complex* dy) {
      std::map<std::string, TruncatedSeries> values;
      for (std::size_t i = 0; i < m; ++i) {
        if (std::abs(y[i * width]) > options.blowup) {
          throw Error(ErrorCode::kBlowUp, "flow trajectory norm exceeded the blow-up bound");
        }
        TruncatedSeries v(layout);
        std::copy(y + i * width, y + (i + 1) * width, v.coefficients().begin());
        values.emplace(X.ctx()[i], std::move(v));
      }
      for (std::size_t i = 0; i < m; ++i) {
        const TruncatedSeries d = evaluate_series(X[i], values);
        for (std::size_t k = 0; k < width; ++k) dy[i * width + k] = s * d.coefficients()[k];
      }
    };
    IntegratorOptions io;
    io.rtol = options.rtol;
    io.atol = options.atol;
    dop853(rhs, 0.0, 1.0, state, io);
  }

  FlowJet jet;
  jet.index_set = MultiIndexSet(m, n);
  jet.derivatives.assign(m, {});
  for (std::size_t i = 0; i < m; ++i) {
    jet.value.push_back(state[i * width]);
    for (const auto& a : jet.index_set.indices()) {
      jet.derivatives[i].push_back(state[i * width + layout->indices().position(a)] * factorial_weight(a));
    }
  }
  return jet;
}

}  // namespace nhg
