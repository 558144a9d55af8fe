#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nhg/expr/expression.hpp"

namespace nhg {

/// Magnitude below which a divisor counts as zero.
inline constexpr double kPoleThreshold = 1e-300;

/// Double-precision complex value of `e`. Throws kPole on division by a
/// vanishing value, kDomain for log at zero, kInvalidArgument for unbound
/// variables.
Complex evaluate(const Expression& e, const std::map<std::string, Complex>& point);

/// Expression flattened into a postfix program over numbered slots, for
/// repeated evaluation in integrator right-hand sides and sampling loops.
class CompiledScalar {
 public:
  CompiledScalar() = default;
  /// `slots` names the value positions passed to evaluate(); throws
  /// kUnknownVariable when `e` uses a name outside `slots`.
  CompiledScalar(const Expression& e, const std::vector<std::string>& slots);

  Complex operator()(std::span<const Complex> values) const;
  bool is_constant() const { return constant_; }

 private:
  enum class Op : std::uint8_t { kConst, kVar, kAdd, kSub, kMul, kDiv, kNeg, kPow, kExp, kLog, kSin, kCos };
  struct Instr {
    Op op;
    int arg = 0;  // slot, constant index, or exponent
  };

  void emit(const Expression& e, const std::vector<std::string>& slots);

  std::vector<Instr> code_;
  std::vector<Complex> constants_;
  std::size_t max_depth_ = 0;
  bool constant_ = true;
};

/// Integer power by repeated squaring; throws kPole for a negative power of
/// a vanishing base.
Complex integer_power(Complex base, int exponent);

}  // namespace nhg
