#include "nhg/expr/evaluate.hpp"

#include <algorithm>
#include <cmath>

#include "nhg/error.hpp"

namespace nhg {

namespace {

double to_double(const Rational& q) { return q.get_d(); }

Complex checked_div(Complex a, Complex b) {
  if (std::abs(b) <= kPoleThreshold) throw Error(ErrorCode::kPole, "pole: division by zero");
  return a / b;
}

Complex checked_log(Complex a) {
  if (std::abs(a) <= kPoleThreshold) throw Error(ErrorCode::kDomain, "log of zero");
  return std::log(a);
}

}  // namespace

Complex integer_power(Complex base, int exponent) {
  if (exponent < 0) return checked_div(Complex(1.0), integer_power(base, -exponent));
  Complex result(1.0);
  auto e = static_cast<unsigned>(exponent);
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Complex evaluate(const Expression& e, const std::map<std::string, Complex>& point) {
  switch (e.kind()) {
    case NodeKind::kVariable: {
      auto it = point.find(e.name());
      if (it == point.end()) {
        throw Error(ErrorCode::kInvalidArgument, "unbound variable '" + e.name() + "'");
      }
      return it->second;
    }
    case NodeKind::kConstant: return Complex(to_double(e.value()));
    case NodeKind::kAdd: return evaluate(e.children()[0], point) + evaluate(e.children()[1], point);
    case NodeKind::kSub: return evaluate(e.children()[0], point) - evaluate(e.children()[1], point);
    case NodeKind::kMul: return evaluate(e.children()[0], point) * evaluate(e.children()[1], point);
    case NodeKind::kDiv:
      return checked_div(evaluate(e.children()[0], point), evaluate(e.children()[1], point));
    case NodeKind::kNeg: return -evaluate(e.children()[0], point);
    case NodeKind::kPow: return integer_power(evaluate(e.children()[0], point), e.exponent());
    case NodeKind::kFunc: {
      const Complex a = evaluate(e.children()[0], point);
      switch (e.head()) {
        case FuncHead::kExp: return std::exp(a);
        case FuncHead::kLog: return checked_log(a);
        case FuncHead::kSin: return std::sin(a);
        case FuncHead::kCos: return std::cos(a);
      }
    }
  }
  throw Error(ErrorCode::kInternal, "unknown node kind");
}

CompiledScalar::CompiledScalar(const Expression& e, const std::vector<std::string>& slots) {
  emit(e, slots);
  std::size_t depth = 0;
  for (const auto& ins : code_) {
    switch (ins.op) {
      case Op::kConst:
      case Op::kVar: max_depth_ = std::max(max_depth_, ++depth); break;
      case Op::kAdd:
      case Op::kSub:
      case Op::kMul:
      case Op::kDiv: --depth; break;
      default: break;
    }
  }
}

void CompiledScalar::emit(const Expression& e, const std::vector<std::string>& slots) {
  switch (e.kind()) {
    case NodeKind::kVariable: {
      auto it = std::find(slots.begin(), slots.end(), e.name());
      if (it == slots.end()) {
        throw Error(ErrorCode::kUnknownVariable, "unknown variable '" + e.name() + "'");
      }
      code_.push_back({Op::kVar, static_cast<int>(it - slots.begin())});
      constant_ = false;
      return;
    }
    case NodeKind::kConstant:
      constants_.emplace_back(to_double(e.value()));
      code_.push_back({Op::kConst, static_cast<int>(constants_.size() - 1)});
      return;
    case NodeKind::kAdd:
    case NodeKind::kSub:
    case NodeKind::kMul:
    case NodeKind::kDiv: {
      emit(e.children()[0], slots);
      emit(e.children()[1], slots);
      Op op = Op::kAdd;
      if (e.kind() == NodeKind::kSub) op = Op::kSub;
      if (e.kind() == NodeKind::kMul) op = Op::kMul;
      if (e.kind() == NodeKind::kDiv) op = Op::kDiv;
      code_.push_back({op, 0});
      return;
    }
    case NodeKind::kNeg:
      emit(e.children()[0], slots);
      code_.push_back({Op::kNeg, 0});
      return;
    case NodeKind::kPow:
      emit(e.children()[0], slots);
      code_.push_back({Op::kPow, e.exponent()});
      return;
    case NodeKind::kFunc: {
      emit(e.children()[0], slots);
      Op op = Op::kExp;
      if (e.head() == FuncHead::kLog) op = Op::kLog;
      if (e.head() == FuncHead::kSin) op = Op::kSin;
      if (e.head() == FuncHead::kCos) op = Op::kCos;
      code_.push_back({op, 0});
      return;
    }
  }
}

Complex CompiledScalar::operator()(std::span<const Complex> values) const {
  // Small fixed buffer covers every realistic expression; fall back to heap.
  Complex local[32];
  std::vector<Complex> heap;
  Complex* stack = local;
  if (max_depth_ > 32) {
    heap.resize(max_depth_);
    stack = heap.data();
  }
  std::size_t top = 0;
  for (const auto& ins : code_) {
    switch (ins.op) {
      case Op::kConst: stack[top++] = constants_[static_cast<std::size_t>(ins.arg)]; break;
      case Op::kVar: stack[top++] = values[static_cast<std::size_t>(ins.arg)]; break;
      case Op::kAdd: --top; stack[top - 1] += stack[top]; break;
      case Op::kSub: --top; stack[top - 1] -= stack[top]; break;
      case Op::kMul: --top; stack[top - 1] *= stack[top]; break;
      case Op::kDiv: --top; stack[top - 1] = checked_div(stack[top - 1], stack[top]); break;
      case Op::kNeg: stack[top - 1] = -stack[top - 1]; break;
      case Op::kPow: stack[top - 1] = integer_power(stack[top - 1], ins.arg); break;
      case Op::kExp: stack[top - 1] = std::exp(stack[top - 1]); break;
      case Op::kLog: stack[top - 1] = checked_log(stack[top - 1]); break;
      case Op::kSin: stack[top - 1] = std::sin(stack[top - 1]); break;
      case Op::kCos: stack[top - 1] = std::cos(stack[top - 1]); break;
    }
  }
  return top == 0 ? Complex(0.0) : stack[0];
}

}  // namespace nhg
