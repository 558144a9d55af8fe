#pragma once

namespace nhg {

enum class Verdict { kPass, kFail, kInconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace nhg
