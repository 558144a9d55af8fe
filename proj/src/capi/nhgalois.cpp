#include "nhgalois/nhgalois.h"

#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "nhg/driver/run.hpp"

struct nhg_problem {
  nhg::ProblemDefinition def;
};

struct nhg_report {
  nhg::RunResult result;
  std::string text;
};

namespace {

struct LastError {
  std::string message;
  std::string field;
  long position = -1;
  nhg::ErrorCode code = nhg::ErrorCode::kInternal;
  bool known = false;
};

thread_local LastError last_error;

nhg_status status_for(nhg::ErrorCode code) {
  using nhg::ErrorCode;
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kUnknownVariable:
    case ErrorCode::kDivisionByZero: return NHG_ERR_PARSE;
    case ErrorCode::kSchema: return NHG_ERR_SCHEMA;
    case ErrorCode::kIo: return NHG_ERR_IO;
    case ErrorCode::kMissingSection: return NHG_ERR_MISSING_SECTION;
    case ErrorCode::kSolutionCheck: return NHG_ERR_SOLUTION_CHECK;
    case ErrorCode::kUnsupported: return NHG_ERR_UNSUPPORTED;
    case ErrorCode::kPole:
    case ErrorCode::kDomain:
    case ErrorCode::kIndeterminate:
    case ErrorCode::kSingularJacobian:
    case ErrorCode::kProximity:
    case ErrorCode::kStepUnderflow:
    case ErrorCode::kNonFinite:
    case ErrorCode::kBlowUp: return NHG_ERR_NUMERIC;
    case ErrorCode::kContextMismatch:
    case ErrorCode::kInvalidArgument: return NHG_ERR_INVALID_ARGUMENT;
    case ErrorCode::kInternal: return NHG_ERR_INTERNAL;
  }
  return NHG_ERR_INTERNAL;
}

nhg_status fail(const nhg::Error& e) {
  last_error.message = e.what();
  last_error.field.clear();
  if (const auto* fe = dynamic_cast<const nhg::FieldError*>(&e)) last_error.field = fe->field();
  last_error.position = e.position() ? static_cast<long>(*e.position()) : -1;
  last_error.code = e.code();
  last_error.known = true;
  return status_for(e.code());
}

nhg_status fail(nhg::ErrorCode code, const std::string& message) { return fail(nhg::Error(code, message)); }

template <typename F>
nhg_status guarded(F&& body) {
  try {
    return body();
  } catch (const nhg::Error& e) {
    return fail(e);
  } catch (const std::bad_alloc&) {
    return fail(nhg::ErrorCode::kInternal, "out of memory");
  } catch (const std::exception& e) {
    return fail(nhg::ErrorCode::kInternal, e.what());
  } catch (...) {
    return fail(nhg::ErrorCode::kInternal, "unknown failure");
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nhg::VariableContext context_from(const char* variables) {
  if (!variables) throw nhg::Error(nhg::ErrorCode::kInvalidArgument, "variables must not be null");
  std::vector<std::string> names;
  std::stringstream ss(variables);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    names.push_back(item.substr(b, e - b + 1));
  }
  return nhg::VariableContext(names);
}

template <typename F>
nhg_status with_problem(nhg_problem* p, F&& update) {
  if (!p) return fail(nhg::ErrorCode::kInvalidArgument, "problem must not be null");
  return guarded([&] {
    nhg::ProblemDefinition copy = p->def;
    update(copy.options);
    // Reuse the document validation for the option ranges.
    nlohmann::json doc = copy.to_json();
    copy.options = nhg::parse_problem(doc).options;
    p->def = std::move(copy);
    return NHG_OK;
  });
}

}  // namespace

extern "C" {

const char* nhg_version(void) { return nhg::tool_version(); }

const char* nhg_status_string(nhg_status status) {
  switch (status) {
    case NHG_OK: return "ok";
    case NHG_ERR_PARSE: return "parse error";
    case NHG_ERR_SCHEMA: return "schema violation";
    case NHG_ERR_IO: return "i/o error";
    case NHG_ERR_MISSING_SECTION: return "missing section";
    case NHG_ERR_SOLUTION_CHECK: return "solution check failed";
    case NHG_ERR_UNSUPPORTED: return "unsupported input";
    case NHG_ERR_NUMERIC: return "numeric failure";
    case NHG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case NHG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* nhg_last_error(void) { return last_error.message.c_str(); }
const char* nhg_last_error_field(void) { return last_error.field.c_str(); }
long nhg_last_error_position(void) { return last_error.position; }

nhg_status nhg_problem_load(const char* path, nhg_problem** out) {
  if (!path || !out) return fail(nhg::ErrorCode::kInvalidArgument, "path and out must not be null");
  *out = nullptr;
  return guarded([&] {
    *out = new nhg_problem{nhg::load_problem(path)};
    return NHG_OK;
  });
}

nhg_status nhg_problem_parse(const char* json_text, nhg_problem** out) {
  if (!json_text || !out) return fail(nhg::ErrorCode::kInvalidArgument, "text and out must not be null");
  *out = nullptr;
  return guarded([&] {
    *out = new nhg_problem{nhg::parse_problem_text(json_text)};
    return NHG_OK;
  });
}

void nhg_problem_free(nhg_problem* problem) { delete problem; }

nhg_status nhg_problem_set_order(nhg_problem* p, int order) {
  return with_problem(p, [&](nhg::AnalysisOptions& o) { o.order = order; });
}

nhg_status nhg_problem_set_base_point(nhg_problem* p, double re, double im) {
  return with_problem(p, [&](nhg::AnalysisOptions& o) {
    const bool derived_box = !o.search_box;
    o.base_point = {re, im};
    if (derived_box) o.search_box.reset();
  });
}

nhg_status nhg_problem_set_rtol(nhg_problem* p, double rtol) {
  return with_problem(p, [&](nhg::AnalysisOptions& o) { o.rtol = rtol; });
}

nhg_status nhg_problem_set_tolerance(nhg_problem* p, double tolerance) {
  return with_problem(p, [&](nhg::AnalysisOptions& o) { o.tolerance = tolerance; });
}

nhg_status nhg_problem_set_word_length(nhg_problem* p, int word_length) {
  return with_problem(p, [&](nhg::AnalysisOptions& o) { o.word_length = word_length; });
}

nhg_status nhg_problem_set_samples(nhg_problem* p, int samples) {
  return with_problem(p, [&](nhg::AnalysisOptions& o) { o.samples = samples; });
}

nhg_status nhg_problem_set_seed(nhg_problem* p, uint64_t seed) {
  if (seed > static_cast<uint64_t>(INT64_MAX)) {
    return fail(nhg::ErrorCode::kInvalidArgument, "seed must fit in a signed 64-bit integer");
  }
  return with_problem(p, [&](nhg::AnalysisOptions& o) { o.seed = seed; });
}

nhg_status nhg_run(const nhg_problem* problem, const char* command, nhg_report** out) {
  if (!problem || !command || !out) return fail(nhg::ErrorCode::kInvalidArgument, "arguments must not be null");
  *out = nullptr;
  const auto c = nhg::command_from_name(command);
  if (!c) return fail(nhg::ErrorCode::kInvalidArgument, std::string("unknown command '") + command + "'");
  return guarded([&] {
    *out = new nhg_report{nhg::run(*c, problem->def), {}};
    return NHG_OK;
  });
}

nhg_status nhg_error_report(const char* command, nhg_report** out) {
  if (!command || !out) return fail(nhg::ErrorCode::kInvalidArgument, "arguments must not be null");
  *out = nullptr;
  const LastError saved = last_error;
  return guarded([&] {
    const nhg::Error base = saved.position >= 0
                                ? nhg::Error(saved.code, saved.message, static_cast<std::size_t>(saved.position))
                                : nhg::Error(saved.code, saved.known ? saved.message : "no error recorded");
    if (!saved.field.empty()) {
      const nhg::FieldError fe(saved.code, saved.field, saved.message,
                               saved.position >= 0 ? std::optional<std::size_t>(saved.position) : std::nullopt);
      *out = new nhg_report{nhg::error_result(command, fe), {}};
    } else {
      *out = new nhg_report{nhg::error_result(command, base), {}};
    }
    return NHG_OK;
  });
}

int nhg_report_exit_code(const nhg_report* report) { return report ? report->result.exit_code : 2; }

const char* nhg_report_status(const nhg_report* report) {
  if (!report) return "error";
  const auto it = report->result.report.find("status");
  return it != report->result.report.end() && it->is_string() ? it->get_ref<const std::string&>().c_str() : "error";
}

const char* nhg_report_json(nhg_report* report, int indent, int include_timing) {
  if (!report) return nullptr;
  nlohmann::json doc = report->result.report;
  if (!include_timing) doc.erase("timing");
  report->text = doc.dump(indent < 0 ? -1 : indent);
  return report->text.c_str();
}

void nhg_report_free(nhg_report* report) { delete report; }

nhg_status nhg_normalize(const char* expression, const char* variables, char** out) {
  if (!expression || !out) return fail(nhg::ErrorCode::kInvalidArgument, "arguments must not be null");
  *out = nullptr;
  return guarded([&] {
    *out = duplicate(nhg::normalize(nhg::parse(expression, context_from(variables))).to_string());
    return NHG_OK;
  });
}

nhg_status nhg_differentiate(const char* expression, const char* variables, const char* variable, char** out) {
  if (!expression || !variable || !out) return fail(nhg::ErrorCode::kInvalidArgument, "arguments must not be null");
  *out = nullptr;
  return guarded([&] {
    const auto ctx = context_from(variables);
    if (!ctx.contains(variable)) {
      throw nhg::Error(nhg::ErrorCode::kUnknownVariable, std::string("unknown variable '") + variable + "'");
    }
    *out = duplicate(nhg::differentiate(nhg::parse(expression, ctx), variable).to_string());
    return NHG_OK;
  });
}

nhg_status nhg_is_zero(const char* expression, const char* variables, nhg_zero_verdict* out) {
  if (!expression || !out) return fail(nhg::ErrorCode::kInvalidArgument, "arguments must not be null");
  return guarded([&] {
    switch (nhg::is_zero(nhg::parse(expression, context_from(variables)))) {
      case nhg::ZeroVerdict::kExactZero: *out = NHG_EXACT_ZERO; break;
      case nhg::ZeroVerdict::kProbablyZero: *out = NHG_PROBABLY_ZERO; break;
      case nhg::ZeroVerdict::kNonzero: *out = NHG_NONZERO; break;
    }
    return NHG_OK;
  });
}

nhg_status nhg_cotangent_lift(const char* const* components, size_t count, const char* variables, char** hamiltonian,
                              char** lifted) {
  if (!components || !hamiltonian || !lifted) {
    return fail(nhg::ErrorCode::kInvalidArgument, "arguments must not be null");
  }
  *hamiltonian = nullptr;
  *lifted = nullptr;
  return guarded([&] {
    const auto ctx = context_from(variables);
    std::vector<std::string> texts;
    for (size_t i = 0; i < count; ++i) {
      if (!components[i]) throw nhg::Error(nhg::ErrorCode::kInvalidArgument, "component must not be null");
      texts.emplace_back(components[i]);
    }
    if (texts.size() != ctx.dimension()) {
      throw nhg::Error(nhg::ErrorCode::kInvalidArgument, "component count differs from the variable count");
    }
    const nhg::VectorField X = nhg::VectorField::parse(ctx, texts);
    const nhg::CotangentContext cc(ctx);
    const nhg::VectorField xh = nhg::cotangent_lift_field(X, cc);
    std::string joined;
    for (std::size_t i = 0; i < xh.dimension(); ++i) joined += (i ? "\n" : "") + xh[i].to_string();
    char* h = duplicate(nhg::fiber_hamiltonian(X, cc).value().to_string());
    try {
      *lifted = duplicate(joined);
    } catch (...) {
      std::free(h);
      throw;
    }
    *hamiltonian = h;
    return NHG_OK;
  });
}

void nhg_string_free(char* s) { std::free(s); }

}  // extern "C"
