#include "nhg/driver/problem.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace nhg {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& field, const std::string& message) {
  throw FieldError(ErrorCode::kSchema, field, field + ": " + message);
}

void only_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) schema(where.empty() ? it.key() : where + "." + it.key(), "unknown field");
  }
}

const json& member(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    const std::string field = where.empty() ? key : where + "." + key;
    throw FieldError(ErrorCode::kMissingSection, field, field + " required");
  }
  return *it;
}


std::vector<std::string> string_list(const json& j, const std::string& field) {
  if (!j.is_array()) schema(field, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) schema(field + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) schema(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema(field, "expected a finite number");
  return v;
}

long long integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) schema(field, "expected an integer");
  return j.get<long long>();
}

void check_expressions(const std::vector<std::string>& texts, const VariableContext& ctx, const std::string& field) {
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    try {
      parse(texts[i], ctx);
    } catch (const Error& e) {
      throw FieldError(e.code(), f, f + ": " + e.what(), e.position());
    }
  }
}

VariableContext extended_context(const std::vector<std::string>& variables) {
  return CotangentContext(VariableContext(variables)).extended();
}

}  // namespace

FieldError::FieldError(ErrorCode code, std::string field, const std::string& message,
                       std::optional<std::size_t> position)
    : Error(position ? Error(code, message, *position) : Error(code, message)), field_(std::move(field)) {}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return {number(j, field), 0.0};
  if (!j.is_array() || j.size() != 2) schema(field, "expected a complex number [re, im]");
  return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
}

VectorField ProblemDefinition::field() const { return VectorField::parse(context(), vector_field); }

IntegrabilityCertificate ProblemDefinition::integrability_certificate() const {
  if (!certificate) throw FieldError(ErrorCode::kMissingSection, "certificate", "certificate required");
  const VariableContext ctx = context();
  IntegrabilityCertificate cert{field(), {}, {}};
  for (const auto& f : certificate->commuting_fields) cert.commuting_fields.push_back(VectorField::parse(ctx, f));
  for (const auto& f : certificate->first_integrals) cert.first_integrals.emplace_back(ctx, parse(f, ctx));
  return cert;
}

LiouvilleCertificate ProblemDefinition::liouville_certificate() const {
  if (!liouville_hamiltonians) {
    throw FieldError(ErrorCode::kMissingSection, "liouville_certificate", "liouville_certificate required");
  }
  CotangentContext cc(context());
  LiouvilleCertificate lc{cc, {}, std::nullopt};
  for (const auto& h : *liouville_hamiltonians) lc.hamiltonians.emplace_back(cc.extended(), parse(h, cc.extended()));
  if (certificate && !certificate->commuting_fields.empty()) {
    lc.source = VectorField::parse(context(), certificate->commuting_fields.front());
  } else {
    lc.source = field();
  }
  return lc;
}

SolutionCurve ProblemDefinition::curve() const {
  if (!solution) throw FieldError(ErrorCode::kMissingSection, "solution", "solution required");
  return SolutionCurve::parse(solution->parameter, solution->components, solution->excluded_points);
}

json ProblemDefinition::to_json() const {
  json j;
  j["variables"] = variables;
  j["vector_field"] = vector_field;
  if (certificate) {
    j["certificate"] = {{"commuting_fields", certificate->commuting_fields},
                        {"first_integrals", certificate->first_integrals}};
  }
  if (solution) {
    json pts = json::array();
    for (const Complex z : solution->excluded_points) pts.push_back(complex_to_json(z));
    j["solution"] = {{"parameter", solution->parameter}, {"components", solution->components}, {"excluded_points", pts}};
  }
  if (liouville_hamiltonians) j["liouville_certificate"] = {{"hamiltonians", *liouville_hamiltonians}};
  const SearchBox box = options.box();
  j["options"] = {{"order", options.order},
                  {"base_point", complex_to_json(options.base_point)},
                  {"search_box", {{"lower", complex_to_json(box.lower)}, {"upper", complex_to_json(box.upper)}}},
                  {"rtol", options.rtol},
                  {"word_length", options.word_length},
                  {"tolerance", options.tolerance},
                  {"samples", options.samples},
                  {"seed", options.seed}};
  return j;
}

ProblemDefinition parse_problem(const json& doc) {
  if (!doc.is_object()) schema("$", "problem must be a JSON object");
  only_keys(doc, "", {"name", "description", "variables", "vector_field", "certificate", "solution",
                      "liouville_certificate", "options"});
  ProblemDefinition p;
  p.variables = string_list(member(doc, "variables", ""), "variables");
  if (p.variables.empty()) schema("variables", "at least one variable required");
  VariableContext ctx = [&] {
    try {
      return VariableContext(p.variables);
    } catch (const Error& e) {
      throw FieldError(ErrorCode::kSchema, "variables", std::string("variables: ") + e.what());
    }
  }();

  p.vector_field = string_list(member(doc, "vector_field", ""), "vector_field");
  if (p.vector_field.size() != p.variables.size()) {
    schema("vector_field", "has " + std::to_string(p.vector_field.size()) + " components for " +
                               std::to_string(p.variables.size()) + " variables");
  }
  check_expressions(p.vector_field, ctx, "vector_field");

  if (auto it = doc.find("certificate"); it != doc.end()) {
    const json& c = *it;
    if (!c.is_object()) schema("certificate", "expected an object");
    only_keys(c, "certificate", {"commuting_fields", "first_integrals"});
    ProblemDefinition::Certificate cert;
    const json& fields = member(c, "commuting_fields", "certificate");
    if (!fields.is_array() || fields.empty()) schema("certificate.commuting_fields", "expected a non-empty array");
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const std::string f = "certificate.commuting_fields[" + std::to_string(i) + "]";
      auto comps = string_list(fields[i], f);
      if (comps.size() != p.variables.size()) {
        schema(f, "has " + std::to_string(comps.size()) + " components for " + std::to_string(p.variables.size()) +
                      " variables");
      }
      check_expressions(comps, ctx, f);
      cert.commuting_fields.push_back(std::move(comps));
    }
    if (auto fi = c.find("first_integrals"); fi != c.end()) {
      cert.first_integrals = string_list(*fi, "certificate.first_integrals");
      check_expressions(cert.first_integrals, ctx, "certificate.first_integrals");
    }
    p.certificate = std::move(cert);
  }

  if (auto it = doc.find("solution"); it != doc.end()) {
    const json& s = *it;
    if (!s.is_object()) schema("solution", "expected an object");
    only_keys(s, "solution", {"parameter", "components", "excluded_points"});
    ProblemDefinition::Solution sol;
    if (auto pit = s.find("parameter"); pit != s.end()) {
      if (!pit->is_string()) schema("solution.parameter", "expected a string");
      sol.parameter = pit->get<std::string>();
    }
    if (!is_valid_identifier(sol.parameter) || is_reserved_name(sol.parameter)) {
      schema("solution.parameter", "'" + sol.parameter + "' is not a valid parameter name");
    }
    if (ctx.contains(sol.parameter)) schema("solution.parameter", "'" + sol.parameter + "' is also a variable");
    sol.components = string_list(member(s, "components", "solution"), "solution.components");
    if (sol.components.size() != p.variables.size()) {
      schema("solution.components", "has " + std::to_string(sol.components.size()) + " components for " +
                                        std::to_string(p.variables.size()) + " variables");
    }
    check_expressions(sol.components, VariableContext({sol.parameter}), "solution.components");
    if (auto eit = s.find("excluded_points"); eit != s.end()) {
      if (!eit->is_array()) schema("solution.excluded_points", "expected an array");
      for (std::size_t i = 0; i < eit->size(); ++i) {
        sol.excluded_points.push_back(
            complex_from_json((*eit)[i], "solution.excluded_points[" + std::to_string(i) + "]"));
      }
    }
    p.solution = std::move(sol);
  }

  if (auto it = doc.find("liouville_certificate"); it != doc.end()) {
    if (!it->is_object()) schema("liouville_certificate", "expected an object");
    only_keys(*it, "liouville_certificate", {"hamiltonians"});
    auto hs = string_list(member(*it, "hamiltonians", "liouville_certificate"), "liouville_certificate.hamiltonians");
    check_expressions(hs, extended_context(p.variables), "liouville_certificate.hamiltonians");
    p.liouville_hamiltonians = std::move(hs);
  }

  if (auto it = doc.find("options"); it != doc.end()) {
    const json& o = *it;
    if (!o.is_object()) schema("options", "expected an object");
    only_keys(o, "options", {"order", "base_point", "search_box", "rtol", "word_length", "tolerance", "samples", "seed"});
    AnalysisOptions& opt = p.options;
    if (o.contains("order")) opt.order = static_cast<int>(integer(o["order"], "options.order"));
    if (o.contains("base_point")) opt.base_point = complex_from_json(o["base_point"], "options.base_point");
    if (o.contains("search_box")) {
      const json& b = o["search_box"];
      if (!b.is_object()) schema("options.search_box", "expected an object with lower and upper corners");
      only_keys(b, "options.search_box", {"lower", "upper"});
      opt.search_box = SearchBox{complex_from_json(member(b, "lower", "options.search_box"), "options.search_box.lower"),
                                 complex_from_json(member(b, "upper", "options.search_box"), "options.search_box.upper")};
    }
    if (o.contains("rtol")) opt.rtol = number(o["rtol"], "options.rtol");
    if (o.contains("word_length")) opt.word_length = static_cast<int>(integer(o["word_length"], "options.word_length"));
    if (o.contains("tolerance")) opt.tolerance = number(o["tolerance"], "options.tolerance");
    if (o.contains("samples")) opt.samples = static_cast<int>(integer(o["samples"], "options.samples"));
    if (o.contains("seed")) {
      const long long s = integer(o["seed"], "options.seed");
      if (s < 0) schema("options.seed", "expected a non-negative integer");
      opt.seed = static_cast<std::uint64_t>(s);
    }
  }
  const AnalysisOptions& opt = p.options;
  if (opt.order < 1 || opt.order > 8) schema("options.order", "must be between 1 and 8");
  if (!(opt.rtol > 0.0 && opt.rtol < 1.0)) schema("options.rtol", "must lie in (0, 1)");
  if (opt.word_length < 1 || opt.word_length > 8) schema("options.word_length", "must be between 1 and 8");
  if (!(opt.tolerance > 0.0)) schema("options.tolerance", "must be positive");
  if (opt.samples < 1) schema("options.samples", "must be positive");
  if (opt.search_box && (opt.search_box->lower.real() > opt.search_box->upper.real() ||
                         opt.search_box->lower.imag() > opt.search_box->upper.imag())) {
    schema("options.search_box", "lower corner must not exceed the upper corner");
  }
  return p;
}

ProblemDefinition parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FieldError(ErrorCode::kSchema, "$", std::string("invalid JSON: ") + e.what(), e.byte);
  }
  return parse_problem(doc);
}

ProblemDefinition load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  return parse_problem_text(buf.str());
}

}  // namespace nhg
