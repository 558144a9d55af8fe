#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nhg/error.hpp"
#include "nhg/integrability/certificate.hpp"
#include "nhg/monodromy/monodromy.hpp"
#include "nhg/variational/system.hpp"

namespace nhg {

/// Input error tied to a location in the problem document, e.g.
/// "solution.components[1]".
class FieldError : public Error {
 public:
  FieldError(ErrorCode code, std::string field, const std::string& message,
             std::optional<std::size_t> position = std::nullopt);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct AnalysisOptions {
  int order = 1;
  Complex base_point{1.0, 0.0};
  /// Square of half-width 10 about the base point when absent.
  std::optional<SearchBox> search_box;
  double rtol = 1e-10;
  int word_length = 3;
  double tolerance = 1e-6;
  int samples = 5;
  std::uint64_t seed = 0;

  SearchBox box() const { return search_box ? *search_box : SearchBox::centered(base_point, 10.0); }
};

struct ProblemDefinition {
  std::vector<std::string> variables;
  std::vector<std::string> vector_field;

  struct Certificate {
    std::vector<std::vector<std::string>> commuting_fields;
    std::vector<std::string> first_integrals;
  };
  std::optional<Certificate> certificate;

  struct Solution {
    std::string parameter = "t";
    std::vector<std::string> components;
    std::vector<Complex> excluded_points;
  };
  std::optional<Solution> solution;

  /// Hamiltonians over the cotangent variables, checked as given.
  std::optional<std::vector<std::string>> liouville_hamiltonians;

  AnalysisOptions options;

  // Parsed forms, filled by parse_problem.
  VariableContext context() const { return VariableContext(variables); }
  VectorField field() const;
  IntegrabilityCertificate integrability_certificate() const;
  LiouvilleCertificate liouville_certificate() const;
  SolutionCurve curve() const;

  nlohmann::json to_json() const;
};

/// Validates structure and parses every expression so that malformed
/// input is reported here with its field path.
ProblemDefinition parse_problem(const nlohmann::json& doc);
ProblemDefinition parse_problem_text(const std::string& text);
ProblemDefinition load_problem(const std::string& path);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j, const std::string& field);

}  // namespace nhg
