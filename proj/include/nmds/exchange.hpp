#pragma once

/**
 * Code exchange document: a pretty-printed JSON object with fixed key order.
 *
 *   field          {p, m, modulus}
 *   n, k
 *   generator      {rows, cols, entries}
 *   recipe         {theorem, params, coset_indices?}
 *   lambda         [int]
 *   eval_set       [int]
 *   witness        [index] (absent when none)
 *   classification {verdict, d?, evidence}
 *   verification   {self_dual, gram, rank_checks, checks}
 *
 * All field elements are canonical integer encodings.
 */

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nmds/codes.hpp"
#include "nmds/lambda.hpp"

namespace nmds {

using Json = nlohmann::ordered_json;

Json field_to_json(const FieldSpec& spec);
FieldSpec field_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const FieldPtr& field, const Json& j);

Json classification_to_json(const Classification& c);

Json code_document(const EvalSet& points, const PipelineResult& result);

/// Everything a document claims, decoded. Structural problems (missing keys,
/// wrong types, out-of-range elements, inconsistent sizes) throw MalformedInput.
struct CodeDocument {
  FieldPtr field;
  std::size_t n = 0;
  std::size_t k = 0;
  Matrix generator;
  Recipe recipe;
  std::vector<Fe> lambda;
  std::vector<Fe> eval_set;
  std::optional<std::vector<std::size_t>> witness;
  Classification claimed;  // verdict, d and evidence as stored
  std::optional<Matrix> gram;
  std::optional<bool> self_dual;
};

CodeDocument parse_code_document(const std::string& text);

}  // namespace nmds
