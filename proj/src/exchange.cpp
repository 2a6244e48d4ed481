#include "nmds/exchange.hpp"

#include <string>
#include <utility>

#include "nmds/error.hpp"

namespace nmds {

namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(Errc::MalformedInput, why); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::uint64_t as_uint(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    malformed(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::vector<std::uint64_t> as_uint_array(const Json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  std::vector<std::uint64_t> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(as_uint(x, what));
  return out;
}

std::vector<Fe> as_elements(const Field& f, const Json& j, const char* what) {
  std::vector<Fe> out;
  for (auto v : as_uint_array(j, what)) {
    if (v >= f.order()) malformed(std::string(what) + ": " + std::to_string(v) + " is not in F_q");
    out.push_back(Fe{static_cast<std::uint32_t>(v)});
  }
  return out;
}

std::vector<std::size_t> as_indices(const Json& j, const char* what) {
  std::vector<std::size_t> out;
  for (auto v : as_uint_array(j, what)) out.push_back(static_cast<std::size_t>(v));
  return out;
}

Json elements_to_json(std::span<const Fe> xs) {
  Json a = Json::array();
  for (auto x : xs) a.push_back(x.value);
  return a;
}

}  // namespace

Json field_to_json(const FieldSpec& spec) {
  Json j;
  j["p"] = spec.p;
  j["m"] = spec.m;
  j["modulus"] = spec.modulus;
  return j;
}

FieldSpec field_from_json(const Json& j) {
  FieldSpec spec;
  spec.p = static_cast<std::uint32_t>(as_uint(member(j, "p"), "field.p"));
  spec.m = static_cast<unsigned>(as_uint(member(j, "m"), "field.m"));
  for (auto c : as_uint_array(member(j, "modulus"), "field.modulus")) {
    spec.modulus.push_back(static_cast<std::uint32_t>(c));
  }
  return spec;
}

Json matrix_to_json(const Matrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = elements_to_json(m.entries());
  return j;
}

Matrix matrix_from_json(const FieldPtr& field, const Json& j) {
  const auto rows = as_uint(member(j, "rows"), "rows");
  const auto cols = as_uint(member(j, "cols"), "cols");
  auto entries = as_elements(*field, member(j, "entries"), "entries");
  if (entries.size() != rows * cols) malformed("matrix entry count does not match rows x cols");
  return Matrix(field, rows, cols, std::move(entries));
}

Json classification_to_json(const Classification& c) {
  Json j;
  j["verdict"] = verdict_name(c.verdict);
  if (c.distance) j["d"] = *c.distance;
  Json ev;
  switch (c.verdict) {
    case Verdict::MDS:
      ev["dependent_count"] = 0;
      break;
    case Verdict::NMDS:
      ev["dependent_count"] = c.dependent_count;
      ev["dependent_subsets"] = c.dependent_subsets;
      break;
    case Verdict::Other:
      ev["violated_clause"] = c.violated_clause;
      ev["violating_subset"] = c.violating_subset;
      break;
  }
  j["evidence"] = ev;
  return j;
}

Json code_document(const EvalSet& points, const PipelineResult& result) {
  const LinearCode& code = result.code;
  const Recipe& recipe = points.recipe();
  Json doc;
  doc["field"] = field_to_json(points.field().spec());
  doc["n"] = code.n();
  doc["k"] = code.k();
  doc["generator"] = matrix_to_json(code.generator());

  Json r;
  r["theorem"] = theorem_id(recipe.theorem);
  Json params = Json::object();
  for (const auto& [name, value] : recipe.params) params[name] = value;
  r["params"] = params;
  if (!recipe.coset_indices.empty()) r["coset_indices"] = recipe.coset_indices;
  doc["recipe"] = r;

  doc["lambda"] = elements_to_json(result.lambda.values());
  doc["eval_set"] = elements_to_json(points.elements());
  if (points.witness()) doc["witness"] = *points.witness();
  doc["classification"] = classification_to_json(result.classification);

  Json v;
  v["self_dual"] = result.self_duality.self_dual;
  v["gram"] = matrix_to_json(result.self_duality.gram);
  v["rank_checks"] = {{"k_minus_1", result.classification.checked_km1},
                      {"k", result.classification.checked_k},
                      {"k_plus_1", result.classification.checked_kp1}};
  v["checks"] = recipe.checks;
  doc["verification"] = v;
  return doc;
}

CodeDocument parse_code_document(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    malformed(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) malformed("document must be a JSON object");

  FieldPtr field;
  try {
    field = Field::create(field_from_json(member(doc, "field")));
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedInput) throw;
    malformed(std::string("field: ") + e.what());
  }

  const auto n = static_cast<std::size_t>(as_uint(member(doc, "n"), "n"));
  const auto k = static_cast<std::size_t>(as_uint(member(doc, "k"), "k"));
  Matrix generator = matrix_from_json(field, member(doc, "generator"));
  if (generator.rows() != k || generator.cols() != n) malformed("generator is not k x n");

  Recipe recipe;
  const Json& r = member(doc, "recipe");
  const Json& th = member(r, "theorem");
  if (!th.is_string()) malformed("recipe.theorem must be a string");
  const auto parsed = parse_theorem(th.get<std::string>());
  if (!parsed) malformed("unknown theorem '" + th.get<std::string>() + "'");
  recipe.theorem = *parsed;
  const Json& params = member(r, "params");
  if (!params.is_object()) malformed("recipe.params must be an object");
  for (const auto& [name, value] : params.items()) {
    if (!value.is_number_integer()) malformed("recipe.params." + name + " must be an integer");
    recipe.params[name] = value.get<std::int64_t>();
  }
  if (r.contains("coset_indices")) {
    for (auto i : as_uint_array(r.at("coset_indices"), "recipe.coset_indices")) {
      recipe.coset_indices.push_back(static_cast<std::int64_t>(i));
    }
  }

  auto lambda = as_elements(*field, member(doc, "lambda"), "lambda");
  auto eval_set = as_elements(*field, member(doc, "eval_set"), "eval_set");
  if (lambda.size() != n || eval_set.size() != n) malformed("lambda and eval_set must have n entries");

  std::optional<std::vector<std::size_t>> witness;
  if (doc.contains("witness")) {
    witness = as_indices(doc.at("witness"), "witness");
    for (auto i : *witness) {
      if (i >= n) malformed("witness index out of range");
    }
  }

  Classification claimed;
  const Json& c = member(doc, "classification");
  const Json& verdict = member(c, "verdict");
  if (!verdict.is_string()) malformed("classification.verdict must be a string");
  const auto v = verdict.get<std::string>();
  if (v == "MDS") {
    claimed.verdict = Verdict::MDS;
  } else if (v == "NMDS") {
    claimed.verdict = Verdict::NMDS;
  } else if (v == "OTHER") {
    claimed.verdict = Verdict::Other;
  } else {
    malformed("unknown verdict '" + v + "'");
  }
  if (c.contains("d")) claimed.distance = static_cast<std::size_t>(as_uint(c.at("d"), "d"));
  const Json& ev = member(c, "evidence");
  if (ev.contains("dependent_count")) {
    claimed.dependent_count = as_uint(ev.at("dependent_count"), "dependent_count");
  }
  if (ev.contains("dependent_subsets")) {
    const Json& subsets = ev.at("dependent_subsets");
    if (!subsets.is_array()) malformed("dependent_subsets must be an array");
    for (const auto& s : subsets) claimed.dependent_subsets.push_back(as_indices(s, "subset"));
  }
  if (ev.contains("violated_clause")) {
    if (!ev.at("violated_clause").is_string()) malformed("violated_clause must be a string");
    claimed.violated_clause = ev.at("violated_clause").get<std::string>();
  }
  if (ev.contains("violating_subset")) {
    claimed.violating_subset = as_indices(ev.at("violating_subset"), "violating_subset");
  }

  std::optional<Matrix> gram;
  if (doc.contains("verification") && doc.at("verification").contains("gram")) {
    gram = matrix_from_json(field, doc.at("verification").at("gram"));
  }
  std::optional<bool> self_dual;
  if (doc.contains("verification") && doc.at("verification").contains("self_dual")) {
    const Json& flag = doc.at("verification").at("self_dual");
    if (!flag.is_boolean()) malformed("self_dual must be a boolean");
    self_dual = flag.get<bool>();
  }

  return CodeDocument{field,           n,
                      k,               std::move(generator),
                      std::move(recipe), std::move(lambda),
                      std::move(eval_set), std::move(witness),
                      std::move(claimed), std::move(gram),
                      self_dual};
}

}  // namespace nmds
