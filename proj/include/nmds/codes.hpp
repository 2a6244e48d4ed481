#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nmds/gf.hpp"
#include "nmds/linalg.hpp"

namespace nmds {

enum class Theorem { Custom, T33, T34, T35, T36, T37 };

/// "3.3" ... "3.7", or "custom".
const char* theorem_id(Theorem t) noexcept;
std::optional<Theorem> parse_theorem(std::string_view id);

/// How an evaluation set (and hence a code) was produced.
struct Recipe {
  Theorem theorem = Theorem::Custom;
  std::map<std::string, std::int64_t> params;
  std::vector<std::int64_t> coset_indices;
  std::optional<FieldSpec> field_override;
  /// Facts the builder verified at runtime, in the order they were checked.
  std::vector<std::string> checks;
};

/// Ordered set of distinct points with an optional half-size zero-sum witness
/// (indices into the elements). Both properties are checked on construction.
class EvalSet {
 public:
  EvalSet(FieldPtr field, std::vector<Fe> elements,
          std::optional<std::vector<std::size_t>> witness = std::nullopt, Recipe recipe = {});

  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::span<const Fe> elements() const noexcept { return elements_; }
  Fe operator[](std::size_t i) const { return elements_[i]; }
  const std::optional<std::vector<std::size_t>>& witness() const noexcept { return witness_; }
  const Recipe& recipe() const noexcept { return recipe_; }
  Recipe& recipe() noexcept { return recipe_; }

 private:
  FieldPtr field_;
  std::vector<Fe> elements_;
  std::optional<std::vector<std::size_t>> witness_;
  Recipe recipe_;
};

/// Column multipliers; every entry nonzero.
class MultiplierVector {
 public:
  explicit MultiplierVector(std::vector<Fe> values);
  static MultiplierVector ones(std::size_t n) { return MultiplierVector(std::vector<Fe>(n, Fe{1})); }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const Fe> values() const noexcept { return values_; }
  Fe operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<Fe> values_;
};

/// A k x n generator of full row rank, n > k.
class LinearCode {
 public:
  explicit LinearCode(Matrix generator, Recipe recipe = {});

  const Field& field() const noexcept { return generator_.field(); }
  const FieldPtr& field_ptr() const noexcept { return generator_.field_ptr(); }
  std::size_t n() const noexcept { return generator_.cols(); }
  std::size_t k() const noexcept { return generator_.rows(); }
  const Matrix& generator() const noexcept { return generator_; }
  const Recipe& recipe() const noexcept { return recipe_; }

 private:
  Matrix generator_;
  Recipe recipe_;
};

struct Budgets {
  std::uint64_t codewords = 10'000'000;
  std::uint64_t submatrices = 1'000'000;
  std::uint64_t subsets = 10'000'000;
  /// Dependent k-subsets retained as NMDS evidence.
  std::size_t max_evidence = 256;
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);  // saturates at UINT64_MAX

/// Row exponents of the generator, top to bottom: (k, k-2, k-3, ..., 1, 0).
/// The exponent k-1 never appears; k = 1 gives the single exponent 1.
std::vector<unsigned> row_exponents(std::size_t k);

/// Rows indexed by `exponents`, columns by `points`: entry multipliers[j] * points[j]^e.
/// Empty multipliers means all ones.
Matrix exponent_matrix(const FieldPtr& field, std::span<const Fe> points,
                       std::span<const unsigned> exponents, std::span<const Fe> multipliers = {});

LinearCode build_code(const EvalSet& points, std::size_t k, const MultiplierVector& lambda);

/// (sum of points) * prod_{s<t} (points[t] - points[s]).
Fe det_shifted_vandermonde(const Field& field, std::span<const Fe> points);

struct SelfDualityReport {
  bool self_dual = false;
  Matrix gram;  // G G^T
};

SelfDualityReport is_self_dual(const LinearCode& code);

/// Exact minimum weight over all q^k - 1 nonzero codewords.
std::size_t min_distance_bruteforce(const LinearCode& code, std::uint64_t budget);

enum class Verdict { MDS, NMDS, Other };
const char* verdict_name(Verdict v) noexcept;

struct Classification {
  Verdict verdict = Verdict::Other;
  /// Set only when the distance was enumerated.
  std::optional<std::size_t> distance;
  /// k-subsets of columns with rank < k (first max_evidence in lexicographic order).
  std::vector<std::vector<std::size_t>> dependent_subsets;
  std::uint64_t dependent_count = 0;
  /// For Other: "(1)" or "(3)" and the offending column subset.
  std::string violated_clause;
  std::vector<std::size_t> violating_subset;
  std::uint64_t checked_km1 = 0;
  std::uint64_t checked_k = 0;
  std::uint64_t checked_kp1 = 0;
};

/// MDS when every k columns are independent; NMDS when every k-1 columns are
/// independent, some k columns are dependent and every k+1 columns have rank k.
Classification classify_by_ranks(const LinearCode& code, const Budgets& budgets = {});

/// Re-derives the ranks cited in the evidence.
bool recheck_evidence(const LinearCode& code, const Classification& c);

/// Lexicographically first size-k index subset summing to zero, if any.
std::optional<std::vector<std::size_t>> has_zero_sum_k_subset(const EvalSet& points, std::size_t k,
                                                              std::uint64_t budget = 10'000'000);

/// prod_{j != i} (a_i - a_j).
Fe pi_A(const EvalSet& points, std::size_t i);

Fe sum_of(const Field& field, std::span<const Fe> xs);

}  // namespace nmds
