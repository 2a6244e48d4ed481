#pragma once

/**
 * Evaluation-set builders for the five NMDS self-dual families, and an
 * arithmetic scanner for the lengths they reach.
 *
 * Every builder returns an EvalSet whose elements are distinct, sum to zero,
 * carry a half-size zero-sum witness and have a uniform quadratic character
 * profile of pi_A. All of these are checked at runtime; a failure throws.
 * Element order is construction order: coset by coset, increasing exponent.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "nmds/codes.hpp"
#include "nmds/error.hpp"

namespace nmds {

/// Parameter validation shared by the builders and the length scanner.
/// nullopt means admissible.
std::optional<Error> check_thm33(std::int64_t q, std::int64_t n);
std::optional<Error> check_thm34(std::int64_t q, std::int64_t e, std::int64_t f, std::int64_t t);
/// Coset indices for theorem 3.4: t of them, each in [0, r], distinct mod R.
std::optional<Error> check_thm34_indices(std::int64_t q, std::int64_t f, std::int64_t t,
                                         const std::vector<std::int64_t>& indices);
std::optional<Error> check_thm35(std::int64_t q, std::int64_t s, std::int64_t t);
std::optional<Error> check_thm36(std::int64_t q, std::int64_t r, std::int64_t l, std::int64_t t);
std::optional<Error> check_thm37(std::int64_t q, std::int64_t t, std::int64_t s);

/// Multiplicative subgroup of order n (n = 2 mod 4) or a subgroup of order n/2
/// together with one square coset of it (n = 0 mod 4).
EvalSet build_thm33(const FieldPtr& field, std::int64_t n);

/// Union of t cosets beta^{i} <g^e> with beta = g^{r-1}. Default indices 0..t-1.
EvalSet build_thm34(const FieldPtr& field, std::int64_t e, std::int64_t f, std::int64_t t,
                    std::optional<std::vector<std::int64_t>> indices = std::nullopt);

/// s cosets of F_r^* = <alpha^{r+1}> and t cosets of <alpha^{r-1}>, q = r^2.
EvalSet build_thm35(const FieldPtr& field, std::int64_t s, std::int64_t t);

/// 2t cosets H + xi_i alpha of an l-dimensional F_r-subspace H.
EvalSet build_thm36(const FieldPtr& field, std::int64_t r, std::int64_t l, std::int64_t t);

/// t trace fibres over an F_p-subspace H of F_r, plus s translates of H.
EvalSet build_thm37(const FieldPtr& field, std::int64_t t, std::int64_t s);

/// Two disjoint zero-sum subsets of size t of the additive group (Z_p)^d,
/// elements encoded base p. Built from {x, -x} pairs, plus a zero-sum triple and
/// its negation when t is odd. Exists iff 2 <= t and 2t <= p^d - 1.
struct ZeroSumSplit {
  std::vector<std::uint64_t> first;
  std::vector<std::uint64_t> second;
};
std::optional<ZeroSumSplit> find_zero_sum_split(std::uint32_t p, unsigned d, std::uint64_t t);

/// Coefficients (low degree first) of prod (x - a) over the roots.
std::vector<Fe> product_of_linear_factors(const Field& field, std::span<const Fe> roots);

struct ScanResult {
  std::uint64_t q = 0;
  std::map<Theorem, std::set<std::uint64_t>> per_theorem;
  std::set<std::uint64_t> lengths;
  std::map<std::uint64_t, std::vector<Recipe>> recipes;

  double ratio() const { return q ? static_cast<double>(lengths.size()) / q : 0.0; }
};

/// All even lengths 4 <= n <= 2q + 2 reachable by admissible parameter tuples.
/// Pure arithmetic; no field is constructed.
ScanResult scan_lengths(std::uint64_t q);

/// Published length counts for q in {10201, 11449, 39601}.
std::optional<std::uint64_t> published_length_count(std::uint64_t q);

}  // namespace nmds
