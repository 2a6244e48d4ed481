#pragma once

/**
 * Command implementations behind the nmds executable. Each returns the process
 * exit status: 0 success, 2 invalid parameters or malformed input, 3 a failed
 * verification. Output goes to the given streams so that tests can capture it.
 */

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nmds/codes.hpp"

namespace nmds {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitFailed = 3;

/// Defaults overridden by NMDS_CODEWORD_BUDGET, NMDS_SUBMATRIX_BUDGET and
/// NMDS_SUBSET_BUDGET when set.
Budgets budgets_from_env();

struct ConstructOptions {
  std::string theorem;
  /// Named integer parameters: q, n, r, e, f, t, s, l, p, m.
  std::map<std::string, std::int64_t> params;
  std::optional<std::vector<std::int64_t>> indices;
  /// Field modulus coefficients c_0..c_m (monic); default is the smallest irreducible.
  std::optional<std::vector<std::uint32_t>> modulus;
  /// Write the document here; empty means `out`.
  std::string output_path;
  std::optional<std::uint64_t> distance_budget;
};

/// Build, verify and emit a code document. With an output path the summary
/// goes to `out`; without one the document goes to `out` and the summary to `err`.
int cmd_construct(const ConstructOptions& opts, std::ostream& out, std::ostream& err);

/// Re-verify every claim of a code document given as text.
int verify_document(const std::string& text, std::optional<std::uint64_t> distance_budget,
                    std::ostream& out, std::ostream& err);

int cmd_verify(const std::string& input_path, std::optional<std::uint64_t> distance_budget,
               std::ostream& out, std::ostream& err);

struct ClassifySetOptions {
  std::int64_t q = 0;
  std::optional<std::vector<std::uint32_t>> modulus;
  std::vector<std::int64_t> elements;
  std::int64_t k = 0;
};

/// Zero-sum verdict for A and k, cross-checked against the rank classification
/// of C(A, k, 1) when the subset counts fit the budget.
int cmd_classify_set(const ClassifySetOptions& opts, std::ostream& out, std::ostream& err);

/// Per-theorem and union length counts for q, beside the published count if known.
int cmd_scan(std::uint64_t q, bool list, std::ostream& out, std::ostream& err);

int cmd_selfcheck(std::ostream& out, std::ostream& err);

}  // namespace nmds
