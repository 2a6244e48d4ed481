#pragma once

#include <vector>

#include "nmds/codes.hpp"

namespace nmds {

struct EtaProfile {
  std::vector<int> values;  // eta(pi_A(a_i))
  bool uniform = false;
};

EtaProfile eta_profile(const EvalSet& points);

/// The 2k x 2k matrix with exponent rows (2k, 2k-2, ..., 1, 0) on the points.
/// Its kernel holds (lambda_1^2, ..., lambda_2k^2) for every self-dual C(A, k, lambda).
Matrix self_duality_system(const EvalSet& points);

/// Exponents j with sum lambda_i^2 a_i^j = 0 required: 0..2k-2 and 2k.
std::vector<unsigned> self_duality_exponents(std::size_t k);

/// lambda_i = sqrt(c / pi_A(a_i)) with c = 1, or c = g when 1/pi_A(a_1) is a
/// non-square. The result is checked against the full system before returning.
MultiplierVector solve_lambda(const EvalSet& points);

struct PipelineOptions {
  Budgets budgets;
  /// Enumerate the minimum distance when q^k fits the codeword budget.
  bool brute_force_distance = true;
};

struct PipelineResult {
  MultiplierVector lambda;
  LinearCode code;
  SelfDualityReport self_duality;
  Classification classification;
};

/// Solve for lambda, build C(A, |A|/2, lambda), check self-duality and classify.
/// A witness on the set must yield NMDS; a k-zero-sum-free set must yield MDS.
PipelineResult pipeline(const EvalSet& points, const PipelineOptions& options = {});

}  // namespace nmds
