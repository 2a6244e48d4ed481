#include "nmds/lambda.hpp"

#include <string>
#include <utility>

#include "nmds/error.hpp"

namespace nmds {

EtaProfile eta_profile(const EvalSet& points) {
  EtaProfile profile;
  profile.values.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    profile.values.push_back(points.field().eta(pi_A(points, i)));
  }
  profile.uniform = true;
  for (auto v : profile.values) profile.uniform = profile.uniform && v == profile.values.front();
  return profile;
}

std::vector<unsigned> self_duality_exponents(std::size_t k) {
  std::vector<unsigned> e;
  for (unsigned j = 0; j + 1 < 2 * k; ++j) e.push_back(j);
  e.push_back(static_cast<unsigned>(2 * k));
  return e;
}

Matrix self_duality_system(const EvalSet& points) {
  if (points.size() % 2 != 0) {
    throw Error(Errc::InvalidParams, "self-duality system needs an even number of points");
  }
  return exponent_matrix(points.field_ptr(), points.elements(), row_exponents(points.size()));
}

MultiplierVector solve_lambda(const EvalSet& points) {
  const Field& f = points.field();
  const std::size_t n = points.size();
  if (n < 2 || n % 2 != 0) {
    throw Error(Errc::InvalidParams, "need an even number of points, got " + std::to_string(n));
  }
  if (sum_of(f, points.elements()).value != 0) {
    throw Error(Errc::SumNotZero, "evaluation points do not sum to zero");
  }
  const EtaProfile profile = eta_profile(points);
  if (!profile.uniform) {
    throw Error(Errc::NonUniformCharacter, "eta(pi_A(a)) differs across the set");
  }

  std::vector<Fe> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = f.inv(pi_A(points, i));
  const Fe scale = f.eta(y[0]) == 1 ? f.one() : f.primitive();
  std::vector<Fe> lambda(n);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = f.sqrt(f.mul(scale, y[i]));

  const std::size_t k = n / 2;
  for (unsigned j : self_duality_exponents(k)) {
    Fe s = f.zero();
    for (std::size_t i = 0; i < n; ++i) {
      s = f.add(s, f.mul(f.mul(lambda[i], lambda[i]), f.pow(points[i], j)));
    }
    if (s.value != 0) {
      throw Error(Errc::VerificationFailed,
                  "sum lambda_i^2 a_i^" + std::to_string(j) + " is nonzero");
    }
  }
  return MultiplierVector(std::move(lambda));
}

PipelineResult pipeline(const EvalSet& points, const PipelineOptions& options) {
  MultiplierVector lambda = solve_lambda(points);
  const std::size_t k = points.size() / 2;
  LinearCode code = build_code(points, k, lambda);
  SelfDualityReport sd = is_self_dual(code);
  if (!sd.self_dual) throw Error(Errc::VerificationFailed, "constructed code is not self-dual");

  Classification cls = classify_by_ranks(code, options.budgets);
  if (points.witness()) {
    if (cls.verdict != Verdict::NMDS) {
      throw Error(Errc::VerificationFailed,
                  std::string("set carries a zero-sum witness but the code is ") +
                      verdict_name(cls.verdict));
    }
  } else {
    const auto zero_sum = has_zero_sum_k_subset(points, k, options.budgets.subsets);
    const Verdict expected = zero_sum ? Verdict::NMDS : Verdict::MDS;
    if (cls.verdict != expected) {
      throw Error(Errc::VerificationFailed, std::string("expected ") + verdict_name(expected) +
                                                " from the zero-sum test, ranks say " +
                                                verdict_name(cls.verdict));
    }
  }

  if (options.brute_force_distance) {
    try {
      const std::size_t d = min_distance_bruteforce(code, options.budgets.codewords);
      const std::size_t expected = cls.verdict == Verdict::MDS ? code.n() - k + 1 : code.n() - k;
      if (d != expected) {
        throw Error(Errc::VerificationFailed, "enumerated distance " + std::to_string(d) +
                                                  " disagrees with the rank verdict");
      }
      cls.distance = d;
    } catch (const Error& e) {
      if (e.code() != Errc::BudgetExceeded) throw;
    }
  }
  return {std::move(lambda), std::move(code), std::move(sd), std::move(cls)};
}

}  // namespace nmds
