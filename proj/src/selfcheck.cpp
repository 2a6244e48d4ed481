#include "nmds/selfcheck.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <string>

#include "nmds/constructions.hpp"
#include "nmds/lambda.hpp"

namespace nmds {

namespace {

// A check returns an empty string on success, otherwise what went wrong.
using Check = std::function<std::string()>;

std::vector<Fe> random_distinct(const Field& f, std::size_t count, std::mt19937_64& rng,
                                bool allow_zero = true) {
  std::uniform_int_distribution<std::uint32_t> pick(allow_zero ? 0 : 1,
                                                    static_cast<std::uint32_t>(f.order() - 1));
  std::vector<Fe> out;
  while (out.size() < count) {
    const Fe x{pick(rng)};
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

Matrix random_matrix(const FieldPtr& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(f->order() - 1));
  // Bias toward zeros so that rank-deficient matrices show up.
  std::bernoulli_distribution zero(0.3);
  Matrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = zero(rng) ? Fe{0} : Fe{pick(rng)};
  }
  return m;
}

std::string field_axioms() {
  for (std::uint64_t q : {13, 9, 25, 27}) {
    const auto fp = Field::of_order(q);
    const Field& f = *fp;
    for (std::uint32_t a = 0; a < q; ++a) {
      const Fe x{a};
      if (f.add(x, f.neg(x)) != f.zero()) return "x + (-x) != 0 in F_" + std::to_string(q);
      if (a && f.mul(x, f.inv(x)) != f.one()) return "x * x^-1 != 1 in F_" + std::to_string(q);
      for (std::uint32_t b = 0; b < q; ++b) {
        const Fe y{b};
        if (f.add(x, y) != f.add(y, x) || f.mul(x, y) != f.mul(y, x)) {
          return "commutativity fails in F_" + std::to_string(q);
        }
        if (f.sub(f.add(x, y), y) != x) return "subtraction fails in F_" + std::to_string(q);
        for (std::uint32_t c = 0; c < q; ++c) {
          const Fe z{c};
          if (f.mul(x, f.add(y, z)) != f.add(f.mul(x, y), f.mul(x, z))) {
            return "distributivity fails in F_" + std::to_string(q);
          }
          if (f.mul(f.mul(x, y), z) != f.mul(x, f.mul(y, z))) {
            return "associativity fails in F_" + std::to_string(q);
          }
        }
      }
    }
    if (f.multiplicative_order(f.primitive()) != q - 1) {
      return "primitive element of F_" + std::to_string(q) + " has wrong order";
    }
  }
  return {};
}

std::string quadratic_character() {
  for (std::uint64_t q : {13, 9, 25, 81}) {
    const auto fp = Field::of_order(q);
    const Field& f = *fp;
    for (std::uint32_t a = 1; a < q; ++a) {
      const Fe x{a};
      const Fe euler = f.pow(x, static_cast<std::int64_t>((q - 1) / 2));
      if ((f.eta(x) == 1) != (euler == f.one())) return "eta disagrees with Euler's criterion";
      if (f.eta(x) == 1) {
        const Fe s = f.sqrt(x);
        if (f.mul(s, s) != x || f.neg(s) < s) return "sqrt is not the smaller square root";
      }
      for (std::uint32_t b = 1; b < q; ++b) {
        if (f.eta(f.mul(x, Fe{b})) != f.eta(x) * f.eta(Fe{b})) return "eta is not multiplicative";
      }
    }
  }
  return {};
}

std::string trace_lands_in_subfield() {
  const auto fp = Field::of_order(25);
  const Field& f = *fp;
  for (std::uint32_t a = 0; a < 25; ++a) {
    const Fe t = f.trace_to_subfield(Fe{a}, 5);
    if (f.pow(t, 5) != t) return "trace of " + std::to_string(a) + " is not in F_5";
    for (std::uint32_t b = 0; b < 25; ++b) {
      if (f.trace_to_subfield(f.add(Fe{a}, Fe{b}), 5) != f.add(t, f.trace_to_subfield(Fe{b}, 5))) {
        return "trace is not additive";
      }
    }
  }
  return {};
}

std::string linear_algebra() {
  std::mt19937_64 rng(20240611);
  for (std::uint64_t q : {13, 9}) {
    const auto fp = Field::of_order(q);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
      const Matrix m = random_matrix(fp, rows, cols, rng);
      const std::size_t r = rank(m);
      if (r != rank(transpose(m))) return "rank(M) != rank(M^T)";
      const auto basis = nullspace_basis(m);
      if (basis.size() != cols - r) return "nullity != cols - rank";
      for (const auto& v : basis) {
        for (auto x : mat_vec(m, v)) {
          if (x.value != 0) return "nullspace vector is not annihilated";
        }
      }
      if (rows == cols && ((det(m).value != 0) != (r == rows))) return "det != 0 disagrees with rank";
    }
  }
  return {};
}

std::string determinant_identity() {
  std::mt19937_64 rng(7);
  const auto fp = Field::of_order(13);
  const Field& f = *fp;
  for (std::size_t k = 1; k <= 5; ++k) {
    std::optional<Fe> sign;
    const auto exps = row_exponents(k);
    for (int trial = 0; trial < 60; ++trial) {
      const auto pts = random_distinct(f, k, rng);
      const Fe d = det(exponent_matrix(fp, pts, exps));
      const Fe formula = det_shifted_vandermonde(f, pts);
      if ((d.value == 0) != (formula.value == 0)) return "zero pattern differs at k = " + std::to_string(k);
      if (formula.value == 0) continue;
      const Fe ratio = f.div(d, formula);
      if (ratio != f.one() && ratio != f.neg(f.one())) return "ratio is not +-1";
      if (sign && *sign != ratio) return "sign not constant at k = " + std::to_string(k);
      sign = ratio;
    }
  }
  return {};
}

std::string zero_sum_equivalence() {
  const auto fp = Field::of_order(7);
  for (std::uint32_t mask = 0; mask < (1u << 7); ++mask) {
    std::vector<Fe> pts;
    for (std::uint32_t x = 0; x < 7; ++x) {
      if (mask >> x & 1u) pts.push_back(Fe{x});
    }
    if (pts.size() < 3) continue;
    const EvalSet set(fp, pts);
    for (std::size_t k = 2; k < pts.size(); ++k) {
      const auto code = build_code(set, k, MultiplierVector::ones(pts.size()));
      const auto cls = classify_by_ranks(code);
      const bool zero_sum = has_zero_sum_k_subset(set, k).has_value();
      if (cls.verdict != (zero_sum ? Verdict::NMDS : Verdict::MDS)) {
        return "ranks and zero-sum subsets disagree for mask " + std::to_string(mask);
      }
      const std::size_t d = min_distance_bruteforce(code, 1'000'000);
      if (d != pts.size() - k + (zero_sum ? 0 : 1)) return "enumerated distance disagrees";
    }
  }
  return {};
}

std::string kernel_and_solver() {
  std::mt19937_64 rng(11);
  const auto fp = Field::of_order(13);
  const Field& f = *fp;
  int solved = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + 2 * (trial % 2);
    auto pts = random_distinct(f, n - 1, rng);
    const Fe last = f.neg(sum_of(f, pts));
    if (std::find(pts.begin(), pts.end(), last) != pts.end()) continue;
    pts.push_back(last);
    const EvalSet set(fp, pts);
    const Matrix b = self_duality_system(set);
    if (rank(b) != n - 1) return "rank(B) != 2k - 1";
    const auto basis = nullspace_basis(b);
    std::vector<Fe> y;
    for (std::size_t i = 0; i < n; ++i) y.push_back(f.inv(pi_A(set, i)));
    for (auto x : mat_vec(b, y)) {
      if (x.value != 0) return "(1/pi_A) is not in the kernel of B";
    }
    if (basis.size() != 1) return "kernel of B is not one-dimensional";
    if (!eta_profile(set).uniform) continue;
    const auto lambda = solve_lambda(set);
    if (!is_self_dual(build_code(set, n / 2, lambda)).self_dual) return "solved code is not self-dual";
    ++solved;
  }
  if (solved == 0) return "no uniform sets were drawn";
  return {};
}

std::string builders_small() {
  PipelineOptions opts;
  opts.budgets.codewords = 1'000'000;
  const auto f9 = Field::of_order(9), f13 = Field::of_order(13), f25 = Field::of_order(25);
  const std::vector<std::pair<std::string, std::function<EvalSet()>>> cases = {
      {"3.3 q=13 n=6", [&] { return build_thm33(f13, 6); }},
      {"3.3 q=13 n=4", [&] { return build_thm33(f13, 4); }},
      {"3.4 q=25 e=4 f=6 t=1", [&] { return build_thm34(f25, 4, 6, 1); }},
      {"3.5 q=9 s=1 t=1", [&] { return build_thm35(f9, 1, 1); }},
      {"3.5 q=25 s=2 t=1", [&] { return build_thm35(f25, 2, 1); }},
      {"3.6 q=25 r=5 l=0 t=2", [&] { return build_thm36(f25, 5, 0, 2); }},
      {"3.6 q=25 r=5 l=1 t=1", [&] { return build_thm36(f25, 5, 1, 1); }},
      {"3.7 q=9 t=2 s=0", [&] { return build_thm37(f9, 2, 0); }},
  };
  for (const auto& [name, build] : cases) {
    try {
      const EvalSet set = build();
      const auto result = pipeline(set, opts);
      if (result.classification.verdict != Verdict::NMDS) return name + ": not NMDS";
    } catch (const Error& e) {
      return name + ": " + e.what();
    }
  }
  return {};
}

std::string scan_counts() {
  const auto s = scan_lengths(10201);
  const auto t35 = s.per_theorem.at(Theorem::T35).size();
  if (t35 != 1250) return "theorem 3.5 count for q = 10201 is " + std::to_string(t35);
  for (auto n : s.lengths) {
    if (n % 2 || n < 4 || n > 2 * 10201 + 2) return "length out of range: " + std::to_string(n);
  }
  return {};
}

}  // namespace

std::vector<CheckOutcome> run_selfcheck() {
  const std::vector<std::pair<std::string, Check>> suite = {
      {"gf.field_axioms", field_axioms},
      {"gf.quadratic_character", quadratic_character},
      {"gf.trace", trace_lands_in_subfield},
      {"linalg.rank_nullspace_det", linear_algebra},
      {"codes.determinant_identity", determinant_identity},
      {"codes.zero_sum_equivalence", zero_sum_equivalence},
      {"lambda.kernel_and_solver", kernel_and_solver},
      {"constructions.builders", builders_small},
      {"constructions.scan", scan_counts},
  };
  std::vector<CheckOutcome> out;
  for (const auto& [name, check] : suite) {
    CheckOutcome o{name, false, {}};
    try {
      o.detail = check();
      o.ok = o.detail.empty();
    } catch (const std::exception& e) {
      o.detail = e.what();
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace nmds
