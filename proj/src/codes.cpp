#include "nmds/codes.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <unordered_map>
#include <utility>

#include "nmds/error.hpp"

namespace nmds {

namespace {

// Visits every size-k subset of {0..n-1} in lexicographic order until `visit` returns false.
void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<bool(std::span<const std::size_t>)>& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!visit(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

const char* theorem_id(Theorem t) noexcept {
  switch (t) {
    case Theorem::T33: return "3.3";
    case Theorem::T34: return "3.4";
    case Theorem::T35: return "3.5";
    case Theorem::T36: return "3.6";
    case Theorem::T37: return "3.7";
    case Theorem::Custom: break;
  }
  return "custom";
}

std::optional<Theorem> parse_theorem(std::string_view id) {
  for (auto t : {Theorem::T33, Theorem::T34, Theorem::T35, Theorem::T36, Theorem::T37,
                 Theorem::Custom}) {
    if (id == theorem_id(t)) return t;
  }
  return std::nullopt;
}

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::MDS: return "MDS";
    case Verdict::NMDS: return "NMDS";
    case Verdict::Other: break;
  }
  return "OTHER";
}

Fe sum_of(const Field& field, std::span<const Fe> xs) {
  Fe s = field.zero();
  for (auto x : xs) s = field.add(s, x);
  return s;
}

EvalSet::EvalSet(FieldPtr field, std::vector<Fe> elements,
                 std::optional<std::vector<std::size_t>> witness, Recipe recipe)
    : field_(std::move(field)),
      elements_(std::move(elements)),
      witness_(std::move(witness)),
      recipe_(std::move(recipe)) {
  std::vector<bool> seen(field_->order(), false);
  for (auto x : elements_) {
    field_->element(x.value);
    if (seen[x.value]) {
      throw Error(Errc::DuplicatePoint, "element " + std::to_string(x.value) + " repeated");
    }
    seen[x.value] = true;
  }
  if (witness_) {
    const auto& w = *witness_;
    if (2 * w.size() != elements_.size()) {
      throw Error(Errc::InvalidWitness, "witness has " + std::to_string(w.size()) +
                                            " indices, expected " +
                                            std::to_string(elements_.size() / 2));
    }
    std::set<std::size_t> distinct(w.begin(), w.end());
    if (distinct.size() != w.size()) throw Error(Errc::InvalidWitness, "witness indices repeat");
    Fe s = field_->zero();
    for (auto i : w) {
      if (i >= elements_.size()) throw Error(Errc::InvalidWitness, "witness index out of range");
      s = field_->add(s, elements_[i]);
    }
    if (s.value != 0) throw Error(Errc::InvalidWitness, "witness elements do not sum to zero");
  }
}

MultiplierVector::MultiplierVector(std::vector<Fe> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i].value == 0) {
      throw Error(Errc::ZeroMultiplier, "multiplier " + std::to_string(i) + " is zero");
    }
  }
}

LinearCode::LinearCode(Matrix generator, Recipe recipe)
    : generator_(std::move(generator)), recipe_(std::move(recipe)) {
  if (generator_.cols() <= generator_.rows()) {
    throw Error(Errc::NotEnoughPoints, "need n > k, got n = " + std::to_string(generator_.cols()) +
                                           ", k = " + std::to_string(generator_.rows()));
  }
  const std::size_t r = rank(generator_);
  if (r != generator_.rows()) {
    throw Error(Errc::VerificationFailed, "generator has rank " + std::to_string(r) +
                                              ", expected " + std::to_string(generator_.rows()));
  }
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<unsigned> row_exponents(std::size_t k) {
  std::vector<unsigned> e{static_cast<unsigned>(k)};
  for (std::size_t j = k; j-- > 0;) {
    if (j + 1 < k) e.push_back(static_cast<unsigned>(j));
  }
  return e;
}

Matrix exponent_matrix(const FieldPtr& field, std::span<const Fe> points,
                       std::span<const unsigned> exponents, std::span<const Fe> multipliers) {
  if (!multipliers.empty() && multipliers.size() != points.size()) {
    throw Error(Errc::DimensionMismatch, "multiplier count does not match point count");
  }
  const Field& f = *field;
  Matrix m(field, exponents.size(), points.size());
  for (std::size_t r = 0; r < exponents.size(); ++r) {
    for (std::size_t c = 0; c < points.size(); ++c) {
      Fe v = f.pow(points[c], exponents[r]);
      if (!multipliers.empty()) v = f.mul(multipliers[c], v);
      m(r, c) = v;
    }
  }
  return m;
}

LinearCode build_code(const EvalSet& points, std::size_t k, const MultiplierVector& lambda) {
  const std::size_t n = points.size();
  if (k < 1 || n <= k) {
    throw Error(Errc::NotEnoughPoints,
                "need n > k >= 1, got n = " + std::to_string(n) + ", k = " + std::to_string(k));
  }
  if (lambda.size() != n) {
    throw Error(Errc::DimensionMismatch, "lambda has " + std::to_string(lambda.size()) +
                                             " entries for " + std::to_string(n) + " points");
  }
  const auto exps = row_exponents(k);
  Recipe recipe = points.recipe();
  recipe.params["k"] = static_cast<std::int64_t>(k);
  return LinearCode(exponent_matrix(points.field_ptr(), points.elements(), exps, lambda.values()),
                    std::move(recipe));
}

Fe det_shifted_vandermonde(const Field& field, std::span<const Fe> points) {
  Fe result = sum_of(field, points);
  for (std::size_t t = 0; t < points.size(); ++t) {
    for (std::size_t s = 0; s < t; ++s) result = field.mul(result, field.sub(points[t], points[s]));
  }
  return result;
}

SelfDualityReport is_self_dual(const LinearCode& code) {
  Matrix gram = mat_mul(code.generator(), transpose(code.generator()));
  // LinearCode already guarantees rank(G) = k.
  const bool ok = code.n() == 2 * code.k() && gram.is_zero();
  return {ok, std::move(gram)};
}

std::size_t min_distance_bruteforce(const LinearCode& code, std::uint64_t budget) {
  const Field& f = code.field();
  const std::size_t n = code.n();
  const std::size_t k = code.k();
  const std::uint64_t q = f.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > budget / q) {
      throw Error(Errc::BudgetExceeded, "q^k exceeds the codeword budget of " +
                                            std::to_string(budget));
    }
    total *= q;
  }
  if (total > budget) {
    throw Error(Errc::BudgetExceeded, "q^k exceeds the codeword budget of " + std::to_string(budget));
  }
  const Matrix& g = code.generator();
  // Odometer over message digits (encodings 0..q-1); each step changes one
  // digit, so the codeword is updated by (new - old) * row.
  std::vector<std::uint32_t> digits(k, 0);
  std::vector<Fe> word(n, f.zero());
  std::size_t best = n;
  for (std::uint64_t step = 1; step < total; ++step) {
    std::size_t i = 0;
    for (;;) {
      const Fe old{digits[i]};
      digits[i] = (digits[i] + 1 == q) ? 0 : digits[i] + 1;
      const Fe delta = f.sub(Fe{digits[i]}, old);
      for (std::size_t c = 0; c < n; ++c) word[c] = f.add(word[c], f.mul(delta, g(i, c)));
      if (digits[i] != 0) break;
      ++i;
    }
    std::size_t weight = 0;
    for (auto x : word) weight += x.value != 0;
    best = std::min(best, weight);
  }
  return best;
}

Classification classify_by_ranks(const LinearCode& code, const Budgets& budgets) {
  const std::size_t n = code.n();
  const std::size_t k = code.k();
  const std::uint64_t worst =
      std::max({binomial(n, k - 1), binomial(n, k), binomial(n, k + 1)});
  if (worst > budgets.submatrices) {
    throw Error(Errc::CombinatorialBudgetExceeded,
                "rank classification needs " + std::to_string(worst) +
                    " submatrices per clause, budget is " + std::to_string(budgets.submatrices));
  }
  const Matrix& g = code.generator();
  std::vector<Fe> scratch;
  Classification out;

  // (1) every k-1 columns independent
  bool ok = true;
  for_each_combination(n, k - 1, [&](std::span<const std::size_t> cols) {
    ++out.checked_km1;
    if (column_subset_rank(g, cols, scratch) < k - 1) {
      out.violating_subset.assign(cols.begin(), cols.end());
      ok = false;
    }
    return ok;
  });
  if (!ok) {
    out.verdict = Verdict::Other;
    out.violated_clause = "(1)";
    return out;
  }

  // (2) some k columns dependent; none means MDS
  for_each_combination(n, k, [&](std::span<const std::size_t> cols) {
    ++out.checked_k;
    if (column_subset_rank(g, cols, scratch) < k) {
      ++out.dependent_count;
      if (out.dependent_subsets.size() < budgets.max_evidence) {
        out.dependent_subsets.emplace_back(cols.begin(), cols.end());
      }
    }
    return true;
  });
  if (out.dependent_count == 0) {
    out.verdict = Verdict::MDS;
    return out;
  }

  // (3) every k+1 columns have rank k
  for_each_combination(n, k + 1, [&](std::span<const std::size_t> cols) {
    ++out.checked_kp1;
    if (column_subset_rank(g, cols, scratch) < k) {
      out.violating_subset.assign(cols.begin(), cols.end());
      ok = false;
    }
    return ok;
  });
  if (!ok) {
    out.verdict = Verdict::Other;
    out.violated_clause = "(3)";
    return out;
  }
  out.verdict = Verdict::NMDS;
  return out;
}

bool recheck_evidence(const LinearCode& code, const Classification& c) {
  const std::size_t n = code.n();
  const std::size_t k = code.k();
  std::vector<Fe> scratch;
  auto valid = [&](const std::vector<std::size_t>& cols, std::size_t size) {
    if (cols.size() != size) return false;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (cols[i] >= n || (i > 0 && cols[i] <= cols[i - 1])) return false;
    }
    return true;
  };
  switch (c.verdict) {
    case Verdict::MDS:
      return c.dependent_subsets.empty();
    case Verdict::NMDS:
      if (c.dependent_subsets.empty()) return false;
      for (const auto& s : c.dependent_subsets) {
        if (!valid(s, k) || column_subset_rank(code.generator(), s, scratch) >= k) return false;
      }
      return true;
    case Verdict::Other:
      if (c.violated_clause == "(1)") {
        return valid(c.violating_subset, k - 1) &&
               column_subset_rank(code.generator(), c.violating_subset, scratch) < k - 1;
      }
      if (c.violated_clause == "(3)") {
        return valid(c.violating_subset, k + 1) &&
               column_subset_rank(code.generator(), c.violating_subset, scratch) < k;
      }
      return false;
  }
  return false;
}

std::optional<std::vector<std::size_t>> has_zero_sum_k_subset(const EvalSet& points, std::size_t k,
                                                              std::uint64_t budget) {
  const std::size_t n = points.size();
  if (k > n) throw Error(Errc::InvalidParams, "subset size exceeds set size");
  if (k == 0) return std::vector<std::size_t>{};
  if (binomial(n, k - 1) > budget) {
    throw Error(Errc::SearchBudgetExceeded, "C(" + std::to_string(n) + ", " +
                                                std::to_string(k - 1) + ") exceeds the budget");
  }
  const Field& f = points.field();
  std::unordered_map<std::uint32_t, std::size_t> position;
  for (std::size_t i = 0; i < n; ++i) position[points[i].value] = i;

  // Choose the first k-1 indices; the last is forced to be -(partial sum).
  std::vector<std::size_t> chosen;
  chosen.reserve(k);
  std::optional<std::vector<std::size_t>> found;
  std::function<void(std::size_t, Fe)> dfs = [&](std::size_t start, Fe partial) {
    if (found) return;
    if (chosen.size() == k - 1) {
      const auto it = position.find(f.neg(partial).value);
      if (it != position.end() && (chosen.empty() || it->second > chosen.back())) {
        found = chosen;
        found->push_back(it->second);
      }
      return;
    }
    const std::size_t remaining = k - 1 - chosen.size();
    for (std::size_t i = start; i + remaining < n && !found; ++i) {
      chosen.push_back(i);
      dfs(i + 1, f.add(partial, points[i]));
      chosen.pop_back();
    }
  };
  dfs(0, f.zero());
  return found;
}

Fe pi_A(const EvalSet& points, std::size_t i) {
  const Field& f = points.field();
  Fe result = f.one();
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (j != i) result = f.mul(result, f.sub(points[i], points[j]));
  }
  return result;
}

}  // namespace nmds
