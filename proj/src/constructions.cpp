#include "nmds/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "nmds/lambda.hpp"

namespace nmds {

namespace {

using std::to_string;

Error invalid(const std::string& why) { return Error(Errc::InvalidParams, why); }

struct OddSquare {
  std::uint32_t p;
  unsigned half_degree;  // r = p^half_degree
  std::int64_t r;
};

// q = r^2 with r an odd prime power.
std::optional<OddSquare> odd_square(std::int64_t q) {
  if (q < 9) return std::nullopt;
  const auto pp = prime_power(static_cast<std::uint64_t>(q));
  if (!pp || pp->p == 2 || pp->m % 2 != 0) return std::nullopt;
  return OddSquare{pp->p, pp->m / 2, static_cast<std::int64_t>(ipow(pp->p, pp->m / 2))};
}

std::optional<Error> need_odd_prime_power(std::int64_t q) {
  if (q < 3) return invalid("q = " + to_string(q) + " is not an odd prime power");
  const auto pp = prime_power(static_cast<std::uint64_t>(q));
  if (!pp || pp->p == 2) return invalid("q = " + to_string(q) + " is not an odd prime power");
  return std::nullopt;
}

// Smallest t' with p^{t'} >= t.
unsigned ceil_log(std::uint64_t p, std::uint64_t t) {
  unsigned e = 0;
  std::uint64_t v = 1;
  while (v < t) {
    v *= p;
    ++e;
  }
  return e;
}

std::string join(std::span<const Fe> xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += to_string(xs[i].value);
  }
  return out;
}

// prod (x - a) over `roots` must equal x^deg + ... given by `expected` (low degree first).
void check_product(const Field& f, std::span<const Fe> roots, const std::vector<Fe>& expected,
                   const std::string& label, Recipe& recipe) {
  if (product_of_linear_factors(f, roots) != expected) {
    throw Error(Errc::VerificationFailed, label + ": product formula does not hold");
  }
  recipe.checks.push_back(label);
}

// x^deg + c (only the constant and leading terms nonzero).
std::vector<Fe> binomial_poly(const Field& f, std::size_t deg, Fe constant) {
  std::vector<Fe> c(deg + 1, f.zero());
  c[0] = constant;
  c[deg] = f.add(c[deg], f.one());
  return c;
}

EvalSet finalize(const FieldPtr& fp, std::vector<Fe> elements, std::vector<std::size_t> witness,
                 Recipe recipe, Errc collision) {
  const Field& f = *fp;
  std::vector<bool> seen(f.order(), false);
  for (auto x : elements) {
    if (seen[x.value]) {
      throw Error(collision, "parts overlap at element " + to_string(x.value));
    }
    seen[x.value] = true;
  }
  recipe.checks.push_back("parts pairwise disjoint (" + to_string(elements.size()) + " elements)");
  if (sum_of(f, elements).value != 0) {
    throw Error(Errc::WitnessCheckFailed, "elements do not sum to zero");
  }
  recipe.checks.push_back("sum of all elements is 0");
  if (2 * witness.size() != elements.size()) {
    throw Error(Errc::WitnessCheckFailed, "witness is not half the set");
  }
  Fe ws = f.zero();
  for (auto i : witness) ws = f.add(ws, elements[i]);
  if (ws.value != 0) throw Error(Errc::WitnessCheckFailed, "witness elements do not sum to zero");
  recipe.checks.push_back("witness of size " + to_string(witness.size()) + " sums to 0");
  recipe.params["n"] = static_cast<std::int64_t>(elements.size());

  EvalSet set(fp, std::move(elements), std::move(witness), std::move(recipe));
  const EtaProfile profile = eta_profile(set);
  if (!profile.uniform) {
    throw Error(Errc::NonUniformCharacter, "eta(pi_A(a)) is not constant on the set");
  }
  set.recipe().checks.push_back("eta(pi_A(a)) = " + to_string(profile.values.front()) +
                                " for every a");
  return set;
}

Recipe make_recipe(Theorem t, const Field& f) {
  Recipe r;
  r.theorem = t;
  r.params["q"] = static_cast<std::int64_t>(f.order());
  return r;
}

// Elements of the subfield F_r of F_q, sorted by encoding.
std::vector<Fe> subfield_elements(const Field& f, std::int64_t r) {
  const std::int64_t q = static_cast<std::int64_t>(f.order());
  const Fe w = f.pow(f.primitive(), (q - 1) / (r - 1));
  std::vector<Fe> out{f.zero()};
  Fe x = f.one();
  for (std::int64_t i = 0; i < r - 1; ++i) {
    out.push_back(x);
    x = f.mul(x, w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Additive group (Z_p)^d on base-p encodings.
struct AdditiveGroup {
  std::uint64_t p;
  unsigned d;

  std::uint64_t size() const { return ipow(p, d); }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0, place = 1;
    for (unsigned i = 0; i < d; ++i) {
      out += ((a % p + b % p) % p) * place;
      a /= p;
      b /= p;
      place *= p;
    }
    return out;
  }
  std::uint64_t neg(std::uint64_t a) const {
    std::uint64_t out = 0, place = 1;
    for (unsigned i = 0; i < d; ++i) {
      out += ((p - a % p) % p) * place;
      a /= p;
      place *= p;
    }
    return out;
  }
};

}  // namespace

std::vector<Fe> product_of_linear_factors(const Field& f, std::span<const Fe> roots) {
  std::vector<Fe> c{f.one()};
  for (auto a : roots) {
    const Fe neg_a = f.neg(a);
    std::vector<Fe> next(c.size() + 1, f.zero());
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], c[i]);
      next[i] = f.add(next[i], f.mul(neg_a, c[i]));
    }
    c = std::move(next);
  }
  return c;
}

std::optional<ZeroSumSplit> find_zero_sum_split(std::uint32_t p, unsigned d, std::uint64_t t) {
  const AdditiveGroup group{p, d};
  const std::uint64_t size = group.size();
  if (t < 2 || 2 * t > size - 1) return std::nullopt;

  // Pair classes {x, -x}, listed by their smaller encoding.
  std::vector<std::uint64_t> classes;
  for (std::uint64_t x = 1; x < size; ++x) {
    if (x < group.neg(x)) classes.push_back(x);
  }
  auto class_of = [&](std::uint64_t x) { return std::min(x, group.neg(x)); };

  ZeroSumSplit split;
  std::vector<bool> used(size, false);
  auto take_class = [&](std::uint64_t c) {
    used[c] = true;
    used[group.neg(c)] = true;
  };
  if (t % 2 == 1) {
    // A zero-sum triple a + b + c = 0 spread over three distinct classes goes
    // to the first part; its negation goes to the second.
    bool found = false;
    for (std::uint64_t a = 1; a < size && !found; ++a) {
      for (std::uint64_t b = a + 1; b < size && !found; ++b) {
        const std::uint64_t c = group.neg(group.add(a, b));
        const std::uint64_t ca = class_of(a), cb = class_of(b), cc = class_of(c);
        if (c == 0 || ca == cb || ca == cc || cb == cc) continue;
        split.first = {a, b, c};
        split.second = {group.neg(a), group.neg(b), group.neg(c)};
        take_class(ca);
        take_class(cb);
        take_class(cc);
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  for (auto c : classes) {
    if (split.first.size() == t) break;
    if (used[c]) continue;
    take_class(c);
    split.first.push_back(c);
    split.first.push_back(group.neg(c));
  }
  for (auto c : classes) {
    if (split.second.size() == t) break;
    if (used[c]) continue;
    take_class(c);
    split.second.push_back(c);
    split.second.push_back(group.neg(c));
  }
  if (split.first.size() != t || split.second.size() != t) return std::nullopt;
  return split;
}

std::optional<Error> check_thm33(std::int64_t q, std::int64_t n) {
  if (auto e = need_odd_prime_power(q)) return e;
  if (q % 4 != 1) return invalid("q = " + to_string(q) + " is not 1 mod 4");
  if (n % 2 != 0) return invalid("n must be even");
  if (n < 4) return invalid("n must be at least 4");
  if ((q - 1) % n != 0) return invalid("n must divide q - 1");
  if (n >= q - 1) return invalid("n must be less than q - 1");
  return std::nullopt;
}

std::optional<Error> check_thm34(std::int64_t q, std::int64_t e, std::int64_t f, std::int64_t t) {
  const auto sq = odd_square(q);
  if (!sq) return invalid("q = " + to_string(q) + " is not the square of an odd prime power");
  if (e <= 0 || f <= 0 || e * f != q - 1) return invalid("need e f = q - 1");
  if (e % 2 != 0) return invalid("e must be even");
  const std::int64_t R = (sq->r + 1) / std::gcd(sq->r + 1, f);
  if (t < 1 || t > R) return invalid("need 1 <= t <= R = " + to_string(R));
  if ((t * f) % 2 != 0) return invalid("t f must be even");
  if (t * f < 4) return invalid("n = t f must be at least 4");
  if (f < 2) return Error(Errc::WitnessCheckFailed, "cosets of size f = 1 do not sum to zero");
  if (t % 2 == 1 && f < 4) {
    return Error(Errc::WitnessCheckFailed, "odd t needs f/2 >= 2 for zero-sum half cosets");
  }
  return std::nullopt;
}

std::optional<Error> check_thm34_indices(std::int64_t q, std::int64_t f, std::int64_t t,
                                         const std::vector<std::int64_t>& indices) {
  const auto sq = odd_square(q);
  if (!sq || f <= 0) return invalid("indices need q = r^2 and f > 0");
  if (static_cast<std::int64_t>(indices.size()) != t) {
    return invalid("expected " + to_string(t) + " coset indices, got " + to_string(indices.size()));
  }
  const std::int64_t R = (sq->r + 1) / std::gcd(sq->r + 1, f);
  std::vector<bool> residue_used(static_cast<std::size_t>(R), false);
  for (auto i : indices) {
    if (i < 0 || i > sq->r) return invalid("coset index " + to_string(i) + " not in [0, r]");
    if (residue_used[static_cast<std::size_t>(i % R)]) {
      return Error(Errc::CosetCollision, "coset indices must be distinct mod R = " + to_string(R));
    }
    residue_used[static_cast<std::size_t>(i % R)] = true;
  }
  return std::nullopt;
}

std::optional<Error> check_thm35(std::int64_t q, std::int64_t s, std::int64_t t) {
  const auto sq = odd_square(q);
  if (!sq) return invalid("q = " + to_string(q) + " is not the square of an odd prime power");
  const std::int64_t r = sq->r;
  if (s < 1 || s > (r + 1) / 2) return invalid("need 1 <= s <= (r+1)/2");
  if (t < 1 || t > (r - 1) / 2) return invalid("need 1 <= t <= (r-1)/2");
  const bool ok = (r % 4 == 1 && s % 2 == 0) || (r % 4 == 3 && s % 2 == 1);
  if (!ok) {
    return Error(Errc::ParityViolation,
                 r % 4 == 1 ? "r = 1 mod 4 requires even s" : "r = 3 mod 4 requires odd s");
  }
  return std::nullopt;
}

std::optional<Error> check_thm36(std::int64_t q, std::int64_t r, std::int64_t l, std::int64_t t) {
  if (auto e = need_odd_prime_power(q)) return e;
  const auto pq = prime_power(static_cast<std::uint64_t>(q));
  if (pq->m % 2 != 0) return invalid("q = p^m needs m even");
  const auto pr = prime_power(static_cast<std::uint64_t>(std::max<std::int64_t>(r, 0)));
  if (!pr || pr->p != pq->p) return invalid("r must be a power of the characteristic");
  const unsigned sub = pr->m;
  if ((pq->m / 2) % sub != 0) return invalid("r = p^s needs s | m/2");
  if (l < 0 || l >= static_cast<std::int64_t>(pq->m / sub)) return invalid("need 0 <= l < m/s");
  if (t < 1 || t > (r - 1) / 2) return invalid("need 1 <= t <= (r-1)/2");
  const auto n = 2 * t * static_cast<std::int64_t>(ipow(static_cast<std::uint64_t>(r),
                                                         static_cast<unsigned>(l)));
  if (n < 4) return invalid("n = 2 t r^l must be at least 4");
  if (l == 0 && !find_zero_sum_split(pq->p, sub, static_cast<std::uint64_t>(t))) {
    return Error(Errc::WitnessCheckFailed, "no zero-sum arrangement of F_r for l = 0");
  }
  return std::nullopt;
}

std::optional<Error> check_thm37(std::int64_t q, std::int64_t t, std::int64_t s) {
  const auto sq = odd_square(q);
  if (!sq) return invalid("q = " + to_string(q) + " is not the square of an odd prime power");
  if (t % 2 != 0 || s % 2 != 0) return invalid("t and s must be even");
  if (t < 1 || t > sq->r) return invalid("need 1 <= t <= r");
  const unsigned tp = ceil_log(sq->p, static_cast<std::uint64_t>(t));
  const auto limit = static_cast<std::int64_t>(ipow(sq->p, sq->half_degree - tp)) - 1;
  if (s < 0 || s > limit) return invalid("need 0 <= s <= p^(m - t') - 1 = " + to_string(limit));
  return std::nullopt;
}

EvalSet build_thm33(const FieldPtr& fp, std::int64_t n) {
  const Field& f = *fp;
  const auto q = static_cast<std::int64_t>(f.order());
  if (auto err = check_thm33(q, n)) throw *err;
  const Fe g = f.primitive();
  Recipe recipe = make_recipe(Theorem::T33, f);
  std::vector<Fe> elements;
  std::vector<std::size_t> witness;
  if (n % 4 == 2) {
    const Fe theta = f.pow(g, (q - 1) / n);
    for (std::int64_t i = 1; i <= n; ++i) {
      elements.push_back(f.pow(theta, i));
      if (i % 2 == 0) witness.push_back(static_cast<std::size_t>(i - 1));
    }
  } else {
    const std::int64_t m = n / 2;
    const Fe theta = f.pow(g, (q - 1) / m);
    std::vector<bool> in_subgroup(f.order(), false);
    for (std::int64_t i = 1; i <= m; ++i) in_subgroup[f.pow(theta, i).value] = true;
    std::int64_t j = 1;
    while (in_subgroup[f.pow(g, 2 * j).value]) ++j;
    const Fe beta = f.pow(g, 2 * j);
    recipe.params["beta_exponent"] = 2 * j;
    for (std::int64_t i = 1; i <= m; ++i) {
      elements.push_back(f.pow(theta, i));
      witness.push_back(static_cast<std::size_t>(i - 1));
    }
    for (std::int64_t i = 1; i <= m; ++i) elements.push_back(f.mul(beta, f.pow(theta, i)));
  }
  return finalize(fp, std::move(elements), std::move(witness), std::move(recipe),
                  Errc::VerificationFailed);
}

EvalSet build_thm34(const FieldPtr& fp, std::int64_t e, std::int64_t f_order, std::int64_t t,
                    std::optional<std::vector<std::int64_t>> indices) {
  const Field& f = *fp;
  const auto q = static_cast<std::int64_t>(f.order());
  if (auto err = check_thm34(q, e, f_order, t)) throw *err;
  const std::int64_t r = odd_square(q)->r;
  std::vector<std::int64_t> idx;
  if (indices) {
    idx = *indices;
  } else {
    for (std::int64_t i = 0; i < t; ++i) idx.push_back(i);
  }
  if (auto err = check_thm34_indices(q, f_order, t, idx)) throw *err;

  Recipe recipe = make_recipe(Theorem::T34, f);
  recipe.params["e"] = e;
  recipe.params["f"] = f_order;
  recipe.params["t"] = t;
  recipe.params["r"] = r;
  recipe.coset_indices = idx;

  const Fe g = f.primitive();
  const Fe alpha = f.pow(g, e);
  const Fe beta = f.pow(g, r - 1);
  std::vector<Fe> elements;
  std::vector<std::size_t> witness;
  for (std::size_t c = 0; c < idx.size(); ++c) {
    const Fe base = f.pow(beta, idx[c]);
    std::vector<Fe> coset, half;
    for (std::int64_t j = 0; j < f_order; ++j) {
      const Fe x = f.mul(base, f.pow(alpha, j));
      coset.push_back(x);
      const bool in_witness = (t % 2 == 0) ? (2 * static_cast<std::int64_t>(c) < t) : (j % 2 == 0);
      if (in_witness) witness.push_back(elements.size());
      if (j % 2 == 0) half.push_back(x);
      elements.push_back(x);
    }
    const Fe bf = f.pow(base, f_order);
    check_product(f, coset, binomial_poly(f, static_cast<std::size_t>(f_order), f.neg(bf)),
                  "prod over beta^" + to_string(idx[c]) + " C of (x - a) = x^f - beta^(" +
                      to_string(idx[c]) + " f)",
                  recipe);
    if (t % 2 == 1) {
      const Fe bh = f.pow(base, f_order / 2);
      check_product(f, half, binomial_poly(f, static_cast<std::size_t>(f_order / 2), f.neg(bh)),
                    "prod over beta^" + to_string(idx[c]) + " C' of (x - a) = x^(f/2) - beta^(" +
                        to_string(idx[c]) + " f/2)",
                    recipe);
    }
  }
  return finalize(fp, std::move(elements), std::move(witness), std::move(recipe),
                  Errc::CosetCollision);
}

EvalSet build_thm35(const FieldPtr& fp, std::int64_t s, std::int64_t t) {
  const Field& f = *fp;
  const auto q = static_cast<std::int64_t>(f.order());
  if (auto err = check_thm35(q, s, t)) throw *err;
  const std::int64_t r = odd_square(q)->r;

  Recipe recipe = make_recipe(Theorem::T35, f);
  recipe.params["r"] = r;
  recipe.params["s"] = s;
  recipe.params["t"] = t;

  // q = 9 uses the primitive alpha with alpha^2 = alpha + 1, for which the
  // explicit witness {alpha, alpha^2, alpha^7} is zero-sum.
  Fe alpha = f.primitive();
  if (r == 3) {
    bool found = false;
    for (std::uint64_t v = 1; v < f.order() && !found; ++v) {
      const Fe x{static_cast<std::uint32_t>(v)};
      if (f.multiplicative_order(x) == f.order() - 1 && f.mul(x, x) == f.add(x, f.one())) {
        alpha = x;
        found = true;
      }
    }
    recipe.params["alpha"] = alpha.value;
    recipe.checks.push_back("alpha = " + to_string(alpha.value) +
                            " is primitive with alpha^2 = alpha + 1");
  }
  const Fe gamma = f.pow(alpha, r + 1);
  const Fe beta = f.pow(alpha, r - 1);

  std::vector<Fe> elements;
  std::vector<std::size_t> witness;
  for (std::int64_t i = 1; i <= s; ++i) {
    const Fe base = f.pow(alpha, 2 * i);
    std::vector<Fe> coset;
    for (std::int64_t j = 0; j < r - 1; ++j) {
      if (r >= 5 && j % 2 == 0) witness.push_back(elements.size());
      coset.push_back(f.mul(base, f.pow(gamma, j)));
      elements.push_back(coset.back());
    }
    check_product(f, coset, binomial_poly(f, r - 1, f.neg(f.pow(alpha, 2 * i * (r - 1)))),
                  "f_" + to_string(i) + "(x) = x^(r-1) - alpha^(" + to_string(2 * i) + "(r-1))",
                  recipe);
  }
  for (std::int64_t j = 1; j <= t; ++j) {
    const Fe base = f.pow(alpha, 2 * j - 1);
    std::vector<Fe> coset;
    for (std::int64_t l = 0; l <= r; ++l) {
      if (r >= 5 && l % 2 == 0) witness.push_back(elements.size());
      coset.push_back(f.mul(base, f.pow(beta, l)));
      elements.push_back(coset.back());
    }
    check_product(f, coset,
                  binomial_poly(f, r + 1, f.neg(f.pow(alpha, (2 * j - 1) * (r + 1)))),
                  "g_" + to_string(j) + "(x) = x^(r+1) - alpha^(" + to_string(2 * j - 1) +
                      "(r+1))",
                  recipe);
  }
  if (r == 3) {
    for (std::int64_t e : {1, 2, 7}) {
      const Fe x = f.pow(alpha, e);
      const auto it = std::find(elements.begin(), elements.end(), x);
      if (it == elements.end()) {
        throw Error(Errc::WitnessCheckFailed, "alpha^" + to_string(e) + " is not in A");
      }
      witness.push_back(static_cast<std::size_t>(it - elements.begin()));
    }
  }

  // Character identities behind the uniformity of eta(pi_A).
  const int eta_plus = f.eta(f.pow(alpha, (r + 1) / 2));
  for (std::int64_t i = -(r - 1) / 2; i <= (r - 1) / 2; ++i) {
    if (i == 0) continue;
    if (f.eta(f.sub(f.one(), f.pow(beta, 2 * i))) != eta_plus) {
      throw Error(Errc::VerificationFailed,
                  "eta(1 - beta^" + to_string(2 * i) + ") != eta(alpha^((r+1)/2))");
    }
  }
  recipe.checks.push_back("eta(1 - beta^(2i)) = eta(alpha^((r+1)/2)) for 0 < |i| <= (r-1)/2");
  const int eta_minus = f.eta(f.pow(alpha, (r - 1) / 2));
  for (std::int64_t l = 1; l <= (r + 1) / 2; ++l) {
    if (f.eta(f.sub(f.pow(beta, 2 * l - 1), f.one())) != eta_minus) {
      throw Error(Errc::VerificationFailed,
                  "eta(beta^" + to_string(2 * l - 1) + " - 1) != eta(alpha^((r-1)/2))");
    }
  }
  recipe.checks.push_back("eta(beta^(2l-1) - 1) = eta(alpha^((r-1)/2)) for 1 <= l <= (r+1)/2");

  return finalize(fp, std::move(elements), std::move(witness), std::move(recipe),
                  Errc::VerificationFailed);
}

EvalSet build_thm36(const FieldPtr& fp, std::int64_t r, std::int64_t l, std::int64_t t) {
  const Field& f = *fp;
  const auto q = static_cast<std::int64_t>(f.order());
  if (auto err = check_thm36(q, r, l, t)) throw *err;
  const unsigned sub = prime_power(static_cast<std::uint64_t>(r))->m;

  Recipe recipe = make_recipe(Theorem::T36, f);
  recipe.params["r"] = r;
  recipe.params["l"] = l;
  recipe.params["t"] = t;

  const Fe g = f.primitive();
  const auto fr = subfield_elements(f, r);
  std::vector<Fe> elements;
  std::vector<std::size_t> witness;

  if (l == 0) {
    // H = {0}, alpha = 1: the set is a subset of F_r split into two zero-sum halves.
    const auto split = find_zero_sum_split(f.characteristic(), sub, static_cast<std::uint64_t>(t));
    const Fe w = f.pow(g, (q - 1) / (r - 1));
    auto embed = [&](std::uint64_t code) {
      Fe x = f.zero(), basis = f.one();
      for (unsigned i = 0; i < sub; ++i) {
        x = f.add(x, f.mul(f.from_integer(static_cast<std::int64_t>(code % f.characteristic())),
                           basis));
        code /= f.characteristic();
        basis = f.mul(basis, w);
      }
      return x;
    };
    for (auto c : split->first) {
      witness.push_back(elements.size());
      elements.push_back(embed(c));
    }
    for (auto c : split->second) elements.push_back(embed(c));
    recipe.checks.push_back("l = 0: xi values split into two zero-sum halves of size " +
                            to_string(t));
    return finalize(fp, std::move(elements), std::move(witness), std::move(recipe),
                    Errc::VerificationFailed);
  }

  // xi ordering: 0, then {x, -x} pairs by smallest encoding.
  std::vector<Fe> xi{f.zero()};
  std::vector<bool> placed(f.order(), false);
  placed[0] = true;
  for (auto x : fr) {
    if (placed[x.value]) continue;
    xi.push_back(x);
    xi.push_back(f.neg(x));
    placed[x.value] = placed[f.neg(x).value] = true;
  }

  // H = F_r-span of 1, g, ..., g^{l-1}.
  std::vector<Fe> h{f.zero()};
  Fe basis = f.one();
  for (std::int64_t i = 0; i < l; ++i) {
    std::vector<Fe> next;
    next.reserve(h.size() * fr.size());
    for (auto x : h) {
      for (auto c : fr) next.push_back(f.add(x, f.mul(c, basis)));
    }
    h = std::move(next);
    basis = f.mul(basis, g);
  }
  std::sort(h.begin(), h.end());
  std::vector<bool> in_h(f.order(), false);
  for (auto x : h) in_h[x.value] = true;
  Fe alpha{0};
  while (in_h[alpha.value]) alpha.value++;
  recipe.params["alpha"] = alpha.value;

  for (std::int64_t i = 0; i < 2 * t; ++i) {
    const Fe shift = f.mul(xi[static_cast<std::size_t>(i)], alpha);
    for (auto x : h) {
      if (i < t) witness.push_back(elements.size());
      elements.push_back(f.add(x, shift));
    }
  }
  recipe.checks.push_back("H has " + to_string(h.size()) + " elements; alpha = " +
                          to_string(alpha.value) + " lies outside H");
  return finalize(fp, std::move(elements), std::move(witness), std::move(recipe),
                  Errc::VerificationFailed);
}

EvalSet build_thm37(const FieldPtr& fp, std::int64_t t, std::int64_t s) {
  const Field& f = *fp;
  const auto q = static_cast<std::int64_t>(f.order());
  if (auto err = check_thm37(q, t, s)) throw *err;
  const auto sq = *odd_square(q);
  const std::int64_t r = sq.r;
  const unsigned tp = ceil_log(sq.p, static_cast<std::uint64_t>(t));

  Recipe recipe = make_recipe(Theorem::T37, f);
  recipe.params["p"] = sq.p;
  recipe.params["m"] = sq.half_degree;
  recipe.params["r"] = r;
  recipe.params["t"] = t;
  recipe.params["s"] = s;
  recipe.params["t_prime"] = tp;

  // H = F_p-span of 1, w, ..., w^{t'-1} with w generating F_r^*.
  const Fe w = f.pow(f.primitive(), (q - 1) / (r - 1));
  std::vector<Fe> h{f.zero()};
  Fe basis = f.one();
  for (unsigned i = 0; i < tp; ++i) {
    std::vector<Fe> next;
    for (auto x : h) {
      for (std::uint32_t c = 0; c < sq.p; ++c) next.push_back(f.add(x, f.mul(f.from_integer(c), basis)));
    }
    h = std::move(next);
    basis = f.mul(basis, w);
  }
  std::sort(h.begin(), h.end());
  const std::vector<Fe> targets(h.begin(), h.begin() + t);  // h_1 = 0 first

  // Coset representatives of F_r / H, paired as b and -b.
  const auto fr = subfield_elements(f, r);
  auto rep = [&](Fe x) {
    Fe best = f.add(x, h.front());
    for (auto y : h) best = std::min(best, f.add(x, y));
    return best;
  };
  std::vector<Fe> reps;
  std::vector<bool> coset_used(f.order(), false);
  coset_used[0] = true;
  for (auto x : fr) {
    if (static_cast<std::int64_t>(reps.size()) == s / 2) break;
    const Fe rx = rep(x);
    if (rx != x || coset_used[rx.value]) continue;
    const Fe rn = rep(f.neg(x));
    if (coset_used[rn.value]) continue;
    coset_used[rx.value] = coset_used[rn.value] = true;
    reps.push_back(x);
  }
  if (static_cast<std::int64_t>(reps.size()) != s / 2) {
    throw Error(Errc::RepresentativePairingImpossible,
                "only " + to_string(reps.size()) + " pairs of cosets available");
  }
  std::vector<Fe> b = reps;
  for (auto x : reps) b.push_back(f.neg(x));

  // Trace fibres.
  std::vector<std::vector<Fe>> fibres(f.order());
  std::vector<bool> is_target(f.order(), false);
  for (auto x : targets) is_target[x.value] = true;
  for (std::uint64_t v = 0; v < f.order(); ++v) {
    const Fe x{static_cast<std::uint32_t>(v)};
    const Fe tr = f.trace_to_subfield(x, static_cast<std::uint64_t>(r));
    if (is_target[tr.value]) fibres[tr.value].push_back(x);
  }

  std::vector<Fe> elements;
  std::vector<std::size_t> witness;
  for (std::int64_t i = 0; i < t; ++i) {
    const Fe hi = targets[static_cast<std::size_t>(i)];
    const auto& fibre = fibres[hi.value];
    if (static_cast<std::int64_t>(fibre.size()) != r) {
      throw Error(Errc::VerificationFailed, "trace fibre over " + to_string(hi.value) + " has " +
                                                to_string(fibre.size()) + " elements");
    }
    std::vector<Fe> expected(static_cast<std::size_t>(r) + 1, f.zero());
    expected[0] = f.neg(hi);
    expected[1] = f.one();
    expected[static_cast<std::size_t>(r)] = f.add(expected[static_cast<std::size_t>(r)], f.one());
    check_product(f, fibre, expected,
                  "prod over T_" + to_string(i + 1) + " of (x - a) = x^r + x - " +
                      to_string(hi.value),
                  recipe);
    for (auto x : fibre) {
      if (2 * i < t) witness.push_back(elements.size());
      elements.push_back(x);
    }
  }
  for (std::int64_t j = 0; j < s; ++j) {
    for (auto y : h) {
      if (2 * j < s) witness.push_back(elements.size());
      elements.push_back(f.add(b[static_cast<std::size_t>(j)], y));
    }
  }
  std::vector<Fe> shown(b.begin(), b.end());
  recipe.checks.push_back("h = {" + join(targets) + "}; b = {" + join(shown) + "}");
  return finalize(fp, std::move(elements), std::move(witness), std::move(recipe),
                  Errc::VerificationFailed);
}

}  // namespace nmds
