#include <doctest.h>

#include <algorithm>
#include <functional>
#include <cmath>
#include <set>
#include <string>
#include <tuple>

#include "nmds/constructions.hpp"
#include "nmds/error.hpp"
#include "nmds/lambda.hpp"
#include "oracles.hpp"

using namespace nmds;

namespace {

std::set<std::uint32_t> values_of(std::span<const Fe> xs) {
  std::set<std::uint32_t> out;
  for (auto x : xs) out.insert(x.value);
  return out;
}

std::set<std::uint32_t> witness_values(const EvalSet& a) {
  std::set<std::uint32_t> out;
  for (auto i : *a.witness()) out.insert(a[i].value);
  return out;
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::MalformedInput;
}

oracle::RefField reference_for(const Field& f) {
  std::vector<oracle::u64> mod(f.spec().modulus.begin(), f.spec().modulus.end());
  return oracle::RefField(f.characteristic(), mod);
}

// Smallest primitive element with x^2 = x + 1, by reference arithmetic.
std::uint32_t golden_primitive(const oracle::RefField& ref) {
  for (std::uint32_t x = 1; x < ref.q; ++x) {
    if (ref.order(x) == ref.q - 1 && ref.mul(x, x) == ref.add(x, 1)) return x;
  }
  return 0;
}

void check_builder_invariants(const EvalSet& a) {
  const Field& f = a.field();
  REQUIRE(values_of(a.elements()).size() == a.size());
  REQUIRE(sum_of(f, a.elements()) == Fe{0});
  REQUIRE(a.witness());
  REQUIRE(2 * a.witness()->size() == a.size());
  Fe s = f.zero();
  for (auto i : *a.witness()) s = f.add(s, a[i]);
  REQUIRE(s == Fe{0});
  REQUIRE(eta_profile(a).uniform);
  if (binomial(a.size(), a.size() / 2) <= 10'000'000) REQUIRE(has_zero_sum_k_subset(a, a.size() / 2));
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("subgroup construction over F_13") {
  const auto f = Field::of_order(13);
  const auto s6 = build_thm33(f, 6);
  std::vector<std::uint32_t> powers;
  for (std::uint32_t i = 1, x = 4; i <= 6; ++i, x = x * 4 % 13) powers.push_back(x);
  std::vector<std::uint32_t> got;
  for (auto x : s6.elements()) got.push_back(x.value);
  CHECK(got == powers);
  CHECK(got == std::vector<std::uint32_t>{4, 3, 12, 9, 10, 1});
  CHECK(witness_values(s6) == std::set<std::uint32_t>{3, 9, 1});
  check_builder_invariants(s6);

  const auto s4 = build_thm33(f, 4);
  got.clear();
  for (auto x : s4.elements()) got.push_back(x.value);
  CHECK(got == std::vector<std::uint32_t>{12, 1, 9, 4});
  CHECK(witness_values(s4) == std::set<std::uint32_t>{12, 1});
  check_builder_invariants(s4);

  CHECK(code_of([&] { build_thm33(f, 12); }) == Errc::InvalidParams);
  CHECK(code_of([&] { build_thm33(f, 2); }) == Errc::InvalidParams);
  CHECK(code_of([&] { build_thm33(f, 5); }) == Errc::InvalidParams);
  CHECK(code_of([&] { build_thm33(Field::of_order(11), 4); }) == Errc::InvalidParams);
}

TEST_CASE("coset construction over F_25") {
  const auto fp = Field::of_order(25);
  const auto ref = reference_for(*fp);
  const auto a = build_thm34(fp, 4, 6, 1);
  CHECK(a.size() == 6);
  // Witness is the subgroup of order 3.
  std::set<std::uint32_t> cube_roots;
  for (std::uint32_t x = 1; x < 25; ++x) {
    if (ref.pow(x, 3) == 1) cube_roots.insert(x);
  }
  CHECK(witness_values(a) == cube_roots);
  check_builder_invariants(a);

  const auto b = build_thm34(fp, 12, 2, 2);
  check_builder_invariants(b);
  CHECK(witness_values(b) == values_of(b.elements().subspan(0, 2)));

  CHECK(code_of([&] { build_thm34(fp, 4, 6, 2); }) == Errc::InvalidParams);      // t > R = 1
  CHECK(code_of([&] { build_thm34(fp, 12, 2, 1); }) == Errc::InvalidParams);     // n = 2
  CHECK(code_of([&] { build_thm34(fp, 3, 8, 1); }) == Errc::InvalidParams);      // e odd
  // odd t with f = 2 leaves no zero-sum half coset
  CHECK(code_of([&] { build_thm34(fp, 12, 2, 3, std::vector<std::int64_t>{0, 1, 2}); }) ==
        Errc::WitnessCheckFailed);
  CHECK(code_of([&] { build_thm34(fp, 12, 2, 2, std::vector<std::int64_t>{0, 3}); }) ==
        Errc::CosetCollision);
  CHECK(code_of([&] { build_thm34(fp, 24, 1, 6); }) == Errc::WitnessCheckFailed);
  const auto c = build_thm34(fp, 12, 2, 2, std::vector<std::int64_t>{1, 5});
  check_builder_invariants(c);
}

TEST_CASE("mixed coset construction, q = 9 special case") {
  for (const auto& spec : {find_irreducible(3, 2), FieldSpec{3, 2, {2, 2, 1}}}) {
    const auto fp = Field::create(spec);
    const auto ref = reference_for(*fp);
    const std::uint32_t alpha = golden_primitive(ref);
    REQUIRE(alpha != 0);
    const auto a = build_thm35(fp, 1, 1);
    std::set<std::uint32_t> expected;
    for (unsigned e : {1, 2, 3, 5, 6, 7}) expected.insert(static_cast<std::uint32_t>(ref.pow(alpha, e)));
    CHECK(values_of(a.elements()) == expected);
    std::set<std::uint32_t> w;
    for (unsigned e : {1, 2, 7}) w.insert(static_cast<std::uint32_t>(ref.pow(alpha, e)));
    CHECK(witness_values(a) == w);
    CHECK(a.recipe().params.at("alpha") == alpha);
    check_builder_invariants(a);
  }
  const auto alt = Field::create(FieldSpec{3, 2, {2, 2, 1}});
  CHECK(build_thm35(alt, 1, 1).recipe().params.at("alpha") == 3);
}

TEST_CASE("mixed coset construction for larger r") {
  const auto f25 = Field::of_order(25);
  const auto a = build_thm35(f25, 2, 1);
  CHECK(a.size() == 14);
  check_builder_invariants(a);
  CHECK(code_of([&] { build_thm35(f25, 1, 1); }) == Errc::ParityViolation);
  CHECK(code_of([&] { build_thm35(f25, 4, 1); }) == Errc::InvalidParams);
  CHECK(code_of([&] { build_thm35(f25, 2, 3); }) == Errc::InvalidParams);
  for (std::uint64_t q : {49, 81, 121, 169, 289, 361}) {
    CAPTURE(q);
    const auto fp = Field::of_order(q);
    const std::int64_t r = static_cast<std::int64_t>(std::lround(std::sqrt(static_cast<double>(q))));
    for (std::int64_t s = 1; s <= (r + 1) / 2; ++s) {
      for (std::int64_t t = 1; t <= (r - 1) / 2; ++t) {
        if (check_thm35(static_cast<std::int64_t>(q), s, t)) continue;
        const auto set = build_thm35(fp, s, t);
        REQUIRE(set.size() == static_cast<std::size_t>(s * (r - 1) + t * (r + 1)));
        check_builder_invariants(set);
      }
    }
  }
}

TEST_CASE("character identities behind the mixed construction") {
  for (std::uint64_t q : {9, 25, 49, 121, 169, 289, 361}) {
    const auto fp = Field::of_order(q);
    const Field& f = *fp;
    const auto ref = reference_for(f);
    const std::int64_t r = static_cast<std::int64_t>(std::lround(std::sqrt(static_cast<double>(q))));
    const std::uint32_t g = f.primitive().value;
    const auto beta = ref.fast_pow(g, static_cast<oracle::u64>(r - 1));
    auto eta = [&](oracle::u64 x) { return ref.fast_pow(x, (q - 1) / 2) == 1 ? 1 : -1; };
    const int plus = eta(ref.fast_pow(g, static_cast<oracle::u64>((r + 1) / 2)));
    const int minus = eta(ref.fast_pow(g, static_cast<oracle::u64>((r - 1) / 2)));
    for (std::int64_t i = 1; i <= (r - 1) / 2; ++i) {
      const auto b2i = ref.fast_pow(beta, static_cast<oracle::u64>(2 * i));
      CHECK(eta(ref.sub(1, b2i)) == plus);
      CHECK(eta(ref.sub(1, ref.inv(b2i))) == plus);
    }
    for (std::int64_t l = 1; l <= (r + 1) / 2; ++l) {
      CHECK(eta(ref.sub(ref.fast_pow(beta, static_cast<oracle::u64>(2 * l - 1)), 1)) == minus);
    }
  }
}

TEST_CASE("subspace construction") {
  const auto f9 = Field::of_order(9);
  const auto a = build_thm36(f9, 3, 1, 1);
  CHECK(values_of(a.elements()) == std::set<std::uint32_t>{0, 1, 2, 3, 4, 5});
  CHECK(witness_values(a) == std::set<std::uint32_t>{0, 1, 2});
  check_builder_invariants(a);

  const auto f25 = Field::of_order(25);
  const auto b = build_thm36(f25, 5, 1, 2);
  CHECK(b.size() == 20);
  check_builder_invariants(b);
  const auto c = build_thm36(f25, 5, 0, 2);
  CHECK(c.size() == 4);
  check_builder_invariants(c);
  CHECK(code_of([&] { build_thm36(f25, 5, 2, 1); }) == Errc::InvalidParams);
  CHECK(code_of([&] { build_thm36(f25, 5, 0, 1); }) == Errc::InvalidParams);
  CHECK(code_of([&] { build_thm36(f25, 25, 1, 1); }) == Errc::InvalidParams);

  const auto f81 = Field::of_order(81);
  for (auto [r, l, t] : {std::tuple{3, 1, 1}, {3, 2, 1}, {3, 3, 1}, {9, 0, 2}, {9, 0, 3}, {9, 0, 4},
                         {9, 1, 3}}) {
    CAPTURE(r);
    CAPTURE(l);
    CAPTURE(t);
    const auto set = build_thm36(f81, r, l, t);
    CHECK(set.size() == static_cast<std::size_t>(2 * t * ipow(r, l)));
    check_builder_invariants(set);
  }
}

TEST_CASE("zero-sum split of (Z_p)^d") {
  for (auto [p, d] : {std::pair{5u, 1u}, {7u, 1u}, {11u, 1u}, {3u, 2u}, {5u, 2u}, {3u, 3u}, {13u, 1u}}) {
    const auto size = ipow(p, d);
    auto add = [&](std::uint64_t a, std::uint64_t b) {
      std::uint64_t out = 0, place = 1;
      for (unsigned i = 0; i < d; ++i, a /= p, b /= p, place *= p) out += (a % p + b % p) % p * place;
      return out;
    };
    for (std::uint64_t t = 1; 2 * t <= size; ++t) {
      const auto split = find_zero_sum_split(p, d, t);
      if (t < 2 || 2 * t > size - 1) {
        CHECK_FALSE(split);
        continue;
      }
      REQUIRE(split);
      std::set<std::uint64_t> all(split->first.begin(), split->first.end());
      all.insert(split->second.begin(), split->second.end());
      REQUIRE(all.size() == 2 * t);
      REQUIRE(*all.rbegin() < size);
      std::uint64_t s1 = 0, s2 = 0;
      for (auto x : split->first) s1 = add(s1, x);
      for (auto x : split->second) s2 = add(s2, x);
      REQUIRE(s1 == 0);
      REQUIRE(s2 == 0);
    }
  }
}

TEST_CASE("trace fibre construction") {
  const auto f9 = Field::of_order(9);
  const auto ref = reference_for(*f9);
  const auto a = build_thm37(f9, 2, 0);
  std::set<std::uint32_t> fibres, first;
  for (std::uint32_t x = 0; x < 9; ++x) {
    const auto tr = ref.add(x, ref.pow(x, 3));
    if (tr == 0 || tr == 1) fibres.insert(x);
    if (tr == 0) first.insert(x);
  }
  CHECK(values_of(a.elements()) == fibres);
  CHECK(witness_values(a) == first);
  check_builder_invariants(a);
  CHECK(code_of([&] { build_thm37(f9, 3, 0); }) == Errc::InvalidParams);
  CHECK(code_of([&] { build_thm37(f9, 2, 2); }) == Errc::InvalidParams);

  for (std::uint64_t q : {25, 49, 81, 729}) {
    const auto fp = Field::of_order(q);
    const auto r = static_cast<std::int64_t>(std::lround(std::sqrt(static_cast<double>(q))));
    for (std::int64_t t = 2; t <= r; t += 2) {
      for (std::int64_t s = 0; s < r; s += 2) {
        if (check_thm37(static_cast<std::int64_t>(q), t, s)) continue;
        CAPTURE(q);
        CAPTURE(t);
        CAPTURE(s);
        const auto set = build_thm37(fp, t, s);
        check_builder_invariants(set);
      }
    }
  }
}

TEST_CASE("product of linear factors") {
  const auto fp = Field::of_order(13);
  const std::vector<Fe> roots{Fe{1}, Fe{12}};
  CHECK(product_of_linear_factors(*fp, roots) == std::vector<Fe>{Fe{12}, Fe{0}, Fe{1}});

  // Evaluate by Horner with reference arithmetic: zeros exactly at the roots.
  const auto f25 = Field::of_order(25);
  const auto ref = reference_for(*f25);
  const std::vector<Fe> rs{Fe{0}, Fe{3}, Fe{7}, Fe{11}, Fe{24}};
  const auto poly = product_of_linear_factors(*f25, rs);
  REQUIRE(poly.size() == rs.size() + 1);
  CHECK(poly.back() == Fe{1});
  for (std::uint32_t x = 0; x < 25; ++x) {
    oracle::u64 v = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = ref.add(ref.mul(v, x), it->value);
    const bool root = std::find(rs.begin(), rs.end(), Fe{x}) != rs.end();
    CHECK((v == 0) == root);
  }
}

TEST_CASE("scan over q = 9 by hand") {
  const auto s = scan_lengths(9);
  CHECK(s.per_theorem.at(Theorem::T33) == std::set<std::uint64_t>{4});
  CHECK(s.per_theorem.at(Theorem::T34) == std::set<std::uint64_t>{4});
  CHECK(s.per_theorem.at(Theorem::T35) == std::set<std::uint64_t>{6});
  CHECK(s.per_theorem.at(Theorem::T36) == std::set<std::uint64_t>{6});
  CHECK(s.per_theorem.at(Theorem::T37) == std::set<std::uint64_t>{6});
  CHECK(s.lengths == std::set<std::uint64_t>{4, 6});
}

TEST_CASE("mixed-coset length count for r = 101 matches the closed form") {
  std::set<std::int64_t> closed;
  for (std::int64_t s = 2; s <= 50; s += 2) {
    for (std::int64_t t = 1; t <= 50; ++t) closed.insert(100 * s + 102 * t);
  }
  CHECK(closed.size() == 1250);
  const auto scan = scan_lengths(10201);
  CHECK(scan.per_theorem.at(Theorem::T35).size() == closed.size());
  const auto again = scan_lengths(10201);
  CHECK(again.lengths == scan.lengths);
  for (auto n : scan.lengths) {
    REQUIRE(n % 2 == 0);
    REQUIRE(n >= 4);
    REQUIRE(n <= 2 * 10201 + 2);
  }
}

TEST_CASE("every scanned recipe builds") {
  for (std::uint64_t q : {9, 13, 25, 49, 81, 121}) {
    const auto fp = Field::of_order(q);
    const auto scan = scan_lengths(q);
    for (const auto& [n, recipes] : scan.recipes) {
      for (const auto& r : recipes) {
        CAPTURE(q);
        CAPTURE(n);
        const std::string th = theorem_id(r.theorem);
        CAPTURE(th);
        const auto& p = r.params;
        std::optional<EvalSet> set;
        switch (r.theorem) {
          case Theorem::T33: set.emplace(build_thm33(fp, p.at("n"))); break;
          case Theorem::T34: set.emplace(build_thm34(fp, p.at("e"), p.at("f"), p.at("t"))); break;
          case Theorem::T35: set.emplace(build_thm35(fp, p.at("s"), p.at("t"))); break;
          case Theorem::T36: set.emplace(build_thm36(fp, p.at("r"), p.at("l"), p.at("t"))); break;
          case Theorem::T37: set.emplace(build_thm37(fp, p.at("t"), p.at("s"))); break;
          case Theorem::Custom: FAIL("custom recipe in scan"); break;
        }
        REQUIRE(set->size() == n);
        check_builder_invariants(*set);
      }
    }
  }
}

TEST_CASE("small constructions are NMDS self-dual with d = n - k") {
  const auto f9 = Field::of_order(9), f13 = Field::of_order(13), f25 = Field::of_order(25);
  for (const auto& set : {build_thm33(f13, 6), build_thm33(f13, 4), build_thm34(f25, 4, 6, 1),
                          build_thm35(f9, 1, 1), build_thm36(f9, 3, 1, 1), build_thm37(f9, 2, 0),
                          build_thm36(f25, 5, 0, 2)}) {
    const auto result = pipeline(set);
    CHECK(result.self_duality.self_dual);
    CHECK(result.classification.verdict == Verdict::NMDS);
    REQUIRE(result.classification.distance);
    CHECK(*result.classification.distance == set.size() / 2);
  }
}

}  // TEST_SUITE
