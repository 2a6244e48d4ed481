// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Every comparison is exact; the runtime limits below are hard.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "nmds/commands.hpp"
#include "nmds/constructions.hpp"
#include "nmds/error.hpp"
#include "nmds/exchange.hpp"
#include "nmds/lambda.hpp"
#include "oracles.hpp"

using namespace nmds;
using oracle::u64;

namespace {

struct Failure {
  std::string what;
};

void expect(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

oracle::RefField reference_for(const Field& f) {
  std::vector<u64> mod(f.spec().modulus.begin(), f.spec().modulus.end());
  return oracle::RefField(f.characteristic(), mod);
}

std::vector<std::vector<u64>> rows_of(const Matrix& m) {
  std::vector<std::vector<u64>> rows(m.rows(), std::vector<u64>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c).value;
  }
  return rows;
}

// G G^T == 0 with reference arithmetic.
bool gram_vanishes(const oracle::RefField& ref, const Matrix& g) {
  for (std::size_t a = 0; a < g.rows(); ++a) {
    for (std::size_t b = 0; b < g.rows(); ++b) {
      u64 s = 0;
      for (std::size_t c = 0; c < g.cols(); ++c) s = ref.add(s, ref.mul(g(a, c).value, g(b, c).value));
      if (s != 0) return false;
    }
  }
  return true;
}

std::string fmt_set(const std::vector<std::size_t>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "}";
}

std::string construct_q9_document() {
  ConstructOptions opts;
  opts.theorem = "3.5";
  opts.params = {{"r", 3}, {"s", 1}, {"t", 1}};
  std::ostringstream out, err;
  const int status = cmd_construct(opts, out, err);
  expect(status == kExitOk, "construct exited " + std::to_string(status) + ": " + err.str());
  return out.str();
}

// ---- criteria ---------------------------------------------------------------

std::string criterion1() {
  const auto text = construct_q9_document();
  const auto doc = parse_code_document(text);
  expect(doc.field->order() == 9, "field is not F_9");
  expect(doc.n == 6 && doc.k == 3, "parameters are not [6,3]");
  const auto ref = reference_for(*doc.field);
  expect(gram_vanishes(ref, doc.generator), "G G^T != 0");

  const auto d = oracle::min_distance_naive(ref, rows_of(doc.generator));
  expect(d == 3, "brute-force distance " + std::to_string(d));
  const LinearCode code(doc.generator);
  const auto c = classify_by_ranks(code);
  expect(c.verdict == Verdict::NMDS, std::string("rank verdict ") + verdict_name(c.verdict));
  expect(doc.claimed.verdict == Verdict::NMDS, "document does not claim NMDS");

  // alpha: smallest primitive element with alpha^2 = alpha + 1.
  u64 alpha = 0;
  for (u64 x = 1; x < ref.q && !alpha; ++x) {
    if (ref.order(x) == ref.q - 1 && ref.mul(x, x) == ref.add(x, 1)) alpha = x;
  }
  expect(alpha != 0, "no primitive alpha with alpha^2 = alpha + 1");
  std::vector<std::size_t> triple;
  for (unsigned e : {1, 2, 7}) {
    const u64 v = ref.pow(alpha, e);
    const auto it = std::find_if(doc.eval_set.begin(), doc.eval_set.end(),
                                 [&](Fe x) { return x.value == v; });
    expect(it != doc.eval_set.end(), "alpha^" + std::to_string(e) + " is not in A");
    triple.push_back(static_cast<std::size_t>(it - doc.eval_set.begin()));
  }
  std::sort(triple.begin(), triple.end());
  const auto& ev = c.dependent_subsets;
  expect(std::find(ev.begin(), ev.end(), triple) != ev.end(),
         "triple " + fmt_set(triple) + " not among dependent subsets");
  expect(std::find(doc.claimed.dependent_subsets.begin(), doc.claimed.dependent_subsets.end(),
                   triple) != doc.claimed.dependent_subsets.end(),
         "triple missing from the document evidence");
  return "[6,3,3] NMDS self-dual, alpha = " + std::to_string(alpha) + ", dependent triple " +
         fmt_set(triple) + " of " + std::to_string(c.dependent_count);
}

std::string criterion2() {
  std::size_t codes = 0, enumerated = 0;
  for (std::uint64_t q : {13, 17, 25, 29, 37}) {
    expect(q % 4 == 1, "q not 1 mod 4");
    const auto fp = Field::of_order(q);
    const auto ref = reference_for(*fp);
    for (std::uint64_t n = 4; n < q - 1; n += 2) {
      if ((q - 1) % n != 0) continue;
      const auto where = "q=" + std::to_string(q) + " n=" + std::to_string(n);
      const auto set = build_thm33(fp, static_cast<std::int64_t>(n));
      const auto result = pipeline(set);
      expect(gram_vanishes(ref, result.code.generator()), where + ": not self-dual");
      expect(result.classification.verdict == Verdict::NMDS, where + ": verdict not NMDS");
      double size = 1;
      for (std::uint64_t i = 0; i < n / 2; ++i) size *= static_cast<double>(q);
      if (size <= 1e7) {
        expect(result.classification.distance.has_value(), where + ": distance not enumerated");
        expect(*result.classification.distance == n / 2, where + ": d != n/2");
        ++enumerated;
      } else {
        expect(!result.classification.distance, where + ": unexpected enumeration");
      }
      ++codes;
    }
  }
  return std::to_string(codes) + " codes NMDS self-dual, " + std::to_string(enumerated) +
         " with enumerated distance, rest rank-certified";
}

std::string criterion3() {
  const auto fp = Field::of_order(25);
  const auto ref = reference_for(*fp);
  const auto result = pipeline(build_thm34(fp, 4, 6, 1));
  const auto& g = result.code.generator();
  expect(g.rows() == 3 && g.cols() == 6, "not [6,3]");
  expect(gram_vanishes(ref, g), "not self-dual");
  expect(result.classification.verdict == Verdict::NMDS, "verdict not NMDS");
  expect(result.classification.distance == std::optional<std::size_t>(3), "enumerated d != 3");
  expect(oracle::min_distance_naive(ref, rows_of(g)) == 3, "reference enumeration d != 3");
  return "[6,3,3] NMDS self-dual over F_25, 25^3 codewords enumerated";
}

std::string criterion4() {
  const auto fp = Field::of_order(25);
  const auto ref = reference_for(*fp);
  PipelineOptions opts;
  opts.brute_force_distance = false;
  const auto result = pipeline(build_thm36(fp, 5, 1, 2), opts);
  const auto& c = result.classification;
  expect(result.code.n() == 20 && result.code.k() == 10, "not [20,10]");
  expect(gram_vanishes(ref, result.code.generator()), "not self-dual");
  expect(c.verdict == Verdict::NMDS, "verdict not NMDS");
  expect(c.checked_kp1 == 167960, "checked " + std::to_string(c.checked_kp1) + " 11-subsets");
  expect(c.checked_km1 == 167960 && c.checked_k == 184756, "incomplete rank checks");
  expect(recheck_evidence(result.code, c), "evidence does not recheck");
  return "[20,10] NMDS self-dual by ranks, " + std::to_string(c.dependent_count) +
         " dependent 10-subsets";
}

std::string criterion5() {
  const auto fp = Field::of_order(9);
  const auto ref = reference_for(*fp);
  const auto set = build_thm37(fp, 2, 0);
  expect(set.size() == 6, "|A| != 6");
  // Group A by Tr(x) = x + x^3 and multiply out each fibre.
  std::map<u64, std::vector<u64>> fibres;
  for (auto x : set.elements()) fibres[ref.add(x.value, ref.pow(x.value, 3))].push_back(x.value);
  expect(fibres.size() == 2, "A is not two trace fibres");
  for (const auto& [h, roots] : fibres) {
    std::vector<u64> poly{1};
    for (auto a : roots) {
      std::vector<u64> next(poly.size() + 1, 0);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] = ref.add(next[i + 1], poly[i]);
        next[i] = ref.add(next[i], ref.mul(poly[i], ref.neg(a)));
      }
      poly = next;
    }
    const std::vector<u64> expected{ref.neg(h), 1, 0, 1};  // x^3 + x - h
    expect(poly == expected, "fibre over h=" + std::to_string(h) + " has the wrong product");
  }
  const auto result = pipeline(set);
  expect(gram_vanishes(ref, result.code.generator()), "not self-dual");
  expect(result.classification.verdict == Verdict::NMDS, "verdict not NMDS");
  expect(result.classification.distance == std::optional<std::size_t>(3), "d != 3");
  expect(oracle::min_distance_naive(ref, rows_of(result.code.generator())) == 3,
         "reference enumeration d != 3");
  return "[6,3,3] NMDS self-dual over F_9, both fibre products match x^3 + x - h";
}

std::string criterion6() {
  std::mt19937_64 rng(20261015);
  const std::uint64_t qs[] = {13, 25, 81};
  std::map<std::size_t, std::set<u64>> ratios;  // det / (sum * vandermonde), per k
  std::size_t zeros = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto q = qs[trial % 3];
    const auto fp = Field::of_order(q);
    const auto ref = reference_for(*fp);
    const std::size_t k = 1 + rng() % 6;
    std::vector<Fe> pts(k);
    for (auto& x : pts) x = Fe{static_cast<std::uint32_t>(rng() % q)};
    // Steer a share of the tuples onto the zero locus.
    if (trial % 5 == 1 && k >= 2) pts[k - 1] = pts[0];
    if (trial % 5 == 2) {
      u64 s = 0;
      for (std::size_t i = 0; i + 1 < k; ++i) s = ref.add(s, pts[i].value);
      pts[k - 1] = Fe{static_cast<std::uint32_t>(ref.neg(s))};
    }
    const auto exps = row_exponents(k);
    const Matrix m = exponent_matrix(fp, pts, exps);
    const u64 d = det(m).value;
    expect(d == oracle::leibniz_det(ref, rows_of(m)), "det disagrees with Leibniz expansion");

    u64 sum = 0, vdm = 1;
    bool collide = false;
    for (std::size_t t = 0; t < k; ++t) {
      sum = ref.add(sum, pts[t].value);
      for (std::size_t s = 0; s < t; ++s) {
        vdm = ref.mul(vdm, ref.sub(pts[t].value, pts[s].value));
        collide |= pts[t] == pts[s];
      }
    }
    const u64 rhs = ref.mul(sum, vdm);
    expect((rhs == 0) == (sum == 0 || collide), "product side misjudges the zero locus");
    if (rhs == 0) {
      expect(d == 0, "det nonzero although the sum is zero or points collide");
      ++zeros;
      continue;
    }
    expect(d != 0, "det zero off the zero locus");
    // Store the ratio as +1 / -1 so that fields can be pooled.
    const u64 ratio = ref.mul(d, ref.inv(rhs));
    expect(ratio == 1 || ratio == ref.neg(1), "ratio is not +-1");
    ratios[k].insert(ratio == 1 ? 1 : 0);
  }
  std::string detail;
  for (std::size_t k = 1; k <= 6; ++k) {
    expect(ratios[k].size() == 1, "epsilon not constant for k = " + std::to_string(k));
    const bool plus = *ratios[k].begin() == 1;
    const bool expected = (k * (k - 1) / 2) % 2 == 0;
    expect(plus == expected, "epsilon(" + std::to_string(k) + ") != (-1)^(k(k-1)/2)");
    detail += (plus ? "+" : "-");
  }
  return "epsilon(1..6) = " + detail + ", " + std::to_string(zeros) + " of 1000 on the zero locus";
}

std::string criterion7() {
  const auto fp = Field::of_order(11);
  const auto ref = reference_for(*fp);
  std::size_t cases = 0, mismatches = 0, nmds_count = 0;
  for (unsigned mask = 0; mask < (1u << 11); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size < 4 || size > 7) continue;
    std::vector<Fe> pts;
    std::vector<u64> raw;
    for (std::uint32_t x = 0; x < 11; ++x) {
      if (mask >> x & 1) {
        pts.push_back(Fe{x});
        raw.push_back(x);
      }
    }
    const EvalSet set(fp, pts);
    for (std::size_t k = 2; k < size; ++k) {
      const auto code = build_code(set, k, MultiplierVector::ones(size));
      const auto c = classify_by_ranks(code);
      const bool zero_sum = oracle::has_zero_sum_subset(ref, raw, k);
      const Verdict want = zero_sum ? Verdict::NMDS : Verdict::MDS;
      mismatches += c.verdict != want;
      nmds_count += zero_sum;
      ++cases;
    }
  }
  expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
  return std::to_string(cases) + " (A, k) pairs, " + std::to_string(nmds_count) +
         " NMDS, 0 mismatches";
}

std::string criterion8() {
  std::mt19937_64 rng(8);
  std::size_t uniform = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t q = trial % 2 ? 25 : 13;
    const std::size_t n = 4 + 2 * static_cast<std::size_t>(trial % 3);
    const auto fp = Field::of_order(q);
    const auto ref = reference_for(*fp);
    std::vector<Fe> pts;
    for (;;) {
      pts.clear();
      u64 s = 0;
      while (pts.size() < n - 1) {
        const Fe x{static_cast<std::uint32_t>(rng() % q)};
        if (std::find(pts.begin(), pts.end(), x) != pts.end()) continue;
        pts.push_back(x);
        s = ref.add(s, x.value);
      }
      const Fe last{static_cast<std::uint32_t>(ref.neg(s))};
      if (std::find(pts.begin(), pts.end(), last) != pts.end()) continue;
      pts.push_back(last);
      break;
    }
    const EvalSet set(fp, pts);
    const Matrix b = self_duality_system(set);
    expect(rank(b) == n - 1, "rank(B) != 2k - 1");
    expect(oracle::rank_of(ref, rows_of(b)) == n - 1, "reference rank(B) != 2k - 1");

    std::vector<u64> y(n);
    std::set<bool> squares;
    for (std::size_t i = 0; i < n; ++i) {
      u64 pi = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) pi = ref.mul(pi, ref.sub(pts[i].value, pts[j].value));
      }
      y[i] = ref.inv(pi);
      squares.insert(ref.is_square(pi));
    }
    const auto bm = rows_of(b);
    for (const auto& row : bm) {
      u64 s = 0;
      for (std::size_t i = 0; i < n; ++i) s = ref.add(s, ref.mul(row[i], y[i]));
      expect(s == 0, "B y != 0 for y = 1/pi_A");
    }
    const auto basis = nullspace_basis(b);
    expect(basis.size() == 1, "nullspace is not one-dimensional");
    const u64 scale = ref.mul(basis[0][0].value, ref.inv(y[0]));
    for (std::size_t i = 0; i < n; ++i) {
      expect(basis[0][i].value == ref.mul(scale, y[i]), "nullspace not spanned by 1/pi_A");
    }

    const bool is_uniform = squares.size() == 1;
    expect(eta_profile(set).uniform == is_uniform, "eta_profile disagrees with exhaustive squares");
    if (is_uniform) {
      ++uniform;
      const auto lambda = solve_lambda(set);
      expect(gram_vanishes(ref, build_code(set, n / 2, lambda).generator()),
             "solve_lambda code is not self-dual");
    }
  }
  return "200 sets, " + std::to_string(uniform) + " uniform and solved to self-dual codes";
}

std::string criterion9() {
  std::set<std::int64_t> closed;
  for (std::int64_t s = 2; s <= 50; s += 2) {
    for (std::int64_t t = 1; t <= 50; ++t) closed.insert(100 * s + 102 * t);
  }
  const auto scan = scan_lengths(10201);
  const auto t35 = scan.per_theorem.at(Theorem::T35).size();
  expect(closed.size() == 1250, "closed form count is " + std::to_string(closed.size()));
  expect(t35 == closed.size(), "mixed-coset count " + std::to_string(t35) + " != 1250");
  expect(scan.lengths.size() >= 1250, "union below 1250");

  std::ostringstream out, err;
  expect(cmd_scan(10201, false, out, err) == kExitOk, "scan command failed");
  const auto report = out.str();
  expect(report.find("reference: N = 1528") != std::string::npos, "report lacks the reference count");
  const bool documented = report.find("discrepancy: union - reference = ") != std::string::npos ||
                          report.find("agreement with reference") != std::string::npos;
  expect(documented, "report does not state agreement or the discrepancy");

  std::string detail = "T35 = 1250, union = " + std::to_string(scan.lengths.size()) + " vs 1528";
  for (std::uint64_t q : {11449, 39601}) {
    detail += "; q=" + std::to_string(q) + ": " + std::to_string(scan_lengths(q).lengths.size()) +
              " vs " + std::to_string(*published_length_count(q));
  }
  return detail;
}

std::string criterion10() {
  const auto text = construct_q9_document();
  std::ostringstream sink;
  expect(verify_document(text, std::nullopt, sink, sink) == kExitOk, "original does not verify");
  const Json base = Json::parse(text);
  const auto rows = base["generator"]["rows"].get<std::size_t>();
  const auto cols = base["generator"]["cols"].get<std::size_t>();
  std::size_t mutants = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto orig = base["generator"]["entries"][r * cols + c].get<std::uint32_t>();
      for (std::uint32_t v = 0; v < 9; ++v) {
        if (v == orig) continue;
        Json j = base;
        j["generator"]["entries"][r * cols + c] = v;
        std::ostringstream out, err;
        const int status = verify_document(j.dump(2), std::nullopt, out, err);
        expect(status == kExitFailed, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                          ") = " + std::to_string(v) + " exited " +
                                          std::to_string(status));
        ++mutants;
      }
    }
  }
  return std::to_string(mutants) + " single-entry mutants all rejected with exit 3";
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<std::string()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "q = 9 mixed-coset instance", 1, criterion1},
      {2, "subgroup sweep", 30, criterion2},
      {3, "coset instance q = 25", 1, criterion3},
      {4, "subspace instance [20,10]", 60, criterion4},
      {5, "trace fibre instance q = 9", 1, criterion5},
      {6, "determinant identity", 10, criterion6},
      {7, "zero-sum equivalence over F_11", 300, criterion7},
      {8, "self-duality nullspace", 10, criterion8},
      {9, "length counts", 30, criterion9},
      {10, "mutation robustness", 1, criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && secs >= c.limit_seconds) {
      ok = false;
      detail += " (over the time limit)";
    }
    failed += !ok;
    std::printf("[%s] criterion %d: %s (%.3f s, limit %.0f s): %s\n", ok ? "PASS" : "FAIL", c.id,
                c.title, secs, c.limit_seconds, detail.c_str());
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed ? 1 : 0;
}
