#include "nmds/commands.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "nmds/constructions.hpp"
#include "nmds/exchange.hpp"
#include "nmds/lambda.hpp"
#include "nmds/selfcheck.hpp"

namespace nmds {

namespace {

void override_from_env(const char* name, std::uint64_t& value) {
  const char* raw = std::getenv(name);
  if (!raw) return;
  std::uint64_t parsed = 0;
  const char* end = raw + std::char_traits<char>::length(raw);
  const auto [ptr, ec] = std::from_chars(raw, end, parsed);
  if (ec == std::errc() && ptr == end && parsed > 0) value = parsed;
}

// Errors that mean "these parameters do not describe a construction".
bool is_parameter_error(Errc c) {
  return c == Errc::InvalidParams || c == Errc::ParityViolation || c == Errc::CosetCollision ||
         c == Errc::InvalidFieldSpec || c == Errc::UnsupportedField;
}

std::int64_t need(const ConstructOptions& opts, const std::string& name) {
  const auto it = opts.params.find(name);
  if (it == opts.params.end()) throw Error(Errc::InvalidParams, "missing --" + name);
  return it->second;
}

std::optional<std::int64_t> maybe(const ConstructOptions& opts, const std::string& name) {
  const auto it = opts.params.find(name);
  if (it == opts.params.end()) return std::nullopt;
  return it->second;
}

std::int64_t odd_prime_power_or_throw(std::int64_t q) {
  if (q < 3) throw Error(Errc::InvalidParams, "q = " + std::to_string(q) + " is not an odd prime power");
  const auto pp = prime_power(static_cast<std::uint64_t>(q));
  if (!pp || pp->p == 2 || q >= (std::int64_t{1} << 32)) {
    throw Error(Errc::InvalidParams, "q = " + std::to_string(q) + " is not a supported odd prime power");
  }
  return q;
}

// q from --q, or from --r (q = r^2), or from --p and --m (q = (p^m)^2).
std::int64_t resolve_order(Theorem th, const ConstructOptions& opts) {
  auto q = maybe(opts, "q");
  std::optional<std::int64_t> from_r;
  if (th == Theorem::T35) {
    if (auto r = maybe(opts, "r")) {
      if (*r < 3 || *r > 65535) throw Error(Errc::InvalidParams, "r out of range");
      from_r = *r * *r;
    }
  } else if (th == Theorem::T37) {
    const auto p = maybe(opts, "p");
    const auto m = maybe(opts, "m");
    if (p.has_value() != m.has_value()) throw Error(Errc::InvalidParams, "--p and --m go together");
    if (p) {
      if (*p < 3 || !is_prime(static_cast<std::uint64_t>(*p)) || *m < 1 || *m > 16) {
        throw Error(Errc::InvalidParams, "need an odd prime p and m >= 1");
      }
      std::int64_t r = 1;
      for (std::int64_t i = 0; i < *m; ++i) {
        r *= *p;
        if (r > 65535) throw Error(Errc::InvalidParams, "r = p^m too large");
      }
      from_r = r * r;
    }
  }
  if (q && from_r && *q != *from_r) {
    throw Error(Errc::InvalidParams, "q does not match the square of r = p^m");
  }
  if (!q && !from_r) throw Error(Errc::InvalidParams, "missing --q");
  return odd_prime_power_or_throw(q ? *q : *from_r);
}

void validate_construct(Theorem th, std::int64_t q, const ConstructOptions& opts) {
  std::optional<Error> err;
  switch (th) {
    case Theorem::T33:
      err = check_thm33(q, need(opts, "n"));
      break;
    case Theorem::T34: {
      const auto f = need(opts, "f"), t = need(opts, "t");
      err = check_thm34(q, need(opts, "e"), f, t);
      if (!err && opts.indices) err = check_thm34_indices(q, f, t, *opts.indices);
      break;
    }
    case Theorem::T35:
      err = check_thm35(q, need(opts, "s"), need(opts, "t"));
      break;
    case Theorem::T36:
      err = check_thm36(q, need(opts, "r"), need(opts, "l"), need(opts, "t"));
      break;
    case Theorem::T37:
      err = check_thm37(q, need(opts, "t"), need(opts, "s"));
      break;
    case Theorem::Custom:
      err = Error(Errc::InvalidParams, "construct needs a theorem id 3.3 to 3.7");
      break;
  }
  if (err) throw *err;
}

FieldPtr make_field(std::int64_t q, const std::optional<std::vector<std::uint32_t>>& modulus) {
  if (!modulus) return Field::of_order(static_cast<std::uint64_t>(q));
  const auto pp = prime_power(static_cast<std::uint64_t>(q));
  FieldSpec spec{pp->p, pp->m, *modulus};
  if (modulus->size() != pp->m + 1) {
    throw Error(Errc::InvalidFieldSpec, "modulus must have m + 1 = " + std::to_string(pp->m + 1) +
                                            " coefficients");
  }
  return Field::create(spec);
}

EvalSet build(Theorem th, const FieldPtr& field, const ConstructOptions& opts) {
  switch (th) {
    case Theorem::T33: return build_thm33(field, need(opts, "n"));
    case Theorem::T34:
      return build_thm34(field, need(opts, "e"), need(opts, "f"), need(opts, "t"), opts.indices);
    case Theorem::T35: return build_thm35(field, need(opts, "s"), need(opts, "t"));
    case Theorem::T36: return build_thm36(field, need(opts, "r"), need(opts, "l"), need(opts, "t"));
    case Theorem::T37: return build_thm37(field, need(opts, "t"), need(opts, "s"));
    case Theorem::Custom: break;
  }
  throw Error(Errc::InvalidParams, "no builder for a custom recipe");
}

std::string join_values(std::span<const Fe> xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i].value);
  return s;
}

}  // namespace

Budgets budgets_from_env() {
  Budgets b;
  override_from_env("NMDS_CODEWORD_BUDGET", b.codewords);
  override_from_env("NMDS_SUBMATRIX_BUDGET", b.submatrices);
  override_from_env("NMDS_SUBSET_BUDGET", b.subsets);
  return b;
}

int cmd_construct(const ConstructOptions& opts, std::ostream& out, std::ostream& err) {
  const auto th = parse_theorem(opts.theorem);
  if (!th || *th == Theorem::Custom) {
    err << "error: unknown theorem '" << opts.theorem << "' (expected 3.3 to 3.7)\n";
    return kExitInvalid;
  }

  std::int64_t q = 0;
  FieldPtr field;
  try {
    q = resolve_order(*th, opts);
    validate_construct(*th, q, opts);
    field = make_field(q, opts.modulus);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  PipelineOptions po;
  po.budgets = budgets_from_env();
  if (opts.distance_budget) po.budgets.codewords = *opts.distance_budget;

  std::optional<EvalSet> set;
  std::optional<PipelineResult> result;
  try {
    set.emplace(build(*th, field, opts));
    result.emplace(pipeline(*set, po));
  } catch (const Error& e) {
    err << (is_parameter_error(e.code()) ? "error: " : "verification failed: ") << e.what() << "\n";
    return is_parameter_error(e.code()) ? kExitInvalid : kExitFailed;
  }

  const std::string text = code_document(*set, *result).dump(2) + "\n";

  // Never emit a document that would not re-verify.
  std::ostringstream sink;
  if (verify_document(text, po.budgets.codewords, sink, sink) != kExitOk) {
    err << "verification failed: emitted document does not re-verify\n" << sink.str();
    return kExitFailed;
  }

  const auto& code = result->code;
  const auto& cls = result->classification;
  std::ostringstream summary;
  summary << "[" << code.n() << "," << code.k() << ",";
  if (cls.distance) {
    summary << *cls.distance << "] ";
  } else {
    summary << (cls.verdict == Verdict::MDS ? code.n() - code.k() + 1 : code.n() - code.k())
            << " (rank-certified)] ";
  }
  summary << verdict_name(cls.verdict) << " self-dual code over F_" << q << "\n";
  summary << "eval_set: " << join_values(set->elements()) << "\n";

  if (opts.output_path.empty()) {
    out << text;
    err << summary.str();
  } else {
    std::ofstream file(opts.output_path);
    if (!file || !(file << text)) {
      err << "error: cannot write " << opts.output_path << "\n";
      return kExitInvalid;
    }
    out << summary.str() << "wrote " << opts.output_path << "\n";
  }
  return kExitOk;
}

int verify_document(const std::string& text, std::optional<std::uint64_t> distance_budget,
                    std::ostream& out, std::ostream& err) {
  std::optional<CodeDocument> doc;
  try {
    doc.emplace(parse_code_document(text));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  Budgets budgets = budgets_from_env();
  if (distance_budget) budgets.codewords = *distance_budget;

  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok, const std::string& detail = {}) {
    out << name << ": " << (ok ? "ok" : "FAILED");
    if (!detail.empty()) out << " (" << detail << ")";
    out << "\n";
    all_ok = all_ok && ok;
    return ok;
  };

  const Field& f = *doc->field;
  const std::size_t n = doc->n, k = doc->k;

  std::optional<EvalSet> points;
  try {
    points.emplace(doc->field, doc->eval_set);
    report("eval_set distinct", true);
  } catch (const Error& e) {
    report("eval_set distinct", false, e.what());
  }
  std::optional<MultiplierVector> lambda;
  try {
    lambda.emplace(doc->lambda);
    report("lambda nonzero", true);
  } catch (const Error& e) {
    report("lambda nonzero", false, e.what());
  }

  // The generator must be exactly C(A, k, lambda); a Gram check alone misses
  // corruptions that happen to keep G G^T = 0.
  bool generator_matches = false;
  if (points && lambda) {
    try {
      const LinearCode rebuilt = build_code(*points, k, *lambda);
      generator_matches = rebuilt.generator() == doc->generator;
      std::string detail;
      if (!generator_matches) {
        for (std::size_t r = 0; r < k && detail.empty(); ++r) {
          for (std::size_t c = 0; c < n; ++c) {
            if (rebuilt.generator()(r, c) != doc->generator(r, c)) {
              detail = "entry (" + std::to_string(r) + "," + std::to_string(c) + ") is " +
                       std::to_string(doc->generator(r, c).value) + ", expected " +
                       std::to_string(rebuilt.generator()(r, c).value);
              break;
            }
          }
        }
      }
      report("generator = C(A,k,lambda)", generator_matches, detail);
    } catch (const Error& e) {
      report("generator = C(A,k,lambda)", false, e.what());
    }
  }

  std::optional<LinearCode> code;
  try {
    code.emplace(doc->generator);
    report("rank(G) = k", true);
  } catch (const Error& e) {
    report("rank(G) = k", false, e.what());
  }

  bool self_dual = false;
  if (code) {
    const SelfDualityReport sd = is_self_dual(*code);
    self_dual = sd.self_dual;
    report("self-dual (G G^T = 0, n = 2k)", sd.self_dual);
    if (doc->gram) report("stored Gram matrix", *doc->gram == sd.gram);
    if (doc->self_dual) report("stored self_dual flag", *doc->self_dual == sd.self_dual);
  }

  if (doc->witness) {
    const auto& w = *doc->witness;
    std::vector<bool> seen(n, false);
    bool distinct = true;
    Fe s = f.zero();
    for (auto i : w) {
      distinct = distinct && !seen[i];
      seen[i] = true;
      s = f.add(s, doc->eval_set[i]);
    }
    report("witness zero-sum of size n/2", distinct && 2 * w.size() == n && s.value == 0);
    report("witness implies NMDS claim", doc->claimed.verdict == Verdict::NMDS);
  }

  std::optional<Verdict> verdict;
  if (code) {
    try {
      const Classification cls = classify_by_ranks(*code, budgets);
      verdict = cls.verdict;
      report("rank classification", cls.verdict == doc->claimed.verdict,
             std::string("ranks give ") + verdict_name(cls.verdict) + ", document claims " +
                 verdict_name(doc->claimed.verdict));
      report("evidence", recheck_evidence(*code, doc->claimed) &&
                             (cls.verdict != Verdict::NMDS ||
                              cls.dependent_count == doc->claimed.dependent_count));
    } catch (const Error& e) {
      report("rank classification", false, e.what());
    }
  }

  if (points && generator_matches && verdict && *verdict != Verdict::Other) {
    try {
      const bool zero_sum = has_zero_sum_k_subset(*points, k, budgets.subsets).has_value();
      report("zero-sum subset test", zero_sum == (*verdict == Verdict::NMDS));
    } catch (const Error& e) {
      out << "zero-sum subset test: skipped (" << e.what() << ")\n";
    }
  }

  if (doc->claimed.distance && verdict && *verdict != Verdict::Other) {
    const std::size_t implied = *verdict == Verdict::MDS ? n - k + 1 : n - k;
    report("claimed d matches verdict", *doc->claimed.distance == implied);
  }

  if (code) {
    try {
      const std::size_t d = min_distance_bruteforce(*code, budgets.codewords);
      bool ok = !doc->claimed.distance || *doc->claimed.distance == d;
      if (verdict == Verdict::MDS) ok = ok && d == n - k + 1;
      if (verdict == Verdict::NMDS) ok = ok && d == n - k;
      report("distance", ok, "enumerated d = " + std::to_string(d));
    } catch (const Error& e) {
      if (e.code() != Errc::BudgetExceeded) throw;
      out << "distance: skipped (q^k exceeds the codeword budget " << budgets.codewords << ")\n";
    }
  }

  out << "verdict: " << (verdict ? verdict_name(*verdict) : "unknown")
      << (self_dual ? ", self-dual" : ", not self-dual") << "\n";
  if (!all_ok) {
    err << "verification failed\n";
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_verify(const std::string& input_path, std::optional<std::uint64_t> distance_budget,
               std::ostream& out, std::ostream& err) {
  std::ifstream in(input_path);
  if (!in) {
    err << "error: cannot read " << input_path << "\n";
    return kExitInvalid;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return verify_document(text.str(), distance_budget, out, err);
}

int cmd_classify_set(const ClassifySetOptions& opts, std::ostream& out, std::ostream& err) {
  FieldPtr field;
  std::vector<Fe> elements;
  try {
    odd_prime_power_or_throw(opts.q);
    const auto n = static_cast<std::int64_t>(opts.elements.size());
    if (opts.k < 1 || opts.k >= n) {
      throw Error(Errc::InvalidParams, "need 1 <= k < |A| = " + std::to_string(n));
    }
    std::vector<bool> seen(static_cast<std::size_t>(opts.q), false);
    for (auto v : opts.elements) {
      if (v < 0 || v >= opts.q) throw Error(Errc::InvalidElement, std::to_string(v) + " is not in F_q");
      if (seen[static_cast<std::size_t>(v)]) {
        throw Error(Errc::DuplicatePoint, "element " + std::to_string(v) + " repeated");
      }
      seen[static_cast<std::size_t>(v)] = true;
      elements.push_back(Fe{static_cast<std::uint32_t>(v)});
    }
    field = make_field(opts.q, opts.modulus);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  const Budgets budgets = budgets_from_env();
  const EvalSet points(field, elements);
  const auto k = static_cast<std::size_t>(opts.k);
  std::optional<std::vector<std::size_t>> subset;
  try {
    subset = has_zero_sum_k_subset(points, k, budgets.subsets);
  } catch (const Error& e) {
    err << "error: " << e.what() << " (raise NMDS_SUBSET_BUDGET)\n";
    return kExitInvalid;
  }
  if (subset) {
    out << "zero-sum subset {";
    for (std::size_t i = 0; i < subset->size(); ++i) {
      out << (i ? "," : "") << points[(*subset)[i]].value;
    }
    out << "}";
  } else {
    out << "k-zero-sum free";
  }

  try {
    const LinearCode code = build_code(points, k, MultiplierVector::ones(points.size()));
    const Classification cls = classify_by_ranks(code, budgets);
    out << "; " << verdict_name(cls.verdict) << "\n";
    const Verdict expected = subset ? Verdict::NMDS : Verdict::MDS;
    if (cls.verdict != expected) {
      err << "mismatch: zero-sum test implies " << verdict_name(expected) << ", ranks give "
          << verdict_name(cls.verdict) << "\n";
      return kExitFailed;
    }
  } catch (const Error& e) {
    if (e.code() != Errc::CombinatorialBudgetExceeded) throw;
    out << "; classification skipped (" << e.what() << ")\n";
  }
  return kExitOk;
}

int cmd_scan(std::uint64_t q, bool list, std::ostream& out, std::ostream& err) {
  const auto pp = prime_power(q);
  if (!pp || pp->p == 2 || q >= (std::uint64_t{1} << 32)) {
    err << "error: q = " << q << " is not a supported odd prime power\n";
    return kExitInvalid;
  }
  const ScanResult res = scan_lengths(q);
  out << "q = " << q << "\n";
  for (const auto& [th, lengths] : res.per_theorem) {
    out << "theorem " << theorem_id(th) << ": " << lengths.size() << " lengths\n";
  }
  out << std::fixed << std::setprecision(2);
  out << "union: " << res.lengths.size() << " lengths, N/q = " << 100.0 * res.ratio() << "%\n";
  if (const auto ref = published_length_count(q)) {
    const auto diff = static_cast<std::int64_t>(res.lengths.size()) - static_cast<std::int64_t>(*ref);
    out << "reference: N = " << *ref << ", N/q = " << 100.0 * static_cast<double>(*ref) / q
        << "%\n";
    if (diff == 0) {
      out << "agreement with reference\n";
    } else {
      out << "discrepancy: union - reference = " << std::showpos << diff << std::noshowpos << "\n";
    }
  }
  if (list) {
    for (const auto& [n, recipes] : res.recipes) {
      out << n << ":";
      std::set<Theorem> seen;
      for (const auto& r : recipes) {
        if (seen.insert(r.theorem).second) out << " " << theorem_id(r.theorem);
      }
      out << "\n";
    }
  }
  return kExitOk;
}

int cmd_selfcheck(std::ostream& out, std::ostream& err) {
  int failed = 0;
  for (const auto& o : run_selfcheck()) {
    out << (o.ok ? "ok    " : "FAIL  ") << o.name;
    if (!o.ok) {
      out << ": " << o.detail;
      ++failed;
    }
    out << "\n";
  }
  if (failed) {
    err << failed << " selfcheck suite(s) failed\n";
    return 1;
  }
  out << "selfcheck passed\n";
  return kExitOk;
}

}  // namespace nmds
