#include <numeric>

#include "nmds/constructions.hpp"

namespace nmds {

namespace {

struct Collector {
  ScanResult& out;

  void add(Theorem th, std::int64_t n, std::map<std::string, std::int64_t> params) {
    if (n < 4 || n % 2 != 0 || n > 2 * static_cast<std::int64_t>(out.q) + 2) return;
    const auto len = static_cast<std::uint64_t>(n);
    out.per_theorem[th].insert(len);
    out.lengths.insert(len);
    Recipe r;
    r.theorem = th;
    r.params = std::move(params);
    r.params["q"] = static_cast<std::int64_t>(out.q);
    r.params["n"] = n;
    out.recipes[len].push_back(std::move(r));
  }
};

}  // namespace

ScanResult scan_lengths(std::uint64_t q) {
  ScanResult out;
  out.q = q;
  for (auto th : {Theorem::T33, Theorem::T34, Theorem::T35, Theorem::T36, Theorem::T37}) {
    out.per_theorem[th];
  }
  const auto pp = prime_power(q);
  if (!pp || pp->p == 2) return out;
  const auto Q = static_cast<std::int64_t>(q);
  Collector c{out};

  for (std::int64_t n = 4; n < Q - 1; n += 2) {
    if (!check_thm33(Q, n)) c.add(Theorem::T33, n, {});
  }

  if (pp->m % 2 == 0) {
    const auto r = static_cast<std::int64_t>(ipow(pp->p, pp->m / 2));

    for (std::int64_t e = 2; e <= Q - 1; e += 2) {
      if ((Q - 1) % e != 0) continue;
      const std::int64_t f = (Q - 1) / e;
      const std::int64_t R = (r + 1) / std::gcd(r + 1, f);
      for (std::int64_t t = 1; t <= R; ++t) {
        if (!check_thm34(Q, e, f, t)) c.add(Theorem::T34, t * f, {{"e", e}, {"f", f}, {"t", t}});
      }
    }

    for (std::int64_t s = 1; s <= (r + 1) / 2; ++s) {
      for (std::int64_t t = 1; t <= (r - 1) / 2; ++t) {
        if (!check_thm35(Q, s, t)) {
          c.add(Theorem::T35, s * (r - 1) + t * (r + 1), {{"s", s}, {"t", t}});
        }
      }
    }

    for (unsigned sub = 1; sub <= pp->m / 2; ++sub) {
      if ((pp->m / 2) % sub != 0) continue;
      const auto rr = static_cast<std::int64_t>(ipow(pp->p, sub));
      for (std::int64_t l = 0; l < static_cast<std::int64_t>(pp->m / sub); ++l) {
        const auto rl = static_cast<std::int64_t>(ipow(static_cast<std::uint64_t>(rr),
                                                       static_cast<unsigned>(l)));
        if (2 * rl > 2 * Q + 2) break;
        for (std::int64_t t = 1; t <= (rr - 1) / 2; ++t) {
          if (!check_thm36(Q, rr, l, t)) {
            c.add(Theorem::T36, 2 * t * rl, {{"r", rr}, {"l", l}, {"t", t}});
          }
        }
      }
    }

    for (std::int64_t t = 2; t <= r; t += 2) {
      std::int64_t h = 1;  // |H| = p^{t'}
      while (h < t) h *= pp->p;
      // The bound on s shrinks as t grows; check_thm37 rejects the rest.
      for (std::int64_t s = 0; s < r; s += 2) {
        if (check_thm37(Q, t, s)) break;
        c.add(Theorem::T37, t * r + s * h, {{"t", t}, {"s", s}});
      }
    }
  }
  return out;
}

std::optional<std::uint64_t> published_length_count(std::uint64_t q) {
  switch (q) {
    case 10201: return 1528;
    case 11449: return 1586;
    case 39601: return 5211;
    default: return std::nullopt;
  }
}

}  // namespace nmds
