#include "nmds/gf.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "nmds/error.hpp"

namespace nmds {

namespace {

constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 32;

// Dense polynomials over F_p, low degree first, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // Fermat; p prime and p < 2^32 so products fit.
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = inv_mod(f.back(), p);
  while (a.size() > df) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = (a[shift + i] + (p - c) * f[i]) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_mod(std::move(prod), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<PrimePower> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  unsigned m = 0;
  while (q % p == 0) {
    q /= p;
    ++m;
  }
  if (q != 1) return std::nullopt;
  return PrimePower{static_cast<std::uint32_t>(p), m};
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> modulus) {
  if (modulus.size() < 2) return false;
  const unsigned m = static_cast<unsigned>(modulus.size() - 1);
  if (modulus.back() == 0) return false;
  if (m == 1) return true;
  Poly f(modulus.begin(), modulus.end());
  for (auto& c : f) c %= p;
  trim(f);
  if (f.size() != modulus.size()) return false;
  Poly x_power{0, 1};  // x^{p^i} mod f
  for (unsigned i = 1; i <= m / 2; ++i) {
    x_power = poly_powmod(x_power, p, f, p);
    Poly diff = x_power;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;  // x^{p^i} = x mod f: f splits over F_{p^i}
    if (poly_gcd(f, diff, p).size() > 1) return false;
  }
  return true;
}

FieldSpec find_irreducible(std::uint32_t p, unsigned m) {
  if (!is_prime(p)) throw Error(Errc::InvalidFieldSpec, "p = " + std::to_string(p) + " is not prime");
  if (m < 1) throw Error(Errc::InvalidFieldSpec, "extension degree must be >= 1");
  // Odometer over (c_0, ..., c_{m-1}) with c_0 the most significant digit.
  std::vector<std::uint32_t> coeffs(m + 1, 0);
  coeffs[m] = 1;
  for (;;) {
    if (is_irreducible(p, coeffs)) return FieldSpec{p, m, coeffs};
    int i = static_cast<int>(m) - 1;
    while (i >= 0 && ++coeffs[i] == p) {
      coeffs[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  // Irreducible polynomials of every degree exist, so this is unreachable.
  throw Error(Errc::InvalidFieldSpec, "no irreducible polynomial found");
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  q_ = ipow(spec_.p, spec_.m);
  prime_field_ = spec_.m == 1;
}

FieldPtr Field::create(const FieldSpec& spec) {
  if (!is_prime(spec.p)) {
    throw Error(Errc::InvalidFieldSpec, "p = " + std::to_string(spec.p) + " is not prime");
  }
  if (spec.p == 2) throw Error(Errc::UnsupportedField, "characteristic 2 is not supported");
  if (spec.m < 1) throw Error(Errc::InvalidFieldSpec, "extension degree must be >= 1");
  if (spec.modulus.size() != spec.m + 1) {
    throw Error(Errc::InvalidFieldSpec, "modulus must have m + 1 coefficients");
  }
  for (auto c : spec.modulus) {
    if (c >= spec.p) throw Error(Errc::InvalidFieldSpec, "modulus coefficient out of range");
  }
  if (spec.modulus.back() != 1) throw Error(Errc::InvalidFieldSpec, "modulus must be monic");
  long double approx = 1;
  for (unsigned i = 0; i < spec.m; ++i) approx *= spec.p;
  if (approx >= static_cast<long double>(kMaxOrder)) {
    throw Error(Errc::UnsupportedField, "field order must be below 2^32");
  }
  if (!is_irreducible(spec.p, spec.modulus)) {
    throw Error(Errc::InvalidFieldSpec, "modulus is not irreducible");
  }
  // make_shared cannot reach the private constructor.
  std::shared_ptr<Field> field(new Field(spec));
  field->g_ = find_primitive(*field);
  if (field->q_ <= kTableThreshold) field->build_tables();
  return field;
}

FieldPtr Field::of_order(std::uint64_t q) {
  const auto pp = prime_power(q);
  if (!pp) throw Error(Errc::InvalidFieldSpec, std::to_string(q) + " is not a prime power");
  if (pp->p == 2) throw Error(Errc::UnsupportedField, "characteristic 2 is not supported");
  if (q >= kMaxOrder) throw Error(Errc::UnsupportedField, "field order must be below 2^32");
  return create(find_irreducible(pp->p, pp->m));
}

void Field::build_tables() {
  const std::uint64_t n = q_ - 1;
  exp_.assign(2 * n, 0);
  log_.assign(q_, kNoLog);
  Fe x = one();
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = x.value;
    exp_[i + n] = x.value;
    log_[x.value] = static_cast<std::uint32_t>(i);
    x = mul_slow(x, g_);
  }
  if (!prime_field_) {
    zech_.assign(n, kNoLog);
    for (std::uint64_t i = 0; i < n; ++i) {
      const Fe s = add_slow(one(), Fe{exp_[i]});
      if (s.value != 0) zech_[i] = log_[s.value];
    }
  }
}

Fe Field::element(std::uint64_t value) const {
  if (value >= q_) {
    throw Error(Errc::InvalidElement,
                std::to_string(value) + " is not an element of F_" + std::to_string(q_));
  }
  return Fe{static_cast<std::uint32_t>(value)};
}

Fe Field::from_integer(std::int64_t n) const {
  const std::int64_t p = spec_.p;
  std::int64_t r = n % p;
  if (r < 0) r += p;
  return Fe{static_cast<std::uint32_t>(r)};
}

std::vector<std::uint32_t> Field::coefficients(Fe x) const {
  std::vector<std::uint32_t> c(spec_.m);
  std::uint64_t v = x.value;
  for (unsigned i = 0; i < spec_.m; ++i) {
    c[i] = static_cast<std::uint32_t>(v % spec_.p);
    v /= spec_.p;
  }
  return c;
}

Fe Field::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != spec_.m) throw Error(Errc::InvalidElement, "wrong number of coefficients");
  std::uint64_t v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= spec_.p) throw Error(Errc::InvalidElement, "coefficient out of range");
    v = v * spec_.p + coeffs[i];
  }
  return Fe{static_cast<std::uint32_t>(v)};
}

Fe Field::add_slow(Fe x, Fe y) const {
  if (prime_field_) {
    return Fe{static_cast<std::uint32_t>((std::uint64_t{x.value} + y.value) % spec_.p)};
  }
  std::uint64_t a = x.value, b = y.value, out = 0, place = 1;
  for (unsigned i = 0; i < spec_.m; ++i) {
    out += ((a % spec_.p + b % spec_.p) % spec_.p) * place;
    a /= spec_.p;
    b /= spec_.p;
    place *= spec_.p;
  }
  return Fe{static_cast<std::uint32_t>(out)};
}

Fe Field::neg_slow(Fe x) const {
  if (prime_field_) return Fe{x.value == 0 ? 0u : spec_.p - x.value};
  std::uint64_t a = x.value, out = 0, place = 1;
  for (unsigned i = 0; i < spec_.m; ++i) {
    const std::uint64_t d = a % spec_.p;
    out += ((spec_.p - d) % spec_.p) * place;
    a /= spec_.p;
    place *= spec_.p;
  }
  return Fe{static_cast<std::uint32_t>(out)};
}

Fe Field::mul_slow(Fe x, Fe y) const {
  if (prime_field_) {
    return Fe{static_cast<std::uint32_t>(std::uint64_t{x.value} * y.value % spec_.p)};
  }
  const std::uint64_t p = spec_.p;
  const unsigned m = spec_.m;
  const auto a = coefficients(x);
  const auto b = coefficients(y);
  std::vector<std::uint64_t> prod(2 * m - 1, 0);
  for (unsigned i = 0; i < m; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < m; ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    }
  }
  // Reduce with the monic modulus: x^m = -(c_0 + ... + c_{m-1} x^{m-1}).
  for (std::size_t d = prod.size(); d-- > m;) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (unsigned i = 0; i < m; ++i) {
      prod[d - m + i] = (prod[d - m + i] + (p - spec_.modulus[i]) % p * c) % p;
    }
  }
  std::uint64_t v = 0;
  for (unsigned i = m; i-- > 0;) v = v * p + prod[i];
  return Fe{static_cast<std::uint32_t>(v)};
}

Fe Field::pow_slow(Fe x, std::uint64_t e) const {
  Fe result = one();
  while (e) {
    if (e & 1) result = mul_slow(result, x);
    x = mul_slow(x, x);
    e >>= 1;
  }
  return result;
}

Fe Field::add(Fe x, Fe y) const {
  if (prime_field_ || !has_tables()) return add_slow(x, y);
  if (x.value == 0) return y;
  if (y.value == 0) return x;
  // x + y = x (1 + y/x)
  const std::uint64_t n = q_ - 1;
  const std::uint32_t lx = log_[x.value];
  const std::uint32_t ly = log_[y.value];
  const std::uint64_t d = (ly + n - lx) % n;
  const std::uint32_t z = zech_[d];
  if (z == kNoLog) return zero();
  return Fe{exp_[lx + z]};
}

Fe Field::neg(Fe x) const {
  if (prime_field_ || !has_tables()) return neg_slow(x);
  if (x.value == 0) return x;
  // -1 = g^{(q-1)/2}
  return Fe{exp_[log_[x.value] + (q_ - 1) / 2]};
}

Fe Field::sub(Fe x, Fe y) const { return add(x, neg(y)); }

Fe Field::mul(Fe x, Fe y) const {
  if (x.value == 0 || y.value == 0) return zero();
  if (!has_tables()) return mul_slow(x, y);
  return Fe{exp_[log_[x.value] + log_[y.value]]};
}

Fe Field::inv(Fe x) const {
  if (x.value == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  if (has_tables()) {
    const std::uint32_t l = log_[x.value];
    return Fe{exp_[l == 0 ? 0 : (q_ - 1) - l]};
  }
  if (prime_field_) return Fe{static_cast<std::uint32_t>(inv_mod(x.value, spec_.p))};
  return pow_slow(x, q_ - 2);
}

Fe Field::pow(Fe x, std::int64_t e) const {
  if (e < 0) {
    x = inv(x);
    e = -e;
  }
  if (e == 0) return one();
  if (x.value == 0) return zero();
  if (has_tables()) {
    const std::uint64_t n = q_ - 1;
    const std::uint64_t l = log_[x.value];
    const auto reduced = static_cast<std::uint64_t>(e) % n;
    return Fe{exp_[(l * reduced) % n]};
  }
  return pow_slow(x, static_cast<std::uint64_t>(e));
}

int Field::eta(Fe x) const {
  if (spec_.p == 2) throw Error(Errc::UnsupportedField, "quadratic character needs odd characteristic");
  if (x.value == 0) throw Error(Errc::UndefinedCharacterArgument, "eta(0) is undefined");
  if (has_tables()) return (log_[x.value] % 2 == 0) ? 1 : -1;
  return pow_slow(x, (q_ - 1) / 2) == one() ? 1 : -1;
}

Fe Field::sqrt(Fe x) const {
  if (x.value == 0) return zero();
  if (eta(x) != 1) throw Error(Errc::NonResidue, std::to_string(x.value) + " is not a square");
  Fe r;
  if (has_tables()) {
    r = Fe{exp_[log_[x.value] / 2]};
  } else {
    r = sqrt_tonelli_shanks(x);
  }
  const Fe s = neg(r);
  return std::min(r, s);
}

Fe Field::sqrt_tonelli_shanks(Fe x) const {
  std::uint64_t odd = q_ - 1;
  unsigned two_adic = 0;
  while (odd % 2 == 0) {
    odd /= 2;
    ++two_adic;
  }
  Fe c = pow_slow(g_, odd);  // g is a non-residue
  Fe t = pow_slow(x, odd);
  Fe root = pow_slow(x, (odd + 1) / 2);
  unsigned m = two_adic;
  while (t != one()) {
    unsigned i = 0;
    Fe probe = t;
    while (probe != one()) {
      probe = mul_slow(probe, probe);
      ++i;
    }
    Fe b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = mul_slow(b, b);
    m = i;
    c = mul_slow(b, b);
    t = mul_slow(t, c);
    root = mul_slow(root, b);
  }
  return root;
}

Fe Field::trace_to_subfield(Fe x, std::uint64_t r) const {
  if (spec_.m % 2 != 0 || r != ipow(spec_.p, spec_.m / 2)) {
    throw Error(Errc::InvalidSubfield,
                "r = " + std::to_string(r) + " does not satisfy r^2 = " + std::to_string(q_));
  }
  const Fe result = add(x, pow(x, static_cast<std::int64_t>(r)));
  if (pow(result, static_cast<std::int64_t>(r)) != result) {
    throw Error(Errc::VerificationFailed, "trace value is not in the subfield");
  }
  return result;
}

std::uint64_t Field::multiplicative_order(Fe x) const {
  if (x.value == 0) throw Error(Errc::DivisionByZero, "zero has no multiplicative order");
  std::uint64_t order = q_ - 1;
  for (auto l : prime_factors(q_ - 1)) {
    while (order % l == 0 && pow(x, static_cast<std::int64_t>(order / l)) == one()) order /= l;
  }
  return order;
}

std::optional<std::uint32_t> Field::log(Fe x) const {
  if (!has_tables() || x.value == 0) return std::nullopt;
  return log_[x.value];
}

Fe find_primitive(const Field& field) {
  const std::uint64_t n = field.q_ - 1;
  const auto factors = prime_factors(n);
  for (std::uint64_t v = 1; v < field.q_; ++v) {
    const Fe x{static_cast<std::uint32_t>(v)};
    if (field.pow_slow(x, n) != field.one()) continue;
    bool primitive = true;
    for (auto l : factors) {
      if (field.pow_slow(x, n / l) == field.one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) return x;
  }
  throw Error(Errc::VerificationFailed, "no primitive element found");
}

}  // namespace nmds
