#pragma once

/**
 * Exact arithmetic in F_{p^m} for odd p.
 *
 * An element is stored as its canonical integer encoding
 *   value = c_0 + c_1 p + ... + c_{m-1} p^{m-1},
 * where c_0 + c_1 x + ... + c_{m-1} x^{m-1} is its representative modulo the
 * field's monic irreducible modulus. For m = 1 this is the usual residue.
 *
 * Fields with q <= Field::kTableThreshold carry log/exp and Zech tables built
 * from the primitive element; larger fields fall back to polynomial arithmetic.
 * A Field is immutable after construction and is shared via FieldPtr.
 */

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace nmds {

struct Fe {
  std::uint32_t value = 0;

  friend constexpr bool operator==(Fe, Fe) = default;
  friend constexpr auto operator<=>(Fe, Fe) = default;
};

/// p, m and the monic modulus c_0 + c_1 x + ... + c_m x^m (c_m = 1).
struct FieldSpec {
  std::uint32_t p = 0;
  unsigned m = 0;
  std::vector<std::uint32_t> modulus;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct PrimePower {
  std::uint32_t p = 0;
  unsigned m = 0;
};

bool is_prime(std::uint64_t n);
std::optional<PrimePower> prime_power(std::uint64_t q);
/// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// Rabin test: gcd(f, x^{p^i} - x) = 1 for 1 <= i <= m/2.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> modulus);

/// Smallest monic irreducible of degree m, comparing coefficients c_0 first.
FieldSpec find_irreducible(std::uint32_t p, unsigned m);

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  static constexpr std::uint64_t kTableThreshold = std::uint64_t{1} << 20;

  /// Validates the spec (odd prime, monic irreducible, q < 2^32).
  static FieldPtr create(const FieldSpec& spec);
  /// F_q with the default modulus.
  static FieldPtr of_order(std::uint64_t q);

  const FieldSpec& spec() const noexcept { return spec_; }
  std::uint32_t characteristic() const noexcept { return spec_.p; }
  unsigned degree() const noexcept { return spec_.m; }
  std::uint64_t order() const noexcept { return q_; }
  bool has_tables() const noexcept { return !exp_.empty(); }

  Fe zero() const noexcept { return Fe{0}; }
  Fe one() const noexcept { return Fe{1}; }
  Fe primitive() const noexcept { return g_; }

  /// Element with the given encoding; throws InvalidElement when out of range.
  Fe element(std::uint64_t value) const;
  /// Image of an integer in the prime subfield.
  Fe from_integer(std::int64_t n) const;
  std::vector<std::uint32_t> coefficients(Fe x) const;
  Fe from_coefficients(std::span<const std::uint32_t> coeffs) const;

  Fe add(Fe x, Fe y) const;
  Fe sub(Fe x, Fe y) const;
  Fe neg(Fe x) const;
  Fe mul(Fe x, Fe y) const;
  Fe inv(Fe x) const;
  Fe div(Fe x, Fe y) const { return mul(x, inv(y)); }
  /// Square-and-multiply; negative exponents invert first.
  Fe pow(Fe x, std::int64_t e) const;

  /// Quadratic character on F_q^*: +1 on squares, -1 otherwise.
  int eta(Fe x) const;
  /// Root with the smaller encoding; sqrt(0) = 0.
  Fe sqrt(Fe x) const;
  /// x + x^r for q = r^2.
  Fe trace_to_subfield(Fe x, std::uint64_t r) const;

  std::uint64_t multiplicative_order(Fe x) const;
  /// Discrete log to base primitive(); requires tables and x != 0.
  std::optional<std::uint32_t> log(Fe x) const;

 private:
  explicit Field(FieldSpec spec);

  Fe add_slow(Fe x, Fe y) const;
  Fe neg_slow(Fe x) const;
  Fe mul_slow(Fe x, Fe y) const;
  Fe pow_slow(Fe x, std::uint64_t e) const;
  Fe sqrt_tonelli_shanks(Fe x) const;
  void build_tables();

  friend Fe find_primitive(const Field& field);

  FieldSpec spec_;
  std::uint64_t q_ = 0;
  bool prime_field_ = false;
  Fe g_{};
  std::vector<std::uint32_t> exp_;   // size 2(q-1)
  std::vector<std::uint32_t> log_;   // size q, log_[0] unused
  std::vector<std::uint32_t> zech_;  // log(1 + g^i), kNoLog when 1 + g^i = 0
};

/// Smallest-encoding element of order q - 1, verified via the prime factors of q - 1.
Fe find_primitive(const Field& field);

}  // namespace nmds
