#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

namespace molfact {

using Coord = std::int64_t;
using Coords = std::vector<Coord>;

/// Moduli are kept below 2^31 so that a product of two residues fits in 64 bits.
inline constexpr Coord kMaxModulus = Coord{1} << 31;

constexpr Coord mod(Coord a, Coord m) {
  a %= m;
  return a < 0 ? a + m : a;
}

constexpr Coord mul_mod(Coord a, Coord b, Coord m) { return mod(mod(a, m) * mod(b, m), m); }

struct Xgcd {
  Coord g;
  Coord s;
  Coord t;
};

/// g = s*a + t*b with g = gcd(a, b) >= 0.
constexpr Xgcd xgcd(Coord a, Coord b) {
  Coord old_r = a, r = b;
  Coord old_s = 1, s = 0;
  Coord old_t = 0, t = 1;
  while (r != 0) {
    Coord q = old_r / r;
    Coord tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Returns (u, g) with u a unit mod m and u*a = g = gcd(a, m) (mod m).
/// For a = 0 the result is (1, m).
inline std::pair<Coord, Coord> unit_normalizer(Coord a, Coord m) {
  a = mod(a, m);
  if (a == 0) return {1, m};
  Coord g = std::gcd(a, m);
  Coord ap = a / g, mp = m / g;
  Coord u = 0;
  if (mp > 1) u = mod(xgcd(ap, mp).s, mp);
  // Lift u from Z/mp to a unit of Z/m.
  while (std::gcd(u, m) != 1) u += mp;
  return {mod(u, m), g};
}

inline Coord inverse_mod(Coord a, Coord m) {
  auto [g, s, t] = xgcd(mod(a, m), m);
  (void)t;
  if (g != 1) return 0;
  return mod(s, m);
}

inline bool is_prime(Coord n) {
  if (n < 2) return false;
  for (Coord d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<Coord> prime_divisors(Coord n) {
  std::vector<Coord> out;
  for (Coord d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Splits q = p^k; returns (0, 0) when q is not a prime power.
inline std::pair<Coord, int> prime_power(Coord q) {
  auto ps = prime_divisors(q);
  if (ps.size() != 1) return {0, 0};
  int k = 0;
  while (q > 1) {
    q /= ps[0];
    ++k;
  }
  return {ps[0], k};
}

/// Multiplication clamped at UINT64_MAX, for element counts.
constexpr std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

}  // namespace molfact
