#include "periodic.hpp"

#include <algorithm>
#include <numeric>

namespace multcert {

namespace {

constexpr u64 kExactCap = u64(1) << 63;  // n^m - 1 must stay below this

u64 mulmod(u64 a, u64 b, u64 mod) {
  return u64((unsigned __int128)(a) * b % mod);
}

}  // namespace

u64 pow_checked(u64 n, u64 m) {
  if (n < 2) raise(ErrorKind::Usage, "base must be >= 2");
  unsigned __int128 acc = 1;
  for (u64 i = 0; i < m; ++i) {
    acc *= n;
    if (acc - 1 >= kExactCap)
      raise(ErrorKind::Overflow, "n^m - 1 exceeds the exact-integer range");
  }
  return u64(acc);
}

int mobius_mu(u64 m) {
  if (m == 0) raise(ErrorKind::Usage, "mu is defined for m >= 1");
  int sign = 1;
  for (u64 p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    m /= p;
    if (m % p == 0) return 0;  // squared factor
    sign = -sign;
  }
  if (m > 1) sign = -sign;
  return sign;
}

i64 count_periodic(u64 n, u64 m) {
  if (m == 0) raise(ErrorKind::Usage, "period must be >= 1");
  pow_checked(n, m);
  __int128 sum = 0;
  for (u64 r = 1; r <= m; ++r) {
    if (m % r) continue;
    sum += __int128(mobius_mu(m / r)) * __int128(pow_checked(n, r));
  }
  if (sum > __int128(INT64_MAX))
    raise(ErrorKind::Overflow, "count exceeds the exact-integer range");
  return i64(sum);
}

i64 count_nonzero(u64 n, u64 m) {
  return m == 1 ? count_periodic(n, m) - 1 : count_periodic(n, m);
}

u64 minimal_period(u64 residue, u64 modulus, u64 n) {
  if (modulus == 0) raise(ErrorKind::Usage, "modulus must be positive");
  if (std::gcd(n % modulus, modulus) != 1)
    raise(ErrorKind::Usage, "n must be invertible mod modulus");
  u64 k = residue % modulus;
  u64 j = mulmod(k, n % modulus, modulus);
  u64 t = 1;
  while (j != k) {
    j = mulmod(j, n % modulus, modulus);
    ++t;
  }
  return t;
}

std::vector<RootPoint> enumerate_periodic(u64 n, u64 m) {
  if (m == 0) raise(ErrorKind::Usage, "period must be >= 1");
  const u64 mod = pow_checked(n, m) - 1;
  std::vector<RootPoint> out;
  for (u64 k = 0; k < mod; ++k) {
    // Orbit length divides m since n^m = 1 mod (n^m - 1).
    u64 j = mulmod(k, n % mod, mod);
    u64 t = 1;
    while (j != k) {
      j = mulmod(j, n % mod, mod);
      ++t;
    }
    if (t == m) out.push_back(RootPoint::at(mod, k));
  }
  return out;
}

std::vector<RootPoint> orbit_of(const RootPoint& p, u64 n) {
  if (p.infinite) return {p};
  const u64 mod = p.modulus;
  if (std::gcd(n % mod, mod) != 1)
    raise(ErrorKind::Usage, "n must be invertible mod modulus");
  std::vector<RootPoint> orbit = {p};
  u64 k = mulmod(p.residue, n % mod, mod);
  while (k != p.residue) {
    orbit.push_back(RootPoint::at(mod, k));
    k = mulmod(k, n % mod, mod);
  }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

}  // namespace multcert
