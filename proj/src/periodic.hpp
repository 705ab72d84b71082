#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "ratmap.hpp"
#include "scalar.hpp"

namespace multcert {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// n^m, guarded so that n^m - 1 stays below 2^63 (the exact-integer envelope
// for residue arithmetic). Raises Overflow beyond that.
u64 pow_checked(u64 n, u64 m);

int mobius_mu(u64 m);

// Number of bounded periodic points of minimal period m under z -> z^n,
// by Mobius inversion of |{z : z^(n^m) = z, z bounded}| = n^m.
i64 count_periodic(u64 n, u64 m);

// Same count restricted to nonzero points: drops the origin, which only
// shows up at m = 1.
i64 count_nonzero(u64 n, u64 m);

// ---------------------------------------------------------------------------
// Periodic points of z^n live on the unit circle: the nonzero ones of period
// dividing m are exactly the roots of z^(n^m - 1) = 1, so a residue k mod
// n^m - 1 names the point e^{2 pi i k / (n^m - 1)} exactly. The map acts as
// k -> n k, which keeps all orbit logic in integers.

struct RootPoint {
  bool infinite = false;
  u64 modulus = 0;  // n^m - 1 for the ambient (n, m); 0 for infinity
  u64 residue = 0;  // in [0, modulus)

  static RootPoint inf() { return RootPoint{true, 0, 0}; }
  static RootPoint at(u64 modulus, u64 residue) {
    if (modulus == 0) raise(ErrorKind::Usage, "modulus must be positive");
    if (residue >= modulus) raise(ErrorKind::Usage, "residue out of range");
    return RootPoint{false, modulus, residue};
  }

  cdouble embed() const { return embed_t<cdouble>(); }

  template <class C>
  C embed_t() const {
    using T = cx_traits<C>;
    using R = real_of<C>;
    if (infinite) raise(ErrorKind::InfinityPoint, "infinity has no complex embedding");
    // Recentre the residue so the angle stays in (-pi, pi].
    i64 r = residue > modulus / 2 ? i64(residue) - i64(modulus) : i64(residue);
    return T::unit(R(2) * T::pi() * R(double(r)) / R(double(modulus)));
  }

  SpherePoint to_sphere() const {
    return infinite ? SpherePoint::inf() : SpherePoint::at(embed());
  }

  auto operator<=>(const RootPoint&) const = default;
};

// All residues mod n^m - 1 of minimal period exactly m, ascending.
// Length equals count_nonzero(n, m).
std::vector<RootPoint> enumerate_periodic(u64 n, u64 m);

// Minimal period of a residue under k -> n k mod modulus. Requires
// gcd(n, modulus) = 1 so the dynamics is a bijection.
u64 minimal_period(u64 residue, u64 modulus, u64 n);

// Full orbit of a point, sorted by residue. Infinity is its own orbit.
std::vector<RootPoint> orbit_of(const RootPoint& p, u64 n);

// ---------------------------------------------------------------------------
// Period labels for the 2n-2 parameter slots.

struct PeriodVector {
  int n = 0;
  std::vector<i64> m;  // slot order, size 2n-2, entries >= 1

  static PeriodVector of(int n, std::vector<i64> m) {
    if (n < 2) raise(ErrorKind::Usage, "period vector needs degree n >= 2");
    if (int(m.size()) != family_slot_count(n))
      raise(ErrorKind::WrongLength, "period vector must have length 2n-2");
    for (i64 v : m)
      if (v < 1) raise(ErrorKind::Usage, "periods must be >= 1");
    return PeriodVector{n, std::move(m)};
  }
};

// ---------------------------------------------------------------------------
// Newton continuation of a periodic point from a = 0 to a given parameter.
// Solves f_a^m(z) = z starting at z0; the correction uses the chain-rule
// derivative of the m-th iterate. Points of interest stay near the unit
// circle where the plain chart is well conditioned.

template <class C>
SpherePointT<C> newton_continue_t(const ParamVector& a, const SpherePointT<C>& z0,
                                  i64 m, double tol, int max_iter) {
  using T = cx_traits<C>;
  using R = real_of<C>;
  if (m < 1) raise(ErrorKind::Usage, "period must be >= 1");
  if (!(tol > 0)) raise(ErrorKind::Usage, "tolerance must be positive");
  if (z0.infinite) return z0;  // infinity is fixed for every family member

  RationalMapT<C> f = family_map_t<C>(a);
  C z = z0.value;
  for (int iter = 0; iter <= max_iter; ++iter) {
    C w = z;
    C d(1);
    for (i64 s = 0; s < m; ++s) {
      C p = polyval(f.num, w), q = polyval(f.den, w);
      C dp = polyval_deriv(f.num, w), dq = polyval_deriv(f.den, w);
      d *= (dp * q - p * dq) / (q * q);
      w = p / q;
    }
    C g = w - z;
    if (T::abs(g) <= R(tol)) return SpherePointT<C>::at(z);
    if (iter == max_iter) break;
    C gp = d - C(1);
    if (T::abs(gp) < R(1e-14))
      raise(ErrorKind::DerivativeSingular,
            "Newton step degenerate: (f^m)' is 1 at the iterate");
    z -= g / gp;
  }
  raise(ErrorKind::NoConvergence, "Newton continuation did not converge");
}

inline SpherePoint newton_continue(const ParamVector& a, const SpherePoint& z0,
                                   i64 m, double tol = 1e-12, int max_iter = 50) {
  return newton_continue_t<cdouble>(a, z0, m, tol, max_iter);
}

}  // namespace multcert
