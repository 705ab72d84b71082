#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "scalar.hpp"

namespace multcert {

// ---------------------------------------------------------------------------
// Points on the Riemann sphere.

template <class C = cdouble>
struct SpherePointT {
  bool infinite = false;
  C value{};  // meaningful iff !infinite

  static SpherePointT inf() { return SpherePointT{true, C(0)}; }
  static SpherePointT at(const C& z) { return SpherePointT{false, z}; }
};

using SpherePoint = SpherePointT<cdouble>;

// Chordal metric on the sphere: 2|x-y| / sqrt((1+|x|^2)(1+|y|^2)), with the
// usual limits at infinity. Agrees with |x-y| to first order near the unit
// circle and is chart-independent, which is what cycle validation needs.
template <class C>
real_of<C> chordal(const SpherePointT<C>& x, const SpherePointT<C>& y) {
  using std::sqrt;
  using T = cx_traits<C>;
  using R = real_of<C>;
  if (x.infinite && y.infinite) return R(0);
  if (x.infinite || y.infinite) {
    const C& v = x.infinite ? y.value : x.value;
    R m = T::abs(v);
    return R(2) / sqrt(R(1) + m * m);
  }
  R mx = T::abs(x.value);
  R my = T::abs(y.value);
  return R(2) * T::abs(x.value - y.value) /
         sqrt((R(1) + mx * mx) * (R(1) + my * my));
}

// ---------------------------------------------------------------------------
// Degree-n rational maps p/q with nonvanishing resultant.

// Resultant of two formal degree-n coefficient lists (ascending, size n+1),
// as the determinant of the 2n x 2n Sylvester matrix.
template <class C>
C resultant_t(const std::vector<C>& num, const std::vector<C>& den) {
  const int n = int(num.size()) - 1;
  if (n < 1 || den.size() != num.size())
    raise(ErrorKind::Usage, "resultant needs two lists of equal size n+1, n >= 1");
  MatrixT<C> s(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t <= n; ++t) {
      s.at(i, i + t) = num[std::size_t(n - t)];
      s.at(n + i, i + t) = den[std::size_t(n - t)];
    }
  return lu_det(std::move(s));
}

inline cdouble resultant(const std::vector<cdouble>& num,
                         const std::vector<cdouble>& den) {
  return resultant_t<cdouble>(num, den);
}

template <class C = cdouble>
struct RationalMapT {
  int n = 0;
  std::vector<C> num, den;          // ascending coefficients, size n+1
  std::vector<C> num_rev, den_rev;  // reversed lists, used by the 1/z chart
  C res{};                          // resultant of (num, den), nonzero
};

using RationalMap = RationalMapT<cdouble>;

// Validates and freezes a map. The resultant must clear the Hadamard-scaled
// floor of its Sylvester matrix; this subsumes the degree condition (both
// leading coefficients zero forces a zero resultant).
template <class C>
RationalMapT<C> make_map(int n, std::vector<C> num, std::vector<C> den) {
  if (n < 1) raise(ErrorKind::Usage, "map degree must be >= 1");
  if (num.size() != std::size_t(n) + 1 || den.size() != std::size_t(n) + 1)
    raise(ErrorKind::Usage, "coefficient lists must have size n+1");
  using T = cx_traits<C>;
  const int k = 2 * n;
  MatrixT<C> s(k, k);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t <= n; ++t) {
      s.at(i, i + t) = num[std::size_t(n - t)];
      s.at(n + i, i + t) = den[std::size_t(n - t)];
    }
  auto floor = hadamard_floor(s);
  C res = lu_det(std::move(s));
  if (!(T::abs(res) > floor))
    raise(ErrorKind::ResultantZero, "resultant vanishes: not a degree-n map");
  RationalMapT<C> f;
  f.n = n;
  f.num_rev = poly_reversed(num);
  f.den_rev = poly_reversed(den);
  f.num = std::move(num);
  f.den = std::move(den);
  f.res = res;
  return f;
}

// ---------------------------------------------------------------------------
// The 2n-2 parameter family through z^n.
//
//   f_a(z) = (z^n + a_{n-2} z^{n-2} + ... + a_0)
//          / (1 - a_{n+1} z - ... - a_{2n-1} z^{n-1})
//
// Parameter indices j run over {0..n-2} u {n+1..2n-1}; j = n-1 and j = n are
// excluded (those directions are absorbed by conjugation and scaling).

inline int family_slot_count(int n) { return 2 * n - 2; }

inline std::int64_t family_slot_to_j(int n, int slot) {
  if (slot < 0 || slot >= family_slot_count(n))
    raise(ErrorKind::IndexOutOfRange, "parameter slot out of range");
  return slot <= n - 2 ? slot : slot + 2;
}

inline int family_j_to_slot(int n, std::int64_t j) {
  if (j < 0 || j > 2 * n - 1)
    raise(ErrorKind::IndexOutOfRange, "parameter index out of range");
  if (j == n - 1 || j == n)
    raise(ErrorKind::IndexExcluded, "parameter indices n-1 and n are excluded");
  return j <= n - 2 ? int(j) : int(j - 2);
}

struct ParamVector {
  int n = 0;
  std::vector<cdouble> a;  // slot order, size 2n-2

  static ParamVector zero(int n) {
    if (n < 2) raise(ErrorKind::Usage, "family needs degree n >= 2");
    return ParamVector{n, std::vector<cdouble>(std::size_t(2 * n - 2))};
  }

  cdouble at_j(std::int64_t j) const { return a[std::size_t(family_j_to_slot(n, j))]; }
  void set_j(std::int64_t j, cdouble v) { a[std::size_t(family_j_to_slot(n, j))] = v; }

  double norm() const {
    double s = 0;
    for (const auto& v : a) s += std::norm(v);
    return std::sqrt(s);
  }
};

template <class C>
RationalMapT<C> family_map_t(const ParamVector& p) {
  using T = cx_traits<C>;
  const int n = p.n;
  if (int(p.a.size()) != family_slot_count(n))
    raise(ErrorKind::WrongLength, "parameter vector has wrong length");
  std::vector<C> num(std::size_t(n) + 1, C(0));
  std::vector<C> den(std::size_t(n) + 1, C(0));
  for (int j = 0; j <= n - 2; ++j)
    num[std::size_t(j)] = T::make(p.at_j(j).real(), p.at_j(j).imag());
  num[std::size_t(n)] = C(1);
  den[0] = C(1);
  for (int j = n + 1; j <= 2 * n - 1; ++j)
    den[std::size_t(j - n)] = -T::make(p.at_j(j).real(), p.at_j(j).imag());
  return make_map<C>(n, std::move(num), std::move(den));
}

inline RationalMap family_map(const ParamVector& p) { return family_map_t<cdouble>(p); }

// One-parameter slice z^n + a z^j. Only j <= n is representable with a
// degree-n numerator; larger j must be reached through family_map.
inline RationalMap monomial_family(int n, std::int64_t j, cdouble a) {
  if (n < 2) raise(ErrorKind::Usage, "family needs degree n >= 2");
  if (j < 0 || j > n)
    raise(ErrorKind::Usage, "monomial slice needs 0 <= j <= n");
  std::vector<cdouble> num(std::size_t(n) + 1, 0.0);
  std::vector<cdouble> den(std::size_t(n) + 1, 0.0);
  num[std::size_t(j)] += a;
  num[std::size_t(n)] += 1.0;
  den[0] = 1.0;
  return make_map<cdouble>(n, std::move(num), std::move(den));
}

// ---------------------------------------------------------------------------
// Evaluation and multipliers, chart aware. The unit circle splits the two
// charts: |z| <= 1 evaluates p/q directly, |z| > 1 and infinity go through
// w = 1/z where the reversed coefficient lists apply.

template <class C>
bool invert_chart(const SpherePointT<C>& z) {
  return z.infinite || cx_traits<C>::abs(z.value) > real_of<C>(1);
}

template <class C>
SpherePointT<C> eval_map(const RationalMapT<C>& f, const SpherePointT<C>& z) {
  using T = cx_traits<C>;
  C pv, qv;
  if (!invert_chart(z)) {
    pv = polyval(f.num, z.value);
    qv = polyval(f.den, z.value);
  } else {
    C w = z.infinite ? C(0) : C(1) / z.value;
    pv = polyval(f.num_rev, w);
    qv = polyval(f.den_rev, w);
  }
  if (!(T::abs(qv) > 0)) return SpherePointT<C>::inf();
  C v = pv / qv;
  if (!T::finite(v)) return SpherePointT<C>::inf();
  return SpherePointT<C>::at(v);
}

template <class C>
SpherePointT<C> iterate_map(const RationalMapT<C>& f, SpherePointT<C> z,
                            std::int64_t count) {
  if (count < 0) raise(ErrorKind::Usage, "iteration count must be >= 0");
  for (std::int64_t i = 0; i < count; ++i) z = eval_map(f, z);
  return z;
}

// Derivative of (chart_out o f o chart_in^{-1}) at chart_in(z): one factor of
// the cycle product. Charts are chosen per point, so the product over a full
// cycle telescopes to the multiplier regardless of the choices.
template <class C>
C chart_derivative(const RationalMapT<C>& f, const SpherePointT<C>& z,
                   bool out_inverted) {
  if (!invert_chart(z)) {
    const C& x = z.value;
    C p = polyval(f.num, x), q = polyval(f.den, x);
    C dp = polyval_deriv(f.num, x), dq = polyval_deriv(f.den, x);
    if (!out_inverted) return (dp * q - p * dq) / (q * q);
    return (dq * p - q * dp) / (p * p);
  }
  C w = z.infinite ? C(0) : C(1) / z.value;
  C p = polyval(f.num_rev, w), q = polyval(f.den_rev, w);
  C dp = polyval_deriv(f.num_rev, w), dq = polyval_deriv(f.den_rev, w);
  if (!out_inverted) return (dp * q - p * dq) / (q * q);
  return (dq * p - q * dp) / (p * p);
}

// Multiplier of a cycle given as the full orbit in cyclic order. Each point
// must map to the next within closure_tol in the chordal metric.
template <class C>
C orbit_multiplier(const RationalMapT<C>& f,
                   const std::vector<SpherePointT<C>>& orbit,
                   double closure_tol = 1e-9) {
  using R = real_of<C>;
  if (orbit.empty()) raise(ErrorKind::Usage, "empty orbit");
  const std::size_t m = orbit.size();
  for (std::size_t i = 0; i < m; ++i) {
    SpherePointT<C> img = eval_map(f, orbit[i]);
    if (!(chordal(img, orbit[(i + 1) % m]) <= R(closure_tol)))
      raise(ErrorKind::NotACycle, "orbit does not close up under the map");
  }
  C lambda(1);
  for (std::size_t i = 0; i < m; ++i)
    lambda *= chart_derivative(f, orbit[i], invert_chart(orbit[(i + 1) % m]));
  return lambda;
}

// ---------------------------------------------------------------------------
// Mobius conjugation. M = [[a, b], [c, d]] acts as z -> (az + b)/(cz + d);
// the conjugate M o f o M^{-1} is again a degree-n pair.

struct Mobius {
  cdouble a, b, c, d;
  cdouble det() const { return a * d - b * c; }
};

RationalMap mobius_conjugate(const RationalMap& f, const Mobius& m);

// Image of a sphere point under M, exact at infinity and poles.
SpherePoint mobius_apply(const Mobius& m, const SpherePoint& z);

// All fixed points of f, the n+1 roots of z q(z) - p(z) with infinity
// included when q has stepped-down degree. Raises DegenerateFixedPoints
// when any two collide within chordal 1e-8 or infinity is not simple.
std::vector<SpherePoint> fixed_points(const RationalMap& f);

// ---------------------------------------------------------------------------
// Holomorphic index. Sums 1/(1 - lambda) over all n+1 fixed points, counting
// infinity when q has stepped-down degree. The sum is identically 1 for maps
// with simple fixed points; deviations measure numerical error.

cdouble index_sum(const RationalMap& f);

}  // namespace multcert
