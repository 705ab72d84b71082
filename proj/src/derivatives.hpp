#pragma once

#include <map>

#include "errors.hpp"
#include "periodic.hpp"
#include "ratmap.hpp"

namespace multcert {

// ---------------------------------------------------------------------------
// Exact sparse polynomials over the integers, exponent -> coefficient.
// Terms with zero coefficient are never stored.

struct SparsePolynomial {
  std::map<i64, i64> terms;

  void add(i64 exponent, i64 coeff) {
    if (exponent < 0) raise(ErrorKind::Usage, "exponents must be >= 0");
    if (coeff == 0) return;
    auto [it, fresh] = terms.emplace(exponent, coeff);
    if (!fresh) {
      it->second += coeff;
      if (it->second == 0) terms.erase(it);
    }
  }

  i64 degree() const {
    if (terms.empty()) raise(ErrorKind::Usage, "zero polynomial has no degree");
    return terms.rbegin()->first;
  }

  bool operator==(const SparsePolynomial&) const = default;
};

bool support_disjoint(const SparsePolynomial& a, const SparsePolynomial& b);

// ---------------------------------------------------------------------------
// Derivatives of multiplier maps at a = 0 along single parameter directions.
// All indices j run over {0..n-2} u {n+1..2n-1}; j = n-1, n raise
// IndexExcluded and anything outside [0, 2n-1] raises IndexOutOfRange.

// (j n^{m-1} - n^m), the scalar prefactor shared by all closed forms.
// Nonzero for every valid j since j = n forces the only root.
i64 deriv_prefactor(u64 n, u64 m, i64 j);

// z0 raised to a (possibly negative or huge) power, exactly, through the
// residue representation: z0^e = e^{2 pi i (e k mod M)/M}.
template <class C>
C root_power(const RootPoint& z0, __int128 e) {
  using T = cx_traits<C>;
  using R = real_of<C>;
  if (z0.infinite) raise(ErrorKind::InfinityPoint, "infinity cannot be powered");
  const u64 mod = z0.modulus;
  i64 er = i64(((e % __int128(mod)) + __int128(mod)) % __int128(mod));
  u64 idx = u64((unsigned __int128)(u64(er)) * z0.residue % mod);
  i64 r = idx > mod / 2 ? i64(idx) - i64(mod) : i64(idx);
  return T::unit(R(2) * T::pi() * R(double(r)) / R(double(mod)));
}

// d lambda_{z0} / da_j at a = 0 for a finite periodic point z0 of period m:
//   (j n^{m-1} - n^m) * sum_{i=0}^{m-1} z0^{n^i (j - n)}.
template <class C>
C dlambda_closed_t(u64 n, u64 m, i64 j, const RootPoint& z0) {
  using T = cx_traits<C>;
  family_j_to_slot(int(n), j);  // validates the index
  if (z0.infinite)
    raise(ErrorKind::InfinityPoint, "closed form needs a finite point");
  if (z0.modulus != pow_checked(n, m) - 1)
    raise(ErrorKind::Usage, "point modulus does not match n^m - 1");
  const i64 pref = deriv_prefactor(n, m, j);
  const u64 mod = z0.modulus;
  C sum(0);
  u64 npow = 1;  // n^i mod (n^m - 1)
  for (u64 i = 0; i < m; ++i) {
    sum += root_power<C>(z0, __int128(npow) * __int128(j - i64(n)));
    if (mod > 1) npow = u64((unsigned __int128)(npow)*n % mod);
  }
  return T::make(double(pref), 0.0) * sum;
}

cdouble dlambda_closed(u64 n, u64 m, i64 j, const RootPoint& z0);

// d lambda_inf / da_j at a = 0: -1 in the a_{2n-1} direction, 0 otherwise.
cdouble dlambda_infinity(u64 n, i64 j);

// The polynomial P with dlambda = z0^{-n^{m-1}} P(z0) on periodic points,
// one of three shapes depending on where j falls.
SparsePolynomial poly_P(u64 n, i64 j, u64 m);

// Closed-form degree of poly_P (four cases).
i64 deg_P(u64 n, i64 j, u64 m);

template <class C>
C eval_P_at_root_t(const SparsePolynomial& p, const RootPoint& z0) {
  using T = cx_traits<C>;
  C sum(0);
  for (const auto& [e, c] : p.terms)
    sum += T::make(double(c), 0.0) * root_power<C>(z0, e);
  return sum;
}

cdouble eval_P_at_root(const SparsePolynomial& p, const RootPoint& z0);

// ---------------------------------------------------------------------------
// Independent numeric oracle: continue the orbit to a = +-h e_j with Newton,
// read the multiplier off the continued cycle, central-difference the two.
// For z0 = infinity (period 1) the multiplier of the fixed point at infinity
// is computed from the map in the 1/z chart; no closed form is involved.

template <class C>
C dlambda_numeric_t(u64 n, u64 m, i64 j, const RootPoint& z0, double h) {
  using T = cx_traits<C>;
  const int slot = family_j_to_slot(int(n), j);
  if (!(h >= 1e-8 && h <= 1e-4))
    raise(ErrorKind::Usage, "difference step must lie in [1e-8, 1e-4]");
  if (z0.infinite && m != 1)
    raise(ErrorKind::Usage, "infinity is periodic only with period 1");
  if (!z0.infinite && z0.modulus != pow_checked(n, m) - 1)
    raise(ErrorKind::Usage, "point modulus does not match n^m - 1");

  C lambda[2];
  const double steps[2] = {h, -h};
  for (int s = 0; s < 2; ++s) {
    ParamVector a = ParamVector::zero(int(n));
    a.a[std::size_t(slot)] = steps[s];
    RationalMapT<C> f = family_map_t<C>(a);
    if (z0.infinite) {
      lambda[s] = orbit_multiplier(f, {SpherePointT<C>::inf()});
      continue;
    }
    SpherePointT<C> start = SpherePointT<C>::at(z0.embed_t<C>());
    SpherePointT<C> zs = newton_continue_t<C>(a, start, i64(m), T::newton_tol(), 50);
    std::vector<SpherePointT<C>> orbit = {zs};
    for (u64 i = 1; i < m; ++i) orbit.push_back(eval_map(f, orbit.back()));
    lambda[s] = orbit_multiplier(f, orbit);
  }
  return (lambda[0] - lambda[1]) / T::make(2.0 * h, 0.0);
}

cdouble dlambda_numeric(u64 n, u64 m, i64 j, const RootPoint& z0, double h = 1e-6);

}  // namespace multcert
