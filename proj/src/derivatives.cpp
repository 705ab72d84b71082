#include "derivatives.hpp"

namespace multcert {

namespace {

i64 checked_i64(__int128 v, const char* what) {
  if (v > __int128(INT64_MAX) || v < -__int128(INT64_MAX))
    raise(ErrorKind::Overflow, what);
  return i64(v);
}

}  // namespace

bool support_disjoint(const SparsePolynomial& a, const SparsePolynomial& b) {
  const SparsePolynomial& small = a.terms.size() <= b.terms.size() ? a : b;
  const SparsePolynomial& large = a.terms.size() <= b.terms.size() ? b : a;
  for (const auto& [e, c] : small.terms)
    if (large.terms.count(e)) return false;
  return true;
}

i64 deriv_prefactor(u64 n, u64 m, i64 j) {
  family_j_to_slot(int(n), j);
  const u64 nm1 = pow_checked(n, m - 1);
  const u64 nm = pow_checked(n, m);
  i64 pref = checked_i64(__int128(j) * __int128(nm1) - __int128(nm),
                         "derivative prefactor exceeds the exact range");
  if (pref == 0)
    raise(ErrorKind::Internal, "prefactor vanished for a valid index");
  return pref;
}

cdouble dlambda_closed(u64 n, u64 m, i64 j, const RootPoint& z0) {
  return dlambda_closed_t<cdouble>(n, m, j, z0);
}

cdouble dlambda_infinity(u64 n, i64 j) {
  family_j_to_slot(int(n), j);
  return j == 2 * i64(n) - 1 ? cdouble(-1.0) : cdouble(0.0);
}

SparsePolynomial poly_P(u64 n, i64 j, u64 m) {
  family_j_to_slot(int(n), j);
  const i64 pref = deriv_prefactor(n, m, j);
  const __int128 nm1 = __int128(pow_checked(n, m - 1));
  SparsePolynomial p;
  auto add = [&](__int128 e) {
    p.add(checked_i64(e, "polynomial exponent exceeds the exact range"), pref);
  };

  if (j <= i64(n) - 2) {
    // The i = m-1 term has negative exponent; z^{n^m - 1} = 1 on the roots
    // rewrites it as (j+1) n^{m-1} - 1.
    add((__int128(j) + 1) * nm1 - 1);
    __int128 npow = 1;
    for (u64 i = 0; i + 1 < m; ++i) {
      add(npow * (__int128(j) - i64(n)) + nm1);
      npow *= n;
    }
  } else if (j <= 2 * i64(n) - 2) {
    __int128 npow = 1;
    for (u64 i = 0; i < m; ++i) {
      add(npow * (__int128(j) - i64(n)) + nm1);
      npow *= n;
    }
  } else {
    // j = 2n-1: the i = m-1 term is z^{n^m}, which is z on the roots.
    add(1);
    __int128 npow = 1;
    for (u64 i = 0; i + 1 < m; ++i) {
      add(npow * (i64(n) - 1) + nm1);
      npow *= n;
    }
  }
  return p;
}

i64 deg_P(u64 n, i64 j, u64 m) {
  family_j_to_slot(int(n), j);
  const __int128 nm1 = __int128(pow_checked(n, m - 1));
  __int128 deg;
  if (j <= i64(n) - 2)
    deg = (__int128(j) + 1) * nm1 - 1;
  else if (j <= 2 * i64(n) - 2)
    deg = (__int128(j) - i64(n) + 1) * nm1;
  else if (m == 1)
    deg = 1;
  else
    deg = 2 * nm1 - __int128(pow_checked(n, m - 2));
  return checked_i64(deg, "polynomial degree exceeds the exact range");
}

cdouble eval_P_at_root(const SparsePolynomial& p, const RootPoint& z0) {
  return eval_P_at_root_t<cdouble>(p, z0);
}

cdouble dlambda_numeric(u64 n, u64 m, i64 j, const RootPoint& z0, double h) {
  return dlambda_numeric_t<cdouble>(n, m, j, z0, h);
}

}  // namespace multcert
