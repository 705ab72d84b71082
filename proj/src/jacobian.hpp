#pragma once

#include <vector>

#include "derivatives.hpp"
#include "linalg.hpp"
#include "periodic.hpp"

namespace multcert {

// ---------------------------------------------------------------------------
// A labelled collection of 2n-2 periodic points, one per parameter slot.
// Points must carry their minimal periods, lie in pairwise distinct orbits,
// and may include infinity at most once, only with period 1.

struct PeriodicVector {
  int n = 0;
  std::vector<RootPoint> points;  // slot order, size 2n-2
  PeriodVector periods;

  static PeriodicVector checked(int n, std::vector<RootPoint> points,
                                PeriodVector periods);
};

// Canonical orbit label of a point: infinity maps to itself, finite points to
// the smallest residue on their orbit. Distinctness tests compare these.
RootPoint orbit_key(const RootPoint& p, u64 n);

// ---------------------------------------------------------------------------
// The Jacobian of the multiplier maps: rows follow the point slots, columns
// the parameter indices j ascending. Finite rows carry the exact closed form,
// the infinity row is (0, ..., 0, -1).

struct MultiplierJacobian {
  int n = 0;
  std::vector<RootPoint> row_points;
  std::vector<i64> col_indices;  // ascending valid j
  Matrix entries;
};

template <class C>
MatrixT<C> jacobian_entries_t(const PeriodicVector& v) {
  const int k = family_slot_count(v.n);
  MatrixT<C> m(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      i64 j = family_slot_to_j(v.n, c);
      if (v.points[std::size_t(r)].infinite)
        m.at(r, c) = j == 2 * i64(v.n) - 1 ? C(-1) : C(0);
      else
        m.at(r, c) = dlambda_closed_t<C>(u64(v.n), u64(v.periods.m[std::size_t(r)]),
                                         j, v.points[std::size_t(r)]);
    }
  return m;
}

MultiplierJacobian build_jacobian(const PeriodicVector& v);

// Leading minor attached to parameter index j: the top-left block covering
// all slots up to and including j's. The excluded index n aliases to n-2
// (same block), matching how the induction steps past the gap.
Matrix leading_minor(const MultiplierJacobian& jac, i64 j);

cdouble det(const Matrix& m);

// Scale-aware nondegeneracy floor: 1e-10 times the product over rows of
// max(1, row 2-norm).
double hadamard_threshold(const Matrix& m);

template <class C>
MatrixT<C> numeric_jacobian_t(const PeriodicVector& v, double h) {
  const int k = family_slot_count(v.n);
  MatrixT<C> m(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      m.at(r, c) = dlambda_numeric_t<C>(u64(v.n), u64(v.periods.m[std::size_t(r)]),
                                        family_slot_to_j(v.n, c),
                                        v.points[std::size_t(r)], h);
  return m;
}

MultiplierJacobian numeric_jacobian(const PeriodicVector& v, double h);

}  // namespace multcert
