#include "jacobian.hpp"

#include <set>

namespace multcert {

RootPoint orbit_key(const RootPoint& p, u64 n) {
  if (p.infinite) return p;
  return orbit_of(p, n).front();
}

PeriodicVector PeriodicVector::checked(int n, std::vector<RootPoint> points,
                                       PeriodVector periods) {
  if (n < 2) raise(ErrorKind::Usage, "periodic vector needs degree n >= 2");
  const std::size_t k = std::size_t(family_slot_count(n));
  if (points.size() != k || periods.n != n || periods.m.size() != k)
    raise(ErrorKind::WrongLength, "periodic vector must have 2n-2 slots");

  std::set<RootPoint> keys;
  int infinities = 0;
  for (std::size_t s = 0; s < k; ++s) {
    const RootPoint& p = points[s];
    const i64 m = periods.m[s];
    if (p.infinite) {
      if (m != 1)
        raise(ErrorKind::Usage, "infinity is a fixed point: period must be 1");
      if (++infinities > 1)
        raise(ErrorKind::Usage, "infinity may appear at most once");
    } else {
      if (p.modulus != pow_checked(u64(n), u64(m)) - 1)
        raise(ErrorKind::Usage, "point modulus does not match its period label");
      if (minimal_period(p.residue, p.modulus, u64(n)) != u64(m))
        raise(ErrorKind::Usage, "period label is not the minimal period");
    }
    if (!keys.insert(orbit_key(p, u64(n))).second)
      raise(ErrorKind::Usage, "points must lie in pairwise distinct orbits");
  }
  return PeriodicVector{n, std::move(points), std::move(periods)};
}

MultiplierJacobian build_jacobian(const PeriodicVector& v) {
  MultiplierJacobian jac;
  jac.n = v.n;
  jac.row_points = v.points;
  for (int c = 0; c < family_slot_count(v.n); ++c)
    jac.col_indices.push_back(family_slot_to_j(v.n, c));
  jac.entries = jacobian_entries_t<cdouble>(v);
  return jac;
}

Matrix leading_minor(const MultiplierJacobian& jac, i64 j) {
  const i64 n = jac.n;
  if (j == n) j = n - 2;  // the gap in the index set aliases downward
  const int slot = family_j_to_slot(jac.n, j);
  return jac.entries.top_left(slot + 1);
}

cdouble det(const Matrix& m) {
  if (m.rows != m.cols) raise(ErrorKind::Usage, "determinant needs a square matrix");
  return lu_det(m);
}

double hadamard_threshold(const Matrix& m) { return hadamard_floor(m); }

MultiplierJacobian numeric_jacobian(const PeriodicVector& v, double h) {
  MultiplierJacobian jac;
  jac.n = v.n;
  jac.row_points = v.points;
  for (int c = 0; c < family_slot_count(v.n); ++c)
    jac.col_indices.push_back(family_slot_to_j(v.n, c));
  jac.entries = numeric_jacobian_t<cdouble>(v, h);
  return jac;
}

}  // namespace multcert
