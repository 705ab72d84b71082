#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "jacobian.hpp"
#include "test_util.hpp"

using namespace multcert;
using testutil::kind_of;

namespace {

// Independent determinant oracle: cofactor expansion along the first row.
cdouble cofactor_det(const Matrix& m) {
  const int k = m.rows;
  if (k == 1) return m.at(0, 0);
  cdouble sum = 0.0;
  for (int c = 0; c < k; ++c) {
    Matrix minor(k - 1, k - 1);
    for (int r = 1; r < k; ++r)
      for (int cc = 0, w = 0; cc < k; ++cc) {
        if (cc == c) continue;
        minor.at(r - 1, w++) = m.at(r, cc);
      }
    cdouble term = m.at(0, c) * cofactor_det(minor);
    sum += (c % 2 == 0) ? term : -term;
  }
  return sum;
}

Matrix wiggle_matrix(int k) {
  Matrix m(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      double t = double(r * k + c + 1);
      m.at(r, c) = cdouble(std::cos(1.7 * t), std::sin(2.3 * t));
    }
  return m;
}

PeriodicVector sample_vector() {
  return PeriodicVector::checked(
      3, {RootPoint::at(2, 0), RootPoint::at(2, 1), RootPoint::at(26, 1), RootPoint::inf()},
      PeriodVector::of(3, {1, 1, 3, 1}));
}

}  // namespace

TEST_CASE("orbit keys name orbits by their smallest residue") {
  CHECK(orbit_key(RootPoint::at(7, 6), 2) == RootPoint::at(7, 3));
  CHECK(orbit_key(RootPoint::at(7, 3), 2) == RootPoint::at(7, 3));
  CHECK(orbit_key(RootPoint::inf(), 2) == RootPoint::inf());
}

TEST_CASE("labelled collections reject malformed input") {
  auto periods = PeriodVector::of(3, {1, 1, 3, 1});
  CHECK(kind_of([&] {
          PeriodicVector::checked(3, {RootPoint::at(2, 0), RootPoint::at(2, 1)}, periods);
        }) == ErrorKind::WrongLength);
  // Modulus must match the period label.
  CHECK(kind_of([&] {
          PeriodicVector::checked(3,
                                  {RootPoint::at(2, 0), RootPoint::at(2, 1),
                                   RootPoint::at(8, 1), RootPoint::inf()},
                                  periods);
        }) == ErrorKind::Usage);
  // Residue 0 is fixed, so a period-3 label overstates it.
  CHECK(kind_of([&] {
          PeriodicVector::checked(3,
                                  {RootPoint::at(2, 0), RootPoint::at(2, 1),
                                   RootPoint::at(26, 0), RootPoint::inf()},
                                  periods);
        }) == ErrorKind::Usage);
  // 1 and 9 share the 3-orbit 1 -> 3 -> 9 -> 1 mod 26.
  CHECK(kind_of([&] {
          PeriodicVector::checked(3,
                                  {RootPoint::at(2, 0), RootPoint::at(2, 1),
                                   RootPoint::at(26, 1), RootPoint::at(26, 9)},
                                  PeriodVector::of(3, {1, 1, 3, 3}));
        }) == ErrorKind::Usage);
  CHECK(kind_of([&] {
          PeriodicVector::checked(3,
                                  {RootPoint::at(2, 0), RootPoint::inf(),
                                   RootPoint::at(26, 1), RootPoint::inf()},
                                  periods);
        }) == ErrorKind::Usage);
  CHECK(kind_of([&] {
          PeriodicVector::checked(3,
                                  {RootPoint::at(2, 0), RootPoint::at(2, 1),
                                   RootPoint::at(26, 1), RootPoint::at(2, 1)},
                                  PeriodVector::of(3, {1, 1, 3, 1}));
        }) == ErrorKind::Usage);
}

TEST_CASE("jacobian entries match the closed forms row by row") {
  MultiplierJacobian jac = build_jacobian(sample_vector());
  CHECK(jac.col_indices == std::vector<i64>{0, 1, 4, 5});
  // Fixed point z = 1: entry (j - 3) * 1.
  CHECK(std::abs(jac.entries.at(0, 0) - cdouble(-3.0, 0.0)) < 1e-13);
  CHECK(std::abs(jac.entries.at(0, 1) - cdouble(-2.0, 0.0)) < 1e-13);
  CHECK(std::abs(jac.entries.at(0, 2) - cdouble(1.0, 0.0)) < 1e-13);
  CHECK(std::abs(jac.entries.at(0, 3) - cdouble(2.0, 0.0)) < 1e-13);
  // Fixed point z = -1: entry (j - 3) * (-1)^(j - 3).
  CHECK(std::abs(jac.entries.at(1, 0) - cdouble(3.0, 0.0)) < 1e-13);
  CHECK(std::abs(jac.entries.at(1, 1) - cdouble(-2.0, 0.0)) < 1e-13);
  CHECK(std::abs(jac.entries.at(1, 2) - cdouble(-1.0, 0.0)) < 1e-13);
  CHECK(std::abs(jac.entries.at(1, 3) - cdouble(2.0, 0.0)) < 1e-13);
  // The infinity row depends on the last parameter alone.
  CHECK(jac.entries.at(3, 0) == cdouble(0.0, 0.0));
  CHECK(jac.entries.at(3, 1) == cdouble(0.0, 0.0));
  CHECK(jac.entries.at(3, 2) == cdouble(0.0, 0.0));
  CHECK(jac.entries.at(3, 3) == cdouble(-1.0, 0.0));
  // The 3-cycle row agrees with direct evaluation.
  for (int c = 0; c < 4; ++c) {
    cdouble direct = dlambda_closed(3, 3, jac.col_indices[std::size_t(c)],
                                    RootPoint::at(26, 1));
    CHECK(std::abs(jac.entries.at(2, c) - direct) < 1e-13);
  }
}

TEST_CASE("leading minors follow the slots, with n aliased to n-2") {
  MultiplierJacobian jac = build_jacobian(sample_vector());
  Matrix m0 = leading_minor(jac, 0);
  CHECK(m0.rows == 1);
  Matrix m1 = leading_minor(jac, 1);
  CHECK(m1.rows == 2);
  Matrix m3 = leading_minor(jac, 3);  // aliases down to index n-2 = 1
  CHECK(m3.rows == 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) CHECK(m3.at(r, c) == m1.at(r, c));
  CHECK(leading_minor(jac, 5).rows == 4);
  CHECK(kind_of([&] { leading_minor(jac, 2); }) == ErrorKind::IndexExcluded);
  CHECK(kind_of([&] { leading_minor(jac, 6); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("lu determinant against a cofactor oracle") {
  Matrix two(2, 2);
  two.at(0, 0) = 1.0;
  two.at(0, 1) = 2.0;
  two.at(1, 0) = 3.0;
  two.at(1, 1) = 4.0;
  CHECK(std::abs(det(two) - cdouble(-2.0, 0.0)) < 1e-14);
  for (int k : {3, 4, 5}) {
    Matrix m = wiggle_matrix(k);
    cdouble lhs = det(m);
    cdouble rhs = cofactor_det(m);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
  Matrix flat(2, 2);
  flat.at(0, 0) = flat.at(0, 1) = flat.at(1, 0) = flat.at(1, 1) = 1.0;
  CHECK(det(flat) == cdouble(0.0, 0.0));
}

TEST_CASE("nondegeneracy floor scales with row norms above one") {
  Matrix id(2, 2);
  id.at(0, 0) = id.at(1, 1) = 1.0;
  CHECK(hadamard_threshold(id) == doctest::Approx(1e-10));
  Matrix scaled(2, 2);
  scaled.at(0, 0) = 2.0;
  scaled.at(1, 1) = 3.0;
  CHECK(hadamard_threshold(scaled) == doctest::Approx(6e-10));
  Matrix small(1, 1);
  small.at(0, 0) = 0.5;  // norms below one do not shrink the floor
  CHECK(hadamard_threshold(small) == doctest::Approx(1e-10));
}

TEST_CASE("finite differences confirm the whole jacobian") {
  PeriodicVector v = sample_vector();
  MultiplierJacobian closed = build_jacobian(v);
  MultiplierJacobian num = numeric_jacobian(v, 1e-6);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      double scale = std::max(1.0, std::abs(closed.entries.at(r, c)));
      CHECK(std::abs(num.entries.at(r, c) - closed.entries.at(r, c)) <= 1e-4 * scale);
    }
}
