#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "periodic.hpp"
#include "test_util.hpp"

using namespace multcert;
using testutil::kind_of;

TEST_CASE("checked powers stay inside the exact-integer envelope") {
  CHECK(pow_checked(2, 10) == 1024);
  CHECK(pow_checked(7, 0) == 1);
  CHECK(pow_checked(2, 63) == u64(1) << 63);
  CHECK(kind_of([] { pow_checked(2, 64); }) == ErrorKind::Overflow);
  CHECK(kind_of([] { pow_checked(10, 19); }) == ErrorKind::Overflow);
}

TEST_CASE("mobius function on squarefree and non-squarefree inputs") {
  CHECK(mobius_mu(1) == 1);
  CHECK(mobius_mu(2) == -1);
  CHECK(mobius_mu(4) == 0);
  CHECK(mobius_mu(6) == 1);
  CHECK(mobius_mu(12) == 0);
  CHECK(mobius_mu(30) == -1);
}

TEST_CASE("periodic point counts") {
  CHECK(count_periodic(2, 1) == 2);
  CHECK(count_periodic(2, 2) == 2);
  CHECK(count_periodic(2, 3) == 6);
  CHECK(count_periodic(2, 4) == 12);
  CHECK(count_periodic(2, 6) == 54);
  CHECK(count_periodic(3, 1) == 3);
  CHECK(count_periodic(3, 2) == 6);
  CHECK(count_periodic(3, 4) == 72);
  CHECK(count_periodic(6, 4) == 1260);
  // The nonzero count only differs at period one, where the origin drops out.
  CHECK(count_nonzero(2, 1) == 1);
  CHECK(count_nonzero(3, 1) == 2);
  CHECK(count_nonzero(3, 2) == 6);
}

TEST_CASE("counts partition the solutions of z^(n^m) = z") {
  for (u64 n = 2; n <= 5; ++n)
    for (u64 m = 1; m <= 8; ++m) {
      i64 total = 0;
      for (u64 r = 1; r <= m; ++r)
        if (m % r == 0) total += count_periodic(n, r);
      CHECK(total == i64(pow_checked(n, m)));
    }
}

TEST_CASE("minimal periods from direct iteration agree with the counts") {
  for (u64 n = 2; n <= 4; ++n)
    for (u64 m = 1; m <= 6; ++m) {
      const u64 mod = pow_checked(n, m) - 1;
      i64 hits = 0;
      for (u64 k = 0; k < mod; ++k) {
        u64 t = 1;
        u64 v = k * n % mod;
        while (v != k) {
          v = v * n % mod;
          ++t;
        }
        if (t == m) ++hits;
      }
      if (m == 1) ++hits;  // the origin
      CHECK(hits == count_periodic(n, m));
    }
}

TEST_CASE("enumeration lists exactly the points of minimal period m") {
  auto one = enumerate_periodic(2, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].modulus == 1);
  CHECK(one[0].residue == 0);

  auto fixed3 = enumerate_periodic(3, 1);
  REQUIRE(fixed3.size() == 2);
  CHECK(fixed3[0].residue == 0);
  CHECK(fixed3[1].residue == 1);

  auto two = enumerate_periodic(2, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].residue == 1);
  CHECK(two[1].residue == 2);

  auto three = enumerate_periodic(2, 3);
  REQUIRE(three.size() == 6);
  for (u64 k = 0; k < 6; ++k) CHECK(three[k].residue == k + 1);

  for (u64 n = 2; n <= 4; ++n)
    for (u64 m = 1; m <= 5; ++m) {
      auto pts = enumerate_periodic(n, m);
      CHECK(i64(pts.size()) == count_nonzero(n, m));
      CHECK(std::is_sorted(pts.begin(), pts.end()));
      for (const RootPoint& p : pts) CHECK(minimal_period(p.residue, p.modulus, n) == m);
    }
}

TEST_CASE("orbits collect the full cycle, sorted") {
  auto orb = orbit_of(RootPoint::at(7, 3), 2);
  REQUIRE(orb.size() == 3);
  CHECK(orb[0].residue == 3);
  CHECK(orb[1].residue == 5);
  CHECK(orb[2].residue == 6);
  auto inf = orbit_of(RootPoint::inf(), 5);
  REQUIRE(inf.size() == 1);
  CHECK(inf[0].infinite);
  CHECK(kind_of([] { minimal_period(1, 4, 2); }) == ErrorKind::Usage);
}

TEST_CASE("root points embed on the unit circle with recentred angles") {
  CHECK(kind_of([] { RootPoint::at(0, 0); }) == ErrorKind::Usage);
  CHECK(kind_of([] { RootPoint::at(4, 4); }) == ErrorKind::Usage);
  CHECK(RootPoint::at(1, 0).embed() == cdouble(1.0, 0.0));
  CHECK(std::abs(RootPoint::at(4, 1).embed() - cdouble(0.0, 1.0)) < 1e-15);
  // Conjugate residues embed to exactly conjugate values, except the
  // half turn, where both land on the same recentred angle +pi.
  for (u64 mod : {4u, 7u, 12u, 255u})
    for (u64 r = 1; r < mod; ++r) {
      cdouble a = RootPoint::at(mod, r).embed();
      cdouble b = RootPoint::at(mod, mod - r).embed();
      if (2 * r == mod)
        CHECK(std::abs(a - std::conj(b)) < 1e-15);
      else
        CHECK(a == std::conj(b));
    }
  CHECK(kind_of([] { RootPoint::inf().embed(); }) == ErrorKind::InfinityPoint);
  CHECK(RootPoint::inf().to_sphere().infinite);
}

TEST_CASE("period vectors validate their shape") {
  CHECK(kind_of([] { PeriodVector::of(1, {1}); }) == ErrorKind::Usage);
  CHECK(kind_of([] { PeriodVector::of(3, {1, 1, 1}); }) == ErrorKind::WrongLength);
  CHECK(kind_of([] { PeriodVector::of(3, {1, 1, 0, 3}); }) == ErrorKind::Usage);
  CHECK(PeriodVector::of(3, {1, 1, 1, 3}).m.size() == 4);
}

TEST_CASE("newton continuation tracks fixed points of the family") {
  // At a = 0 an exact periodic point is returned unchanged.
  SpherePoint one = SpherePoint::at(cdouble(1.0, 0.0));
  auto kept = newton_continue(ParamVector::zero(3), one, 1);
  CHECK(kept.value == one.value);
  CHECK(newton_continue(ParamVector::zero(3), SpherePoint::inf(), 1).infinite);

  // f(z) = z^2 + a has the continued fixed point (1 + sqrt(1 - 4a)) / 2.
  ParamVector p = ParamVector::zero(2);
  p.set_j(0, cdouble(0.01, 0.0));
  auto moved = newton_continue(p, one, 1);
  double want = (1.0 + std::sqrt(1.0 - 0.04)) / 2.0;
  CHECK(std::abs(moved.value - cdouble(want, 0.0)) < 1e-12);

  // (f)' = 1 at z = 1/2 for z^2: the correction is singular there.
  CHECK(kind_of([&] {
          newton_continue(ParamVector::zero(2), SpherePoint::at(cdouble(0.5, 0.0)), 1);
        }) == ErrorKind::DerivativeSingular);
  CHECK(kind_of([&] {
          newton_continue(p, SpherePoint::at(cdouble(0.9, 0.0)), 1, 1e-15, 0);
        }) == ErrorKind::NoConvergence);
}
