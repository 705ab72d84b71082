#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace multcert;
using testutil::kind_of;

namespace {

PeriodVector pv(int n, std::vector<i64> m) { return PeriodVector::of(n, std::move(m)); }

}  // namespace

TEST_CASE("structural conditions on period tuples") {
  ConditionReport r = check_period_conditions(pv(3, {1, 1, 1, 3}));
  CHECK(r.ones == 3);
  CHECK(r.twos == 0);
  CHECK(r.max_period == 3);
  CHECK(r.capacity_ok);
  CHECK(r.spread_ok);
  CHECK(r.ok());

  CHECK_FALSE(check_period_conditions(pv(3, {2, 3, 3, 3})).spread_ok);
  CHECK_FALSE(check_period_conditions(pv(3, {1, 1, 1, 1})).spread_ok);
  CHECK_FALSE(check_period_conditions(pv(3, {1, 1, 1, 1})).capacity_ok);
  CHECK(check_period_conditions(pv(3, {4, 4, 4, 4})).ok());
  CHECK(check_period_conditions(pv(4, {1, 1, 5, 3, 7, 1})).ok());
}

TEST_CASE("slot ordering puts the anchor labels last") {
  SlotOrdering o = order_periods(pv(3, {1, 1, 1, 3}));
  CHECK(o.slot_periods == std::vector<i64>{1, 1, 3, 1});
  CHECK(o.permutation == std::vector<i64>{1, 2, 3, 0});

  o = order_periods(pv(3, {4, 1, 3, 1}));
  CHECK(o.slot_periods == std::vector<i64>{1, 1, 3, 4});
  CHECK(o.permutation == std::vector<i64>{1, 3, 2, 0});

  o = order_periods(pv(3, {1, 1, 4, 1}));
  CHECK(o.slot_periods == std::vector<i64>{1, 1, 4, 1});
  CHECK(o.permutation == std::vector<i64>{1, 3, 2, 0});

  o = order_periods(pv(4, {3, 3, 3, 3, 3, 3}));
  CHECK(o.slot_periods == std::vector<i64>{3, 3, 3, 3, 3, 3});
  CHECK(o.permutation == std::vector<i64>{0, 1, 2, 3, 4, 5});

  CHECK(kind_of([] { order_periods(pv(2, {1, 3})); }) == ErrorKind::ConditionsNotMet);
  CHECK(kind_of([] { order_periods(pv(3, {1, 1, 1, 1})); }) ==
        ErrorKind::ConditionsNotMet);
  CHECK(kind_of([] { order_periods(pv(3, {2, 3, 3, 3})); }) ==
        ErrorKind::ConditionsNotMet);
}

TEST_CASE("constructed certificates carry verified nondegenerate minors") {
  Certificate c = construct_certificate(pv(3, {1, 1, 1, 3}));
  CHECK(c.n == 3);
  CHECK(c.points.periods.m == std::vector<i64>{1, 1, 3, 1});
  CHECK(c.permutation == std::vector<i64>{1, 2, 3, 0});
  CHECK(c.points.points.back().infinite);
  CHECK(c.leading_minor_dets.size() == 4);
  CHECK(std::abs(c.det_value) > 0);
  CHECK(std::abs(c.det_value - c.leading_minor_dets.back()) == 0);
  for (std::size_t s = 0; s < 4; ++s)
    CHECK(std::abs(c.leading_minor_dets[s]) > c.verification.thresholds[s]);
  CHECK(c.verification.max_rel_err <= 1e-4);
  CHECK(c.verification.min_abs_leading_det > 0);

  // All-finite tuple: no period-1 labels at all.
  Certificate d = construct_certificate(pv(3, {3, 3, 3, 3}));
  for (const RootPoint& p : d.points.points) CHECK(!p.infinite);
}

TEST_CASE("construction refuses tuples outside the guaranteed range") {
  CHECK(kind_of([] { construct_certificate(pv(3, {2, 3, 3, 3})); }) ==
        ErrorKind::ConditionsNotMet);
  CHECK(kind_of([] { construct_certificate(pv(2, {1, 3})); }) ==
        ErrorKind::ConditionsNotMet);
  CHECK(kind_of([] { construct_certificate(pv(3, {1, 1, 1, 1})); }) ==
        ErrorKind::ConditionsNotMet);
}

TEST_CASE("a starved node budget reports the deepest slot reached") {
  try {
    construct_certificate(pv(3, {1, 1, 1, 3}), {.max_backtrack = 1});
    FAIL("expected exhaustion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Exhausted);
    CHECK(e.detail_json().find("\"deepest_slot\":0") != std::string::npos);
    CHECK(e.detail_json().find("candidate_dets") != std::string::npos);
  }
}

TEST_CASE("exploration works past the conditions when the minors cooperate") {
  // One period-2 label: outside the guaranteed range, still nondegenerate.
  Certificate c = explore_beyond_conditions(pv(3, {1, 1, 1, 2}));
  CHECK(c.points.periods.m == std::vector<i64>{1, 1, 2, 1});
  CHECK(c.points.points.back().infinite);

  // All period-2 labels hit a genuinely degenerate minor and give up.
  try {
    explore_beyond_conditions(pv(3, {2, 2, 2, 2}));
    FAIL("expected exhaustion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Exhausted);
    CHECK(e.detail_json().find("abs_det") != std::string::npos);
    CHECK(e.detail_json().find("threshold") != std::string::npos);
  }
}

TEST_CASE("certificates survive a json round trip and re-verify") {
  Certificate c = construct_certificate(pv(3, {4, 1, 3, 1}));
  std::string text = certificate_to_json(c);
  Certificate back = certificate_from_json(text);
  CHECK(certificate_to_json(back) == text);
  VerificationReport rep = verify_certificate(back);
  CHECK(rep.min_abs_leading_det > 0);
  CHECK(rep.max_rel_err <= 1e-4);
}

TEST_CASE("tampered certificates fail verification") {
  Certificate c = construct_certificate(pv(3, {1, 1, 1, 3}));

  Certificate bad = c;
  bad.det_value *= 2.0;
  CHECK(kind_of([&] { verify_certificate(bad); }) == ErrorKind::VerificationFailed);

  bad = c;
  bad.leading_minor_dets[0] += cdouble(0.5, 0.0);
  CHECK(kind_of([&] { verify_certificate(bad); }) == ErrorKind::VerificationFailed);

  bad = c;
  std::swap(bad.permutation[0], bad.permutation[2]);
  CHECK(kind_of([&] { verify_certificate(bad); }) == ErrorKind::VerificationFailed);

  // Swapping in a different orbit of the right period invalidates the minors.
  bad = c;
  bad.points.points[2] = RootPoint::at(26, 2);
  CHECK(kind_of([&] { verify_certificate(bad); }) == ErrorKind::VerificationFailed);
}

TEST_CASE("stored certificates reject malformed payloads") {
  CHECK(kind_of([] { certificate_from_json("not json at all"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { certificate_from_json("{\"format\":\"something-else\"}"); }) ==
        ErrorKind::Parse);
  CHECK(kind_of([] { certificate_from_json("{}"); }) == ErrorKind::Parse);
}

TEST_CASE("search options are validated up front") {
  CHECK(kind_of([] { construct_certificate(pv(3, {1, 1, 1, 3}), {.tol = 0.0}); }) ==
        ErrorKind::Usage);
  CHECK(kind_of([] { construct_certificate(pv(3, {1, 1, 1, 3}), {.h = 1e-2}); }) ==
        ErrorKind::Usage);
  CHECK(kind_of([] {
          construct_certificate(pv(3, {1, 1, 1, 3}), {.max_backtrack = 0});
        }) == ErrorKind::Usage);
  CHECK(kind_of([] {
          construct_certificate(pv(3, {1, 1, 1, 3}), {.precision_bits = 400});
        }) == ErrorKind::UnsupportedPrecision);
}

TEST_CASE("software-float differences sharpen the cross-check") {
  RootPoint z0 = RootPoint::at(8, 1);
  cdouble closed = dlambda_closed(3, 2, 5, z0);
  cdouble wide = dlambda_numeric_bits(3, 2, 5, z0, 1e-8, 166);
  CHECK(std::abs(wide - closed) <= 1e-10 * std::max(1.0, std::abs(closed)));
  cdouble wider = dlambda_numeric_bits(3, 2, 5, z0, 1e-8, 332);
  CHECK(std::abs(wider - closed) <= 1e-10 * std::max(1.0, std::abs(closed)));
  // Hardware bits route to the plain implementation.
  CHECK(dlambda_numeric_bits(3, 2, 5, z0, 1e-6, 53) == dlambda_numeric(3, 2, 5, z0, 1e-6));
  CHECK(kind_of([&] { dlambda_numeric_bits(3, 2, 5, z0, 1e-6, 400); }) ==
        ErrorKind::UnsupportedPrecision);

  PeriodicVector v = PeriodicVector::checked(
      3, {RootPoint::at(2, 0), RootPoint::at(2, 1), RootPoint::at(26, 1), RootPoint::inf()},
      PeriodVector::of(3, {1, 1, 3, 1}));
  Matrix closed_jac = jacobian_entries_t<cdouble>(v);
  Matrix wide_jac = numeric_jacobian_bits(v, 1e-8, 166);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      double scale = std::max(1.0, std::abs(closed_jac.at(r, c)));
      CHECK(std::abs(wide_jac.at(r, c) - closed_jac.at(r, c)) <= 1e-9 * scale);
    }
}

TEST_CASE("verification runs at the requested precision tier") {
  Certificate c = construct_certificate(pv(3, {1, 1, 1, 3}));
  VerificationReport rep = verify_certificate(c, {.h = 1e-8, .precision_bits = 166});
  CHECK(rep.precision_bits == 166);
  CHECK(rep.max_rel_err <= 1e-9);
}
