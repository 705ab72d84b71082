#pragma once

#include <string>
#include <vector>

#include "jacobian.hpp"
#include "periodic.hpp"

namespace multcert {

// ---------------------------------------------------------------------------
// Structural conditions on a tuple of period labels. Construction requires
// both; exploration only the capacity bound, which is forced by the family
// itself (there are exactly n fixed orbits: n-1 finite ones and infinity).

struct ConditionReport {
  i64 ones = 0;
  i64 twos = 0;
  i64 max_period = 0;
  bool capacity_ok = false;  // at most n period-1 labels
  bool spread_ok = false;    // some period >= 3 and no period-2 labels
  bool ok() const { return capacity_ok && spread_ok; }
};

ConditionReport check_period_conditions(const PeriodVector& periods);

// Assignment of input period labels to parameter slots. permutation[s] is the
// input position whose label lands in slot s. The last slot takes a period-1
// label when all n of them are needed (that one becomes the fixed point at
// infinity), otherwise the largest period; the second-to-last slot takes the
// largest remaining label; the rest fill in nondecreasing order.
struct SlotOrdering {
  std::vector<i64> permutation;
  std::vector<i64> slot_periods;
};

SlotOrdering order_periods(const PeriodVector& periods);

struct SearchOptions {
  double tol = 1e-4;        // closed-form vs finite-difference agreement
  double h = 1e-6;          // central difference step, in [1e-8, 1e-4]
  i64 max_backtrack = 100000;  // candidate evaluations before giving up
  int precision_bits = 0;   // 0 or <= 53 hardware, <= 166 and <= 332 software
};

struct VerificationReport {
  double tol = 0;
  double h = 0;
  int precision_bits = 0;
  double max_rel_err = 0;           // closed form vs finite differences
  double min_abs_leading_det = 0;
  std::vector<double> thresholds;   // nondegeneracy floor per slot
};

// A certified point collection: one periodic orbit representative per slot,
// all leading minors of the multiplier Jacobian at a = 0 nonzero.
struct Certificate {
  int n = 0;
  std::vector<i64> periods_input;
  std::vector<i64> permutation;  // slot -> input position
  PeriodicVector points;         // slot order
  cdouble det_value{};
  std::vector<cdouble> leading_minor_dets;  // per slot, growing blocks
  VerificationReport verification;
};

// Depth-first search over orbit representatives, slot by slot, keeping every
// leading minor above its scale-aware floor. The result is verified (closed
// form against finite differences) before it is returned. Raises
// ConditionsNotMet when the period tuple fails the structural conditions,
// Exhausted when the node budget runs out or no admissible assignment exists.
Certificate construct_certificate(const PeriodVector& periods,
                                  const SearchOptions& opts = {});

// Same search without the period >= 3 / no-twos requirement and without the
// guarantee that it succeeds. Useful for probing tuples past the supported
// range; failures surface as Exhausted with the deepest-slot report.
Certificate explore_beyond_conditions(const PeriodVector& periods,
                                      const SearchOptions& opts = {});

// Recomputes everything a stored certificate claims: structural validity,
// the permutation, every leading minor against its floor, the stored
// determinant values, and the finite-difference cross-check. First violation
// raises VerificationFailed.
VerificationReport verify_certificate(const Certificate& c,
                                      const SearchOptions& opts = {});

std::string certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const std::string& text);

// Writes the verification report as a JSON object value on an open writer.
class JsonWriter;
void write_verification_json(JsonWriter& w, const VerificationReport& rep);

// Finite-difference Jacobian at selectable working precision. Bits up to 53
// run on hardware doubles, up to 166 and 332 on software floats; anything
// above raises UnsupportedPrecision. Results are rounded back to doubles.
Matrix numeric_jacobian_bits(const PeriodicVector& v, double h, int bits);
cdouble dlambda_numeric_bits(u64 n, u64 m, i64 j, const RootPoint& z0, double h,
                             int bits);

}  // namespace multcert
