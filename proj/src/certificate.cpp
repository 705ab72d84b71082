#include "certificate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "json.hpp"
#include "report.hpp"
#include "scalar_hp.hpp"

namespace multcert {

ConditionReport check_period_conditions(const PeriodVector& periods) {
  ConditionReport r;
  for (i64 v : periods.m) {
    if (v == 1) ++r.ones;
    if (v == 2) ++r.twos;
    r.max_period = std::max(r.max_period, v);
  }
  r.capacity_ok = r.ones <= periods.n;
  r.spread_ok = r.max_period > 2 && r.twos == 0;
  return r;
}

namespace {

// Ordering core, shared by the strict and the exploratory entry points.
// Assumes length and n >= 3 are already checked.
SlotOrdering order_impl(const PeriodVector& periods) {
  const int k = family_slot_count(periods.n);
  std::vector<i64> idx(std::size_t(k), 0);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](i64 a, i64 b) {
    return periods.m[std::size_t(a)] < periods.m[std::size_t(b)];
  });

  i64 ones = 0;
  for (i64 v : periods.m)
    if (v == 1) ++ones;

  std::vector<i64> perm(std::size_t(k), -1);
  std::vector<i64> rest;
  if (ones == periods.n) {
    // All n fixed orbits are needed, so the last slot must take the one that
    // becomes infinity; the smallest input position keeps this canonical.
    perm[std::size_t(k - 1)] = idx.front();
    rest.assign(idx.begin() + 1, idx.end());
  } else {
    perm[std::size_t(k - 1)] = idx.back();
    rest.assign(idx.begin(), idx.end() - 1);
  }
  perm[std::size_t(k - 2)] = rest.back();
  rest.pop_back();
  for (int s = 0; s + 2 < k; ++s) perm[std::size_t(s)] = rest[std::size_t(s)];

  SlotOrdering out;
  out.slot_periods.resize(std::size_t(k));
  for (int s = 0; s < k; ++s)
    out.slot_periods[std::size_t(s)] = periods.m[std::size_t(perm[std::size_t(s)])];
  out.permutation = std::move(perm);
  return out;
}

}  // namespace

SlotOrdering order_periods(const PeriodVector& periods) {
  if (periods.n < 3)
    raise(ErrorKind::ConditionsNotMet, "slot ordering needs degree n >= 3");
  ConditionReport r = check_period_conditions(periods);
  if (!r.capacity_ok)
    raise(ErrorKind::ConditionsNotMet,
          "more than n period-1 labels: the family has only n fixed orbits");
  if (!r.spread_ok)
    raise(ErrorKind::ConditionsNotMet,
          "period tuple needs an entry >= 3 and no entry equal to 2");
  return order_impl(periods);
}

// ---------------------------------------------------------------------------
// Working precision dispatch.

namespace {

void check_precision_bits(int bits) {
  if (bits < 0) raise(ErrorKind::Usage, "precision bits must be >= 0");
  if (bits > 332)
    raise(ErrorKind::UnsupportedPrecision,
          "precision above 332 bits is not supported");
}

template <class C>
Matrix demote(const MatrixT<C>& m) {
  Matrix out(m.rows, m.cols);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      out.at(r, c) = cx_traits<C>::to_cdouble(m.at(r, c));
  return out;
}

void validate_options(const SearchOptions& opts) {
  if (!(opts.tol > 0)) raise(ErrorKind::Usage, "tolerance must be positive");
  if (!(opts.h >= 1e-8 && opts.h <= 1e-4))
    raise(ErrorKind::Usage, "difference step must lie in [1e-8, 1e-4]");
  if (opts.max_backtrack < 1)
    raise(ErrorKind::Usage, "node budget must be >= 1");
  check_precision_bits(opts.precision_bits);
}

}  // namespace

Matrix numeric_jacobian_bits(const PeriodicVector& v, double h, int bits) {
  check_precision_bits(bits);
  if (bits <= 53) return numeric_jacobian_t<cdouble>(v, h);
  if (bits <= 166) return demote(numeric_jacobian_t<hp_complex_50>(v, h));
  return demote(numeric_jacobian_t<hp_complex_100>(v, h));
}

cdouble dlambda_numeric_bits(u64 n, u64 m, i64 j, const RootPoint& z0, double h,
                             int bits) {
  check_precision_bits(bits);
  if (bits <= 53) return dlambda_numeric(n, m, j, z0, h);
  if (bits <= 166)
    return cx_traits<hp_complex_50>::to_cdouble(
        dlambda_numeric_t<hp_complex_50>(n, m, j, z0, h));
  return cx_traits<hp_complex_100>::to_cdouble(
      dlambda_numeric_t<hp_complex_100>(n, m, j, z0, h));
}

// ---------------------------------------------------------------------------
// Verification core. Recomputes the Jacobian and its leading minors from the
// points alone; optionally checks the recomputation against stored values.

namespace {

struct CoreResult {
  VerificationReport rep;
  std::vector<cdouble> minors;
};

CoreResult verify_core(const Certificate& cert, const SearchOptions& opts,
                       bool check_stored) {
  validate_options(opts);
  const int n = cert.n;
  const int k = family_slot_count(n);

  PeriodicVector v = PeriodicVector::checked(cert.points.n, cert.points.points,
                                             cert.points.periods);
  if (v.n != n)
    raise(ErrorKind::VerificationFailed,
          "certificate degree disagrees with its point collection");
  if (int(cert.periods_input.size()) != k || int(cert.permutation.size()) != k)
    raise(ErrorKind::VerificationFailed,
          "input periods and permutation must have length 2n-2");
  std::vector<bool> seen(std::size_t(k), false);
  for (int s = 0; s < k; ++s) {
    i64 p = cert.permutation[std::size_t(s)];
    if (p < 0 || p >= k || seen[std::size_t(p)])
      raise(ErrorKind::VerificationFailed, "slot permutation is not a permutation");
    seen[std::size_t(p)] = true;
    if (cert.periods_input[std::size_t(p)] != v.periods.m[std::size_t(s)])
      raise(ErrorKind::VerificationFailed,
            "permuted input periods disagree with the slot periods");
  }

  Matrix jac = jacobian_entries_t<cdouble>(v);
  CoreResult out;
  out.minors.resize(std::size_t(k));
  out.rep.thresholds.resize(std::size_t(k));
  double min_abs = 0;
  for (int s = 0; s < k; ++s) {
    Matrix block = jac.top_left(s + 1);
    double floor = hadamard_threshold(block);
    cdouble d = lu_det(std::move(block));
    out.minors[std::size_t(s)] = d;
    out.rep.thresholds[std::size_t(s)] = floor;
    double mag = std::abs(d);
    min_abs = s == 0 ? mag : std::min(min_abs, mag);
    if (!(mag > floor))
      raise(ErrorKind::VerificationFailed,
            "a leading minor sits below its nondegeneracy floor");
  }

  if (check_stored) {
    auto close = [](cdouble a, cdouble b) {
      return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
    };
    if (int(cert.leading_minor_dets.size()) != k)
      raise(ErrorKind::VerificationFailed, "stored minor list has wrong length");
    if (!close(cert.det_value, out.minors[std::size_t(k - 1)]))
      raise(ErrorKind::VerificationFailed,
            "stored determinant disagrees with recomputation");
    for (int s = 0; s < k; ++s)
      if (!close(cert.leading_minor_dets[std::size_t(s)], out.minors[std::size_t(s)]))
        raise(ErrorKind::VerificationFailed,
              "a stored leading minor disagrees with recomputation");
  }

  Matrix num = numeric_jacobian_bits(v, opts.h, opts.precision_bits);
  double max_rel = 0;
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      double rel = std::abs(jac.at(r, c) - num.at(r, c)) /
                   std::max(1.0, std::abs(jac.at(r, c)));
      max_rel = std::max(max_rel, rel);
    }
  if (!(max_rel <= opts.tol))
    raise(ErrorKind::VerificationFailed,
          "closed-form and finite-difference derivatives disagree");

  out.rep.tol = opts.tol;
  out.rep.h = opts.h;
  out.rep.precision_bits = opts.precision_bits;
  out.rep.max_rel_err = max_rel;
  out.rep.min_abs_leading_det = min_abs;
  return out;
}

}  // namespace

VerificationReport verify_certificate(const Certificate& c,
                                      const SearchOptions& opts) {
  return verify_core(c, opts, true).rep;
}

// ---------------------------------------------------------------------------
// Slot-by-slot search.

namespace {

struct CandidateEval {
  RootPoint p;
  cdouble det;
  double floor;
};

std::string exhausted_detail(int n, int slot, i64 period,
                             const std::vector<CandidateEval>& evals, i64 nodes) {
  JsonWriter w;
  w.begin_obj();
  w.key("deepest_slot").value(i64(slot));
  w.key("slot_j").value(family_slot_to_j(n, slot));
  w.key("slot_period").value(period);
  w.key("nodes").value(nodes);
  w.key("candidate_dets").begin_arr();
  for (const CandidateEval& e : evals) {
    w.begin_obj();
    if (e.p.infinite) {
      w.key("point").value("infinity");
    } else {
      w.key("modulus").value(u64(e.p.modulus));
      w.key("residue").value(u64(e.p.residue));
    }
    w.key("abs_det").value(std::abs(e.det));
    w.key("threshold").value(e.floor);
    w.end_obj();
  }
  w.end_arr();
  w.end_obj();
  return w.take();
}

struct Searcher {
  int n = 0;
  std::vector<i64> slot_periods;
  i64 budget = 0;
  bool strict_degree = false;

  int k = 0;
  Matrix jac;
  std::vector<RootPoint> placed;
  std::set<RootPoint> used;
  std::map<i64, std::vector<RootPoint>> pools;
  i64 nodes = 0;
  int deepest = -1;
  i64 deepest_period = 0;
  std::vector<CandidateEval> deepest_evals;

  Searcher(int n_, std::vector<i64> periods, i64 budget_, bool strict)
      : n(n_),
        slot_periods(std::move(periods)),
        budget(budget_),
        strict_degree(strict),
        k(family_slot_count(n_)),
        jac(family_slot_count(n_), family_slot_count(n_)),
        placed(std::size_t(family_slot_count(n_))) {}

  // Existence of an admissible candidate at each slot rests on the entry
  // polynomials having fewer roots than there are points to try. The bound
  // holds for every tuple the strict path admits; the exploratory path keeps
  // going without it and relies on the search outcome alone.
  void check_degree_bounds() const {
    for (int s = 0; s < k; ++s) {
      const i64 ms = slot_periods[std::size_t(s)];
      if (s == k - 1 && ms == 1) continue;  // infinity row, no polynomial
      const i64 avail = count_nonzero(u64(n), u64(ms));
      i64 dmax = 0;
      for (int c = 0; c <= s; ++c)
        dmax = std::max(dmax, deg_P(u64(n), family_slot_to_j(n, c), u64(ms)));
      if (dmax >= avail && strict_degree)
        raise(ErrorKind::Internal,
              "entry degree bound failed for an admitted period tuple");
    }
  }

  const std::vector<RootPoint>& pool(i64 m) {
    auto it = pools.find(m);
    if (it != pools.end()) return it->second;
    std::vector<RootPoint> reps;
    for (const RootPoint& p : enumerate_periodic(u64(n), u64(m)))
      if (orbit_key(p, u64(n)) == p) reps.push_back(p);
    return pools.emplace(m, std::move(reps)).first->second;
  }

  void fill_row(int s, const RootPoint& p) {
    for (int c = 0; c < k; ++c) {
      i64 j = family_slot_to_j(n, c);
      if (p.infinite)
        jac.at(s, c) = j == 2 * i64(n) - 1 ? cdouble(-1) : cdouble(0);
      else
        jac.at(s, c) = dlambda_closed(u64(n), u64(slot_periods[std::size_t(s)]), j, p);
    }
  }

  [[noreturn]] void raise_exhausted(const std::string& msg) const {
    throw Error(ErrorKind::Exhausted, msg,
                exhausted_detail(n, deepest, deepest_period, deepest_evals, nodes));
  }

  void record_depth(int s, const std::vector<CandidateEval>& evals) {
    if (s > deepest) {
      deepest = s;
      deepest_period = slot_periods[std::size_t(s)];
      deepest_evals = evals;
    }
  }

  bool dfs(int s) {
    if (s == k) return true;
    const i64 ms = slot_periods[std::size_t(s)];

    std::vector<RootPoint> cands;
    if (s == k - 1 && ms == 1) {
      cands.push_back(RootPoint::inf());
    } else {
      for (const RootPoint& p : pool(ms))
        if (!used.count(p)) cands.push_back(p);
    }

    std::vector<CandidateEval> evals;
    evals.reserve(cands.size());
    for (const RootPoint& p : cands) {
      if (++nodes > budget) {
        record_depth(s, evals);
        raise_exhausted("node budget exhausted before an assignment was found");
      }
      fill_row(s, p);
      Matrix block = jac.top_left(s + 1);
      double floor = hadamard_threshold(block);
      cdouble d = lu_det(std::move(block));
      evals.push_back({p, d, floor});
    }
    record_depth(s, evals);

    std::sort(evals.begin(), evals.end(),
              [](const CandidateEval& a, const CandidateEval& b) {
                double ma = std::abs(a.det), mb = std::abs(b.det);
                if (ma != mb) return ma > mb;
                return a.p.residue < b.p.residue;
              });

    for (const CandidateEval& e : evals) {
      if (!(std::abs(e.det) > e.floor)) continue;
      fill_row(s, e.p);  // row still holds the last candidate evaluated
      placed[std::size_t(s)] = e.p;
      used.insert(e.p);
      if (dfs(s + 1)) return true;
      used.erase(e.p);
    }
    return false;
  }
};

Certificate run_search(const PeriodVector& periods, const SlotOrdering& ord,
                       const SearchOptions& opts, bool strict_degree) {
  validate_options(opts);
  Searcher se(periods.n, ord.slot_periods, opts.max_backtrack, strict_degree);
  se.check_degree_bounds();
  if (!se.dfs(0))
    se.raise_exhausted("search exhausted without an admissible assignment");

  Certificate cert;
  cert.n = periods.n;
  cert.periods_input = periods.m;
  cert.permutation = ord.permutation;
  cert.points = PeriodicVector::checked(periods.n, se.placed,
                                        PeriodVector::of(periods.n, ord.slot_periods));
  CoreResult core = verify_core(cert, opts, false);
  cert.det_value = core.minors.back();
  cert.leading_minor_dets = std::move(core.minors);
  cert.verification = core.rep;
  return cert;
}

}  // namespace

Certificate construct_certificate(const PeriodVector& periods,
                                  const SearchOptions& opts) {
  if (periods.n < 3)
    raise(ErrorKind::ConditionsNotMet, "construction needs degree n >= 3");
  SlotOrdering ord = order_periods(periods);
  return run_search(periods, ord, opts, true);
}

Certificate explore_beyond_conditions(const PeriodVector& periods,
                                      const SearchOptions& opts) {
  if (periods.n < 3)
    raise(ErrorKind::ConditionsNotMet, "exploration needs degree n >= 3");
  ConditionReport r = check_period_conditions(periods);
  if (!r.capacity_ok)
    raise(ErrorKind::ConditionsNotMet,
          "more than n period-1 labels: the family has only n fixed orbits");
  return run_search(periods, order_impl(periods), opts, false);
}

// ---------------------------------------------------------------------------
// Serialization. Writing is deterministic (see JsonWriter); parsing accepts
// any formatting and ignores unknown keys.

namespace {
constexpr const char* kFormatTag = "multiplier-certificate/1";
}

std::string certificate_to_json(const Certificate& c) {
  JsonWriter w;
  w.begin_obj();
  w.key("format").value(kFormatTag);
  w.key("n").value(i64(c.n));
  w.key("periods_input").begin_arr();
  for (i64 v : c.periods_input) w.value(v);
  w.end_arr();
  w.key("permutation").begin_arr();
  for (i64 v : c.permutation) w.value(v);
  w.end_arr();
  w.key("slot_periods").begin_arr();
  for (i64 v : c.points.periods.m) w.value(v);
  w.end_arr();
  w.key("points").begin_arr();
  for (const RootPoint& p : c.points.points) {
    if (p.infinite) {
      w.value("infinity");
    } else {
      w.begin_obj();
      w.key("modulus").value(u64(p.modulus));
      w.key("residue").value(u64(p.residue));
      w.end_obj();
    }
  }
  w.end_arr();
  w.key("det_value").value_complex(c.det_value);
  w.key("leading_minor_dets").begin_arr();
  for (const cdouble& d : c.leading_minor_dets) w.value_complex(d);
  w.end_arr();
  w.key("verification");
  write_verification_json(w, c.verification);
  w.end_obj();
  return w.take();
}

void write_verification_json(JsonWriter& w, const VerificationReport& rep) {
  w.begin_obj();
  w.key("tol").value(rep.tol);
  w.key("h").value(rep.h);
  w.key("precision_bits").value(i64(rep.precision_bits));
  w.key("max_rel_err_closed_vs_numeric").value(rep.max_rel_err);
  w.key("min_abs_leading_det").value(rep.min_abs_leading_det);
  w.key("thresholds").begin_arr();
  for (double t : rep.thresholds) w.value(t);
  w.end_arr();
  w.end_obj();
}

namespace {

cdouble read_complex(const nlohmann::json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

}  // namespace

Certificate certificate_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    raise(ErrorKind::Parse, std::string("invalid json: ") + e.what());
  }
  try {
    if (!doc.is_object())
      raise(ErrorKind::Parse, "certificate must be a json object");
    if (doc.value("format", std::string()) != kFormatTag)
      raise(ErrorKind::Parse, "unrecognized certificate format tag");

    Certificate c;
    c.n = doc.at("n").get<int>();
    c.periods_input = doc.at("periods_input").get<std::vector<i64>>();
    c.permutation = doc.at("permutation").get<std::vector<i64>>();
    std::vector<i64> slot_periods = doc.at("slot_periods").get<std::vector<i64>>();

    std::vector<RootPoint> pts;
    for (const nlohmann::json& el : doc.at("points")) {
      if (el.is_string()) {
        if (el.get<std::string>() != "infinity")
          raise(ErrorKind::Parse, "unrecognized point tag");
        pts.push_back(RootPoint::inf());
      } else {
        pts.push_back(RootPoint::at(el.at("modulus").get<u64>(),
                                    el.at("residue").get<u64>()));
      }
    }
    c.points = PeriodicVector::checked(c.n, std::move(pts),
                                       PeriodVector::of(c.n, std::move(slot_periods)));

    c.det_value = read_complex(doc.at("det_value"));
    for (const nlohmann::json& el : doc.at("leading_minor_dets"))
      c.leading_minor_dets.push_back(read_complex(el));

    const nlohmann::json& rep = doc.at("verification");
    c.verification.tol = rep.at("tol").get<double>();
    c.verification.h = rep.at("h").get<double>();
    c.verification.precision_bits = rep.at("precision_bits").get<int>();
    c.verification.max_rel_err = rep.at("max_rel_err_closed_vs_numeric").get<double>();
    c.verification.min_abs_leading_det = rep.at("min_abs_leading_det").get<double>();
    c.verification.thresholds = rep.at("thresholds").get<std::vector<double>>();
    return c;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    raise(ErrorKind::Parse, std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace multcert
