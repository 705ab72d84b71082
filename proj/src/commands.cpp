#include "commands.hpp"

#include <cmath>
#include <tuple>
#include <vector>

#include "report.hpp"

namespace multcert {

namespace {

constexpr u64 kEnumerationCap = u64(1) << 24;

void check_n_m(i64 n, i64 m) {
  if (n < 2) raise(ErrorKind::Usage, "degree must be >= 2");
  if (m < 1) raise(ErrorKind::Usage, "period must be >= 1");
}

void write_point(JsonWriter& w, const RootPoint& p) {
  if (p.infinite) {
    w.value("infinity");
    return;
  }
  w.begin_obj();
  w.key("modulus").value(u64(p.modulus));
  w.key("residue").value(u64(p.residue));
  w.end_obj();
}

}  // namespace

std::string count_json(i64 n, i64 m) {
  check_n_m(n, m);
  const i64 nu = count_periodic(u64(n), u64(m));
  const i64 nu_hat = count_nonzero(u64(n), u64(m));
  JsonWriter w;
  w.begin_obj();
  w.key("command").value("count");
  w.key("n").value(n);
  w.key("m").value(m);
  w.key("nu").value(nu);
  w.key("nu_hat").value(nu_hat);
  w.key("orbits").value(nu_hat / m);
  w.end_obj();
  return w.take();
}

std::string enumerate_json(i64 n, i64 m) {
  check_n_m(n, m);
  const u64 modulus = pow_checked(u64(n), u64(m)) - 1;
  if (modulus > kEnumerationCap)
    raise(ErrorKind::Usage, "modulus exceeds the enumeration cap of 2^24");
  const std::vector<RootPoint> pts = enumerate_periodic(u64(n), u64(m));

  JsonWriter w;
  w.begin_obj();
  w.key("command").value("enumerate");
  w.key("n").value(n);
  w.key("m").value(m);
  w.key("modulus").value(modulus);
  w.key("count").value(i64(pts.size()));
  w.key("residues").begin_arr();
  for (const RootPoint& p : pts) w.value(u64(p.residue));
  w.end_arr();
  w.key("orbit_representatives").begin_arr();
  for (const RootPoint& p : pts)
    if (orbit_key(p, u64(n)) == p) w.value(u64(p.residue));
  w.end_arr();
  w.end_obj();
  return w.take();
}

std::string derivs_json(i64 n, i64 m, const SearchOptions& opts) {
  check_n_m(n, m);
  if (!(opts.h >= 1e-8 && opts.h <= 1e-4))
    raise(ErrorKind::Usage, "difference step must lie in [1e-8, 1e-4]");
  const u64 modulus = pow_checked(u64(n), u64(m)) - 1;
  if (modulus > kEnumerationCap)
    raise(ErrorKind::Usage, "modulus exceeds the enumeration cap of 2^24");

  std::vector<RootPoint> reps;
  for (const RootPoint& p : enumerate_periodic(u64(n), u64(m)))
    if (orbit_key(p, u64(n)) == p) reps.push_back(p);
  if (m == 1) reps.push_back(RootPoint::inf());

  struct Entry {
    i64 j;
    cdouble closed, numeric;
    double rel;
  };
  std::vector<std::vector<Entry>> rows(reps.size());
  double max_rel = 0;
  for (std::size_t r = 0; r < reps.size(); ++r) {
    for (int s = 0; s < family_slot_count(int(n)); ++s) {
      const i64 j = family_slot_to_j(int(n), s);
      cdouble closed = reps[r].infinite
                           ? dlambda_infinity(u64(n), j)
                           : dlambda_closed(u64(n), u64(m), j, reps[r]);
      cdouble numeric =
          dlambda_numeric_bits(u64(n), u64(m), j, reps[r], opts.h, opts.precision_bits);
      double rel = std::abs(closed - numeric) / std::max(1.0, std::abs(closed));
      max_rel = std::max(max_rel, rel);
      rows[r].push_back({j, closed, numeric, rel});
    }
  }

  JsonWriter w;
  w.begin_obj();
  w.key("command").value("derivs");
  w.key("n").value(n);
  w.key("m").value(m);
  w.key("h").value(opts.h);
  w.key("precision_bits").value(i64(opts.precision_bits));
  w.key("max_rel_err").value(max_rel);
  w.key("rows").begin_arr();
  for (std::size_t r = 0; r < reps.size(); ++r) {
    w.begin_obj();
    w.key("point");
    write_point(w, reps[r]);
    w.key("period").value(m);
    w.key("entries").begin_arr();
    for (const Entry& e : rows[r]) {
      w.begin_obj();
      w.key("j").value(e.j);
      w.key("closed").value_complex(e.closed);
      w.key("numeric").value_complex(e.numeric);
      w.key("rel_err").value(e.rel);
      w.end_obj();
    }
    w.end_arr();
    w.end_obj();
  }
  w.end_arr();
  w.end_obj();
  return w.take();
}

std::string verify_json(const Certificate& c, const SearchOptions& opts) {
  VerificationReport rep = verify_certificate(c, opts);
  JsonWriter w;
  w.begin_obj();
  w.key("command").value("verify");
  w.key("ok").value(true);
  w.key("verification");
  write_verification_json(w, rep);
  w.end_obj();
  return w.take();
}

std::string error_json(const Error& e) {
  JsonWriter w;
  w.begin_obj();
  w.key("error").value(error_kind_name(e.kind()));
  w.key("message").value(e.what());
  if (!e.detail_json().empty()) w.key("detail").raw_value(e.detail_json());
  w.end_obj();
  return w.take();
}

}  // namespace multcert
