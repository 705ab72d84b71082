#include "multcert.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "commands.hpp"
#include "errors.hpp"
#include "report.hpp"

using namespace multcert;

struct mcert_cert {
  Certificate c;
};

namespace {

thread_local std::string t_last_message = "no error";
thread_local std::string t_last_json = "{\"error\":\"None\",\"message\":\"no error\"}";

mcert_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage: return MCERT_USAGE;
    case ErrorKind::WrongLength: return MCERT_WRONG_LENGTH;
    case ErrorKind::Overflow: return MCERT_OVERFLOW;
    case ErrorKind::IndexExcluded: return MCERT_INDEX_EXCLUDED;
    case ErrorKind::IndexOutOfRange: return MCERT_INDEX_OUT_OF_RANGE;
    case ErrorKind::InfinityPoint: return MCERT_INFINITY_POINT;
    case ErrorKind::ResultantZero: return MCERT_RESULTANT_ZERO;
    case ErrorKind::SingularMobius: return MCERT_SINGULAR_MOBIUS;
    case ErrorKind::NotACycle: return MCERT_NOT_A_CYCLE;
    case ErrorKind::MultiplierOne: return MCERT_MULTIPLIER_ONE;
    case ErrorKind::DegenerateFixedPoints: return MCERT_DEGENERATE_FIXED_POINTS;
    case ErrorKind::NoConvergence: return MCERT_NO_CONVERGENCE;
    case ErrorKind::DerivativeSingular: return MCERT_DERIVATIVE_SINGULAR;
    case ErrorKind::ConditionsNotMet: return MCERT_CONDITIONS_NOT_MET;
    case ErrorKind::Exhausted: return MCERT_EXHAUSTED;
    case ErrorKind::VerificationFailed: return MCERT_VERIFICATION_FAILED;
    case ErrorKind::Parse: return MCERT_PARSE;
    case ErrorKind::UnsupportedPrecision: return MCERT_UNSUPPORTED_PRECISION;
    case ErrorKind::Internal: return MCERT_INTERNAL;
  }
  return MCERT_INTERNAL;
}

mcert_status fail(const Error& e) {
  t_last_message = e.what();
  t_last_json = error_json(e);
  return status_of(e.kind());
}

mcert_status fail_plain(mcert_status s, const char* name, const std::string& msg) {
  t_last_message = msg;
  JsonWriter w;
  w.begin_obj();
  w.key("error").value(name);
  w.key("message").value(msg);
  w.end_obj();
  t_last_json = w.take();
  return s;
}

mcert_status usage(const std::string& msg) {
  return fail(Error(ErrorKind::Usage, msg));
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

SearchOptions convert(const mcert_options* opts) {
  SearchOptions o;
  if (opts) {
    o.tol = opts->tol;
    o.h = opts->h;
    o.max_backtrack = opts->max_backtrack;
    o.precision_bits = opts->precision_bits;
  }
  return o;
}

template <class F>
mcert_status guarded(F&& body) {
  try {
    body();
    return MCERT_OK;
  } catch (const Error& e) {
    return fail(e);
  } catch (const std::bad_alloc&) {
    return fail_plain(MCERT_INTERNAL, "Internal", "out of memory");
  } catch (const std::exception& e) {
    return fail_plain(MCERT_INTERNAL, "Internal", e.what());
  } catch (...) {
    return fail_plain(MCERT_INTERNAL, "Internal", "unknown failure");
  }
}

PeriodVector make_periods(int64_t n, const int64_t* periods, int64_t len) {
  if (n < 2 || n > 1 << 20) raise(ErrorKind::Usage, "degree out of range");
  if (!periods || len < 0) raise(ErrorKind::Usage, "period list required");
  return PeriodVector::of(int(n), std::vector<i64>(periods, periods + len));
}

}  // namespace

extern "C" {

void mcert_options_init(mcert_options* opts) {
  if (!opts) return;
  SearchOptions d;
  opts->tol = d.tol;
  opts->h = d.h;
  opts->max_backtrack = d.max_backtrack;
  opts->precision_bits = d.precision_bits;
}

const char* mcert_version(void) { return "0.1.0"; }

const char* mcert_status_name(mcert_status s) {
  switch (s) {
    case MCERT_OK: return "Ok";
    case MCERT_USAGE: return "Usage";
    case MCERT_WRONG_LENGTH: return "WrongLength";
    case MCERT_OVERFLOW: return "Overflow";
    case MCERT_INDEX_EXCLUDED: return "IndexExcluded";
    case MCERT_INDEX_OUT_OF_RANGE: return "IndexOutOfRange";
    case MCERT_INFINITY_POINT: return "InfinityPoint";
    case MCERT_RESULTANT_ZERO: return "ResultantZero";
    case MCERT_SINGULAR_MOBIUS: return "SingularMobius";
    case MCERT_NOT_A_CYCLE: return "NotACycle";
    case MCERT_MULTIPLIER_ONE: return "MultiplierOne";
    case MCERT_DEGENERATE_FIXED_POINTS: return "DegenerateFixedPoints";
    case MCERT_NO_CONVERGENCE: return "NoConvergence";
    case MCERT_DERIVATIVE_SINGULAR: return "DerivativeSingular";
    case MCERT_CONDITIONS_NOT_MET: return "ConditionsNotMet";
    case MCERT_EXHAUSTED: return "Exhausted";
    case MCERT_VERIFICATION_FAILED: return "VerificationFailed";
    case MCERT_PARSE: return "Parse";
    case MCERT_UNSUPPORTED_PRECISION: return "UnsupportedPrecision";
    case MCERT_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* mcert_last_error(void) { return t_last_message.c_str(); }

const char* mcert_last_error_json(void) { return t_last_json.c_str(); }

void mcert_string_free(char* s) { std::free(s); }

mcert_status mcert_count_json(int64_t n, int64_t m, char** out) {
  if (!out) return usage("output pointer required");
  *out = nullptr;
  return guarded([&] { *out = dup_string(count_json(n, m)); });
}

mcert_status mcert_enumerate_json(int64_t n, int64_t m, char** out) {
  if (!out) return usage("output pointer required");
  *out = nullptr;
  return guarded([&] { *out = dup_string(enumerate_json(n, m)); });
}

mcert_status mcert_derivs_json(int64_t n, int64_t m, const mcert_options* opts,
                               char** out) {
  if (!out) return usage("output pointer required");
  *out = nullptr;
  return guarded([&] { *out = dup_string(derivs_json(n, m, convert(opts))); });
}

mcert_status mcert_cert_construct(int64_t n, const int64_t* periods, int64_t len,
                                  const mcert_options* opts, mcert_cert** out) {
  if (!out) return usage("output pointer required");
  *out = nullptr;
  return guarded([&] {
    Certificate c = construct_certificate(make_periods(n, periods, len), convert(opts));
    *out = new mcert_cert{std::move(c)};
  });
}

mcert_status mcert_cert_explore(int64_t n, const int64_t* periods, int64_t len,
                                const mcert_options* opts, mcert_cert** out) {
  if (!out) return usage("output pointer required");
  *out = nullptr;
  return guarded([&] {
    Certificate c = explore_beyond_conditions(make_periods(n, periods, len), convert(opts));
    *out = new mcert_cert{std::move(c)};
  });
}

mcert_status mcert_cert_parse(const char* json_text, mcert_cert** out) {
  if (!out) return usage("output pointer required");
  *out = nullptr;
  if (!json_text) return usage("certificate text required");
  return guarded([&] {
    Certificate c = certificate_from_json(json_text);
    *out = new mcert_cert{std::move(c)};
  });
}

mcert_status mcert_cert_to_json(const mcert_cert* c, char** out) {
  if (!out) return usage("output pointer required");
  *out = nullptr;
  if (!c) return usage("certificate handle required");
  return guarded([&] { *out = dup_string(certificate_to_json(c->c)); });
}

mcert_status mcert_cert_verify(const mcert_cert* c, const mcert_options* opts,
                               char** report_json) {
  if (!report_json) return usage("output pointer required");
  *report_json = nullptr;
  if (!c) return usage("certificate handle required");
  return guarded([&] { *report_json = dup_string(verify_json(c->c, convert(opts))); });
}

int64_t mcert_cert_degree(const mcert_cert* c) { return c ? c->c.n : 0; }

int64_t mcert_cert_point_count(const mcert_cert* c) {
  return c ? int64_t(c->c.points.points.size()) : 0;
}

mcert_status mcert_cert_det(const mcert_cert* c, double* re, double* im) {
  if (!c || !re || !im) return usage("certificate handle and outputs required");
  *re = c->c.det_value.real();
  *im = c->c.det_value.imag();
  return MCERT_OK;
}

void mcert_cert_free(mcert_cert* c) { delete c; }

}  // extern "C"
