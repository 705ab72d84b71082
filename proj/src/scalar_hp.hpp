#pragma once

// Software high-precision scalars. Included only by the precision dispatch
// and the tests that exercise it; everything else sees scalar.hpp alone.

#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <limits>

#include "scalar.hpp"

namespace multcert {

namespace detail {

template <class C>
struct hp_cx_traits {
  using real = typename C::value_type;

  static real pi() {
    static const real value = real(4) * atan(real(1));
    return value;
  }
  static real abs(const C& z) { return ::boost::multiprecision::abs(z); }
  static C conj(const C& z) { return ::boost::multiprecision::conj(z); }
  static C make(double re, double im) { return C(real(re), real(im)); }
  static C unit(const real& angle) { return C(cos(angle), sin(angle)); }
  static bool finite(const C&) { return true; }
  static double to_double(const real& x) { return x.template convert_to<double>(); }
  static cdouble to_cdouble(const C& z) {
    return {to_double(z.real()), to_double(z.imag())};
  }
  static double newton_tol() {
    return std::pow(10.0, 10 - int(std::numeric_limits<real>::digits10));
  }
};

}  // namespace detail

using hp_complex_50 = boost::multiprecision::cpp_complex_50;
using hp_complex_100 = boost::multiprecision::cpp_complex_100;

template <>
struct cx_traits<hp_complex_50> : detail::hp_cx_traits<hp_complex_50> {};
template <>
struct cx_traits<hp_complex_100> : detail::hp_cx_traits<hp_complex_100> {};

}  // namespace multcert
