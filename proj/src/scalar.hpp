#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace multcert {

using cdouble = std::complex<double>;

// Traits for the complex scalar the numeric kernels are templated on.
// The default engine runs on std::complex<double>; software float engines
// specialize this in scalar_hp.hpp and are only pulled in by the precision
// dispatch, keeping the heavy headers out of the common build.
template <class C>
struct cx_traits;

template <>
struct cx_traits<cdouble> {
  using real = double;

  static real pi() { return std::numbers::pi_v<double>; }
  static real abs(const cdouble& z) { return std::abs(z); }
  static cdouble conj(const cdouble& z) { return std::conj(z); }
  static cdouble make(double re, double im) { return {re, im}; }
  static cdouble unit(real angle) { return {std::cos(angle), std::sin(angle)}; }
  static bool finite(const cdouble& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  }
  static double to_double(const real& x) { return x; }
  static cdouble to_cdouble(const cdouble& z) { return z; }
  // Residual tolerance for Newton refinement, a few digits above epsilon.
  static double newton_tol() { return 1e-12; }
};

template <class C>
using real_of = typename cx_traits<C>::real;

}  // namespace multcert
