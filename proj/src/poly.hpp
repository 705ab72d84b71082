#pragma once

#include <cstddef>
#include <vector>

namespace multcert {

// Dense univariate polynomials as ascending coefficient vectors.
// A vector of size d+1 represents c[0] + c[1] z + ... + c[d] z^d.

template <class C>
C polyval(const std::vector<C>& c, const C& z) {
  C acc(0);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

template <class C>
C polyval_deriv(const std::vector<C>& c, const C& z) {
  C acc(0);
  for (std::size_t i = c.size(); i-- > 1;) acc = acc * z + C(double(i)) * c[i];
  return acc;
}

// Coefficients of z^d * p(1/z) for a formal degree d = c.size()-1.
template <class C>
std::vector<C> poly_reversed(const std::vector<C>& c) {
  return std::vector<C>(c.rbegin(), c.rend());
}

template <class C>
std::vector<C> poly_mul(const std::vector<C>& a, const std::vector<C>& b) {
  std::vector<C> out(a.size() + b.size() - 1, C(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// a += s * b, extending a as needed.
template <class C>
void poly_acc(std::vector<C>& a, const C& s, const std::vector<C>& b) {
  if (a.size() < b.size()) a.resize(b.size(), C(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
}

}  // namespace multcert
