#include "ratmap.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace multcert {

SpherePoint mobius_apply(const Mobius& m, const SpherePoint& z) {
  if (z.infinite) {
    if (std::abs(m.c) == 0.0) return SpherePoint::inf();
    return SpherePoint::at(m.a / m.c);
  }
  cdouble u = m.a * z.value + m.b;
  cdouble v = m.c * z.value + m.d;
  if (std::abs(v) == 0.0) return SpherePoint::inf();
  return SpherePoint::at(u / v);
}

RationalMap mobius_conjugate(const RationalMap& f, const Mobius& m) {
  double scale = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c),
                           std::abs(m.d), 1.0});
  if (std::abs(m.det()) <= 1e-14 * scale * scale)
    raise(ErrorKind::SingularMobius, "Mobius matrix is singular");

  const int n = f.n;
  // M^{-1} is projectively [[d, -b], [-c, a]]; write it as u/v.
  std::vector<cdouble> u = {-m.b, m.d};
  std::vector<cdouble> v = {m.a, -m.c};

  // Powers u^k v^{n-k} as dense lists of degree n.
  std::vector<std::vector<cdouble>> upow(std::size_t(n) + 1), vpow(std::size_t(n) + 1);
  upow[0] = vpow[0] = {cdouble(1.0)};
  for (int k = 1; k <= n; ++k) {
    upow[std::size_t(k)] = poly_mul(upow[std::size_t(k - 1)], u);
    vpow[std::size_t(k)] = poly_mul(vpow[std::size_t(k - 1)], v);
  }

  std::vector<cdouble> p1(std::size_t(n) + 1, 0.0), q1(std::size_t(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    auto term = poly_mul(upow[std::size_t(k)], vpow[std::size_t(n - k)]);
    term.resize(std::size_t(n) + 1, 0.0);
    poly_acc(p1, f.num[std::size_t(k)], term);
    poly_acc(q1, f.den[std::size_t(k)], term);
  }

  std::vector<cdouble> num(std::size_t(n) + 1, 0.0), den(std::size_t(n) + 1, 0.0);
  poly_acc(num, m.a, p1);
  poly_acc(num, m.b, q1);
  poly_acc(den, m.c, p1);
  poly_acc(den, m.d, q1);
  return make_map<cdouble>(n, std::move(num), std::move(den));
}

namespace {

// Roots of an exact-degree polynomial (nonzero leading coefficient) via the
// companion matrix, polished by a few Newton steps on the original list.
std::vector<cdouble> poly_roots(const std::vector<cdouble>& c) {
  const int d = int(c.size()) - 1;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    a(i, d - 1) = -c[std::size_t(i)] / c[std::size_t(d)];
    if (i > 0) a(i, i - 1) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a);
  std::vector<cdouble> roots(std::size_t(d), 0.0);
  for (int i = 0; i < d; ++i) {
    cdouble z = solver.eigenvalues()(i);
    for (int step = 0; step < 3; ++step) {
      cdouble dv = polyval_deriv(c, z);
      if (std::abs(dv) == 0.0) break;
      z -= polyval(c, z) / dv;
    }
    roots[std::size_t(i)] = z;
  }
  return roots;
}

}  // namespace

std::vector<SpherePoint> fixed_points(const RationalMap& f) {
  const int n = f.n;
  // Finite fixed points are the roots of r(z) = z q(z) - p(z).
  std::vector<cdouble> r(std::size_t(n) + 2, 0.0);
  for (int k = 0; k <= n; ++k) r[std::size_t(k + 1)] = f.den[std::size_t(k)];
  for (int k = 0; k <= n; ++k) r[std::size_t(k)] -= f.num[std::size_t(k)];

  const bool inf_fixed = std::abs(f.den[std::size_t(n)]) == 0.0;
  while (r.size() > 1 && std::abs(r.back()) == 0.0) r.pop_back();
  const int expect = inf_fixed ? n : n + 1;
  if (int(r.size()) - 1 != expect)
    raise(ErrorKind::DegenerateFixedPoints,
          "fixed point at infinity is not simple");

  std::vector<SpherePoint> fixed;
  for (const cdouble& z : poly_roots(r)) fixed.push_back(SpherePoint::at(z));
  if (inf_fixed) fixed.push_back(SpherePoint::inf());

  for (std::size_t i = 0; i < fixed.size(); ++i)
    for (std::size_t j = i + 1; j < fixed.size(); ++j)
      if (chordal(fixed[i], fixed[j]) < 1e-8)
        raise(ErrorKind::DegenerateFixedPoints,
              "fixed points collide within tolerance");
  return fixed;
}

cdouble index_sum(const RationalMap& f) {
  cdouble sum = 0.0;
  for (const SpherePoint& z : fixed_points(f)) {
    cdouble lambda = chart_derivative(f, z, invert_chart(z));
    if (std::abs(lambda - 1.0) <= 1e-8)
      raise(ErrorKind::MultiplierOne,
            "fixed point with multiplier 1: index sum undefined");
    sum += 1.0 / (1.0 - lambda);
  }
  return sum;
}

}  // namespace multcert
