// Copyright 2026 The slitdetect Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLITDETECT_FAMILY4_HPP
#define SLITDETECT_FAMILY4_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "slitdetect/errors.hpp"
#include "slitdetect/linalg.hpp"
#include "slitdetect/space.hpp"

namespace slitdetect {

/// Free parameters of the four-property family at dim(H_I) = 10.
/// The x side (a2, a3, b4, b5, l5) fixes P and M, the y side fixes Q and N.
struct Family4Params {
  double p = 11.0 / 72.0;
  double m = 67.0 / 456.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  Complex a2{1.0}, a3{1.0}, b4{1.0}, b5{1.0}, l5{1.0};
  Complex alpha2{1.0}, alpha3{1.0}, beta4{1.0}, beta5{1.0}, lambda5{1.0};
  CVector seed_a5{1.0}, seed_c5{1.0}, seed_e4{1.0}, seed_e5{1.0};
  CVector seed_delta5{1.0}, seed_eta5{1.0}, seed_theta4{1.0}, seed_theta5{1.0};

  /// All coefficients 1, zero phases, p = 11/72, m = 67/456.
  static Family4Params particular_choice() { return {}; }

  friend bool operator==(const Family4Params&, const Family4Params&) = default;
};

/// Derived constants of one side. On the y side c2, c3, d4, d5, e4, e5 stand for
/// alpha2, alpha3, beta4, beta5, lambda4, lambda5; on the x side for a2, a3, b4,
/// b5, l4, l5 (and Gamma, Lambda, ... for C, A, ...).
struct SideCoefficients {
  Complex c2, c3, d4, d5, e4, e5;
  double norm2 = 0.0;  // 1 + |c2|^2 + |c3|^2
  double gamma = 0.0, lambda2 = 0.0, lambda3 = 0.0, lambda = 0.0;
  double delta = 0.0, sigma2 = 0.0, sigma3 = 0.0, sigma = 0.0;
};

struct Family4Coefficients {
  SideCoefficients x, y;
  Complex u, z;
  double q = 0.0, n = 0.0;
};

struct SolutionBundle4 {
  ProductSpace space;
  CMatrix E, G, L, T, Y, W;
  CMatrix G_I, L_I;
  CVector psi;
  Family4Params params;
  Family4Coefficients coefficients;
};

namespace family4 {

namespace detail {

inline double sq(Complex z) { return std::norm(z); }

inline SideCoefficients side(Complex c2, Complex c3, Complex d4, Complex d5, Complex e5,
                             const char* name) {
  for (Complex z : {c2, c3, d4, d5, e5})
    if (!is_finite(z)) throw ParamRangeError("non-finite coefficient");
  if (d4 == Complex{})
    throw DivisionByZero(std::string(name) + "4 must be nonzero");
  SideCoefficients s;
  s.c2 = c2, s.c3 = c3, s.d4 = d4, s.d5 = d5, s.e5 = e5;
  s.norm2 = 1.0 + sq(c2) + sq(c3);
  s.gamma = (1.0 + sq(c3)) + (sq(d4) + sq(d5)) * s.norm2;
  s.lambda2 = sq(c2) / s.gamma;
  s.lambda3 = (1.0 + sq(c3)) / s.gamma;
  s.lambda = s.lambda2 + s.lambda3;
  s.e4 = c2 * std::conj(c3) / (std::conj(d4) * s.norm2) - e5 * std::conj(d5) / std::conj(d4);
  s.delta = (1.0 + sq(c2)) + (sq(s.e4) + sq(e5)) * s.norm2;
  s.sigma2 = (1.0 + sq(c2)) / s.delta;
  s.sigma3 = sq(c3) / s.delta;
  s.sigma = s.sigma2 + s.sigma3;
  return s;
}

inline CMatrix hermitian_from_upper(CMatrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
  return m;
}

inline CMatrix outer_block(Complex scale, const SideCoefficients& x,
                           const SideCoefficients& y) {
  const CVector c{1.0, -std::conj(x.c2), -std::conj(x.c3), 0.0, 0.0};
  const CVector d{1.0, -y.c2, -y.c3, 0.0, 0.0};
  return scale * CMatrix::outer(c, d);
}

/// Scale so that the fifth coefficient is 1 whenever it is nonzero.
inline CVector unit_fifth(CVector v) {
  return v[4] == Complex{} ? v : (1.0 / v[4]) * v;
}

}  // namespace detail

/// Diagonal block of G_I (P on the x side with p, Q on the y side with q).
inline CMatrix g_block(double q, const SideCoefficients& s) {
  const double t = q - 1.0 / s.gamma;
  const Complex c2 = s.c2, c3 = s.c3, d4 = s.d4, d5 = s.d5;
  CMatrix Q(5, 5);
  Q(0, 0) = q;
  Q(0, 1) = -c2 * t;
  Q(0, 2) = -c3 * q;
  Q(0, 3) = -d4 * c2 / s.gamma;
  Q(0, 4) = -d5 * c2 / s.gamma;
  Q(1, 1) = s.lambda3 + detail::sq(c2) * t;
  Q(1, 2) = c3 * std::conj(c2) * t;
  Q(1, 3) = -d4 * s.lambda3;
  Q(1, 4) = -d5 * s.lambda3;
  Q(2, 2) = detail::sq(c3) * q;
  Q(2, 3) = std::conj(c3) * d4 * c2 / s.gamma;
  Q(2, 4) = std::conj(c3) * d5 * c2 / s.gamma;
  Q(3, 3) = detail::sq(d4) * s.lambda;
  Q(3, 4) = std::conj(d4) * d5 * s.lambda;
  Q(4, 4) = detail::sq(d5) * s.lambda;
  return detail::hermitian_from_upper(std::move(Q));
}

/// Diagonal block of L_I (M on the x side with m, N on the y side with n).
inline CMatrix l_block(double n, const SideCoefficients& s) {
  const double tg = n - 1.0 / s.gamma, td = n - 1.0 / s.delta;
  const Complex c2 = s.c2, c3 = s.c3, d4 = s.d4, d5 = s.d5, e4 = s.e4, e5 = s.e5;
  CMatrix N(5, 5);
  N(0, 0) = n;
  N(0, 1) = -c2 * tg;
  N(0, 2) = -c3 * td;
  N(0, 3) = -d4 * c2 / s.gamma - e4 * c3 / s.delta;
  N(0, 4) = -d5 * c2 / s.gamma - e5 * c3 / s.delta;
  N(1, 1) = s.lambda3 + detail::sq(c2) * tg;
  N(1, 2) = c3 * std::conj(c2) * (n - 1.0 / s.gamma - 1.0 / s.delta);
  N(1, 3) = -d4 * s.lambda3 + e4 * std::conj(c2) * c3 / s.delta;
  N(1, 4) = -d5 * s.lambda3 + e5 * std::conj(c2) * c3 / s.delta;
  N(2, 2) = s.sigma2 + detail::sq(c3) * td;
  N(2, 3) = std::conj(c3) * d4 * c2 / s.gamma - e4 * s.sigma2;
  N(2, 4) = std::conj(c3) * d5 * c2 / s.gamma - e5 * s.sigma2;
  N(3, 3) = detail::sq(d4) * s.lambda + detail::sq(e4) * s.sigma;
  N(3, 4) = std::conj(d4) * d5 * s.lambda + std::conj(e4) * e5 * s.sigma;
  N(4, 4) = detail::sq(d5) * s.lambda + detail::sq(e5) * s.sigma;
  return detail::hermitian_from_upper(std::move(N));
}

inline std::pair<double, double> p_interval(const SideCoefficients& x) {
  return {x.lambda2 / x.norm2, (x.lambda2 + 1.0) / x.norm2};
}

inline std::pair<double, double> m_interval(const SideCoefficients& x) {
  return {(x.lambda2 + x.sigma3) / x.norm2, (x.lambda2 + x.sigma3 + 1.0) / x.norm2};
}

inline Family4Coefficients derive_coefficients(const Family4Params& prm) {
  if (!std::isfinite(prm.p) || !std::isfinite(prm.m) || !std::isfinite(prm.theta1) ||
      !std::isfinite(prm.theta2))
    throw ParamRangeError("non-finite p, m or phase");
  Family4Coefficients c;
  c.x = detail::side(prm.a2, prm.a3, prm.b4, prm.b5, prm.l5, "b");
  c.y = detail::side(prm.alpha2, prm.alpha3, prm.beta4, prm.beta5, prm.lambda5, "beta");
  const auto& x = c.x;
  const auto& y = c.y;

  const auto [plo, phi] = p_interval(x);
  if (!(prm.p > plo && prm.p < phi))
    throw ParamRangeError("p = " + std::to_string(prm.p) + " outside (" +
                          std::to_string(plo) + ", " + std::to_string(phi) + ")");
  const auto [mlo, mhi] = m_interval(x);
  if (!(prm.m > mlo && prm.m < mhi))
    throw ParamRangeError("m = " + std::to_string(prm.m) + " outside (" +
                          std::to_string(mlo) + ", " + std::to_string(mhi) + ")");

  const double A2 = x.lambda2, A3 = x.lambda3, B3 = x.sigma3, nx = x.norm2;
  const double sp = prm.p - 1.0 / x.gamma;
  const double ru = (sp * (1.0 - 2.0 * A3) - sp * sp * nx +
                     A3 * (detail::sq(x.d4) + detail::sq(x.d5)) / x.gamma) / y.norm2;
  const double sm = prm.m - 1.0 / x.gamma;
  const double rz = (sm * (1.0 - 2.0 * (A3 - B3)) - sm * sm * nx -
                     ((B3 - A3) * (B3 - A3) + (B3 - A3)) / nx) / y.norm2;
  if (ru < 0.0 || rz < 0.0) throw ParamRangeError("negative radicand for u or z");
  c.u = std::polar(std::sqrt(ru), prm.theta1);
  c.z = std::polar(std::sqrt(rz), prm.theta2);
  c.q = (1.0 + y.lambda2 + A2 - prm.p * nx) / y.norm2;
  c.n = (1.0 + A2 + B3 + y.lambda2 + y.sigma3 - prm.m * nx) / y.norm2;
  return c;
}

inline std::pair<CMatrix, CMatrix> build_gl(const Family4Coefficients& c, double p,
                                            double m) {
  const CMatrix U = detail::outer_block(c.u, c.x, c.y);
  const CMatrix Z = detail::outer_block(c.z, c.x, c.y);
  return {block2x2(g_block(p, c.x), U, adjoint(U), g_block(c.q, c.y)),
          block2x2(l_block(m, c.x), Z, adjoint(Z), l_block(c.n, c.y))};
}

/// Coefficient vectors (over the five x or y rows) spanning the allowed state:
/// r for the A1 / A4 block, g for A3 / A7, k4 and k5 for A5 / A8.
struct RowVectors {
  CVector r, g, k4, k5;
};

inline RowVectors row_vectors(const SideCoefficients& s) {
  using detail::unit_fifth;
  const Complex c2 = s.c2, c3 = s.c3;
  return {unit_fifth(CVector{-c2 / s.gamma, -s.lambda3, std::conj(c3) * c2 / s.gamma,
                             std::conj(s.d4) * s.lambda, std::conj(s.d5) * s.lambda}),
          unit_fifth(CVector{-c3 / s.delta, std::conj(c2) * c3 / s.delta, -s.sigma2,
                             std::conj(s.e4) * s.sigma, std::conj(s.e5) * s.sigma}),
          CVector{c2 * s.d4 + c3 * s.e4, s.d4, s.e4, 1.0, 0.0},
          CVector{c2 * s.d5 + c3 * s.e5, s.d5, s.e5, 0.0, 1.0}};
}

inline CVector build_psi(const Family4Params& prm, const Family4Coefficients& c,
                         const ProductSpace& sp) {
  const auto& dims = sp.partition().dims();
  const RowVectors xv = row_vectors(c.x), yv = row_vectors(c.y);
  BlockVector bv;
  for (std::size_t j = 0; j < 5; ++j) {
    std::vector<CVector> cut;
    for (auto d : dims) cut.emplace_back(d);
    cut[0] = xv.r[j] * prm.seed_a5;
    cut[2] = xv.g[j] * prm.seed_c5;
    cut[4] = xv.k4[j] * prm.seed_e4 + xv.k5[j] * prm.seed_e5;
    bv.x_blocks.push_back(cut);
    for (auto& v : cut) v = CVector(v.dim());
    cut[3] = yv.r[j] * prm.seed_delta5;
    cut[6] = yv.g[j] * prm.seed_eta5;
    cut[7] = yv.k4[j] * prm.seed_theta4 + yv.k5[j] * prm.seed_theta5;
    bv.y_blocks.push_back(std::move(cut));
  }
  return normalized(compose(bv, sp));
}

inline SolutionBundle4 build(const Family4Params& prm) {
  for (const auto* seed : {&prm.seed_a5, &prm.seed_c5, &prm.seed_e4, &prm.seed_e5,
                           &prm.seed_delta5, &prm.seed_eta5, &prm.seed_theta4,
                           &prm.seed_theta5})
    if (seed->empty() || norm(*seed) == 0.0) throw SeedError("seed vectors must be nonzero");
  if (prm.seed_e4.dim() != prm.seed_e5.dim() || prm.seed_theta4.dim() != prm.seed_theta5.dim())
    throw SeedError("seeds sharing a block must have equal dimension");
  const auto coeffs = derive_coefficients(prm);
  auto [g, l] = build_gl(coeffs, prm.p, prm.m);
  SolutionBundle4 b{
      ProductSpace(10, BlockPartition({prm.seed_a5.dim(), 1, prm.seed_c5.dim(),
                                       prm.seed_delta5.dim(), prm.seed_e4.dim(), 1,
                                       prm.seed_eta5.dim(), prm.seed_theta4.dim()})),
      {}, {}, {}, {}, {}, {}, std::move(g), std::move(l), {}, prm, coeffs};
  const auto det = detector_projectors(b.space);
  b.E = lift_left(slit_projector(b.space), b.space);
  b.G = lift_left(b.G_I, b.space);
  b.L = lift_left(b.L_I, b.space);
  b.T = lift_right(det[0], b.space);
  b.Y = lift_right(det[1], b.space);
  b.W = lift_right(det[2], b.space);
  b.psi = build_psi(prm, coeffs, b.space);
  return b;
}

}  // namespace family4
}  // namespace slitdetect

#endif  // SLITDETECT_FAMILY4_HPP
