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

#ifndef SLITDETECT_FAMILY3_HPP
#define SLITDETECT_FAMILY3_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "slitdetect/errors.hpp"
#include "slitdetect/linalg.hpp"
#include "slitdetect/space.hpp"

namespace slitdetect {

/// Free parameters of the three-property family (gamma_2 = 0 branch).
struct Family3Params {
  double p = 2.0 / 3.0;
  double theta = 0.0;
  Complex mu2{std::numbers::sqrt3, 0.0};
  Complex mu3{1.0, 0.0};
  Complex lambda2{std::numbers::sqrt3, 0.0};
  Complex lambda3{1.0, 0.0};
  CVector seed_a3{1.0};
  CVector seed_b2{1.0};
  CVector seed_gamma3{1.0};
  CVector seed_delta2{1.0};

  /// The spin-3/2 ideal experiment: p = 2/3, mu2 = lambda2 = sqrt(3), mu3 = lambda3 = 1.
  static Family3Params ideal_experiment() { return {}; }

  friend bool operator==(const Family3Params&, const Family3Params&) = default;
};

struct SolutionBundle3 {
  ProductSpace space;
  CMatrix E, G, T, Y;
  CMatrix G_I;
  CVector psi;
  Family3Params params;
  Complex derived_u;
  double derived_q = 0.0;
};

namespace family3 {

namespace detail {

inline double sq(Complex z) { return std::norm(z); }

struct Scalars {
  double k_mu, k_lam, n_mu, n_lam, s;
};

inline Scalars scalars(const Family3Params& prm) {
  for (Complex z : {prm.mu2, prm.mu3, prm.lambda2, prm.lambda3})
    if (!is_finite(z)) throw ParamRangeError("non-finite coefficient");
  if (!std::isfinite(prm.p) || !std::isfinite(prm.theta))
    throw ParamRangeError("non-finite p or theta");
  Scalars s{};
  s.k_mu = sq(prm.mu3) / (1.0 + sq(prm.mu3));
  s.k_lam = sq(prm.lambda3) / (1.0 + sq(prm.lambda3));
  s.n_mu = 1.0 + sq(prm.mu2) + sq(prm.mu3);
  s.n_lam = 1.0 + sq(prm.lambda2) + sq(prm.lambda3);
  s.s = prm.p - s.k_mu;
  return s;
}

}  // namespace detail

/// Open interval (K_mu, K_mu + 1/n_mu) allowed for p.
inline std::pair<double, double> p_interval(const Family3Params& prm) {
  const auto s = detail::scalars(prm);
  return {s.k_mu, s.k_mu + 1.0 / s.n_mu};
}

inline void check_range(const Family3Params& prm) {
  const auto [lo, hi] = p_interval(prm);
  if (!(prm.p > lo && prm.p < hi))
    throw ParamRangeError("p = " + std::to_string(prm.p) + " outside (" +
                          std::to_string(lo) + ", " + std::to_string(hi) + ")");
}

inline Complex derive_u(const Family3Params& prm) {
  check_range(prm);
  const auto s = detail::scalars(prm);
  const double rad = (s.s - s.n_mu * s.s * s.s) / s.n_lam;
  return std::polar(std::sqrt(std::max(rad, 0.0)), prm.theta);
}

inline double derive_q(const Family3Params& prm) {
  check_range(prm);
  const auto s = detail::scalars(prm);
  return s.k_lam + (1.0 - s.n_mu * s.s) / s.n_lam;
}

/// Item-3 expression exactly as printed (no K_lambda offset). Not idempotent in
/// general; kept for comparison.
inline double derive_q_as_printed(const Family3Params& prm) {
  check_range(prm);
  const auto s = detail::scalars(prm);
  return (1.0 - s.n_mu * s.s) / s.n_lam;
}

/// The 3x3 diagonal block shared by P (p, mu) and Q (q, lambda).
inline CMatrix diagonal_block(double p, Complex c2, Complex c3) {
  const double k = detail::sq(c3) / (1.0 + detail::sq(c3));
  const double s = p - k;
  return CMatrix{
      {p, -c2 * s, c3 * (1.0 - p)},
      {-std::conj(c2) * s, detail::sq(c2) * s, c3 * std::conj(c2) * s},
      {std::conj(c3) * (1.0 - p), std::conj(c3) * c2 * s,
       1.0 - detail::sq(c3) * (1.0 - p)}};
}

inline CMatrix build_g(const Family3Params& prm) {
  const Complex u = derive_u(prm);
  const double q = derive_q(prm);
  const CMatrix P = diagonal_block(prm.p, prm.mu2, prm.mu3);
  const CMatrix Q = diagonal_block(q, prm.lambda2, prm.lambda3);
  const CVector c{1.0, -std::conj(prm.mu2), -std::conj(prm.mu3)};
  const CVector d{1.0, -prm.lambda2, -prm.lambda3};
  const CMatrix U = u * CMatrix::outer(c, d);
  return block2x2(P, U, adjoint(U), Q);
}

inline CVector build_psi(const Family3Params& prm, const ProductSpace& sp) {
  const CVector& a3 = prm.seed_a3;
  const CVector& b2 = prm.seed_b2;
  const CVector& g3 = prm.seed_gamma3;
  const CVector& d2 = prm.seed_delta2;
  const CVector za(a3.dim()), zb(b2.dim()), zg(g3.dim()), zd(d2.dim());
  const Complex m = prm.mu2 / (detail::sq(prm.mu3) + 1.0);
  const Complex l = prm.lambda2 / (detail::sq(prm.lambda3) + 1.0);
  BlockVector bv;
  bv.x_blocks = {{prm.mu3 * a3, m * b2, zg, zd},
                 {za, b2, zg, zd},
                 {a3, -std::conj(prm.mu3) * m * b2, zg, zd}};
  bv.y_blocks = {{za, zb, prm.lambda3 * g3, l * d2},
                 {za, zb, zg, d2},
                 {za, zb, g3, -std::conj(prm.lambda3) * l * d2}};
  return normalized(compose(bv, sp));
}

inline SolutionBundle3 build(const Family3Params& prm) {
  for (const auto* seed : {&prm.seed_a3, &prm.seed_b2, &prm.seed_gamma3, &prm.seed_delta2})
    if (seed->empty() || norm(*seed) == 0.0) throw SeedError("seed vectors must be nonzero");
  SolutionBundle3 b{
      ProductSpace(6, BlockPartition({prm.seed_a3.dim(), prm.seed_b2.dim(),
                                      prm.seed_gamma3.dim(), prm.seed_delta2.dim()})),
      {}, {}, {}, {}, build_g(prm), {}, prm, derive_u(prm), derive_q(prm)};
  const auto det = detector_projectors(b.space);
  b.E = lift_left(slit_projector(b.space), b.space);
  b.G = lift_left(b.G_I, b.space);
  b.T = lift_right(det[0], b.space);
  b.Y = lift_right(det[1], b.space);
  b.psi = build_psi(prm, b.space);
  return b;
}

}  // namespace family3
}  // namespace slitdetect

#endif  // SLITDETECT_FAMILY3_HPP
