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

#ifndef SLITDETECT_SOLVER_HPP
#define SLITDETECT_SOLVER_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slitdetect/errors.hpp"
#include "slitdetect/linalg.hpp"
#include "slitdetect/rng.hpp"
#include "slitdetect/space.hpp"

namespace slitdetect {

/// Linear constraints X v_h = t_h v_h on one Hermitian operator X of H_I, where
/// v_h collects the components of psi along H_II basis vector h and t_h is the
/// diagonal of the paired detector. Unknowns are real: the diagonal of X, then
/// (re, im) of each upper-triangle entry in row-major order.
struct OperatorSystem {
  std::string name;  // "G" or "L"
  std::size_t dim = 0;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};

struct ConstraintSystem {
  ProductSpace space;
  int mode = 3;
  std::vector<OperatorSystem> operators;
  /// Psi is an eigenvector of E (or zero): the excluded case.
  bool degenerate = false;
};

/// Particular solution plus an orthonormal basis of the homogeneous solutions,
/// both expressed in the real unknown coordinates.
struct AffineSet {
  std::string name;
  std::size_t dim = 0;
  Eigen::VectorXd particular;
  Eigen::MatrixXd nullspace;  // columns
  double residual = 0.0;      // ||A x0 - b||
};

struct SolutionSet {
  std::vector<AffineSet> operators;
};

namespace solver {

inline std::size_t unknown_count(std::size_t d) { return d * d; }

inline Eigen::VectorXd to_params(const CMatrix& x) {
  if (!x.square()) throw DimensionError("to_params: non-square matrix");
  const std::size_t d = x.rows();
  Eigen::VectorXd v(static_cast<Eigen::Index>(d * d));
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < d; ++i) v(k++) = x(i, i).real();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex z = 0.5 * (x(i, j) + std::conj(x(j, i)));
      v(k++) = z.real();
      v(k++) = z.imag();
    }
  return v;
}

inline CMatrix from_params(const Eigen::VectorXd& v, std::size_t d) {
  if (static_cast<std::size_t>(v.size()) != d * d)
    throw DimensionError("from_params: wrong parameter count");
  CMatrix x(d, d);
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < d; ++i) x(i, i) = v(k++);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex z(v(k), v(k + 1));
      k += 2;
      x(i, j) = z;
      x(j, i) = std::conj(z);
    }
  return x;
}

namespace detail {

/// Column of unknown p in the real system, as the complex coefficient matrix
/// dX/dp applied to v.
inline OperatorSystem build_operator_system(std::string name, const CVector& psi,
                                            const ProductSpace& sp,
                                            const CMatrix& detector) {
  const std::size_t d = sp.dim_i(), d2 = sp.dim_ii();
  const auto rows = static_cast<Eigen::Index>(2 * d * d2);
  OperatorSystem os{std::move(name), d, Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(d * d)),
                    Eigen::VectorXd::Zero(rows)};
  auto put = [&](std::size_t h, std::size_t i, Eigen::Index col, Complex coef) {
    const auto r = static_cast<Eigen::Index>(2 * (h * d + i));
    os.a(r, col) += coef.real();
    os.a(r + 1, col) += coef.imag();
  };
  for (std::size_t h = 0; h < d2; ++h) {
    const double t = detector(h, h).real();
    for (std::size_t i = 0; i < d; ++i) {
      const Complex rhs = t * psi[i * d2 + h];
      const auto r = static_cast<Eigen::Index>(2 * (h * d + i));
      os.b(r) = rhs.real();
      os.b(r + 1) = rhs.imag();
    }
    Eigen::Index k = 0;
    for (std::size_t i = 0; i < d; ++i, ++k) put(h, i, k, psi[i * d2 + h]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j, k += 2) {
        const Complex vi = psi[i * d2 + h], vj = psi[j * d2 + h];
        // X_ij = re + i im contributes to row i via v_j; X_ji = re - i im to row j via v_i.
        put(h, i, k, vj);
        put(h, i, k + 1, Complex(0, 1) * vj);
        put(h, j, k, vi);
        put(h, j, k + 1, Complex(0, -1) * vi);
      }
  }
  return os;
}

}  // namespace detail

/// Linear system whose solutions are the Hermitian G_I with Y psi = G psi
/// (and, in four-property mode, L_I with W psi = L psi).
inline ConstraintSystem assemble(const CMatrix& e_i, const CVector& psi, const ProductSpace& sp,
                                 std::optional<int> mode = std::nullopt,
                                 Tolerance tol = Tolerance(1e-10)) {
  const int md = mode.value_or(sp.mode());
  if (md != sp.mode())
    throw ModeError("mode " + std::to_string(md) + " does not match the partition");
  if (!e_i.square() || e_i.rows() != sp.dim_i())
    throw DimensionError("E_I must be dim_i x dim_i");
  if (psi.dim() != sp.dim()) throw DimensionError("psi dimension does not match the space");

  const auto det = detector_projectors(sp);
  const CVector e_psi = apply(lift_left(e_i, sp), psi);
  const CVector t_psi = apply(lift_right(det[0], sp), psi);
  const double scale = std::max(norm(psi), 1e-300);
  if (norm(t_psi - e_psi) > tol.eps() * scale)
    throw StateShapeError("state does not satisfy T psi = E psi");

  ConstraintSystem cs{sp, md, {}, false};
  cs.degenerate = norm(psi) == 0.0 || norm(e_psi) <= tol.eps() * scale ||
                  norm(psi - e_psi) <= tol.eps() * scale;
  cs.operators.push_back(detail::build_operator_system("G", psi, sp, det[1]));
  if (md == 4) cs.operators.push_back(detail::build_operator_system("L", psi, sp, det[2]));
  return cs;
}

inline AffineSet solve(const OperatorSystem& os, double rank_tol = 1e-10) {
  const Eigen::Index n = os.a.cols();
  AffineSet s{os.name, os.dim, Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Identity(n, n), 0.0};
  if (os.a.rows() == 0 || n == 0) {
    s.residual = os.b.size() ? os.b.norm() : 0.0;
    return s;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(os.a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = sv.size() && sv(0) > 0 ? rank_tol * sv(0) : 0.0;
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut && sv(rank) > 0) ++rank;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < rank; ++k)
    x += (svd.matrixU().col(k).dot(os.b) / sv(k)) * svd.matrixV().col(k);
  s.particular = x;
  s.nullspace = svd.matrixV().rightCols(n - rank);
  s.residual = (os.a * x - os.b).norm();
  return s;
}

inline SolutionSet solve(const ConstraintSystem& cs, double rank_tol = 1e-10) {
  SolutionSet out;
  for (const auto& os : cs.operators) out.operators.push_back(solve(os, rank_tol));
  return out;
}

/// ||A params(x) - b||: how far x is from satisfying the assembled equations.
inline double residual_at(const OperatorSystem& os, const CMatrix& x) {
  if (x.rows() != os.dim) throw DimensionError("residual_at: operator size mismatch");
  return (os.a * to_params(x) - os.b).norm();
}

/// Euclidean distance (in unknown coordinates) from x to the affine set.
inline double distance(const AffineSet& s, const CMatrix& x) {
  const Eigen::VectorXd dx = to_params(x) - s.particular;
  return (dx - s.nullspace * (s.nullspace.transpose() * dx)).norm();
}

struct FilterOptions {
  std::size_t draws = 10000;
  double half_width = 2.0;
  std::uint64_t seed = 0x5EEDULL;
  /// Extra starting points tried before the random draws.
  std::vector<CMatrix> anchors;
  int max_iterations = 400;
};

struct FilterResult {
  std::vector<CMatrix> projectors;
  std::size_t candidates = 0;
};

namespace detail {

inline Eigen::MatrixXcd to_eigen(const CMatrix& m) {
  Eigen::MatrixXcd e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

inline CMatrix from_eigen(const Eigen::MatrixXcd& e) {
  CMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return m;
}

/// Nearest orthogonal projector: eigenvalues rounded to 0 or 1.
inline CMatrix round_to_projector(const CMatrix& x) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(x));
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(vecs.rows(), vecs.cols());
  for (Eigen::Index k = 0; k < vals.size(); ++k)
    if (vals(k) > 0.5) p += vecs.col(k) * vecs.col(k).adjoint();
  return from_eigen(p);
}

inline Eigen::VectorXd project_affine(const AffineSet& s, const Eigen::VectorXd& x) {
  const Eigen::VectorXd dx = x - s.particular;
  return s.particular + s.nullspace * (s.nullspace.transpose() * dx);
}

inline double projector_gap(const CMatrix& x) {
  return std::max(max_abs(x - adjoint(x)), max_abs(matmul(x, x) - x));
}

}  // namespace detail

/// Searches the affine set for orthogonal projectors by alternating between
/// eigenvalue rounding and projection back onto the set. Starting points are
/// the anchors followed by seeded uniform draws in nullspace coordinates.
/// Results are deduplicated and ordered by the index of the starting point.
inline FilterResult filter_projectors(const AffineSet& s, const ProductSpace& sp,
                                      Tolerance tol = Tolerance(1e-9),
                                      const FilterOptions& opt = {}) {
  if (s.dim != sp.dim_i()) throw DimensionError("affine set does not act on H_I");
  const auto k = s.nullspace.cols();
  FilterResult res;
  auto polish = [&](Eigen::VectorXd x) -> std::optional<CMatrix> {
    for (int it = 0; it < opt.max_iterations; ++it) {
      x = detail::project_affine(s, x);
      const CMatrix cand = from_params(x, s.dim);
      if (detail::projector_gap(cand) <= tol.eps()) return cand;
      x = to_params(detail::round_to_projector(cand));
    }
    return std::nullopt;
  };
  auto accept = [&](const CMatrix& m) {
    for (const auto& have : res.projectors)
      if (max_abs(have - m) <= 1e-7) return;
    res.projectors.push_back(m);
  };
  for (const auto& a : opt.anchors) {
    ++res.candidates;
    if (auto p = polish(to_params(a))) accept(*p);
  }
  for (std::size_t draw = 0; draw < opt.draws; ++draw) {
    ++res.candidates;
    Eigen::VectorXd c(k);
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto idx = static_cast<std::uint64_t>(draw) * static_cast<std::uint64_t>(k + 1) +
                       static_cast<std::uint64_t>(j);
      c(j) = opt.half_width * (2.0 * counter_uniform(opt.seed, idx) - 1.0);
    }
    if (auto p = polish(s.particular + s.nullspace * c)) accept(*p);
  }
  return res;
}

}  // namespace solver
}  // namespace slitdetect

#endif  // SLITDETECT_SOLVER_HPP
