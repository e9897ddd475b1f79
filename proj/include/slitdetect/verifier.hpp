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

#ifndef SLITDETECT_VERIFIER_HPP
#define SLITDETECT_VERIFIER_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "slitdetect/errors.hpp"
#include "slitdetect/family3.hpp"
#include "slitdetect/family4.hpp"
#include "slitdetect/linalg.hpp"
#include "slitdetect/space.hpp"

namespace slitdetect {

enum class CheckKind {
  equality,    // pass iff value <= threshold
  nonzero,     // pass iff value > threshold
  structural,  // pass iff value <= threshold; value is a distance to the required form
};

inline const char* to_string(CheckKind k) {
  switch (k) {
    case CheckKind::equality: return "equality";
    case CheckKind::nonzero: return "nonzero";
    case CheckKind::structural: return "structural";
  }
  return "?";
}

struct ConditionResult {
  std::string name;
  CheckKind kind = CheckKind::equality;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct CorrelationFinding {
  std::string identity;
  double residual = 0.0;
};

struct VerificationReport {
  std::vector<ConditionResult> conditions;
  std::vector<CorrelationFinding> correlations;
  double tolerance = Tolerance::kDefault;
  double nonzero_threshold = 1e-6;

  [[nodiscard]] bool passed() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const ConditionResult& c) { return c.pass; });
  }
  [[nodiscard]] const ConditionResult* find(const std::string& name) const {
    for (const auto& c : conditions)
      if (c.name == name) return &c;
    return nullptr;
  }
  [[nodiscard]] std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : conditions)
      if (!c.pass) out.push_back(c.name);
    return out;
  }
};

struct CheckOptions {
  Tolerance tol{};
  double nonzero_threshold = 1e-6;
  /// Tensor split used for the structural check; searched for when absent.
  std::optional<ProductSpace> space;
};

namespace detail {

inline ConditionResult equality(std::string name, double value, double tol,
                                std::string detail) {
  return {std::move(name), CheckKind::equality, value, tol, value <= tol, std::move(detail)};
}

inline ConditionResult nonzero(std::string name, double value, double threshold,
                               std::string detail) {
  return {std::move(name), CheckKind::nonzero, value, threshold, value > threshold,
          std::move(detail)};
}

inline void require_square(const CMatrix& m, std::size_t n, const char* what) {
  if (!m.square() || m.rows() != n)
    throw DimensionError(std::string(what) + " must be " + std::to_string(n) + "x" +
                         std::to_string(n));
}

/// Max deviation of op from the form X (x) 1 on a d1 x d2 split.
inline double left_form_distance(const CMatrix& op, std::size_t d1, std::size_t d2) {
  CMatrix x(d1, d1);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j) {
      Complex t{};
      for (std::size_t k = 0; k < d2; ++k) t += op(i * d2 + k, j * d2 + k);
      x(i, j) = t / static_cast<double>(d2);
    }
  return max_abs(op - kron(x, CMatrix::identity(d2)));
}

/// Max deviation of op from the form 1 (x) X on a d1 x d2 split.
inline double right_form_distance(const CMatrix& op, std::size_t d1, std::size_t d2) {
  CMatrix x(d2, d2);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t r = 0; r < d2; ++r)
      for (std::size_t c = 0; c < d2; ++c) x(r, c) += op(i * d2 + r, i * d2 + c);
  x *= 1.0 / static_cast<double>(d1);
  return max_abs(op - kron(CMatrix::identity(d1), x));
}

inline double projector_residual(const CMatrix& a) {
  return std::max(max_abs(a - adjoint(a)), max_abs(matmul(a, a) - a));
}

/// Distance of (left..., right...) from a common factorized form, minimized
/// over the nontrivial splits of the dimension.
inline double factorization_distance(const std::vector<const CMatrix*>& left,
                                     const std::vector<const CMatrix*>& right,
                                     const std::optional<ProductSpace>& sp) {
  const std::size_t n = left.front()->rows();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t d1 = 2; d1 * 2 <= n; ++d1) {
    if (n % d1 != 0) continue;
    const std::size_t d2 = n / d1;
    if (sp && (sp->dim_i() != d1 || sp->dim_ii() != d2)) continue;
    double worst = 0.0;
    for (const auto* m : left) worst = std::max(worst, left_form_distance(*m, d1, d2));
    for (const auto* m : right) worst = std::max(worst, right_form_distance(*m, d1, d2));
    best = std::min(best, worst);
  }
  return best;
}

/// ||A psi - B psi|| on the normalized state.
inline double action_gap(const CMatrix& a, const CMatrix& b, const CVector& psi) {
  return norm(apply(a, psi) - apply(b, psi));
}

inline CVector unit_state(const CVector& psi, std::size_t n) {
  if (psi.dim() != n) throw DimensionError("state dimension does not match operators");
  if (norm(psi) == 0.0) throw Error("state must be nonzero");
  return normalized(psi);
}

inline ConditionResult eigen_exclusion(std::string name, const std::vector<const CMatrix*>& ops,
                                       const CVector& psi, double threshold) {
  double v = std::numeric_limits<double>::infinity();
  for (const auto* op : ops) {
    const CVector img = apply(*op, psi);
    v = std::min({v, norm(img), norm(psi - img)});
  }
  return nonzero(std::move(name), v, threshold,
                 "min over projectors X of ||X psi||, ||psi - X psi||");
}

}  // namespace detail

/// Conditions of the three-property problem on operators acting on the full space.
inline VerificationReport check3(const CMatrix& E, const CMatrix& G, const CMatrix& T,
                                 const CMatrix& Y, const CVector& psi,
                                 const CheckOptions& opt = {}) {
  const std::size_t n = E.rows();
  for (const auto& [m, w] : {std::pair{&E, "E"}, {&G, "G"}, {&T, "T"}, {&Y, "Y"}})
    detail::require_square(*m, n, w);
  const CVector s = detail::unit_state(psi, n);
  const double eps = opt.tol.eps(), nz = opt.nonzero_threshold;
  using detail::action_gap;

  VerificationReport r;
  r.tolerance = eps;
  r.nonzero_threshold = nz;
  for (const auto& [m, w] : {std::pair{&E, "E"}, {&G, "G"}, {&T, "T"}, {&Y, "Y"}})
    r.conditions.push_back(detail::equality(std::string("projector:") + w,
                                            detail::projector_residual(*m), eps,
                                            "max(|X - X*|, |X^2 - X|)"));
  r.conditions.push_back(detail::nonzero("C.1", frobenius_norm(commutator(E, G)), nz, "||[E,G]||"));
  r.conditions.push_back(detail::equality(
      "C.2", std::max(frobenius_norm(commutator(T, E)), action_gap(T, E, s)), eps,
      "max(||[T,E]||, ||T psi - E psi||)"));
  r.conditions.push_back(detail::equality(
      "C.3", std::max(frobenius_norm(commutator(Y, G)), action_gap(Y, G, s)), eps,
      "max(||[Y,G]||, ||Y psi - G psi||)"));
  r.conditions.push_back(
      detail::equality("C.4", frobenius_norm(commutator(T, Y)), eps, "||[T,Y]||"));
  r.conditions.push_back(detail::eigen_exclusion("C.5", {&E, &G}, s, nz));
  const double fd = detail::factorization_distance({&E, &G}, {&T, &Y}, opt.space);
  r.conditions.push_back({"C.6", CheckKind::structural, fd, eps, fd <= eps,
                          "E, G of the form X(x)1 and T, Y of the form 1(x)X"});
  return r;
}

inline VerificationReport check4(const CMatrix& E, const CMatrix& G, const CMatrix& L,
                                 const CMatrix& T, const CMatrix& Y, const CMatrix& W,
                                 const CVector& psi, const CheckOptions& opt = {}) {
  const std::size_t n = E.rows();
  const std::vector<std::pair<const CMatrix*, const char*>> ops{
      {&E, "E"}, {&G, "G"}, {&L, "L"}, {&T, "T"}, {&Y, "Y"}, {&W, "W"}};
  for (const auto& [m, w] : ops) detail::require_square(*m, n, w);
  const CVector s = detail::unit_state(psi, n);
  const double eps = opt.tol.eps(), nz = opt.nonzero_threshold;
  using detail::action_gap;
  using detail::equality;
  using detail::nonzero;

  VerificationReport r;
  r.tolerance = eps;
  r.nonzero_threshold = nz;
  for (const auto& [m, w] : ops)
    r.conditions.push_back(equality(std::string("projector:") + w,
                                    detail::projector_residual(*m), eps,
                                    "max(|X - X*|, |X^2 - X|)"));
  r.conditions.push_back(nonzero("C.1", frobenius_norm(commutator(E, G)), nz, "||[E,G]||"));
  r.conditions.push_back(nonzero("C.2", frobenius_norm(commutator(E, L)), nz, "||[E,L]||"));
  r.conditions.push_back(nonzero("C.3", frobenius_norm(commutator(L, G)), nz, "||[L,G]||"));
  r.conditions.push_back(
      equality("C.4", std::max(frobenius_norm(commutator(T, E)), action_gap(T, E, s)), eps,
               "max(||[T,E]||, ||T psi - E psi||)"));
  r.conditions.push_back(
      equality("C.5", std::max(frobenius_norm(commutator(Y, G)), action_gap(Y, G, s)), eps,
               "max(||[Y,G]||, ||Y psi - G psi||)"));
  r.conditions.push_back(
      equality("C.6", std::max(frobenius_norm(commutator(W, L)), action_gap(W, L, s)), eps,
               "max(||[W,L]||, ||W psi - L psi||)"));
  r.conditions.push_back(equality("C.7", frobenius_norm(commutator(T, Y)), eps, "||[T,Y]||"));
  r.conditions.push_back(equality("C.8", frobenius_norm(commutator(T, W)), eps, "||[T,W]||"));
  r.conditions.push_back(equality("C.9", frobenius_norm(commutator(Y, W)), eps, "||[Y,W]||"));
  r.conditions.push_back(detail::eigen_exclusion("C.10", {&E, &G, &L}, s, nz));
  return r;
}

/// p(a | b) = <psi|ab psi> / <psi|b psi> for commuting projectors.
inline double conditional_probability(const CMatrix& a, const CMatrix& b, const CVector& psi,
                                      Tolerance tol = {}) {
  if (!a.square() || a.rows() != b.rows() || !b.square() || psi.dim() != a.rows())
    throw DimensionError("conditional_probability: shape mismatch");
  const double c = max_abs(commutator(a, b));
  if (c > tol.eps())
    throw NonCommuting("projectors do not commute (max |[a,b]| = " + std::to_string(c) + ")");
  const double nn = std::norm(norm(psi));
  const double den = inner(psi, apply(b, psi)).real();
  if (!(den > tol.eps() * nn)) throw ZeroConditioning("conditioning event has zero probability");
  return inner(psi, apply(matmul(a, b), psi)).real() / den;
}

/// Tests the catalogue of detection correlations and returns those that hold.
/// W may be null (three-property setting); identities involving W are skipped.
inline std::vector<CorrelationFinding> detect_correlations(const CMatrix& T, const CMatrix& Y,
                                                           const CMatrix* W,
                                                           const CVector& psi,
                                                           Tolerance tol = Tolerance(1e-9)) {
  const std::size_t n = T.rows();
  detail::require_square(Y, n, "Y");
  if (W) detail::require_square(*W, n, "W");
  const CVector s = detail::unit_state(psi, n);
  const CVector ys = apply(Y, s), ts = apply(T, s);
  std::vector<CorrelationFinding> all{
      {"YTPsi=YPsi", norm(apply(Y, ts) - ys)},
      {"TYPsi=TPsi", norm(apply(T, ys) - ts)},
  };
  if (W) {
    const CVector ws = apply(*W, s);
    const CVector not_w_ys = ys - apply(*W, ys);
    all.push_back({"TWPsi=0", norm(apply(T, ws))});
    all.push_back({"WYPsi=0", norm(apply(*W, ys))});
    all.push_back({"(1-W)YPsi=0", norm(not_w_ys)});
    all.push_back({"(1-T)(1-W)YPsi=0", norm(not_w_ys - apply(T, not_w_ys))});
  }
  std::vector<CorrelationFinding> out;
  for (auto& f : all)
    if (f.residual <= tol.eps()) out.push_back(std::move(f));
  return out;
}

inline VerificationReport check(const SolutionBundle3& b, const CheckOptions& opt = {}) {
  CheckOptions o = opt;
  if (!o.space) o.space = b.space;
  auto r = check3(b.E, b.G, b.T, b.Y, b.psi, o);
  r.correlations = detect_correlations(b.T, b.Y, nullptr, b.psi);
  return r;
}

inline VerificationReport check(const SolutionBundle4& b, const CheckOptions& opt = {}) {
  auto r = check4(b.E, b.G, b.L, b.T, b.Y, b.W, b.psi, opt);
  r.correlations = detect_correlations(b.T, b.Y, &b.W, b.psi);
  return r;
}

inline std::vector<CorrelationFinding> detect_correlations(const SolutionBundle3& b) {
  return detect_correlations(b.T, b.Y, nullptr, b.psi);
}

inline std::vector<CorrelationFinding> detect_correlations(const SolutionBundle4& b) {
  return detect_correlations(b.T, b.Y, &b.W, b.psi);
}

}  // namespace slitdetect

#endif  // SLITDETECT_VERIFIER_HPP
