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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "slitdetect/slitdetect.hpp"

using namespace slitdetect;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

char buf[512];

template <class... A>
std::string fmt(const char* f, A... a) {
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

Outcome fixture3() {
  const auto t0 = Clock::now();
  const auto b = family3::build(Family3Params::ideal_experiment());
  const double dt = seconds_since(t0);
  const double s3 = std::sqrt(3.0), s5 = std::sqrt(5.0);
  const double dev = max_abs(b.G_I - fixtures::ideal_g());
  const double spot = std::max({std::abs(b.G_I(0, 0) - 2.0 / 3), std::abs(b.G_I(0, 1) + 1 / (2 * s3)),
                                std::abs(b.G_I(0, 3) - 1 / (6 * s5)), std::abs(b.G_I(3, 3) - 8.0 / 15),
                                std::abs(b.G_I(5, 5) - 8.0 / 15)});
  return {dev <= 1e-12 && spot <= 1e-12 && dt < 1.0,
          fmt("max|G_I - fixture| = %.2e, spot dev = %.2e, %.3f s", dev, spot, dt)};
}

Outcome fixture4() {
  const auto t0 = Clock::now();
  const auto b = family4::build(Family4Params::particular_choice());
  const double dt = seconds_since(t0);
  const double dg = max_abs(b.G_I - fixtures::particular_g());
  const double dl = max_abs(b.L_I - fixtures::particular_l());
  double rg = 0.0, rl = 0.0;
  for (std::size_t k = 0; k < 10; ++k) {
    rg += std::norm(b.G_I(0, k));
    rl += std::norm(b.L_I(0, k));
  }
  const double rows = std::max(std::abs(rg - 11.0 / 72), std::abs(rl - 67.0 / 456));
  return {dg <= 1e-12 && dl <= 1e-12 && rows <= 1e-12 && dt < 1.0,
          fmt("max dev G = %.2e, L = %.2e, row-norm dev = %.2e, %.3f s", dg, dl, rows, dt)};
}

Outcome conditions() {
  const auto r3 = check(family3::build(Family3Params::ideal_experiment()));
  const auto r4 = check(family4::build(Family4Params::particular_choice()));
  double worst_eq = 0.0, min_comm = 1e300;
  bool all = r3.passed() && r4.passed();
  for (const auto* r : {&r3, &r4})
    for (const auto& c : r->conditions)
      if (c.kind == CheckKind::nonzero && c.detail.rfind("||[", 0) == 0)
        min_comm = std::min(min_comm, c.value);
      else if (c.kind != CheckKind::nonzero)
        worst_eq = std::max(worst_eq, c.value);
  for (int i = 1; i <= 10; ++i) all = all && r4.find("C." + std::to_string(i));
  for (int i = 1; i <= 5; ++i) all = all && r3.find("C." + std::to_string(i));
  return {all && worst_eq < 1e-12 && min_comm > 1e-3,
          fmt("check3 %s, check4 %s, worst equality residual = %.2e, min commutator norm = %.3f",
              r3.passed() ? "pass" : "FAIL", r4.passed() ? "pass" : "FAIL", worst_eq, min_comm)};
}

std::vector<Family3Params> sweep_params() {
  std::mt19937_64 gen(20261016);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto coeff = [&] { return std::polar(3.0 * unit(gen), 2 * std::numbers::pi * unit(gen)); };
  std::vector<Family3Params> out;
  while (out.size() < 1000) {
    Family3Params p;
    p.mu2 = coeff();
    p.mu3 = coeff();
    p.lambda2 = coeff();
    p.lambda3 = coeff();
    p.theta = 2 * std::numbers::pi * unit(gen);
    const auto [lo, hi] = family3::p_interval(p);
    p.p = lo + (hi - lo) * unit(gen);
    if (p.p > lo && p.p < hi) out.push_back(p);
  }
  return out;
}

Outcome sweep() {
  const auto t0 = Clock::now();
  int passed = 0, uncorrelated = 0;
  for (const auto& p : sweep_params()) {
    const auto b = family3::build(p);
    passed += check(b).passed();
    uncorrelated += detect_correlations(b).empty();
  }
  const double dt = seconds_since(t0);
  return {passed == 1000 && uncorrelated == 1000 && dt < 30.0,
          fmt("%d/1000 pass check3, %d/1000 without correlations, %.2f s", passed, uncorrelated, dt)};
}

Outcome oracle() {
  const auto sp3 = fixtures::ideal_space();
  const auto cs3 = solver::assemble(slit_projector(sp3), fixtures::ideal_psi(), sp3);
  const auto set3 = solver::solve(cs3);
  const double res3 = std::max(solver::residual_at(cs3.operators[0], fixtures::ideal_g()),
                               solver::distance(set3.operators[0], fixtures::ideal_g()));
  solver::FilterOptions opt;
  opt.anchors = {fixtures::ideal_g()};
  const auto found = solver::filter_projectors(set3.operators[0], sp3, Tolerance(1e-9), opt);
  double best = 1e300;
  for (const auto& p : found.projectors) best = std::min(best, max_abs(p - fixtures::ideal_g()));

  const auto sp4 = fixtures::particular_space();
  const auto cs4 = solver::assemble(slit_projector(sp4), fixtures::particular_psi(), sp4);
  const auto set4 = solver::solve(cs4);
  const double res4 = std::max({solver::residual_at(cs4.operators[0], fixtures::particular_g()),
                                solver::residual_at(cs4.operators[1], fixtures::particular_l()),
                                solver::distance(set4.operators[0], fixtures::particular_g()),
                                solver::distance(set4.operators[1], fixtures::particular_l())});
  return {res3 < 1e-10 && best <= 1e-9 && res4 < 1e-10,
          fmt("residual 6x6 = %.2e, filter best = %.2e (%zu projectors, %zu candidates), "
              "residual 10x10 = %.2e",
              res3, best, found.projectors.size(), found.candidates, res4)};
}

Outcome q_formula() {
  const auto ideal = Family3Params::ideal_experiment();
  const double q = family3::derive_q(ideal), printed = family3::derive_q_as_printed(ideal);
  int idempotent = 0;
  for (const auto& p : sweep_params()) idempotent += is_idempotent(family3::build_g(p));
  const bool printed_fails =
      std::abs(printed - 1.0 / 30) < 1e-15 && std::abs(printed - 8.0 / 15) > 0.1;
  return {std::abs(q - 8.0 / 15) < 1e-15 && idempotent == 1000 && printed_fails,
          fmt("q = %.15f, printed form = %.15f, idempotent on %d/1000 draws", q, printed,
              idempotent)};
}

Outcome correlation() {
  const auto f = detect_correlations(family4::build(Family4Params::particular_choice()));
  std::string ids;
  for (const auto& c : f) ids += (ids.empty() ? "" : ", ") + c.identity;
  return {!f.empty(), fmt("%zu identities hold: %s", f.size(), ids.c_str())};
}

Outcome simulation() {
  const ExperimentSpec spec{fixtures::ideal_psi(), fixtures::ideal_space(), 100000, 42};
  const auto t0 = Clock::now();
  const auto tally = simulator::run(spec);
  const double dt = seconds_since(t0);
  const auto again = simulator::run(spec);
  const double pt = simulator::detector_rate(tally, spec.space, 0);
  const double pet = simulator::slit_given_t(tally, spec.space);
  return {std::abs(pt - 0.5) <= 0.01 && pet == 1.0 && dt < 5.0 && tally == again,
          fmt("p(T=1) = %.5f, p(E=1|T=1) = %.17g, %.3f s, repeat %s", pt, pet, dt,
              tally == again ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 three-property fixture reproduction", fixture3},
      {"2 four-property fixture reproduction", fixture4},
      {"3 condition suite", conditions},
      {"4 property sweep", sweep},
      {"5 solver oracle equivalence", oracle},
      {"6 q-formula adjudication", q_formula},
      {"7 correlation invariant", correlation},
      {"8 simulation", simulation},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o{false, "exception"};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
