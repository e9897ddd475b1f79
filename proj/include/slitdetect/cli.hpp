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

#ifndef SLITDETECT_CLI_HPP
#define SLITDETECT_CLI_HPP

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slitdetect/errors.hpp"
#include "slitdetect/family3.hpp"
#include "slitdetect/family4.hpp"
#include "slitdetect/fixtures.hpp"
#include "slitdetect/io.hpp"
#include "slitdetect/simulator.hpp"
#include "slitdetect/solver.hpp"
#include "slitdetect/verifier.hpp"

namespace slitdetect::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

/// Environment variable overriding the default equality tolerance.
inline constexpr const char* kTolEnv = "SLITDETECT_TOL";

struct Options {
  std::string params, bundle, psi, space, fixture, out;
  std::string format = "json";
  std::optional<double> tol;
  std::uint64_t seed = 42;
  std::uint64_t samples = 100000;
  std::size_t draws = 1000;
};

namespace detail {

using json = nlohmann::json;

inline Tolerance resolve_tol(const Options& o) {
  if (o.tol) return Tolerance(*o.tol);
  if (const char* env = std::getenv(kTolEnv)) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0') throw Error(std::string(kTolEnv) + " is not a number");
    return Tolerance(v);
  }
  return Tolerance{};
}

inline void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw IoError("cannot write '" + o.out + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

inline std::string render(const Options& o, const json& doc, const VerificationReport& r) {
  return o.format == "csv" ? io::to_csv(r) : doc.dump(2);
}

inline int verdict(const VerificationReport& r, std::ostream& err) {
  if (r.passed()) return kOk;
  err << "verification failed:";
  for (const auto& name : r.failures()) err << ' ' << name;
  err << '\n';
  return kVerificationFailed;
}

inline CheckOptions check_options(const Options& o) {
  CheckOptions c;
  c.tol = resolve_tol(o);
  return c;
}

inline int generate3(const Options& o, std::ostream& out, std::ostream& err) {
  const Family3Params p =
      o.params.empty() ? Family3Params::ideal_experiment()
                       : io::family3_params_from_json(io::read_json_file(o.params));
  const auto b = family3::build(p);
  const auto r = check(b, check_options(o));
  json doc = io::to_json(b);
  doc["report"] = io::to_json(r);
  emit(o, out, render(o, doc, r));
  return verdict(r, err);
}

inline int generate4(const Options& o, std::ostream& out, std::ostream& err) {
  const Family4Params p =
      o.params.empty() ? Family4Params::particular_choice()
                       : io::family4_params_from_json(io::read_json_file(o.params));
  const auto b = family4::build(p);
  const auto r = check(b, check_options(o));
  json doc = io::to_json(b);
  doc["report"] = io::to_json(r);
  emit(o, out, render(o, doc, r));
  return verdict(r, err);
}

inline int verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.bundle.empty()) throw Error("verify needs --bundle");
  const auto r = io::verify_bundle_json(io::read_json_file(o.bundle), check_options(o));
  emit(o, out, render(o, io::to_json(r), r));
  return verdict(r, err);
}

/// Rebuilds a built-in fixture from the family generator, compares it with the
/// transcribed matrices and verifies the transcribed operators.
inline int reproduce(const Options& o, std::ostream& out, std::ostream& err) {
  const Tolerance tol = resolve_tol(o);
  json doc{{"fixture", o.fixture}};
  VerificationReport r;
  double dev = 0.0;
  if (o.fixture == "sec2.3") {
    const auto b = family3::build(Family3Params::ideal_experiment());
    const auto sp = fixtures::ideal_space();
    const CMatrix g = fixtures::ideal_g();
    dev = max_abs(b.G_I - g);
    r = check(SolutionBundle3{sp, lift_left(slit_projector(sp), sp), lift_left(g, sp), b.T, b.Y,
                              g, fixtures::ideal_psi(), b.params, b.derived_u, b.derived_q},
              check_options(o));
    doc["G_I"] = io::to_json(g);
  } else if (o.fixture == "sec5") {
    const auto b = family4::build(Family4Params::particular_choice());
    const auto sp = fixtures::particular_space();
    const CMatrix g = fixtures::particular_g(), l = fixtures::particular_l();
    dev = std::max(max_abs(b.G_I - g), max_abs(b.L_I - l));
    r = check(SolutionBundle4{sp, lift_left(slit_projector(sp), sp), lift_left(g, sp),
                              lift_left(l, sp), b.T, b.Y, b.W, g, l, fixtures::particular_psi(),
                              b.params, b.coefficients},
              check_options(o));
    doc["G_I"] = io::to_json(g);
    doc["L_I"] = io::to_json(l);
  } else {
    throw Error("unknown fixture '" + o.fixture + "' (expected sec2.3 or sec5)");
  }
  r.conditions.push_back({"generator-match", CheckKind::equality, dev, tol.eps(),
                          dev <= tol.eps(), "max |generated - transcribed|"});
  doc["report"] = io::to_json(r);
  emit(o, out, render(o, doc, r));
  return verdict(r, err);
}

inline std::pair<CVector, ProductSpace> state_input(const Options& o) {
  if (!o.fixture.empty()) {
    if (o.fixture == "sec2.3") return {fixtures::ideal_psi(), fixtures::ideal_space()};
    if (o.fixture == "sec5")
      return {normalized(fixtures::particular_psi()), fixtures::particular_space()};
    throw Error("unknown fixture '" + o.fixture + "'");
  }
  if (o.psi.empty() || o.space.empty()) throw Error("need --psi and --space, or --fixture");
  return {io::vector_from_json(io::read_json_file(o.psi)),
          io::space_from_json(io::read_json_file(o.space))};
}

inline int solve(const Options& o, std::ostream& out, std::ostream&) {
  const auto [psi, sp] = state_input(o);
  const Tolerance tol = resolve_tol(o);
  const auto cs = solver::assemble(slit_projector(sp), psi, sp);
  const auto set = solver::solve(cs);
  json ops = json::array();
  for (const auto& s : set.operators) {
    solver::FilterOptions fo;
    fo.draws = o.draws;
    fo.seed = o.seed;
    const auto found = solver::filter_projectors(s, sp, Tolerance(std::max(tol.eps(), 1e-9)), fo);
    json projs = json::array();
    for (const auto& p : found.projectors) projs.push_back(io::to_json(p));
    ops.push_back({{"name", s.name},
                   {"unknowns", s.particular.size()},
                   {"nullity", s.nullspace.cols()},
                   {"residual", s.residual},
                   {"particular", io::to_json(solver::from_params(s.particular, s.dim))},
                   {"candidates", found.candidates},
                   {"projectors", std::move(projs)}});
  }
  const json doc{{"mode", cs.mode}, {"degenerate", cs.degenerate}, {"operators", std::move(ops)}};
  emit(o, out, doc.dump(2));
  return kOk;
}

inline int simulate(const Options& o, std::ostream& out, std::ostream&) {
  auto [psi, sp] = state_input(o);
  const ExperimentSpec spec{normalized(psi), sp, o.samples, o.seed};
  const auto tally = simulator::run(spec);
  const auto exact = simulator::exact_joint(spec.psi, sp);
  if (o.format == "csv") {
    emit(o, out, io::to_csv(tally, exact));
    return kOk;
  }
  json doc = io::to_json(tally, exact);
  doc["seed"] = o.seed;
  doc["p_T1"] = simulator::detector_rate(tally, sp, 0);
  const auto t1 = tally.count_where({0, 1}, detector_blocks(sp.partition()).front());
  doc["p_E1_given_T1"] = t1 ? json(simulator::slit_given_t(tally, sp)) : json(nullptr);
  emit(o, out, doc.dump(2));
  return kOk;
}

}  // namespace detail

/// Parses argv and runs one subcommand. Exit codes: 0 success, 1 verification
/// failure (the report is still written), 2 usage, input or parameter error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Commuting detectors for incompatible two-slit properties", "slitdetect"};
  app.require_subcommand(1, 1);
  Options o;
  const std::vector<std::string> formats{"json", "csv"};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "equality tolerance (default 1e-12 or $SLITDETECT_TOL)");
    sub->add_option("--out", o.out, "write output to this file instead of stdout");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember(formats));
  };
  auto* g3 = app.add_subcommand("generate3", "build a three-property solution");
  g3->add_option("--params", o.params, "Family3Params JSON file");
  common(g3);
  auto* g4 = app.add_subcommand("generate4", "build a four-property solution");
  g4->add_option("--params", o.params, "Family4Params JSON file");
  common(g4);
  auto* ver = app.add_subcommand("verify", "check the conditions on a bundle file");
  ver->add_option("--bundle", o.bundle, "bundle JSON file")->required();
  common(ver);
  auto* rep = app.add_subcommand("reproduce", "rebuild and verify a built-in fixture");
  rep->add_option("--fixture", o.fixture, "sec2.3 or sec5")->required();
  common(rep);
  auto* sol = app.add_subcommand("solve", "run the brute-force constraint solver");
  sol->add_option("--psi", o.psi, "state vector JSON file");
  sol->add_option("--space", o.space, "product space JSON file");
  sol->add_option("--fixture", o.fixture, "use a built-in state (sec2.3 or sec5)");
  sol->add_option("--seed", o.seed, "seed of the projector search");
  sol->add_option("--samples,--draws", o.draws, "random starting points for the search");
  common(sol);
  auto* sim = app.add_subcommand("simulate", "sample the joint slit/block measurement");
  sim->add_option("--psi", o.psi, "state vector JSON file");
  sim->add_option("--space", o.space, "product space JSON file");
  sim->add_option("--fixture", o.fixture, "use a built-in state (sec2.3 or sec5)");
  sim->add_option("--seed", o.seed, "64-bit sampling seed");
  sim->add_option("--samples", o.samples, "number of samples")->check(CLI::PositiveNumber);
  common(sim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*g3) return detail::generate3(o, out, err);
    if (*g4) return detail::generate4(o, out, err);
    if (*ver) return detail::verify(o, out, err);
    if (*rep) return detail::reproduce(o, out, err);
    if (*sol) return detail::solve(o, out, err);
    if (*sim) return detail::simulate(o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace slitdetect::cli

#endif  // SLITDETECT_CLI_HPP
