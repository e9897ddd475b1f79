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

#ifndef SLITDETECT_IO_HPP
#define SLITDETECT_IO_HPP

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "slitdetect/errors.hpp"
#include "slitdetect/family3.hpp"
#include "slitdetect/family4.hpp"
#include "slitdetect/linalg.hpp"
#include "slitdetect/simulator.hpp"
#include "slitdetect/space.hpp"
#include "slitdetect/verifier.hpp"

namespace slitdetect::io {

using json = nlohmann::json;

namespace detail {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

}  // namespace detail

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

/// Accepts a bare number or a [re, im] pair.
inline Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw FormatError("complex value must be a number or [re, im]");
}

inline json to_json(const CMatrix& m) {
  json data = json::array();
  for (const auto& z : m.values()) data.push_back(complex_to_json(z));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline CMatrix matrix_from_json(const json& j) {
  return detail::guarded("matrix", [&] {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    std::vector<Complex> data;
    for (const auto& z : j.at("data")) data.push_back(complex_from_json(z));
    return CMatrix(rows, cols, std::move(data));
  });
}

inline json to_json(const CVector& v) {
  json data = json::array();
  for (const auto& z : v.values()) data.push_back(complex_to_json(z));
  return {{"dim", v.dim()}, {"data", std::move(data)}};
}

/// Accepts {"dim", "data"} or a bare array of complex values.
inline CVector vector_from_json(const json& j) {
  return detail::guarded("vector", [&] {
    const json& data = j.is_array() ? j : j.at("data");
    std::vector<Complex> out;
    for (const auto& z : data) out.push_back(complex_from_json(z));
    if (j.is_object() && j.contains("dim") && j.at("dim").get<std::size_t>() != out.size())
      throw FormatError("vector dim does not match data length");
    return CVector(std::move(out));
  });
}

inline json to_json(const ProductSpace& sp) {
  return {{"dim_i", sp.dim_i()}, {"rank_e", sp.rank_e()}, {"partition", sp.partition().dims()}};
}

inline ProductSpace space_from_json(const json& j) {
  return detail::guarded("space", [&] {
    const ProductSpace sp(j.at("dim_i").get<std::size_t>(),
                          BlockPartition(j.at("partition").get<std::vector<std::size_t>>()));
    if (j.contains("rank_e") && j.at("rank_e").get<std::size_t>() != sp.rank_e())
      throw DimensionError("rank_e must equal dim_i / 2");
    return sp;
  });
}

namespace detail {

inline void read_real(const json& j, const char* key, double& out) {
  if (j.contains(key)) out = j.at(key).get<double>();
}
inline void read_complex(const json& j, const char* key, Complex& out) {
  if (j.contains(key)) out = complex_from_json(j.at(key));
}
inline void read_vector(const json& j, const char* key, CVector& out) {
  if (j.contains(key)) out = vector_from_json(j.at(key));
}

}  // namespace detail

inline json to_json(const Family3Params& p) {
  return {{"p", p.p},
          {"theta", p.theta},
          {"mu2", complex_to_json(p.mu2)},
          {"mu3", complex_to_json(p.mu3)},
          {"lambda2", complex_to_json(p.lambda2)},
          {"lambda3", complex_to_json(p.lambda3)},
          {"seed_a3", to_json(p.seed_a3)},
          {"seed_b2", to_json(p.seed_b2)},
          {"seed_gamma3", to_json(p.seed_gamma3)},
          {"seed_delta2", to_json(p.seed_delta2)}};
}

/// Missing keys keep the ideal-experiment defaults.
inline Family3Params family3_params_from_json(const json& j) {
  return detail::guarded("family3 params", [&] {
    if (!j.is_object()) throw FormatError("params must be a JSON object");
    Family3Params p;
    detail::read_real(j, "p", p.p);
    detail::read_real(j, "theta", p.theta);
    detail::read_complex(j, "mu2", p.mu2);
    detail::read_complex(j, "mu3", p.mu3);
    detail::read_complex(j, "lambda2", p.lambda2);
    detail::read_complex(j, "lambda3", p.lambda3);
    detail::read_vector(j, "seed_a3", p.seed_a3);
    detail::read_vector(j, "seed_b2", p.seed_b2);
    detail::read_vector(j, "seed_gamma3", p.seed_gamma3);
    detail::read_vector(j, "seed_delta2", p.seed_delta2);
    return p;
  });
}

#define SLITDETECT_F4_COMPLEX(X) \
  X(a2) X(a3) X(b4) X(b5) X(l5) X(alpha2) X(alpha3) X(beta4) X(beta5) X(lambda5)
#define SLITDETECT_F4_SEEDS(X)                                                     \
  X(seed_a5) X(seed_c5) X(seed_e4) X(seed_e5) X(seed_delta5) X(seed_eta5) \
      X(seed_theta4) X(seed_theta5)

inline json to_json(const Family4Params& p) {
  json j{{"p", p.p}, {"m", p.m}, {"theta1", p.theta1}, {"theta2", p.theta2}};
#define X(name) j[#name] = complex_to_json(p.name);
  SLITDETECT_F4_COMPLEX(X)
#undef X
#define X(name) j[#name] = to_json(p.name);
  SLITDETECT_F4_SEEDS(X)
#undef X
  return j;
}

/// Missing keys keep the particular-choice defaults.
inline Family4Params family4_params_from_json(const json& j) {
  return detail::guarded("family4 params", [&] {
    if (!j.is_object()) throw FormatError("params must be a JSON object");
    Family4Params p;
    detail::read_real(j, "p", p.p);
    detail::read_real(j, "m", p.m);
    detail::read_real(j, "theta1", p.theta1);
    detail::read_real(j, "theta2", p.theta2);
#define X(name) detail::read_complex(j, #name, p.name);
    SLITDETECT_F4_COMPLEX(X)
#undef X
#define X(name) detail::read_vector(j, #name, p.name);
    SLITDETECT_F4_SEEDS(X)
#undef X
    return p;
  });
}

#undef SLITDETECT_F4_COMPLEX
#undef SLITDETECT_F4_SEEDS

inline json to_json(const SideCoefficients& s) {
  return {{"c2", complex_to_json(s.c2)}, {"c3", complex_to_json(s.c3)},
          {"d4", complex_to_json(s.d4)}, {"d5", complex_to_json(s.d5)},
          {"e4", complex_to_json(s.e4)}, {"e5", complex_to_json(s.e5)},
          {"norm2", s.norm2},            {"Gamma", s.gamma},
          {"Lambda2", s.lambda2},        {"Lambda3", s.lambda3},
          {"Lambda", s.lambda},          {"Delta", s.delta},
          {"Sigma2", s.sigma2},          {"Sigma3", s.sigma3},
          {"Sigma", s.sigma}};
}

inline json to_json(const SolutionBundle3& b) {
  return {{"kind", "family3"},
          {"space", to_json(b.space)},
          {"params", to_json(b.params)},
          {"derived", {{"u", complex_to_json(b.derived_u)}, {"q", b.derived_q}}},
          {"G_I", to_json(b.G_I)},
          {"E", to_json(b.E)},
          {"G", to_json(b.G)},
          {"T", to_json(b.T)},
          {"Y", to_json(b.Y)},
          {"psi", to_json(b.psi)}};
}

inline json to_json(const SolutionBundle4& b) {
  const auto& c = b.coefficients;
  return {{"kind", "family4"},
          {"space", to_json(b.space)},
          {"params", to_json(b.params)},
          {"derived",
           {{"u", complex_to_json(c.u)},
            {"z", complex_to_json(c.z)},
            {"q", c.q},
            {"n", c.n},
            {"x", to_json(c.x)},
            {"y", to_json(c.y)}}},
          {"G_I", to_json(b.G_I)},
          {"L_I", to_json(b.L_I)},
          {"E", to_json(b.E)},
          {"G", to_json(b.G)},
          {"L", to_json(b.L)},
          {"T", to_json(b.T)},
          {"Y", to_json(b.Y)},
          {"W", to_json(b.W)},
          {"psi", to_json(b.psi)}};
}

/// Verifies the operators stored in a bundle document as they are, without
/// regenerating them from the parameters.
inline VerificationReport verify_bundle_json(const json& j, const CheckOptions& opt) {
  return detail::guarded("bundle", [&] {
    const std::string kind = j.at("kind").get<std::string>();
    auto m = [&](const char* key) { return matrix_from_json(j.at(key)); };
    const CVector psi = vector_from_json(j.at("psi"));
    CheckOptions o = opt;
    if (j.contains("space") && !o.space) o.space = space_from_json(j.at("space"));
    VerificationReport r;
    if (kind == "family3") {
      const CMatrix T = m("T"), Y = m("Y");
      r = check3(m("E"), m("G"), T, Y, psi, o);
      r.correlations = detect_correlations(T, Y, nullptr, psi);
    } else if (kind == "family4") {
      const CMatrix T = m("T"), Y = m("Y"), W = m("W");
      r = check4(m("E"), m("G"), m("L"), T, Y, W, psi, o);
      r.correlations = detect_correlations(T, Y, &W, psi);
    } else {
      throw FormatError("unknown bundle kind '" + kind + "'");
    }
    return r;
  });
}

inline json to_json(const VerificationReport& r) {
  json conds = json::array();
  for (const auto& c : r.conditions)
    conds.push_back({{"name", c.name},
                     {"kind", to_string(c.kind)},
                     {"value", c.value},
                     {"threshold", c.threshold},
                     {"pass", c.pass},
                     {"detail", c.detail}});
  json corr = json::array();
  for (const auto& f : r.correlations)
    corr.push_back({{"identity", f.identity}, {"residual", f.residual}});
  return {{"passed", r.passed()},
          {"tolerance", r.tolerance},
          {"nonzero_threshold", r.nonzero_threshold},
          {"conditions", std::move(conds)},
          {"correlations", std::move(corr)}};
}

inline std::string to_csv(const VerificationReport& r) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "name,kind,value,threshold,pass\n";
  for (const auto& c : r.conditions)
    os << c.name << ',' << to_string(c.kind) << ',' << c.value << ',' << c.threshold << ','
       << (c.pass ? "true" : "false") << '\n';
  for (const auto& f : r.correlations)
    os << "correlation:" << f.identity << ",correlation," << f.residual << ",," << "true\n";
  return os.str();
}

inline json to_json(const OutcomeTally& t, const JointTable& exact) {
  json cells = json::array();
  for (int e : {1, 0})
    for (std::size_t b = 1; b <= t.blocks; ++b)
      cells.push_back({{"slit", e == 1 ? 1 : 2},
                       {"block", b},
                       {"count", t.count(e, b)},
                       {"frequency", t.frequency(e, b)},
                       {"std_error", t.std_error(e, b)},
                       {"exact", exact.at(e, b)}});
  return {{"samples", t.samples}, {"cells", std::move(cells)}};
}

inline std::string to_csv(const OutcomeTally& t, const JointTable& exact) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "slit,block,count,frequency,std_error,exact\n";
  for (int e : {1, 0})
    for (std::size_t b = 1; b <= t.blocks; ++b)
      os << (e == 1 ? 1 : 2) << ',' << b << ',' << t.count(e, b) << ',' << t.frequency(e, b)
         << ',' << t.std_error(e, b) << ',' << exact.at(e, b) << '\n';
  return os.str();
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace slitdetect::io

#endif  // SLITDETECT_IO_HPP
