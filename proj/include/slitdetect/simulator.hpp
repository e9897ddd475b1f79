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

#ifndef SLITDETECT_SIMULATOR_HPP
#define SLITDETECT_SIMULATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "slitdetect/errors.hpp"
#include "slitdetect/linalg.hpp"
#include "slitdetect/rng.hpp"
#include "slitdetect/space.hpp"

namespace slitdetect {

struct ExperimentSpec {
  CVector psi;
  ProductSpace space;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
};

/// Joint distribution of the slit bit e (1: slit 1, i.e. E = 1) and the
/// H_II block index i (1-based). Cell (e, i) lives at e * blocks + i - 1.
struct JointTable {
  std::size_t blocks = 0;
  std::vector<double> p;

  [[nodiscard]] double at(int e, std::size_t block) const {
    return p.at(static_cast<std::size_t>(e) * blocks + block - 1);
  }
  [[nodiscard]] double total() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
  }
};

struct OutcomeTally {
  std::size_t blocks = 0;
  std::uint64_t samples = 0;
  std::vector<std::uint64_t> counts;

  [[nodiscard]] std::uint64_t count(int e, std::size_t block) const {
    return counts.at(static_cast<std::size_t>(e) * blocks + block - 1);
  }
  [[nodiscard]] double frequency(int e, std::size_t block) const {
    return static_cast<double>(count(e, block)) / static_cast<double>(samples);
  }
  /// Binomial standard error of a cell frequency.
  [[nodiscard]] double std_error(int e, std::size_t block) const {
    const double f = frequency(e, block);
    return std::sqrt(f * (1.0 - f) / static_cast<double>(samples));
  }
  /// Counts with e in `slits` and block in `block_set`.
  [[nodiscard]] std::uint64_t count_where(const std::vector<int>& slits,
                                          const std::vector<int>& block_set) const {
    std::uint64_t c = 0;
    for (int e : slits)
      for (int b : block_set) c += count(e, static_cast<std::size_t>(b));
    return c;
  }

  friend bool operator==(const OutcomeTally&, const OutcomeTally&) = default;
};

namespace simulator {

inline JointTable exact_joint(const CVector& psi, const ProductSpace& sp) {
  if (psi.dim() != sp.dim()) throw DimensionError("state does not match the space");
  const auto& part = sp.partition();
  const std::size_t d2 = sp.dim_ii();
  JointTable t{part.size(), std::vector<double>(2 * part.size(), 0.0)};
  for (std::size_t row = 0; row < sp.dim_i(); ++row) {
    const int e = row < sp.rank_e() ? 1 : 0;
    for (std::size_t b = 0; b < part.size(); ++b)
      for (std::size_t k = 0; k < part.dims()[b]; ++k)
        t.p[static_cast<std::size_t>(e) * part.size() + b] +=
            std::norm(psi[row * d2 + part.offset(b) + k]);
  }
  return t;
}

/// Cumulative table for inverse-CDF sampling. Cells after the last positive
/// one are pinned to 1 so rounding never selects a zero-probability cell.
inline std::vector<double> cumulative(const JointTable& t) {
  std::vector<double> cdf(t.p.size());
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < t.p.size(); ++i) {
    acc += t.p[i];
    cdf[i] = acc;
    if (t.p[i] > 0.0) last = i;
  }
  for (std::size_t i = last; i < cdf.size(); ++i) cdf[i] = 1.0;
  return cdf;
}

/// Draws `samples` i.i.d. outcomes. Sample j uses counter_uniform(seed, j), so
/// the tally is the same for every shard count; shards only split the index range.
inline OutcomeTally run(const ExperimentSpec& spec, std::size_t shards = 1) {
  if (std::abs(norm(spec.psi) - 1.0) > 1e-12) throw Error("state must have unit norm");
  if (shards == 0) throw Error("shard count must be positive");
  const JointTable t = exact_joint(spec.psi, spec.space);
  const std::vector<double> cdf = cumulative(t);
  OutcomeTally tally{t.blocks, spec.samples, std::vector<std::uint64_t>(t.p.size(), 0)};
  const std::uint64_t per = (spec.samples + shards - 1) / shards;
  for (std::size_t s = 0; s < shards; ++s) {
    const std::uint64_t lo = std::min<std::uint64_t>(s * per, spec.samples);
    const std::uint64_t hi = std::min<std::uint64_t>(lo + per, spec.samples);
    std::vector<std::uint64_t> local(t.p.size(), 0);
    for (std::uint64_t j = lo; j < hi; ++j) {
      const double u = counter_uniform(spec.seed, j);
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      ++local[static_cast<std::size_t>(it - cdf.begin())];
    }
    for (std::size_t c = 0; c < local.size(); ++c) tally.counts[c] += local[c];
  }
  return tally;
}

/// Empirical probability that detector `which` (0: T, 1: Y, 2: W) fires.
inline double detector_rate(const OutcomeTally& tally, const ProductSpace& sp, int which) {
  const auto sets = detector_blocks(sp.partition());
  return static_cast<double>(tally.count_where({0, 1}, sets.at(static_cast<std::size_t>(which)))) /
         static_cast<double>(tally.samples);
}

/// Empirical p(E = 1 | T = 1).
inline double slit_given_t(const OutcomeTally& tally, const ProductSpace& sp) {
  const auto t_blocks = detector_blocks(sp.partition()).front();
  const auto both = tally.count_where({1}, t_blocks);
  const auto t1 = tally.count_where({0, 1}, t_blocks);
  if (t1 == 0) throw ZeroConditioning("no sample with T = 1");
  return static_cast<double>(both) / static_cast<double>(t1);
}

/// Total-variation distance between the tally frequencies and the exact table.
inline double tv_distance(const OutcomeTally& tally, const JointTable& t) {
  double s = 0.0;
  for (std::size_t c = 0; c < t.p.size(); ++c)
    s += std::abs(static_cast<double>(tally.counts[c]) / static_cast<double>(tally.samples) -
                  t.p[c]);
  return 0.5 * s;
}

}  // namespace simulator
}  // namespace slitdetect

#endif  // SLITDETECT_SIMULATOR_HPP
