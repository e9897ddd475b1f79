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

#ifndef SLITDETECT_SPACE_HPP
#define SLITDETECT_SPACE_HPP

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slitdetect/errors.hpp"
#include "slitdetect/linalg.hpp"

namespace slitdetect {

/// Ordered dimensions of the blocks A_1, A_2, ... splitting H_II.
class BlockPartition {
 public:
  BlockPartition() : BlockPartition(std::vector<std::size_t>{1, 1, 1, 1}) {}
  explicit BlockPartition(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.size() != 4 && dims_.size() != 8)
      throw ModeError("partition must have 4 or 8 blocks, got " +
                      std::to_string(dims_.size()));
    for (auto d : dims_)
      if (d == 0) throw DimensionError("partition blocks must be nonempty");
  }

  static BlockPartition three_property() { return BlockPartition({1, 1, 1, 1}); }
  static BlockPartition four_property() {
    return BlockPartition({1, 1, 1, 1, 1, 1, 1, 1});
  }

  [[nodiscard]] const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  [[nodiscard]] std::size_t size() const noexcept { return dims_.size(); }
  [[nodiscard]] std::size_t total() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0});
  }
  /// Offset of block i (zero based) inside H_II.
  [[nodiscard]] std::size_t offset(std::size_t i) const {
    return std::accumulate(dims_.begin(), dims_.begin() + static_cast<long>(i),
                           std::size_t{0});
  }

  friend bool operator==(const BlockPartition&, const BlockPartition&) = default;

 private:
  std::vector<std::size_t> dims_;
};

class ProductSpace {
 public:
  ProductSpace() : ProductSpace(6, BlockPartition::three_property()) {}
  ProductSpace(std::size_t dim_i, BlockPartition partition)
      : dim_i_(dim_i), partition_(std::move(partition)) {
    if (dim_i_ == 0 || dim_i_ % 2 != 0)
      throw DimensionError("dim(H_I) must be positive and even, got " +
                           std::to_string(dim_i_));
  }

  [[nodiscard]] std::size_t dim_i() const noexcept { return dim_i_; }
  [[nodiscard]] std::size_t rank_e() const noexcept { return dim_i_ / 2; }
  [[nodiscard]] std::size_t dim_ii() const { return partition_.total(); }
  [[nodiscard]] std::size_t dim() const { return dim_i_ * dim_ii(); }
  [[nodiscard]] const BlockPartition& partition() const noexcept { return partition_; }
  /// 3 for a four-block partition, 4 for an eight-block one.
  [[nodiscard]] int mode() const noexcept { return partition_.size() == 4 ? 3 : 4; }

  friend bool operator==(const ProductSpace&, const ProductSpace&) = default;

 private:
  std::size_t dim_i_;
  BlockPartition partition_;
};

/// E_I = diag(1,...,1,0,...,0), projecting on the first rank_e basis vectors.
inline CMatrix slit_projector(const ProductSpace& sp) {
  CMatrix e(sp.dim_i(), sp.dim_i());
  for (std::size_t i = 0; i < sp.rank_e(); ++i) e(i, i) = 1.0;
  return e;
}

inline CMatrix lift_left(const CMatrix& op, const ProductSpace& sp) {
  if (!op.square() || op.rows() != sp.dim_i())
    throw DimensionError("lift_left expects a dim_i x dim_i operator");
  return kron(op, CMatrix::identity(sp.dim_ii()));
}

inline CMatrix lift_right(const CMatrix& op, const ProductSpace& sp) {
  if (!op.square() || op.rows() != sp.dim_ii())
    throw DimensionError("lift_right expects a dim_ii x dim_ii operator");
  return kron(CMatrix::identity(sp.dim_i()), op);
}

/// Sum of the diagonal projectors A_i for the listed (1-based) blocks.
inline CMatrix block_projector(const ProductSpace& sp, std::span<const int> blocks) {
  const auto& part = sp.partition();
  CMatrix a(sp.dim_ii(), sp.dim_ii());
  for (int b : blocks) {
    if (b < 1 || static_cast<std::size_t>(b) > part.size())
      throw ModeError("block index out of range");
    const auto i = static_cast<std::size_t>(b - 1);
    for (std::size_t k = 0; k < part.dims()[i]; ++k) {
      const std::size_t j = part.offset(i) + k;
      a(j, j) = 1.0;
    }
  }
  return a;
}

inline CMatrix block_projector(const ProductSpace& sp, std::initializer_list<int> blocks) {
  return block_projector(sp, std::span<const int>(blocks.begin(), blocks.size()));
}

/// 1-based block lists making up (T_II, Y_II) for four blocks and
/// (T_II, Y_II, W_II) for eight.
inline std::vector<std::vector<int>> detector_blocks(const BlockPartition& part) {
  if (part.size() == 4) return {{1, 2}, {1, 3}};
  if (part.size() == 8) return {{1, 2, 3, 5}, {1, 2, 4, 6}, {1, 3, 4, 7}};
  throw ModeError("unsupported partition length");
}

inline std::vector<CMatrix> detector_projectors(const ProductSpace& sp) {
  std::vector<CMatrix> out;
  for (const auto& blocks : detector_blocks(sp.partition()))
    out.push_back(block_projector(sp, blocks));
  return out;
}

/// Psi = sum_j e_j (x) x_j + sum_k r_k (x) y_k with each x_j, y_k cut along A_i.
struct BlockVector {
  std::vector<std::vector<CVector>> x_blocks;
  std::vector<std::vector<CVector>> y_blocks;

  friend bool operator==(const BlockVector&, const BlockVector&) = default;
};

inline BlockVector decompose(const CVector& v, const ProductSpace& sp) {
  if (v.dim() != sp.dim())
    throw DimensionError("decompose: vector has dim " + std::to_string(v.dim()) +
                         ", space has " + std::to_string(sp.dim()));
  const auto& part = sp.partition();
  const std::size_t d2 = sp.dim_ii();
  BlockVector bv;
  for (std::size_t row = 0; row < sp.dim_i(); ++row) {
    std::vector<CVector> cut;
    for (std::size_t b = 0; b < part.size(); ++b) {
      CVector s(part.dims()[b]);
      for (std::size_t k = 0; k < s.dim(); ++k) s[k] = v[row * d2 + part.offset(b) + k];
      cut.push_back(std::move(s));
    }
    (row < sp.rank_e() ? bv.x_blocks : bv.y_blocks).push_back(std::move(cut));
  }
  return bv;
}

inline CVector compose(const BlockVector& bv, const ProductSpace& sp) {
  const auto& part = sp.partition();
  if (bv.x_blocks.size() != sp.rank_e() || bv.y_blocks.size() != sp.dim_i() - sp.rank_e())
    throw DimensionError("compose: wrong number of x/y rows");
  std::vector<Complex> out;
  out.reserve(sp.dim());
  for (const auto* rows : {&bv.x_blocks, &bv.y_blocks})
    for (const auto& cut : *rows) {
      if (cut.size() != part.size()) throw DimensionError("compose: wrong block count");
      for (std::size_t b = 0; b < part.size(); ++b) {
        if (cut[b].dim() != part.dims()[b])
          throw DimensionError("compose: sub-block dimension mismatch");
        out.insert(out.end(), cut[b].values().begin(), cut[b].values().end());
      }
    }
  return CVector(std::move(out));
}

}  // namespace slitdetect

#endif  // SLITDETECT_SPACE_HPP
