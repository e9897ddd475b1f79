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

#ifndef SLITDETECT_FIXTURES_HPP
#define SLITDETECT_FIXTURES_HPP

#include <cmath>
#include <vector>

#include "slitdetect/linalg.hpp"
#include "slitdetect/space.hpp"

// Hand-transcribed reference matrices and states. They do not depend on the
// generators and serve as ground truth for them.
namespace slitdetect::fixtures {

/// 6x6 projector G_I of the spin-3/2 ideal experiment.
inline CMatrix ideal_g() {
  const double s3 = std::sqrt(3.0), s5 = std::sqrt(5.0), s15 = std::sqrt(15.0);
  return CMatrix{
      {2. / 3, -1 / (2 * s3), 1. / 3, 1 / (6 * s5), -1 / (2 * s15), -1 / (6 * s5)},
      {-1 / (2 * s3), 1. / 2, 1 / (2 * s3), -1 / (2 * s15), 1 / (2 * s5), 1 / (2 * s15)},
      {1. / 3, 1 / (2 * s3), 2. / 3, -1 / (6 * s5), 1 / (2 * s15), 1 / (6 * s5)},
      {1 / (6 * s5), -1 / (2 * s15), -1 / (6 * s5), 8. / 15, -1 / (10 * s3), 7. / 15},
      {-1 / (2 * s15), 1 / (2 * s5), 1 / (2 * s15), -1 / (10 * s3), 1. / 10, 1 / (10 * s3)},
      {-1 / (6 * s5), 1 / (2 * s15), 1 / (6 * s5), 7. / 15, 1 / (10 * s3), 8. / 15}};
}

inline ProductSpace ideal_space() { return ProductSpace(6, BlockPartition::three_property()); }

/// State of the ideal experiment, 24 components, unit norm.
/// The |3/2> terms of x2 and x3 follow the family formula (see literal_ideal_psi).
inline CVector ideal_psi() {
  const double h = std::sqrt(3.0) / 2;
  return (1.0 / 3) * CVector{1, h, 0, 0, 0, 1, 0, 0, 1, -h, 0, 0,
                             0, 0, 1, h, 0, 0, 0, 1, 0, 0, 1, -h};
}

/// The 24-vector exactly as displayed. It carries the |3/2> component of x3
/// in x2 and violates Y psi = G psi against ideal_g(); kept for regression.
inline CVector literal_ideal_psi() {
  const double h = std::sqrt(3.0) / 2;
  return (1.0 / 3) * CVector{1, h, 0, 0, 1, 1, 0, 0, 0, -h, 0, 0,
                             0, 0, 1, h, 0, 0, 0, 1, 0, 0, 1, -h};
}

/// 10x10 G of the four-property particular choice.
inline CMatrix particular_g() {
  const double r = std::sqrt(2.0) / 9;
  return CMatrix{
      {11. / 72, -1. / 36, -11. / 72, -1. / 8, -1. / 8, r, -r, -r, 0, 0},
      {-1. / 36, 5. / 18, 1. / 36, -1. / 4, -1. / 4, -r, r, r, 0, 0},
      {-11. / 72, 1. / 36, 11. / 72, 1. / 8, 1. / 8, -r, r, r, 0, 0},
      {-1. / 8, -1. / 4, 1. / 8, 3. / 8, 3. / 8, 0, 0, 0, 0, 0},
      {-1. / 8, -1. / 4, 1. / 8, 3. / 8, 3. / 8, 0, 0, 0, 0, 0},
      {r, -r, -r, 0, 0, 19. / 72, -5. / 36, -19. / 72, -1. / 8, -1. / 8},
      {-r, r, r, 0, 0, -5. / 36, 7. / 18, 5. / 36, -1. / 4, -1. / 4},
      {-r, r, r, 0, 0, -19. / 72, 5. / 36, 19. / 72, 1. / 8, 1. / 8},
      {0, 0, 0, 0, 0, -1. / 8, -1. / 4, 1. / 8, 3. / 8, 3. / 8},
      {0, 0, 0, 0, 0, -1. / 8, -1. / 4, 1. / 8, 3. / 8, 3. / 8}};
}

/// 10x10 L of the four-property particular choice.
inline CMatrix particular_l() {
  const double r = 4 / (19 * std::sqrt(3.0));
  return CMatrix{
      {67. / 456, -5. / 228, 5. / 456, -3. / 152, -43. / 152, r, -r, -r, 0, 0},
      {-5. / 228, 31. / 114, -31. / 228, -27. / 76, -7. / 76, -r, r, r, 0, 0},
      {5. / 456, -31. / 228, 139. / 456, 51. / 152, -29. / 152, -r, r, r, 0, 0},
      {-3. / 152, -27. / 76, 51. / 152, 89. / 152, 9. / 152, 0, 0, 0, 0, 0},
      {-43. / 152, -7. / 76, -29. / 152, 9. / 152, 129. / 152, 0, 0, 0, 0, 0},
      {r, -r, -r, 0, 0, 3. / 8, -1. / 4, -33. / 152, -3. / 152, -43. / 152},
      {-r, r, r, 0, 0, -1. / 4, 1. / 2, 7. / 76, -27. / 76, -7. / 76},
      {-r, r, r, 0, 0, -33. / 152, 7. / 76, 81. / 152, 51. / 152, -29. / 152},
      {0, 0, 0, 0, 0, -3. / 152, -27. / 76, 51. / 152, 89. / 152, 9. / 152},
      {0, 0, 0, 0, 0, -43. / 152, -7. / 76, -29. / 152, 9. / 152, 129. / 152}};
}

inline ProductSpace particular_space() {
  return ProductSpace(10, BlockPartition::four_property());
}

/// 80-component state of the particular choice with unit seeds, unnormalized.
inline CVector particular_psi() {
  const double t = 1. / 3;
  return CVector{-t, 0, -t, 0, 7 * t, 0, 0, 0,  -2 * t, 0, t, 0, 2, 0, 0, 0,
                 t, 0, -2 * t, 0, t, 0, 0, 0,   1, 0, -2 * t, 0, 1, 0, 0, 0,
                 1, 0, 1, 0, 1, 0, 0, 0,
                 0, 0, 0, -t, 0, 0, -t, 7 * t,  0, 0, 0, -2 * t, 0, 0, t, 2,
                 0, 0, 0, t, 0, 0, -2 * t, t,   0, 0, 0, 1, 0, 0, -2 * t, 1,
                 0, 0, 0, 1, 0, 0, 1, 1};
}

}  // namespace slitdetect::fixtures

#endif  // SLITDETECT_FIXTURES_HPP
