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

#ifndef SLITDETECT_SLITDETECT_HPP
#define SLITDETECT_SLITDETECT_HPP

#include "slitdetect/errors.hpp"
#include "slitdetect/family3.hpp"
#include "slitdetect/family4.hpp"
#include "slitdetect/fixtures.hpp"
#include "slitdetect/linalg.hpp"
#include "slitdetect/simulator.hpp"
#include "slitdetect/solver.hpp"
#include "slitdetect/space.hpp"
#include "slitdetect/verifier.hpp"

#endif  // SLITDETECT_SLITDETECT_HPP
