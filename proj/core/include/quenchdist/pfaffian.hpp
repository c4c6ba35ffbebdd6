// Copyright 2026 The quenchdist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include "quenchdist/model.hpp"

namespace quenchdist {

inline constexpr Eigen::Index kPfaffianDimensionCap = 512;

/// Pfaffian of an antisymmetric complex matrix by Parlett-Reid
/// tridiagonalization with partial pivoting, O(n^3).
///
/// Throws std::invalid_argument for non-square, odd-dimensional, or
/// non-antisymmetric input and for dimensions above kPfaffianDimensionCap.
/// The empty matrix has Pfaffian 1.
cplx pfaffian(const Eigen::MatrixXcd& m);

/// Same, consuming the argument as workspace. Skips the antisymmetry check.
cplx pfaffian_inplace(Eigen::MatrixXcd& m);

}  // namespace quenchdist
