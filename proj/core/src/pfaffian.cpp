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

#include "quenchdist/pfaffian.hpp"

#include <stdexcept>
#include <string>

namespace quenchdist {
namespace {

void check_shape(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("pfaffian: matrix is not square");
  if (m.rows() % 2 != 0)
    throw std::invalid_argument("pfaffian: odd dimension " + std::to_string(m.rows()));
  if (m.rows() > kPfaffianDimensionCap)
    throw std::invalid_argument("pfaffian: dimension " + std::to_string(m.rows()) +
                                " exceeds cap " + std::to_string(kPfaffianDimensionCap));
}

}  // namespace

cplx pfaffian(const Eigen::MatrixXcd& m) {
  check_shape(m);
  if (m.rows() == 0) return {1.0, 0.0};
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("pfaffian: matrix is not antisymmetric");
  Eigen::MatrixXcd work = m;
  return pfaffian_inplace(work);
}

cplx pfaffian_inplace(Eigen::MatrixXcd& a) {
  check_shape(a);
  const Eigen::Index n = a.rows();
  cplx result(1.0, 0.0);
  Eigen::VectorXcd tau;
  Eigen::VectorXcd col;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index pivot;
    a.col(k).tail(n - k - 1).cwiseAbs2().maxCoeff(&pivot);
    pivot += k + 1;
    if (pivot != k + 1) {
      a.row(k + 1).tail(n - k).swap(a.row(pivot).tail(n - k));
      a.col(k + 1).tail(n - k).swap(a.col(pivot).tail(n - k));
      result = -result;
    }
    const cplx akk1 = a(k, k + 1);
    if (akk1 == cplx(0.0, 0.0)) return {0.0, 0.0};
    result *= akk1;
    const Eigen::Index rest = n - k - 2;
    if (rest > 0) {
      tau = a.row(k).tail(rest).transpose() / akk1;
      col = a.col(k + 1).tail(rest);
      a.bottomRightCorner(rest, rest).noalias() += tau * col.transpose();
      a.bottomRightCorner(rest, rest).noalias() -= col * tau.transpose();
    }
  }
  return result;
}

}  // namespace quenchdist
