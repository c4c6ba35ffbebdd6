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

#include <cstdint>
#include <string>
#include <vector>

#include "quenchdist/fermion_corr.hpp"

namespace quenchdist {

enum class Axis : std::uint8_t { kI = 0, kX = 1, kY = 2, kZ = 3 };

enum class Parity { kEven, kOdd };

char axis_char(Axis a);

struct PauliFactor {
  int site;
  Axis axis;

  friend bool operator==(const PauliFactor&, const PauliFactor&) = default;
};

/// Tensor product of single-site Pauli operators, sites strictly ascending.
/// Identity factors are allowed (basis enumeration keeps them) and ignored by
/// every algebraic operation.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<PauliFactor> factors);

  /// "X0 Z1 Y3" style; whitespace separated axis+site tokens.
  static PauliString parse(const std::string& text);

  const std::vector<PauliFactor>& factors() const { return factors_; }

  bool is_identity() const;
  Parity parity() const;

  /// Lowest / highest site carrying a non-identity factor.
  int min_site() const;
  int max_site() const;

  PauliString translated(int shift) const;
  PauliString without_identities() const;

  /// Non-identity factors shifted so that min_site() == 0.
  PauliString normalized() const;

  std::string label() const;

  /// Product of two strings with disjoint non-identity supports.
  friend PauliString operator*(const PauliString& a, const PauliString& b);
  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<PauliFactor> factors_;
};

struct MajoranaFactor {
  int site;
  Majorana species;

  friend bool operator==(const MajoranaFactor&, const MajoranaFactor&) = default;
};

/// prefactor * gamma_1 gamma_2 ... with distinct factors in canonical order
/// (ascending site, A before B on the same site).
struct MajoranaMonomial {
  cplx prefactor{1.0, 0.0};
  std::vector<MajoranaFactor> factors;
};

/// Jordan-Wigner image of a parity-even Pauli string.
///
/// Convention (c_j = prod_{m<j} Z_m sigma^-_j, A = c + c^dag, B = c - c^dag):
///   Z_j = A_j B_j,   X_j = S_j A_j,   Y_j = i S_j B_j,   S_j = prod_{m<j} A_m B_m.
/// Strings below min_site() cancel pairwise, so the monomial only involves
/// sites in [min_site(), max_site()]. Throws std::invalid_argument for the
/// identity and for odd strings, whose image carries an unbounded string.
MajoranaMonomial pauli_to_majorana(const PauliString& op);

}  // namespace quenchdist
