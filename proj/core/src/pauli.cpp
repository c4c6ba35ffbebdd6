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

#include "quenchdist/pauli.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace quenchdist {
namespace {

// Stable merge sort of keys returning the number of inversions between
// distinct keys; equal keys are never exchanged.
std::size_t sort_count_inversions(std::vector<int>& keys, std::vector<int>& scratch,
                                  std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::size_t inv = sort_count_inversions(keys, scratch, lo, mid) +
                    sort_count_inversions(keys, scratch, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t out = lo;
  while (i < mid && j < hi) {
    if (keys[j] < keys[i]) {
      inv += mid - i;
      scratch[out++] = keys[j++];
    } else {
      scratch[out++] = keys[i++];
    }
  }
  while (i < mid) scratch[out++] = keys[i++];
  while (j < hi) scratch[out++] = keys[j++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, keys.begin() + lo);
  return inv;
}

}  // namespace

char axis_char(Axis a) {
  switch (a) {
    case Axis::kI: return 'I';
    case Axis::kX: return 'X';
    case Axis::kY: return 'Y';
    case Axis::kZ: return 'Z';
  }
  return '?';
}

PauliString::PauliString(std::vector<PauliFactor> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 1; i < factors_.size(); ++i)
    if (factors_[i].site <= factors_[i - 1].site)
      throw std::invalid_argument("PauliString sites must be strictly ascending");
}

PauliString PauliString::parse(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  std::vector<PauliFactor> out;
  while (is >> tok) {
    if (tok.size() < 2) throw std::invalid_argument("bad Pauli token '" + tok + "'");
    Axis a;
    switch (tok[0]) {
      case 'I': a = Axis::kI; break;
      case 'X': a = Axis::kX; break;
      case 'Y': a = Axis::kY; break;
      case 'Z': a = Axis::kZ; break;
      default: throw std::invalid_argument("bad Pauli axis in '" + tok + "'");
    }
    out.push_back({std::stoi(tok.substr(1)), a});
  }
  std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.site < y.site; });
  return PauliString(std::move(out));
}

bool PauliString::is_identity() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PauliFactor& f) { return f.axis == Axis::kI; });
}

Parity PauliString::parity() const {
  int flips = 0;
  for (const auto& f : factors_)
    if (f.axis == Axis::kX || f.axis == Axis::kY) ++flips;
  return flips % 2 == 0 ? Parity::kEven : Parity::kOdd;
}

int PauliString::min_site() const {
  for (const auto& f : factors_)
    if (f.axis != Axis::kI) return f.site;
  throw std::logic_error("identity string has no support");
}

int PauliString::max_site() const {
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
    if (it->axis != Axis::kI) return it->site;
  throw std::logic_error("identity string has no support");
}

PauliString PauliString::translated(int shift) const {
  PauliString out = *this;
  for (auto& f : out.factors_) f.site += shift;
  return out;
}

PauliString PauliString::without_identities() const {
  std::vector<PauliFactor> out;
  for (const auto& f : factors_)
    if (f.axis != Axis::kI) out.push_back(f);
  return PauliString(std::move(out));
}

PauliString PauliString::normalized() const {
  if (is_identity()) return {};
  return without_identities().translated(-min_site());
}

std::string PauliString::label() const {
  std::string s;
  for (const auto& f : factors_) {
    if (f.axis == Axis::kI) continue;
    if (!s.empty()) s += ' ';
    s += axis_char(f.axis);
    s += std::to_string(f.site);
  }
  return s.empty() ? "I" : s;
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  std::vector<PauliFactor> out;
  const auto& fa = a.factors_;
  const auto& fb = b.factors_;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].site < fb[j].site)) {
      out.push_back(fa[i++]);
    } else if (i == fa.size() || fb[j].site < fa[i].site) {
      out.push_back(fb[j++]);
    } else {
      if (fa[i].axis != Axis::kI && fb[j].axis != Axis::kI)
        throw std::invalid_argument("Pauli product requires disjoint supports (site " +
                                    std::to_string(fa[i].site) + ")");
      out.push_back(fa[i].axis == Axis::kI ? fb[j] : fa[i]);
      ++i;
      ++j;
    }
  }
  return PauliString(std::move(out));
}

MajoranaMonomial pauli_to_majorana(const PauliString& op) {
  if (op.is_identity())
    throw std::invalid_argument("identity has no Majorana image; handle it upstream");
  if (op.parity() == Parity::kOdd)
    throw std::invalid_argument("odd Pauli string " + op.label() +
                                " maps to a non-local Majorana monomial");
  const int lo = op.min_site();
  // key = 2 (site - lo) + species (A = 0, B = 1)
  std::vector<int> keys;
  cplx prefactor(1.0, 0.0);
  for (const auto& f : op.factors()) {
    const int base = 2 * (f.site - lo);
    switch (f.axis) {
      case Axis::kI: break;
      case Axis::kZ:
        keys.push_back(base);
        keys.push_back(base + 1);
        break;
      case Axis::kX:
      case Axis::kY:
        for (int m = 0; m < f.site - lo; ++m) {
          keys.push_back(2 * m);
          keys.push_back(2 * m + 1);
        }
        if (f.axis == Axis::kX) {
          keys.push_back(base);
        } else {
          keys.push_back(base + 1);
          prefactor *= cplx(0.0, 1.0);
        }
        break;
    }
  }
  std::vector<int> scratch(keys.size());
  if (sort_count_inversions(keys, scratch, 0, keys.size()) % 2 == 1) prefactor = -prefactor;

  MajoranaMonomial out;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    const std::size_t count = j - i;
    const bool is_b = (keys[i] % 2) == 1;
    // A^2 = 1, B^2 = -1
    if (is_b && (count / 2) % 2 == 1) prefactor = -prefactor;
    if (count % 2 == 1)
      out.factors.push_back({lo + keys[i] / 2, is_b ? Majorana::kB : Majorana::kA});
    i = j;
  }
  out.prefactor = prefactor;
  return out;
}

}  // namespace quenchdist
