// Copyright 2026 The Namesake Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace namesake {

// Symmetric pairwise probabilities for one block, stored as the strict upper
// triangle in row-major order. The diagonal is not stored.
class PairProbabilityMatrix {
 public:
  PairProbabilityMatrix() = default;
  PairProbabilityMatrix(std::string block_key, std::vector<std::string> ref_ids,
                        double fill = 0.5)
      : block_key_(std::move(block_key)),
        ref_ids_(std::move(ref_ids)),
        values_(PairCount(ref_ids_.size()), fill) {}

  static constexpr std::size_t PairCount(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

  // Offset of (i, j), i != j, in the upper-triangle store.
  static constexpr std::size_t Offset(std::size_t i, std::size_t j, std::size_t n) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t size() const { return ref_ids_.size(); }
  std::size_t pair_count() const { return values_.size(); }

  double operator()(std::size_t i, std::size_t j) const {
    return values_[Offset(i, j, size())];
  }
  void set(std::size_t i, std::size_t j, double v) { values_[Offset(i, j, size())] = v; }

  const std::string& block_key() const { return block_key_; }
  const std::vector<std::string>& ref_ids() const { return ref_ids_; }
  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const PairProbabilityMatrix&, const PairProbabilityMatrix&) = default;

 private:
  std::string block_key_;
  std::vector<std::string> ref_ids_;
  std::vector<double> values_;
};

// Matrix with ids "0".."n-1" filled from a row-major upper-triangle list.
inline PairProbabilityMatrix MatrixFromUpperTriangle(std::size_t n,
                                                     const std::vector<double>& upper,
                                                     std::string block_key = "") {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  PairProbabilityMatrix m(std::move(block_key), std::move(ids));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n && k < upper.size(); ++j) m.set(i, j, upper[k++]);
  }
  return m;
}

}  // namespace namesake
