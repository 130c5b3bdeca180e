// Copyright 2026 The Beamsel Authors.
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

#ifndef BEAMSEL_INDEX_SET_H_
#define BEAMSEL_INDEX_SET_H_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace beamsel {

// Subset of agent indices over a ground set of at most 64 elements.
//
// Indices are zero-based in the API. Text renderings ("2,3,4") are one-based
// to match how agents are numbered in documents and on the command line.
class IndexSet {
 public:
  static constexpr int kMaxElements = 64;

  constexpr IndexSet() = default;
  IndexSet(std::initializer_list<int> indices);

  static constexpr IndexSet FromMask(uint64_t mask) {
    IndexSet s;
    s.mask_ = mask;
    return s;
  }
  // {0, ..., n-1}.
  static IndexSet Full(int n);
  static IndexSet FromIndices(const std::vector<int>& indices);
  // Parses a one-based, comma separated list such as "2,3,4". Empty string
  // is the empty set.
  static IndexSet ParseOneBased(std::string_view text);

  constexpr uint64_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  bool Contains(int i) const;

  void Insert(int i);
  void Erase(int i);
  IndexSet With(int i) const;
  IndexSet Without(int i) const;

  constexpr bool IsSubsetOf(IndexSet other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  // Largest index + 1, or 0 for the empty set.
  int Extent() const { return mask_ == 0 ? 0 : 64 - std::countl_zero(mask_); }

  // Ascending order.
  std::vector<int> ToVector() const;
  std::string ToOneBasedString() const;

  template <typename Fn>
  void ForEach(Fn&& fn) const {
    for (uint64_t m = mask_; m != 0; m &= m - 1) {
      fn(std::countr_zero(m));
    }
  }

  friend constexpr bool operator==(IndexSet a, IndexSet b) = default;

 private:
  uint64_t mask_ = 0;
};

// Strict weak order used as the deterministic tie rule across the library:
// smaller cardinality first, then the lexicographically smaller ascending
// index sequence.
bool CardinalityThenLexLess(IndexSet a, IndexSet b);

}  // namespace beamsel

#endif  // BEAMSEL_INDEX_SET_H_
