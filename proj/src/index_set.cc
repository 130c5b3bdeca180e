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

#include "beamsel/index_set.h"

#include <charconv>

#include "beamsel/error.h"

namespace beamsel {
namespace {

void CheckIndex(int i) {
  if (i < 0 || i >= IndexSet::kMaxElements) {
    throw Error(ErrorKind::kInput,
                "index " + std::to_string(i) + " outside [0, 64)");
  }
}

}  // namespace

IndexSet::IndexSet(std::initializer_list<int> indices) {
  for (int i : indices) Insert(i);
}

IndexSet IndexSet::Full(int n) {
  if (n < 0 || n > kMaxElements) {
    throw Error(ErrorKind::kInput,
                "ground set size " + std::to_string(n) + " outside [0, 64]");
  }
  return FromMask(n == kMaxElements ? ~uint64_t{0}
                                    : (uint64_t{1} << n) - 1);
}

IndexSet IndexSet::FromIndices(const std::vector<int>& indices) {
  IndexSet s;
  for (int i : indices) {
    if (s.Contains(i)) {
      throw Error(ErrorKind::kInput,
                  "duplicate index " + std::to_string(i));
    }
    s.Insert(i);
  }
  return s;
}

IndexSet IndexSet::ParseOneBased(std::string_view text) {
  IndexSet s;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(pos, end - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() ||
        ptr != token.data() + token.size()) {
      throw Error(ErrorKind::kParse,
                  "bad subset element '" + std::string(token) + "'");
    }
    if (value < 1 || value > kMaxElements) {
      throw Error(ErrorKind::kInput,
                  "subset element " + std::to_string(value) +
                      " outside [1, 64]");
    }
    if (s.Contains(value - 1)) {
      throw Error(ErrorKind::kInput,
                  "duplicate subset element " + std::to_string(value));
    }
    s.Insert(value - 1);
    pos = end + 1;
  }
  return s;
}

bool IndexSet::Contains(int i) const {
  return i >= 0 && i < kMaxElements && ((mask_ >> i) & 1u) != 0;
}

void IndexSet::Insert(int i) {
  CheckIndex(i);
  mask_ |= uint64_t{1} << i;
}

void IndexSet::Erase(int i) {
  CheckIndex(i);
  mask_ &= ~(uint64_t{1} << i);
}

IndexSet IndexSet::With(int i) const {
  IndexSet s = *this;
  s.Insert(i);
  return s;
}

IndexSet IndexSet::Without(int i) const {
  IndexSet s = *this;
  s.Erase(i);
  return s;
}

std::vector<int> IndexSet::ToVector() const {
  std::vector<int> out;
  out.reserve(size());
  ForEach([&](int i) { out.push_back(i); });
  return out;
}

std::string IndexSet::ToOneBasedString() const {
  std::string out;
  ForEach([&](int i) {
    if (!out.empty()) out += ',';
    out += std::to_string(i + 1);
  });
  return out;
}

bool CardinalityThenLexLess(IndexSet a, IndexSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  const uint64_t diff = a.mask() ^ b.mask();
  if (diff == 0) return false;
  // With equal cardinality, the sequence holding the smallest element of the
  // symmetric difference is the lexicographically smaller one.
  return (a.mask() & (diff & -diff)) != 0;
}

}  // namespace beamsel
