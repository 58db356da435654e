// Copyright 2026 The matchgp developers
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
#include <vector>

#include "matchgp/common.hpp"

namespace matchgp {

/// Lexicographic enumeration of the m-subsets of {1, ..., N}. Subsets are
/// stored sorted ascending; ranks are combinadic and stable across calls.
class SubsetIndex {
 public:
  SubsetIndex(int N, int m);

  int N() const { return N_; }
  int m() const { return m_; }
  int64_t count() const { return count_; }

  const std::vector<int>& subset(int64_t rank) const { return subsets_[rank]; }
  int64_t rank(const std::vector<int>& sorted_subset) const;

  const std::vector<std::vector<int>>& all() const { return subsets_; }

 private:
  int N_, m_;
  int64_t count_;
  std::vector<std::vector<int>> subsets_;
};

/// Sign of the permutation sorting `v` ascending; 0 if entries repeat.
int permutation_sort_sign(std::vector<int> v);

}  // namespace matchgp
