// Copyright 2026 The amrstore Authors.
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

#include "amrstore/amr_tree.hpp"

namespace amrstore {

struct PruneStats {
  std::size_t nodes_before = 0;
  std::size_t nodes_after = 0;
  double removed_fraction = 0.0;  // 1 - nodes_after / nodes_before

  double removed_percent() const { return 100.0 * removed_fraction; }
};

struct PruneResult {
  DomainTree domain;
  PruneStats stats;
};

// Collapses every refined ghost node (no owned descendant leaf) into a ghost
// leaf, sweeping from the deepest level up. Collapsed nodes keep their own
// field values; their descendants are dropped from every array.
PruneResult prune_domain(const DomainTree& dt);

}  // namespace amrstore
