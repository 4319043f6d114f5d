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

#include "amrstore/prune.hpp"

#include <vector>

namespace amrstore {

PruneResult prune_domain(const DomainTree& dt) {
  require_valid_domain(dt);
  const AmrTree& tree = dt.tree;
  const std::size_t n = tree.node_count();
  const std::size_t fan = tree.children_per_node();
  const auto offsets = tree.level_offsets();

  // Bottom-up: a refined ghost collapses; deeper collapses are subsumed when
  // an ancestor collapses later in the sweep.
  BitVector collapsed(n, false);
  for (int level = tree.depth() - 2; level >= 0; --level) {
    for (std::size_t i = offsets[level]; i < offsets[level + 1]; ++i) {
      if (tree.is_refined(i) && !dt.ownership[i]) collapsed[i] = true;
    }
  }

  // Top-down: a node survives iff its father survives and did not collapse.
  BitVector keep(n, false);
  keep[0] = true;
  for (std::size_t i = 0; i < n; ++i) {
    const NodeIndex fc = tree.first_child(i);
    if (fc == kNoNode) continue;
    const bool kids = keep[i] && !collapsed[i];
    for (std::size_t c = 0; c < fan; ++c) keep[fc + c] = kids;
  }

  BitVector refinement;
  BitVector ownership;
  std::vector<NodeIndex> kept;
  kept.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    kept.push_back(i);
    refinement.push_back(tree.is_refined(i) && !collapsed[i]);
    ownership.push_back(dt.ownership[i]);
  }

  PruneResult out;
  out.domain.domain_id = dt.domain_id;
  out.domain.tree = AmrTree::build(tree.dim(), std::move(refinement));
  out.domain.ownership = std::move(ownership);
  for (const auto& [name, values] : dt.fields) {
    std::vector<double> v;
    v.reserve(kept.size());
    for (NodeIndex i : kept) v.push_back(values[i]);
    out.domain.fields.emplace(name, std::move(v));
  }
  out.stats.nodes_before = n;
  out.stats.nodes_after = kept.size();
  out.stats.removed_fraction =
      1.0 - static_cast<double>(kept.size()) / static_cast<double>(n);
  return out;
}

}  // namespace amrstore
