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

#include "amrstore/amr_tree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <utility>

#include "amrstore/error.hpp"

namespace amrstore {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMalformedTree: return "MalformedTree";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kMalformedEncoding: return "MalformedEncoding";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kInvalidHeaderWidth: return "InvalidHeaderWidth";
    case ErrorCode::kStreamTruncated: return "StreamTruncated";
    case ErrorCode::kContextMismatch: return "ContextMismatch";
    case ErrorCode::kAlreadyExists: return "AlreadyExists";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kDuplicateEntry: return "DuplicateEntry";
    case ErrorCode::kKindMismatch: return "KindMismatch";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kCorruptRecord: return "CorruptRecord";
    case ErrorCode::kSpecInvalid: return "SpecInvalid";
    case ErrorCode::kTooManyDomains: return "TooManyDomains";
    case ErrorCode::kOwnershipConflict: return "OwnershipConflict";
    case ErrorCode::kInconsistent: return "Inconsistent";
    case ErrorCode::kNotADatabase: return "NotADatabase";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

double CellGeometry::origin(int axis) const {
  return std::ldexp(static_cast<double>(index[axis]), -level);
}

double CellGeometry::size() const { return std::ldexp(1.0, -level); }

AmrTree AmrTree::build(int dim, BitVector refinement) {
  if (dim < 1 || dim > 3) {
    throw Error(ErrorCode::kInvalidArgument, "dim must be 1, 2 or 3");
  }
  if (refinement.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "refinement sequence is empty");
  }
  AmrTree t;
  t.dim_ = dim;
  t.refinement_ = std::move(refinement);
  const std::size_t n = t.refinement_.size();
  const std::size_t fan = t.children_per_node();

  t.first_child_.assign(n, kNoNode);
  t.father_.assign(n, kNoNode);

  std::size_t offset = 0;
  std::size_t count = 1;
  while (true) {
    if (offset + count > n) {
      throw Error(ErrorCode::kMalformedTree,
                  "sequence ends mid-level at level " +
                      std::to_string(t.level_counts_.size()) + ": expected " +
                      std::to_string(count) + " nodes, " +
                      std::to_string(n - offset) + " remain");
    }
    t.level_counts_.push_back(count);
    t.level_offsets_.push_back(offset);
    std::size_t cursor = offset + count;
    for (std::size_t i = offset; i < offset + count; ++i) {
      if (!t.refinement_[i]) continue;
      ++t.refined_count_;
      t.first_child_[i] = cursor;
      for (std::size_t c = 0; c < fan && cursor + c < n; ++c) {
        t.father_[cursor + c] = i;
      }
      cursor += fan;
    }
    const std::size_t next = cursor - (offset + count);
    offset += count;
    if (next == 0) break;
    count = next;
  }
  if (offset != n) {
    throw Error(ErrorCode::kMalformedTree,
                "level " + std::to_string(t.level_counts_.size()) + " has " +
                    std::to_string(n - offset) +
                    " nodes but no refined fathers above it");
  }
  t.level_offsets_.push_back(n);
  return t;
}

void AmrTree::check_index(NodeIndex idx) const {
  if (idx >= node_count()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "node " + std::to_string(idx) + " of " +
                    std::to_string(node_count()));
  }
}

int AmrTree::node_level(NodeIndex idx) const {
  check_index(idx);
  auto it = std::upper_bound(level_offsets_.begin(), level_offsets_.end(), idx);
  return static_cast<int>(it - level_offsets_.begin()) - 1;
}

std::vector<NodeIndex> AmrTree::children_of(NodeIndex idx) const {
  check_index(idx);
  std::vector<NodeIndex> out;
  if (first_child_[idx] == kNoNode) return out;
  out.resize(children_per_node());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = first_child_[idx] + c;
  return out;
}

std::size_t AmrTree::child_rank(NodeIndex idx) const {
  const NodeIndex f = father_[idx];
  return f == kNoNode ? 0 : idx - first_child_[f];
}

CellGeometry AmrTree::cell_geometry(NodeIndex idx) const {
  check_index(idx);
  std::vector<std::size_t> ranks;
  for (NodeIndex i = idx; father_[i] != kNoNode; i = father_[i]) {
    ranks.push_back(child_rank(i));
  }
  if (ranks.size() > 63) {
    throw Error(ErrorCode::kInvalidArgument,
                "node too deep for exact geometry (level " +
                    std::to_string(ranks.size()) + ")");
  }
  CellGeometry g;
  g.level = static_cast<int>(ranks.size());
  for (auto it = ranks.rbegin(); it != ranks.rend(); ++it) {
    for (int a = 0; a < dim_; ++a) {
      g.index[a] = 2 * g.index[a] + ((*it >> a) & 1u);
    }
  }
  return g;
}

BitVector propagate_ownership(const AmrTree& tree, const BitVector& leaf_owned) {
  const std::size_t n = tree.node_count();
  BitVector owned(n, false);
  const std::size_t fan = tree.children_per_node();
  for (std::size_t i = n; i-- > 0;) {
    const NodeIndex fc = tree.first_child(i);
    if (fc == kNoNode) {
      owned[i] = leaf_owned[i];
      continue;
    }
    bool any = false;
    for (std::size_t c = 0; c < fan && !any; ++c) any = owned[fc + c];
    owned[i] = any;
  }
  return owned;
}

std::optional<Violation> validate_domain(const DomainTree& dt) {
  const std::size_t n = dt.tree.node_count();
  if (n == 0) {
    return Violation{"alignment", std::nullopt, "tree has no nodes"};
  }
  if (dt.ownership.size() != n) {
    return Violation{"alignment", std::nullopt,
                     "ownership has " + std::to_string(dt.ownership.size()) +
                         " entries for " + std::to_string(n) + " nodes"};
  }
  for (const auto& [name, values] : dt.fields) {
    if (values.size() != n) {
      return Violation{"alignment", std::nullopt,
                       "field '" + name + "' has " +
                           std::to_string(values.size()) + " values for " +
                           std::to_string(n) + " nodes"};
    }
  }
  const std::size_t fan = dt.tree.children_per_node();
  bool owned_leaf = false;
  for (std::size_t i = 0; i < n; ++i) {
    const NodeIndex fc = dt.tree.first_child(i);
    if (fc == kNoNode) {
      owned_leaf = owned_leaf || dt.ownership[i];
      continue;
    }
    bool any = false;
    for (std::size_t c = 0; c < fan && !any; ++c) any = dt.ownership[fc + c];
    if (any != dt.ownership[i]) {
      return Violation{"ownership consistency", i,
                       any ? "refined node has an owned child but is not owned"
                           : "refined node is owned but no child is owned"};
    }
  }
  if (!owned_leaf) {
    return Violation{"owned leaf", std::nullopt, "domain owns no leaf"};
  }
  return std::nullopt;
}

void require_valid_domain(const DomainTree& dt) {
  if (auto v = validate_domain(dt)) {
    std::string msg = "invalid domain tree: " + v->invariant;
    if (v->node) msg += " at node " + std::to_string(*v->node);
    msg += " (" + v->detail + ")";
    throw Error(ErrorCode::kMalformedTree, msg);
  }
}

bool bit_equal(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() &&
         (a.empty() || std::memcmp(a.data(), b.data(), a.size_bytes()) == 0);
}

bool bit_equal(const FieldMap& a, const FieldMap& b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !bit_equal(ia->second, ib->second)) {
      return false;
    }
  }
  return true;
}

bool operator==(const GlobalTree& a, const GlobalTree& b) {
  return a.tree == b.tree && a.leaf_owner == b.leaf_owner &&
         bit_equal(a.fields, b.fields);
}

}  // namespace amrstore
