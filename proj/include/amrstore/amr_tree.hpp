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

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace amrstore {

using NodeIndex = std::size_t;
using BitVector = std::vector<bool>;
using FieldMap = std::map<std::string, std::vector<double>>;

inline constexpr NodeIndex kNoNode = std::numeric_limits<NodeIndex>::max();

// Exact cell box: origin = index / 2^level along each axis, edge = 2^-level.
struct CellGeometry {
  int level = 0;
  std::array<std::uint64_t, 3> index{};

  double origin(int axis) const;
  double size() const;
  friend bool operator==(const CellGeometry&, const CellGeometry&) = default;
};

// Breadth-first refinement array of a single-rooted 2^dim-ary tree.
//
// Nodes are stored level by level from the root. Within a level, children
// appear in the order of their fathers, each father's 2^dim children
// consecutive and ordered x-fastest (child rank bit a is the offset along
// axis a). The last level never contains a refined node.
class AmrTree {
 public:
  // Empty tree with no nodes; only useful as a placeholder.
  AmrTree() = default;

  // Validates the sequence and precomputes level and father/child tables.
  // Throws Error(kMalformedTree) for impossible sequences.
  static AmrTree build(int dim, BitVector refinement);

  int dim() const { return dim_; }
  std::size_t children_per_node() const { return std::size_t{1} << dim_; }
  std::size_t node_count() const { return refinement_.size(); }
  std::size_t leaf_count() const { return node_count() - refined_count_; }
  std::size_t refined_count() const { return refined_count_; }
  const BitVector& refinement() const { return refinement_; }
  bool is_refined(NodeIndex idx) const { return refinement_[idx]; }

  // Number of levels; level_counts().size().
  int depth() const { return static_cast<int>(level_counts_.size()); }
  std::span<const std::size_t> level_counts() const { return level_counts_; }
  // First node index of each level, plus node_count() as a sentinel.
  std::span<const std::size_t> level_offsets() const { return level_offsets_; }

  int node_level(NodeIndex idx) const;
  std::vector<NodeIndex> children_of(NodeIndex idx) const;
  // Index of the first child, or kNoNode for a leaf. Unchecked.
  NodeIndex first_child(NodeIndex idx) const { return first_child_[idx]; }
  // Father index, or kNoNode for the root. Unchecked.
  NodeIndex father(NodeIndex idx) const { return father_[idx]; }
  // Position of idx among its siblings (0 for the root). Unchecked.
  std::size_t child_rank(NodeIndex idx) const;
  CellGeometry cell_geometry(NodeIndex idx) const;

  friend bool operator==(const AmrTree& a, const AmrTree& b) {
    return a.dim_ == b.dim_ && a.refinement_ == b.refinement_;
  }

 private:
  void check_index(NodeIndex idx) const;

  int dim_ = 0;
  BitVector refinement_;
  std::size_t refined_count_ = 0;
  std::vector<std::size_t> level_counts_;
  std::vector<std::size_t> level_offsets_;
  std::vector<NodeIndex> first_child_;
  std::vector<NodeIndex> father_;
};

// One contributor's piece of the forest. Ownership and every field are
// aligned index-for-index with the tree's refinement array.
struct DomainTree {
  AmrTree tree;
  BitVector ownership;
  FieldMap fields;
  std::uint32_t domain_id = 0;
};

struct Violation {
  std::string invariant;  // "alignment", "ownership consistency", "owned leaf"
  std::optional<NodeIndex> node;
  std::string detail;
};

// Returns the first violated DomainTree invariant, or nullopt when valid.
std::optional<Violation> validate_domain(const DomainTree& dt);

// Throws Error(kMalformedTree) carrying the violation text if invalid.
void require_valid_domain(const DomainTree& dt);

inline constexpr std::uint32_t kNoOwner = std::numeric_limits<std::uint32_t>::max();

// Whole-box tree with the owner of every leaf; coarse nodes carry kNoOwner.
struct GlobalTree {
  AmrTree tree;
  std::vector<std::uint32_t> leaf_owner;
  FieldMap fields;
};

// Bit-pattern equality of two double sequences (NaN payloads compared too).
bool bit_equal(std::span<const double> a, std::span<const double> b);
bool bit_equal(const FieldMap& a, const FieldMap& b);

// Same shape and leaf owners with bit-identical field values.
bool operator==(const GlobalTree& a, const GlobalTree& b);

// Ownership derived by the any-owned-descendant rule from owned-leaf flags;
// entries for refined nodes in `leaf_owned` are ignored.
BitVector propagate_ownership(const AmrTree& tree, const BitVector& leaf_owned);

}  // namespace amrstore
