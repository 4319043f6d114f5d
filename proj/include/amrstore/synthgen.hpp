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
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "amrstore/amr_tree.hpp"
#include "amrstore/curves.hpp"

namespace amrstore {

// Refine every cell whose box meets the spherical shell
// |x - center| in [r0 - width/2, r0 + width/2] around the box center.
struct ShellRule {
  double r0 = 0.35;
  double width = 0.05;
};

// Refine each refinable cell independently with probability p_refine.
struct RandomRule {
  double p_refine = 0.3;
  std::uint64_t seed = 1;
};

inline constexpr int kMaxGenLevel = 12;

struct GenSpec {
  int dim = 3;
  int level_min = 3;
  int level_max = 6;
  std::variant<ShellRule, RandomRule> rule = ShellRule{};
  // Subset of {density, pressure, vx, vy, vz}; empty selects all fields
  // that exist in `dim`.
  std::vector<std::string> fields;
};

std::vector<std::string> default_field_names(int dim);

// Throws Error(kSpecInvalid).
void validate_spec(const GenSpec& spec);

// Leaves carry smooth radial profiles sampled at their centers; coarse cells
// hold the arithmetic mean of their sons. Every leaf is owned by domain 0.
GlobalTree generate_global(const GenSpec& spec);

struct GhostPolicy {
  enum class Mode { kMinimal, kCoarseSkeleton };
  Mode mode = Mode::kMinimal;
  int skeleton_level = 0;  // G: levels <= G are stored by every domain

  static GhostPolicy minimal() { return {}; }
  static GhostPolicy coarse_skeleton(int level) { return {Mode::kCoarseSkeleton, level}; }
};

// Splits leaves, ordered along the curve by their centers, into n_domains
// contiguous intervals whose sizes differ by at most one. Each domain keeps
// the ancestors of its leaves with their siblings. A coarse skeleton adds
// every global node of level <= G together with its children.
// Throws kTooManyDomains.
std::vector<DomainTree> decompose(const GlobalTree& global, std::size_t n_domains,
                                  Curve curve, GhostPolicy ghosts);

// Rebuilds the whole-box tree from owned data. Ancestor values come from the
// first domain (in sequence order) that owns them.
// Throws kOwnershipConflict, kInconsistent.
GlobalTree assemble(std::span<const DomainTree> domains);

// The global tree as one domain owning every node.
DomainTree as_single_domain(const GlobalTree& global, std::uint32_t domain_id = 0);

}  // namespace amrstore
