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

#include "amrstore/synthgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "amrstore/error.hpp"

namespace amrstore {

namespace {

constexpr double kCenter = 0.5;

struct Profile {
  double r0;
  double width;
};

using Coords = std::array<std::uint32_t, 3>;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool box_meets_shell(int dim, const Coords& idx, int level, const ShellRule& s) {
  const double size = std::ldexp(1.0, -level);
  double dmin2 = 0.0;
  double dmax2 = 0.0;
  for (int a = 0; a < dim; ++a) {
    const double lo = idx[a] * size - kCenter;
    const double hi = lo + size;
    const double near = lo > 0 ? lo : (hi < 0 ? -hi : 0.0);
    const double far = std::max(std::abs(lo), std::abs(hi));
    dmin2 += near * near;
    dmax2 += far * far;
  }
  return std::sqrt(dmin2) <= s.r0 + 0.5 * s.width &&
         std::sqrt(dmax2) >= s.r0 - 0.5 * s.width;
}

double field_value(const std::string& name, int dim, const std::array<double, 3>& x,
                   const Profile& p) {
  double r2 = 0.0;
  for (int a = 0; a < dim; ++a) r2 += (x[a] - kCenter) * (x[a] - kCenter);
  const double r = std::sqrt(r2);
  const double shell = std::exp(-std::pow((r - p.r0) / p.width, 2));
  if (name == "density") return 1.0 + shell;
  if (name == "pressure") return 0.2 + 0.8 * std::exp(-r2 / (p.r0 * p.r0));
  const int axis = name == "vx" ? 0 : name == "vy" ? 1 : 2;
  if (r == 0.0) return 0.0;
  const double vr = shell * r / p.r0;
  return vr * (x[axis] - kCenter) / r;
}

struct NodeKey {
  int level;
  Coords idx;
  friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    std::uint64_t h = static_cast<std::uint64_t>(k.level) * 0x9E3779B97F4A7C15ull;
    for (auto c : k.idx) h = (h ^ c) * 0xff51afd7ed558ccdull + 0x632be59bd9b4e5f5ull;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

NodeKey child_key(const NodeKey& f, std::size_t rank, int dim) {
  NodeKey k{f.level + 1, {}};
  for (int a = 0; a < dim; ++a) {
    k.idx[a] = 2 * f.idx[a] + static_cast<std::uint32_t>((rank >> a) & 1u);
  }
  return k;
}

// Keys of every node, filled top-down.
std::vector<NodeKey> node_keys(const AmrTree& tree) {
  std::vector<NodeKey> keys(tree.node_count());
  keys[0] = NodeKey{0, {}};
  for (NodeIndex i = 0; i < tree.node_count(); ++i) {
    const NodeIndex fc = tree.first_child(i);
    if (fc == kNoNode) continue;
    for (std::size_t c = 0; c < tree.children_per_node(); ++c) {
      keys[fc + c] = child_key(keys[i], c, tree.dim());
    }
  }
  return keys;
}

}  // namespace

std::vector<std::string> default_field_names(int dim) {
  std::vector<std::string> names{"density", "pressure", "vx"};
  if (dim >= 2) names.push_back("vy");
  if (dim >= 3) names.push_back("vz");
  return names;
}

void validate_spec(const GenSpec& spec) {
  auto bad = [](const std::string& why) { throw Error(ErrorCode::kSpecInvalid, why); };
  if (spec.dim < 1 || spec.dim > 3) bad("dim must be 1, 2 or 3");
  if (spec.level_min < 0) bad("level_min must be >= 0");
  if (spec.level_min > spec.level_max) bad("level_min must not exceed level_max");
  if (spec.level_max > kMaxGenLevel) {
    bad("level_max must be <= " + std::to_string(kMaxGenLevel));
  }
  if (const auto* s = std::get_if<ShellRule>(&spec.rule)) {
    if (!(s->r0 > 0.0) || !std::isfinite(s->r0)) bad("shell radius must be positive");
    if (!(s->width > 0.0 && s->width < 1.0)) bad("shell width must be in (0, 1)");
  } else {
    const auto& r = std::get<RandomRule>(spec.rule);
    if (!(r.p_refine >= 0.0 && r.p_refine <= 1.0)) bad("p_refine must be in [0, 1]");
  }
  const auto known = default_field_names(spec.dim);
  for (const auto& f : spec.fields) {
    if (std::find(known.begin(), known.end(), f) == known.end()) {
      bad("unknown field '" + f + "' for dim " + std::to_string(spec.dim));
    }
  }
}

GlobalTree generate_global(const GenSpec& spec) {
  validate_spec(spec);
  const int dim = spec.dim;
  const std::size_t fan = std::size_t{1} << dim;
  Profile profile{0.35, 0.1};
  const ShellRule* shell = std::get_if<ShellRule>(&spec.rule);
  std::mt19937_64 rng;
  double p_refine = 0.0;
  if (shell) {
    profile = Profile{shell->r0, shell->width};
  } else {
    const auto& r = std::get<RandomRule>(spec.rule);
    rng.seed(r.seed);
    p_refine = r.p_refine;
  }

  BitVector refinement;
  std::vector<Coords> coords{Coords{}};
  std::vector<int> levels{0};
  std::size_t begin = 0;
  for (int level = 0; begin < coords.size(); ++level) {
    const std::size_t end = coords.size();
    for (std::size_t i = begin; i < end; ++i) {
      bool refine = false;
      if (level < spec.level_min) {
        refine = true;
      } else if (level < spec.level_max) {
        refine = shell ? box_meets_shell(dim, coords[i], level, *shell)
                       : uniform01(rng) < p_refine;
      }
      refinement.push_back(refine);
      if (!refine) continue;
      for (std::size_t c = 0; c < fan; ++c) {
        Coords child{};
        for (int a = 0; a < dim; ++a) {
          child[a] = 2 * coords[i][a] + static_cast<std::uint32_t>((c >> a) & 1u);
        }
        coords.push_back(child);
        levels.push_back(level + 1);
      }
    }
    begin = end;
  }

  GlobalTree g;
  g.tree = AmrTree::build(dim, std::move(refinement));
  const std::size_t n = g.tree.node_count();
  g.leaf_owner.assign(n, kNoOwner);
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.tree.is_refined(i)) g.leaf_owner[i] = 0;
  }
  const auto names = spec.fields.empty() ? default_field_names(dim) : spec.fields;
  for (const auto& name : names) {
    std::vector<double> v(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
      const NodeIndex fc = g.tree.first_child(i);
      if (fc == kNoNode) {
        const double size = std::ldexp(1.0, -levels[i]);
        std::array<double, 3> x{};
        for (int a = 0; a < dim; ++a) x[a] = (coords[i][a] + 0.5) * size;
        v[i] = field_value(name, dim, x, profile);
      } else {
        double sum = 0.0;
        for (std::size_t c = 0; c < fan; ++c) sum += v[fc + c];
        v[i] = sum / static_cast<double>(fan);
      }
    }
    g.fields.emplace(name, std::move(v));
  }
  return g;
}

std::vector<DomainTree> decompose(const GlobalTree& global, std::size_t n_domains,
                                  Curve curve, GhostPolicy ghosts) {
  const AmrTree& tree = global.tree;
  const std::size_t n = tree.node_count();
  const std::size_t leaves = tree.leaf_count();
  if (n_domains == 0 || n_domains > leaves) {
    throw Error(ErrorCode::kTooManyDomains,
                std::to_string(n_domains) + " domains for " + std::to_string(leaves) +
                    " leaves");
  }
  const int max_level = tree.depth() - 1;
  const int bits = max_level + 1;
  if (bits * tree.dim() > 64 || bits > 32) {
    throw Error(ErrorCode::kInvalidArgument, "tree too deep for curve ordering");
  }
  if (ghosts.mode == GhostPolicy::Mode::kCoarseSkeleton &&
      (ghosts.skeleton_level < 0 || ghosts.skeleton_level > max_level)) {
    throw Error(ErrorCode::kInvalidArgument,
                "skeleton level must be in [0, " + std::to_string(max_level) + "]");
  }

  const auto keys = node_keys(tree);
  std::vector<std::pair<std::uint64_t, NodeIndex>> order;
  order.reserve(leaves);
  for (NodeIndex i = 0; i < n; ++i) {
    if (tree.is_refined(i)) continue;
    // Cell center on a grid of 2^(max_level+1) points per axis.
    std::array<std::uint32_t, 3> c{};
    const int shift = max_level - keys[i].level;
    for (int a = 0; a < tree.dim(); ++a) c[a] = (2 * keys[i].idx[a] + 1) << shift;
    order.emplace_back(
        curve_index(curve, std::span(c.data(), static_cast<std::size_t>(tree.dim())), bits),
        i);
  }
  std::sort(order.begin(), order.end());

  const std::size_t base = leaves / n_domains;
  const std::size_t extra = leaves % n_domains;
  const std::size_t fan = tree.children_per_node();
  const auto offsets = tree.level_offsets();

  std::vector<DomainTree> out;
  out.reserve(n_domains);
  std::size_t cursor = 0;
  std::vector<std::uint8_t> anc(n);
  std::vector<std::uint8_t> keep(n);
  for (std::size_t d = 0; d < n_domains; ++d) {
    const std::size_t count = base + (d < extra ? 1 : 0);
    std::fill(anc.begin(), anc.end(), 0);
    for (std::size_t k = cursor; k < cursor + count; ++k) {
      for (NodeIndex i = order[k].second; i != kNoNode && !anc[i]; i = tree.father(i)) {
        anc[i] = 1;
      }
    }
    cursor += count;
    keep = anc;
    if (ghosts.mode == GhostPolicy::Mode::kCoarseSkeleton) {
      const std::size_t end = offsets[static_cast<std::size_t>(ghosts.skeleton_level) + 1];
      for (NodeIndex i = 0; i < end; ++i) {
        keep[i] = 1;
        const NodeIndex fc = tree.first_child(i);
        if (fc != kNoNode) std::fill_n(keep.begin() + static_cast<std::ptrdiff_t>(fc), fan, 1);
      }
    }
    BitVector refinement;
    BitVector ownership;
    std::vector<NodeIndex> kept;
    for (NodeIndex i = 0; i < n; ++i) {
      const NodeIndex fc = tree.first_child(i);
      bool refined = false;
      if (keep[i] && fc != kNoNode) {
        for (std::size_t c = 0; c < fan && !refined; ++c) refined = keep[fc + c];
        if (refined) std::fill_n(keep.begin() + static_cast<std::ptrdiff_t>(fc), fan, 1);
      }
      if (!keep[i]) continue;
      kept.push_back(i);
      refinement.push_back(refined);
      ownership.push_back(anc[i] != 0);
    }
    DomainTree dt;
    dt.domain_id = static_cast<std::uint32_t>(d);
    dt.tree = AmrTree::build(tree.dim(), std::move(refinement));
    dt.ownership = std::move(ownership);
    for (const auto& [name, values] : global.fields) {
      std::vector<double> v;
      v.reserve(kept.size());
      for (NodeIndex i : kept) v.push_back(values[i]);
      dt.fields.emplace(name, std::move(v));
    }
    out.push_back(std::move(dt));
  }
  return out;
}

GlobalTree assemble(std::span<const DomainTree> domains) {
  if (domains.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "nothing to assemble");
  }
  const int dim = domains[0].tree.dim();
  for (const auto& dt : domains) {
    require_valid_domain(dt);
    bool same_fields = dt.fields.size() == domains[0].fields.size();
    for (auto a = dt.fields.begin(), b = domains[0].fields.begin();
         same_fields && a != dt.fields.end(); ++a, ++b) {
      same_fields = a->first == b->first;
    }
    if (dt.tree.dim() != dim || !same_fields) {
      throw Error(ErrorCode::kInconsistent,
                  "domain " + std::to_string(dt.domain_id) +
                      " disagrees on dimension or field names");
    }
  }

  struct Source {
    std::size_t domain;
    NodeIndex node;
  };
  std::unordered_map<NodeKey, Source, NodeKeyHash> first_owner;
  std::unordered_map<NodeKey, std::uint32_t, NodeKeyHash> leaf_owner;
  std::unordered_set<NodeKey, NodeKeyHash> refined;
  for (std::size_t d = 0; d < domains.size(); ++d) {
    const DomainTree& dt = domains[d];
    const auto keys = node_keys(dt.tree);
    for (NodeIndex i = 0; i < dt.tree.node_count(); ++i) {
      if (!dt.ownership[i]) continue;
      first_owner.try_emplace(keys[i], Source{d, i});
      if (dt.tree.is_refined(i)) {
        refined.insert(keys[i]);
      } else if (!leaf_owner.emplace(keys[i], dt.domain_id).second) {
        throw Error(ErrorCode::kOwnershipConflict,
                    "leaf at level " + std::to_string(keys[i].level) +
                        " owned by domains " + std::to_string(leaf_owner[keys[i]]) +
                        " and " + std::to_string(dt.domain_id));
      }
    }
  }

  BitVector refinement;
  std::vector<std::uint32_t> owners;
  std::vector<Source> sources;
  std::vector<NodeKey> queue{NodeKey{0, {}}};
  const std::size_t fan = std::size_t{1} << dim;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const NodeKey key = queue[q];
    const bool is_refined = refined.count(key) != 0;
    auto owner = leaf_owner.find(key);
    if (is_refined && owner != leaf_owner.end()) {
      throw Error(ErrorCode::kInconsistent,
                  "node at level " + std::to_string(key.level) +
                      " is both an owned leaf and an owned refined node");
    }
    if (!is_refined && owner == leaf_owner.end()) {
      throw Error(ErrorCode::kInconsistent,
                  "leaf at level " + std::to_string(key.level) + " has no owner");
    }
    refinement.push_back(is_refined);
    owners.push_back(is_refined ? kNoOwner : owner->second);
    sources.push_back(first_owner.at(key));
    if (is_refined) {
      for (std::size_t c = 0; c < fan; ++c) queue.push_back(child_key(key, c, dim));
    }
  }

  GlobalTree g;
  g.tree = AmrTree::build(dim, std::move(refinement));
  g.leaf_owner = std::move(owners);
  for (const auto& [name, unused] : domains[0].fields) {
    std::vector<double> v(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) {
      v[i] = domains[sources[i].domain].fields.at(name)[sources[i].node];
    }
    g.fields.emplace(name, std::move(v));
  }
  return g;
}

DomainTree as_single_domain(const GlobalTree& global, std::uint32_t domain_id) {
  DomainTree dt;
  dt.tree = global.tree;
  dt.ownership.assign(global.tree.node_count(), true);
  dt.fields = global.fields;
  dt.domain_id = domain_id;
  return dt;
}

}  // namespace amrstore
