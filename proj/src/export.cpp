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

#include "amrstore/export.hpp"

#include <cstdio>
#include <fstream>

#include "amrstore/error.hpp"

namespace amrstore {

void export_leaves(const DomainTree& dt, std::ostream& out, bool owned_only) {
  require_valid_domain(dt);
  const AmrTree& tree = dt.tree;
  // Geometry is derived top-down alongside the traversal instead of walking
  // each leaf's father chain.
  std::vector<CellGeometry> geom(tree.node_count());
  char buf[64];
  for (NodeIndex i = 0; i < tree.node_count(); ++i) {
    if (i > 0) {
      const CellGeometry& f = geom[tree.father(i)];
      const std::size_t rank = tree.child_rank(i);
      geom[i].level = f.level + 1;
      for (int a = 0; a < tree.dim(); ++a) {
        geom[i].index[a] = 2 * f.index[a] + ((rank >> a) & 1u);
      }
    }
    if (tree.is_refined(i) || (owned_only && !dt.ownership[i])) continue;
    const CellGeometry& g = geom[i];
    out << g.level;
    for (int a = 0; a < 3; ++a) {
      std::snprintf(buf, sizeof buf, " %.17g", g.origin(a));
      out << buf;
    }
    std::snprintf(buf, sizeof buf, " %.17g", g.size());
    out << buf;
    for (const auto& [name, values] : dt.fields) {
      std::snprintf(buf, sizeof buf, " %.17g", values[i]);
      out << buf;
    }
    out << '\n';
  }
}

void export_leaves(const DomainTree& dt, const std::filesystem::path& path,
                   bool owned_only) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  export_leaves(dt, out, owned_only);
  if (!out.flush()) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
}

}  // namespace amrstore
