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

#include <filesystem>
#include <ostream>

#include "amrstore/amr_tree.hpp"

namespace amrstore {

// Plain-text leaf dump, one leaf per line in traversal order:
//   level x y z size <field values in field-name order>
// x, y, z are the cell origin (unused axes print 0). No header line.
void export_leaves(const DomainTree& dt, std::ostream& out, bool owned_only = false);
void export_leaves(const DomainTree& dt, const std::filesystem::path& path,
                   bool owned_only = false);

}  // namespace amrstore
