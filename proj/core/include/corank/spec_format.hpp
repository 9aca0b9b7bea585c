#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "corank/action.hpp"
#include "corank/freeproduct.hpp"

namespace corank {

// Line-oriented group-spec format; '#' starts a comment:
//
//   free_rank 1
//   factor A cyclic 2
//   factor B klein
//   factor C sym 4
//   factor D alt 5
//   factor E perm 5 gens (1 2 3 4 5), (1 2)
//
// `perm d gens ...` materializes the closure of the listed degree-d
// permutations.
FreeProductSpec parse_group_spec(std::string_view text);
FreeProductSpec load_group_spec(const std::string& path);

// Subgroup action file:
//
//   action degree 6
//   free x1 = (1 2 3)(4 5 6)
//   factor A 1 = (1 2)
//   basepoint 1            # optional, default 1
//   mode kernel            # kernel | stabilizer, default kernel
//
// `factor <name> <gen-index> = <perm>` assigns the image of the gen-index'th
// distinguished generator (1-based) of the named factor.
enum class SubgroupMode { kernel, stabilizer };

struct SubgroupFile {
  RawAssignment raw;
  SubgroupMode mode = SubgroupMode::kernel;
  int basepoint = 1;  // 1-based
};

SubgroupFile parse_subgroup_file(const FreeProductSpec& spec, std::string_view text);
SubgroupFile load_subgroup_file(const FreeProductSpec& spec, const std::string& path);

SubgroupHandle handle_from_file(std::shared_ptr<const FreeProductSpec> spec,
                                const SubgroupFile& file);

// Built-in groups for sweeps: c<n>, klein, s<n>, a<n>, d<n> (dihedral of
// order 2n, n >= 3).
FiniteGroupTable builtin_group(std::string_view name);

std::string describe_spec(const FreeProductSpec& spec);

}  // namespace corank
