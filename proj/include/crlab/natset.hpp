#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace crlab {

// Finite set of positive naturals, kept sorted and duplicate-free.
using NatSet = std::vector<std::uint64_t>;

// Sorts, deduplicates, and checks positivity.  Throws InvalidArgument on a
// zero entry.
NatSet natset_normalize(NatSet h);

// Throws InvalidArgument unless h is nonempty, strictly ascending, positive.
void natset_require_valid(const NatSet& h, const char* what);

NatSet natset_union(const NatSet& a, const NatSet& b);

std::string natset_str(const NatSet& h);

// All 2^r - 1 nonempty subsets of {1..r} as bitmasks (bit i-1 = element i),
// in canonical search order: max element ascending, then size ascending,
// then the sorted element lists lexicographically ascending.  Every search
// in the library that ranges over index sets uses this order, which is what
// makes "first hit" well-defined.  Throws SizeLimit past the budget.
std::vector<std::uint32_t> subset_masks_in_search_order(std::uint32_t r,
                                                        std::uint64_t budget = 1000000);

NatSet mask_to_natset(std::uint32_t mask);

} // namespace crlab
