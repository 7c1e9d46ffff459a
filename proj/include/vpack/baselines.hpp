#pragma once

#include "vpack/core.hpp"

namespace vpack {

// Quadratic reference implementation of the same packing semantics: fresh
// scans over a plain working array instead of the monotone cursors, per-bin
// add history instead of last-seat bookkeeping. Produces the exact same bin
// partition as pack() on every instance; the equivalence test is the
// strongest cross-check of the cursor machinery.
Packing pack_reference(const Instance& instance);

// Each item, in input order, goes to the lowest-index bin with room in both
// dimensions; a new bin otherwise.
Packing pack_first_fit(const Instance& instance);

// First-fit decreasing: stable sort by max(s, l) descending, then first fit.
// Reports original indices.
Packing pack_ffd(const Instance& instance);

}  // namespace vpack
