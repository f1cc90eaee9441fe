#pragma once

#include "msca/allocation.hpp"
#include "msca/rational.hpp"
#include "msca/submodular.hpp"

#include <cstdint>
#include <memory>
#include <random>

namespace msca {

// The hard-instance family: one cost function per coordinate over the
// stars-and-bars ground set (see LowerBoundStructure). `pad` appends
// cost-free elements outside every member/zero set.
Instance gen_lower_bound(int k, int p, int pad = 0);

// The canonical fractional solution for a family instance: weight
// 1/(pk-k+1) on each level set {e_v : v_i >= j}, j = 1..pk-k+1, with the
// pad elements attached to function 0's sets. Feasible by construction
// (every element's coverage telescopes to exactly 1); its per-function
// supports are already chains.
FractionalAllocation lower_bound_witness(const LowerBoundStructure& structure);

// Exact objective of the witness: (k/s) * sum_{j=1..min(s,2p)} (2p+1-j)
// with s = pk-k+1. Equals pk(2p+1)/s when s >= 2p.
Rat lower_bound_witness_objective(int k, int p);

// Random coverage instance: k coverage functions over a shared-size universe
// with seeded weights and covered sets. Byte-deterministic under (all
// parameters, seed).
Instance gen_coverage(int n, int k, int universe, const Rat& density, std::uint64_t seed);

// Random facility-location instance with integer opening and per-element
// costs drawn from [0, cost_range]. Byte-deterministic under (parameters,
// seed).
Instance gen_facility_location(int n, int k, int cost_range, std::uint64_t seed);

// Uniform draw from [0, bound) using full 64-bit rejection; portable across
// standard libraries, unlike std::uniform_int_distribution.
std::uint64_t draw_below(std::mt19937_64& engine, std::uint64_t bound);

}  // namespace msca
