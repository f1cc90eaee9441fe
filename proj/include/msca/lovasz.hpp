#pragma once

#include "msca/rational.hpp"
#include "msca/submodular.hpp"
#include "msca/subset.hpp"

#include <utility>
#include <vector>

namespace msca {

// A point of [0,1]^n; coordinates are validated on construction.
struct FractionalVector {
    std::vector<Rat> x;

    FractionalVector() = default;
    explicit FractionalVector(std::vector<Rat> coords);

    int dimension() const { return static_cast<int>(x.size()); }
    friend bool operator==(const FractionalVector&, const FractionalVector&) = default;
};

// Strictly nested nonempty sets with positive weights; per-element weight
// sums stay at most 1. The level-set form of a fractional vector.
struct WeightedChain {
    int n = 0;
    std::vector<std::pair<Subset, Rat>> levels;  // outermost set first

    WeightedChain() = default;
    WeightedChain(int ground_size, std::vector<std::pair<Subset, Rat>> entries);

    int length() const { return static_cast<int>(levels.size()); }
};

// Piecewise-linear extension value: sort coordinates descending (ties by
// ascending element index), form prefix sets, and sum the level widths
// times the function values.
Rat lovasz_value(const SubmodularFn& f, const FractionalVector& x);

// Level-set decomposition: the returned chain satisfies
// sum_S weight(S) * indicator(S) = x exactly, with at most n sets.
WeightedChain vector_to_chain(const FractionalVector& x);

// Weighted sum of indicator vectors; inverse of vector_to_chain.
FractionalVector chain_to_vector(const WeightedChain& chain);

}  // namespace msca
