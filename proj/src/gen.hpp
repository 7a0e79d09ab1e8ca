#pragma once

// Seeded graph generators. All randomness flows through mt19937_64 with
// explicitly fixed arithmetic, so a given seed yields the same graph on
// every platform.

#include <cstdint>
#include <random>

#include "core.hpp"

namespace mm {

using Rng = std::mt19937_64;

// uniform in [0, 1) built from the top 53 bits
double rng_unit(Rng& rng);
// uniform in [0, bound)
uint64_t rng_below(Rng& rng, uint64_t bound);

// Erdos-Renyi G(n, p): each pair independently.
Graph gen_gnp(int n, double p, Rng& rng);

// Random d-regular (pairing model, resampled until simple); requires n*d even.
Graph gen_regular(int n, int d, Rng& rng);

// Uniformly random matching over a random subset of a graph's edges:
// greedily matches a shuffled edge list, keeping each eligible edge with
// probability keep.
Matching gen_random_matching(const Graph& g, double keep, Rng& rng);

}  // namespace mm
