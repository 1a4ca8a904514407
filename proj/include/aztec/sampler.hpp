#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "aztec/lattice.hpp"
#include "aztec/parallel.hpp"

namespace aztec {

enum class SampleMethod { Shuffle, EnumerateAndSample };

struct SamplerConfig {
    int m = 1;
    double a = 0.5;
    uint64_t seed = 0;
    SampleMethod method = SampleMethod::Shuffle;
    RunMode mode = RunMode::Parallel;
};

// Two-periodic edge-weight field, closed under the urban-renewal step of
// the shuffling recursion.  Entry [j][d] is the weight of an edge whose
// black endpoint lies in B_j and whose white endpoint is black + DIR[d].
using WeightField = std::array<std::array<double, 4>, 2>;

WeightField initial_field(double a, double b);

// Weight field of the size-(k-1) diamond induced by urban renewal at all
// odd-odd cells of the size-k diamond (rescaled so the largest entry is 1;
// the dimer measure is scale invariant).
WeightField reduce_field(const WeightField& f);

// P[e1-pair] for a creation cell whose center has (cx+cy) mod 4 == 2 (A)
// or == 0 (B), under the given field.
std::pair<double, double> creation_biases(const WeightField& f);

// Exact Boltzmann sample of the two-periodic Aztec diamond of size n via
// weighted domino shuffling: O(n^3) time, O(n^2) memory, deterministic in
// (seed) and independent of the thread count.
Covering sample_shuffle(int n, double a, double b, uint64_t stream,
                        RunMode mode = RunMode::Parallel);

// One growth step of the shuffle (size k-1 -> k) with an externally
// supplied coin: coin(cell, p_e1) returns true for the e1-pair.  Test hook
// for the exact coupling checks.
Covering grow_covering(const Covering& prev, const WeightField& fk,
                       const std::function<bool(Vec, double)>& coin);

Covering sample(const SamplerConfig& cfg);

// Independent samples with per-sample streams seed ^ index.
std::vector<Covering> sample_batch(const SamplerConfig& cfg, int count);

struct MarginalCheck {
    double empirical = 0.0;
    double exact = 0.0;
    double z = 0.0;
};

MarginalCheck edge_marginal_check(const SamplerConfig& cfg, std::pair<Vec, Vec> edge,
                                  int n_samples);

}  // namespace aztec
