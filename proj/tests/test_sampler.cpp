#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "aztec/numerics.hpp"
#include "aztec/sampler.hpp"

using namespace aztec;

namespace {

// Chi-squared goodness of fit of shuffled samples against exact Boltzmann
// weights on the full covering space.
Chi2Result boltzmann_gof(int n, double a, int n_samples, uint64_t seed) {
    auto g = DiamondGraph::of_size(n, a);
    auto en = collect_coverings(g);
    std::map<std::vector<uint8_t>, int> index;
    for (size_t i = 0; i < en.coverings.size(); ++i) index[en.coverings[i].dir] = int(i);

    std::vector<long> counts(en.coverings.size(), 0);
    for (int i = 0; i < n_samples; ++i) {
        Covering c = sample_shuffle(n, a, 1.0, seed ^ uint64_t(i), RunMode::Serial);
        auto it = index.find(c.dir);
        REQUIRE(it != index.end());
        ++counts[it->second];
    }
    std::vector<double> probs(en.weights.size());
    for (size_t i = 0; i < probs.size(); ++i) probs[i] = en.weights[i] / en.total_weight;
    // Low-expectation coverings are pooled; the Boltzmann weights at small
    // a span many orders of magnitude.
    return chi2_gof_binned(counts, probs);
}

}  // namespace

TEST_CASE("determinism: same seed gives identical covering, serial == parallel") {
    for (int n : {3, 8}) {
        Covering c1 = sample_shuffle(n, 0.4, 1.0, 1234, RunMode::Serial);
        Covering c2 = sample_shuffle(n, 0.4, 1.0, 1234, RunMode::Serial);
        Covering c3 = sample_shuffle(n, 0.4, 1.0, 1234, RunMode::Parallel);
        CHECK(c1 == c2);
        CHECK(c1 == c3);
        Covering c4 = sample_shuffle(n, 0.4, 1.0, 1235, RunMode::Serial);
        CHECK(!(c1 == c4));
    }
}

TEST_CASE("every sample is a perfect matching") {
    for (int n : {1, 2, 3, 5, 16, 64}) {
        auto g = DiamondGraph::of_size(n, 0.3);
        for (uint64_t s = 0; s < 20; ++s) {
            Covering c = sample_shuffle(n, 0.3, 1.0, s, RunMode::Serial);
            CHECK(g.is_perfect_matching(c));
        }
    }
}

TEST_CASE("exact Boltzmann distribution at n=2") {
    for (double a : {0.2, 0.5, 0.9}) {
        auto r = boltzmann_gof(2, a, 20000, 77);
        INFO("a=", a, " chi2=", r.statistic, " p=", r.p_value);
        CHECK(r.p_value > 1e-3);
    }
}

TEST_CASE("exact Boltzmann distribution at n=4 (m=1)") {
    for (double a : {0.2, 0.5, 0.9}) {
        auto r = boltzmann_gof(4, a, 100000, 4242);
        INFO("a=", a, " chi2=", r.statistic, " df=", r.df, " p=", r.p_value);
        CHECK(r.p_value > 1e-3);
    }
}

TEST_CASE("edge marginal z-scores at n=4") {
    SamplerConfig cfg;
    cfg.m = 1;
    cfg.a = 0.5;
    cfg.seed = 99;
    auto r = edge_marginal_check(cfg, {{4, 3}, {3, 4}}, 100000);
    INFO("empirical=", r.empirical, " exact=", r.exact, " z=", r.z);
    CHECK(std::abs(r.z) < 4.0);
    CHECK(r.exact >= 0.0);
    CHECK(r.exact <= 1.0);
}

TEST_CASE("enumerate-and-sample agrees with shuffle in distribution") {
    SamplerConfig cfg;
    cfg.m = 1;
    cfg.a = 0.3;
    cfg.method = SampleMethod::EnumerateAndSample;
    auto g = DiamondGraph::of_size(4, 0.3);
    auto en = collect_coverings(g);
    std::map<std::vector<uint8_t>, int> index;
    for (size_t i = 0; i < en.coverings.size(); ++i) index[en.coverings[i].dir] = int(i);
    std::vector<long> counts(en.coverings.size(), 0);
    for (int i = 0; i < 30000; ++i) {
        cfg.seed = 1000 + uint64_t(i) * 2654435761ULL;
        auto c = sample(cfg);
        ++counts[index.at(c.dir)];
    }
    std::vector<double> probs(en.weights.size());
    for (size_t i = 0; i < probs.size(); ++i) probs[i] = en.weights[i] / en.total_weight;
    auto r = chi2_gof_binned(counts, probs);
    INFO("chi2=", r.statistic, " p=", r.p_value);
    CHECK(r.p_value > 1e-3);
}

namespace {

// The exact output distribution of the shuffling chain, obtained by
// enumerating every coin outcome at every stage.
void chain_distribution(const Covering& cur, double p, int k, int n,
                        const std::vector<WeightField>& fields,
                        std::map<std::vector<uint8_t>, double>& out) {
    if (k > n) {
        out[cur.dir] += p;
        return;
    }
    int ncoins = 0;
    grow_covering(cur, fields[k], [&](Vec, double) {
        ++ncoins;
        return true;
    });
    for (int mask = 0; mask < (1 << ncoins); ++mask) {
        int call = 0;
        double pcoins = 1.0;
        Covering next = grow_covering(cur, fields[k], [&](Vec, double pe1) {
            bool e1 = (mask >> call) & 1;
            ++call;
            pcoins *= e1 ? pe1 : (1.0 - pe1);
            return e1;
        });
        chain_distribution(next, p * pcoins, k + 1, n, fields, out);
    }
}

}  // namespace

TEST_CASE("the shuffling chain reproduces the Boltzmann measure exactly") {
    for (double a : {0.2, 0.5, 0.9}) {
        for (int n : {2, 3}) {
            std::vector<WeightField> fields(size_t(n) + 1);
            fields[n] = initial_field(a, 1.0);
            for (int k = n; k >= 2; --k) fields[k - 1] = reduce_field(fields[k]);

            std::map<std::vector<uint8_t>, double> dist;
            Covering empty;
            empty.n = 0;
            chain_distribution(empty, 1.0, 1, n, fields, dist);

            auto g = DiamondGraph::of_size(n, a);
            auto en = collect_coverings(g);
            double mass = 0.0;
            for (size_t i = 0; i < en.coverings.size(); ++i) {
                double want = en.weights[i] / en.total_weight;
                auto it = dist.find(en.coverings[i].dir);
                double got = it == dist.end() ? 0.0 : it->second;
                CHECK(got == doctest::Approx(want).epsilon(1e-10));
                mass += got;
            }
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("weight field reduction: uniform weights are a fixed point") {
    WeightField f = initial_field(1.0, 1.0);
    WeightField g = reduce_field(f);
    for (int j = 0; j < 2; ++j)
        for (int d = 0; d < 4; ++d) CHECK(g[j][d] == doctest::Approx(1.0));
    auto [pa, pb] = creation_biases(f);
    CHECK(pa == doctest::Approx(0.5));
    CHECK(pb == doctest::Approx(0.5));
}
