#include "aztec/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aztec/rng.hpp"

namespace aztec {

namespace {

// Byte grid over the (2k+1)^2 lattice square of a size-k diamond.
// grid[v] == EMPTY, or the direction code c with partner(v) = v + DIR[c].
// Both endpoints of a dimer carry codes; the endpoint with smaller y holds
// a code in {0,1}.
constexpr uint8_t EMPTY = 0xff;

struct Grid {
    int n = 0;  // diamond size
    int stride = 0;
    std::vector<uint8_t> cell;

    explicit Grid(int n_) : n(n_), stride(2 * n_ + 1), cell(size_t(stride) * stride, EMPTY) {}
    uint8_t& at(Vec v) { return cell[size_t(v.y) * stride + v.x]; }
    uint8_t at(Vec v) const { return cell[size_t(v.y) * stride + v.x]; }
    bool inside(Vec v) const { return v.x >= 0 && v.x <= 2 * n && v.y >= 0 && v.y <= 2 * n; }
};

double field_weight(const WeightField& f, Vec black, Vec white) {
    int d = dir_code(white - black);
    if (d < 0) throw std::logic_error("field_weight: not an edge");
    return f[parity(black)][d];
}

// Corners around an odd-odd cell center c; L and R are black, U and D white.
// The e1-pair covers {L,U},{R,D}; the e2-pair covers {U,R},{D,L}.
struct CellCorners {
    Vec l, r, u, d;
};

CellCorners cell_corners(Vec c) {
    return {{c.x - 1, c.y}, {c.x + 1, c.y}, {c.x, c.y + 1}, {c.x, c.y - 1}};
}

double cell_delta(const WeightField& f, Vec c) {
    auto [l, r, u, d] = cell_corners(c);
    return field_weight(f, l, u) * field_weight(f, r, d) +
           field_weight(f, r, u) * field_weight(f, l, d);
}

// P[e1-pair] for a creation cell: the pair's own weight product over the
// cell weight.  Together with reduce_field this reproduces the Boltzmann
// measure exactly; the whole-chain enumeration test pins the pairing.
double cell_e1_bias(const WeightField& f, Vec c) {
    auto [l, r, u, d] = cell_corners(c);
    return field_weight(f, l, u) * field_weight(f, r, d) / cell_delta(f, c);
}

uint64_t cell_counter(int stage, int cx, int cy) {
    return (uint64_t(uint32_t(stage)) << 44) | (uint64_t(uint32_t(cy)) << 22) |
           uint64_t(uint32_t(cx));
}

// One growth step: tiling of the size-(k-1) diamond -> size-k diamond.
//  1. embed with the (+1,+1) shift,
//  2. destruction: remove both dimers of any cell carrying one of its pairs,
//  3. slide: e1-type dimers move by their sign of e2 and vice versa,
//  4. creation: fill the free cells with weighted coin flips.
template <class Coin>
void grow(const Grid& prev, Grid& next, int k, const WeightField& fk, const Coin& coin,
          bool parallel) {
    const double p_a = cell_e1_bias(fk, {1, 1});
    const double p_b = cell_e1_bias(fk, {1, 3});
    const int s = next.stride;

    Grid mid(k);
    if (prev.n >= 1) {
        for (int y = 0; y <= 2 * prev.n; ++y) {
            const uint8_t* src = &prev.cell[size_t(y) * prev.stride];
            uint8_t* dst = &mid.cell[size_t(y + 1) * s + 1];
            std::copy(src, src + prev.stride, dst);
        }
        // Destruction: erase both dimers of any cell carrying one of its
        // pairs.  Detection is edge-local and destroying cells are
        // vertex-disjoint, so detect-then-erase per row is race-free.
        std::vector<uint8_t> flags(size_t(k), 0);
        for (int cy = 1; cy <= 2 * k - 1; cy += 2) {
            uint8_t* rl = &mid.cell[size_t(cy) * s];      // L/R corner row
            uint8_t* ru = &mid.cell[size_t(cy + 1) * s];  // U corner row
            uint8_t* rd = &mid.cell[size_t(cy - 1) * s];  // D corner row
#pragma omp parallel for schedule(static) if (parallel)
            for (int cx = 1; cx <= 2 * k - 1; cx += 2)
                flags[(cx - 1) / 2] =
                    (rl[cx - 1] == 0 && rl[cx + 1] == 2) || (ru[cx] == 3 && rd[cx] == 1);
#pragma omp parallel for schedule(static) if (parallel)
            for (int cx = 1; cx <= 2 * k - 1; cx += 2) {
                if (!flags[(cx - 1) / 2]) continue;
                rl[cx - 1] = EMPTY;
                rl[cx + 1] = EMPTY;
                ru[cx] = EMPTY;
                rd[cx] = EMPTY;
            }
        }
    }

    // Slide.  Each dimer is visited once via its lower endpoint (code 0/1);
    // e1-type dimers move by their sign of e2 and vice versa.  Post
    // destruction no slide leaves the diamond (checked as it writes).
#pragma omp parallel for schedule(static) if (parallel)
    for (int y = 1; y <= 2 * k - 1; ++y) {
        const uint8_t* row = &mid.cell[size_t(y) * s];
        for (int x = (y % 2 == 0) ? 1 : 2; x <= 2 * k - 1; x += 2) {
            uint8_t c = row[x];
            if (c >= 2) continue;  // EMPTY or upper endpoint
            Vec p{x, y};
            Vec q = p + DIR[c];
            int type = (x % 2 == 1) ? c : (c + 2) % 4;  // black - white of the dimer
            Vec sl = DIR[type ^ 1];
            Vec p2 = p + sl, q2 = q + sl;
            if (!next.inside(p2) || !next.inside(q2))
                throw std::logic_error("shuffle: slide left the diamond");
            next.cell[size_t(p2.y) * s + p2.x] = c;
            next.cell[size_t(q2.y) * s + q2.x] = uint8_t((c + 2) % 4);
        }
    }

    // Creation.  Rows are processed bottom-to-top; a cell whose four
    // corners are free once all lower rows are resolved belongs to the
    // free-region decomposition (a fully-free cell not in the
    // decomposition would need the cell below it, which sits in an
    // earlier row, to still be unfilled).  Cells that fill within one
    // row are pairwise disjoint, so the row itself runs against the
    // pre-row snapshot and can be parallel.
    std::vector<uint8_t> fill_row(size_t(k), 0);
    for (int cy = 1; cy <= 2 * k - 1; cy += 2) {
        uint8_t* rl = &next.cell[size_t(cy) * s];
        uint8_t* ru = &next.cell[size_t(cy + 1) * s];
        uint8_t* rd = &next.cell[size_t(cy - 1) * s];
#pragma omp parallel for schedule(static) if (parallel)
        for (int cx = 1; cx <= 2 * k - 1; cx += 2)
            fill_row[(cx - 1) / 2] = (rl[cx - 1] == EMPTY && rl[cx + 1] == EMPTY &&
                                      ru[cx] == EMPTY && rd[cx] == EMPTY);
#pragma omp parallel for schedule(static) if (parallel)
        for (int cx = 1; cx <= 2 * k - 1; cx += 2) {
            if (!fill_row[(cx - 1) / 2]) continue;
            double p = (mod4(cx + cy) == 2) ? p_a : p_b;
            if (coin(Vec{cx, cy}, p)) {
                rl[cx - 1] = 0;  // L-U
                ru[cx] = 2;
                rl[cx + 1] = 2;  // R-D
                rd[cx] = 0;
            } else {
                ru[cx] = 3;  // U-R
                rl[cx + 1] = 1;
                rd[cx] = 1;  // D-L
                rl[cx - 1] = 3;
            }
        }
    }
}

}  // namespace

WeightField initial_field(double a, double b) {
    WeightField f;
    for (int j = 0; j < 2; ++j) {
        f[j][0] = a * (1 - j) + b * j;  // +e1
        f[j][1] = a * j + b * (1 - j);  // +e2
        f[j][2] = a * j + b * (1 - j);  // -e1
        f[j][3] = a * (1 - j) + b * j;  // -e2
    }
    return f;
}

WeightField reduce_field(const WeightField& f) {
    const Vec rep_black[2] = {{0, 1}, {2, 1}};
    WeightField out;
    for (int j = 0; j < 2; ++j) {
        for (int d = 0; d < 4; ++d) {
            // An edge of the reduced diamond, embedded into the larger one by
            // the (+1,+1) shift (which swaps the color roles of the endpoints).
            Vec b0 = rep_black[j];
            Vec w0 = b0 + DIR[d];
            Vec bhat = w0 + Vec{1, 1};
            Vec what = b0 + Vec{1, 1};
            Vec c = odd_odd_face_of_edge(what, bhat);
            auto [l, r, u, d4] = cell_corners(c);
            auto same = [&](Vec p, Vec q) {
                return (p == bhat && q == what) || (p == what && q == bhat);
            };
            // Urban renewal: the new weight is the opposite cell edge over
            // the cell weight.
            Vec ob, ow;
            if (same(l, u)) {
                ob = r;
                ow = d4;
            } else if (same(r, d4)) {
                ob = l;
                ow = u;
            } else if (same(u, r)) {
                ob = l;
                ow = d4;
            } else if (same(d4, l)) {
                ob = r;
                ow = u;
            } else {
                throw std::logic_error("reduce_field: edge not on its cell");
            }
            out[j][d] = field_weight(f, ob, ow) / cell_delta(f, c);
        }
    }
    double mx = 0.0;
    for (auto& row : out)
        for (double v : row) mx = std::max(mx, v);
    for (auto& row : out)
        for (double& v : row) v /= mx;
    return out;
}

std::pair<double, double> creation_biases(const WeightField& f) {
    return {cell_e1_bias(f, {1, 1}), cell_e1_bias(f, {1, 3})};
}

Covering sample_shuffle(int n, double a, double b, uint64_t stream, RunMode mode) {
    if (n < 1) throw std::invalid_argument("sample_shuffle: n must be >= 1");
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("sample_shuffle: a must be in (0,1)");
    bool parallel = (mode == RunMode::Parallel) && max_threads() > 1;

    std::vector<WeightField> fields(size_t(n) + 1);
    fields[n] = initial_field(a, b);
    for (int k = n; k >= 2; --k) fields[k - 1] = reduce_field(fields[k]);

    Grid cur(0);
    for (int k = 1; k <= n; ++k) {
        Grid next(k);
        auto coin = [&](Vec cell, double p) {
            return counter_uniform(stream, cell_counter(k, cell.x, cell.y)) < p;
        };
        grow(cur, next, k, fields[k], coin, parallel);
        cur = std::move(next);
    }

    Covering cov;
    cov.n = n;
    cov.seed = stream;
    cov.dir.assign(size_t(n) * (n + 1), 0);
    DiamondGraph g = DiamondGraph::of_size(n, a, b);
    for (int y = 0; y <= 2 * n; y += 2)
        for (int x = 1; x <= 2 * n - 1; x += 2) {
            uint8_t c = cur.at({x, y});
            if (c == EMPTY) throw std::logic_error("sample_shuffle: uncovered vertex");
            cov.dir[g.white_index({x, y})] = c;
        }
    if (!g.is_perfect_matching(cov)) throw std::logic_error("sample_shuffle: invalid matching");
    return cov;
}

Covering grow_covering(const Covering& prev, const WeightField& fk,
                       const std::function<bool(Vec, double)>& coin) {
    int k = prev.n + 1;
    Grid cur(prev.n);
    for (size_t i = 0; i < prev.dir.size(); ++i) {
        Vec w{2 * (int(i) % prev.n) + 1, 2 * (int(i) / prev.n)};
        Vec b = w + DIR[prev.dir[i]];
        cur.at(w) = prev.dir[i];
        cur.at(b) = uint8_t((prev.dir[i] + 2) % 4);
    }
    Grid next(k);
    grow(cur, next, k, fk, coin, false);
    Covering out;
    out.n = k;
    out.dir.assign(size_t(k) * (k + 1), 0);
    for (int y = 0; y <= 2 * k; y += 2)
        for (int x = 1; x <= 2 * k - 1; x += 2) {
            uint8_t c = next.at({x, y});
            if (c == EMPTY) throw std::logic_error("grow_covering: uncovered vertex");
            out.dir[size_t(y / 2) * k + (x - 1) / 2] = c;
        }
    return out;
}

Covering sample(const SamplerConfig& cfg) {
    if (cfg.m < 1) throw std::invalid_argument("sample: m must be >= 1");
    int n = 4 * cfg.m;
    if (cfg.method == SampleMethod::EnumerateAndSample) {
        if (n > 6) throw std::invalid_argument("sample: enumerate-and-sample needs n <= 6");
        DiamondGraph g(cfg.m, cfg.a);
        auto all = collect_coverings(g);
        double u = counter_uniform(cfg.seed, 0x0e0e0e0eULL) * all.total_weight;
        double acc = 0.0;
        for (size_t i = 0; i < all.coverings.size(); ++i) {
            acc += all.weights[i];
            if (u < acc || i + 1 == all.coverings.size()) {
                Covering c = all.coverings[i];
                c.seed = cfg.seed;
                return c;
            }
        }
        throw std::logic_error("sample: fell through enumeration");
    }
    return sample_shuffle(n, cfg.a, 1.0, cfg.seed, cfg.mode);
}

std::vector<Covering> sample_batch(const SamplerConfig& cfg, int count) {
    std::vector<Covering> out(count);
#pragma omp parallel for schedule(dynamic) if (cfg.mode == RunMode::Parallel && max_threads() > 1)
    for (int i = 0; i < count; ++i) {
        SamplerConfig c = cfg;
        c.seed = cfg.seed ^ uint64_t(i);
        c.mode = RunMode::Serial;  // parallelism is across samples
        out[i] = sample(c);
    }
    return out;
}

MarginalCheck edge_marginal_check(const SamplerConfig& cfg, std::pair<Vec, Vec> edge,
                                  int n_samples) {
    DiamondGraph g(cfg.m, cfg.a);
    auto kinv = exact_inverse_kasteleyn(g);
    double exact = local_statistics(g, kinv.inv, {edge});
    int wi = g.white_index(edge.second);
    Vec delta = edge.first - edge.second;
    long hits = 0;
    auto batch = sample_batch(cfg, n_samples);
    for (const auto& c : batch)
        if (DIR[c.dir[wi]] == delta) ++hits;
    MarginalCheck r;
    r.empirical = double(hits) / double(n_samples);
    r.exact = exact;
    double var = exact * (1.0 - exact) / double(n_samples);
    r.z = var > 0 ? (r.empirical - exact) / std::sqrt(var) : 0.0;
    return r;
}

}  // namespace aztec
