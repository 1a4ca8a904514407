#include "aztec/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace aztec {

DiamondGraph::DiamondGraph(int m, double a, double b) : n_(4 * m), a_(a), b_(b) {
    if (m <= 0) throw std::invalid_argument("DiamondGraph: m must be positive");
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("DiamondGraph: a must be in (0,1)");
    if (!(b > 0.0)) throw std::invalid_argument("DiamondGraph: b must be positive");
}

DiamondGraph DiamondGraph::of_size(int n, double a, double b) {
    if (n <= 0) throw std::invalid_argument("DiamondGraph: n must be positive");
    DiamondGraph g(1, a, b);
    g.n_ = n;
    return g;
}

cplx kasteleyn_entry(Vec black, Vec white, double a, double b) {
    int j = parity(black);
    Vec d = white - black;
    double al = a * (1 - j) + b * j;   // +e1 / -e2 magnitude
    double be = a * j + b * (1 - j);   // -e1 / +e2 magnitude
    if (d == E1) return cplx(al, 0.0);
    if (d == E2) return cplx(0.0, be);
    if (d == Vec{0, 0} - E1) return cplx(be, 0.0);
    if (d == Vec{0, 0} - E2) return cplx(0.0, al);
    return cplx(0.0, 0.0);
}

double DiamondGraph::edge_weight(Vec b, Vec w) const {
    if (!in_diamond(b) || !in_diamond(w) || !is_black(b) || !is_white(w)) return 0.0;
    return std::abs(kasteleyn_entry(b, w, a_, b_));
}

std::vector<std::pair<Vec, Vec>> DiamondGraph::edges() const {
    std::vector<std::pair<Vec, Vec>> out;
    for (int i = 0; i < vertices_per_color(); ++i) {
        Vec b = black_at(i);
        for (int d = 0; d < 4; ++d) {
            Vec w = b + DIR[d];
            if (in_diamond(w)) out.push_back({b, w});
        }
    }
    return out;
}

std::vector<std::pair<Vec, Vec>> DiamondGraph::dimers(const Covering& c) const {
    std::vector<std::pair<Vec, Vec>> out;
    out.reserve(c.dir.size());
    for (size_t i = 0; i < c.dir.size(); ++i) {
        Vec w = white_at(int(i));
        out.push_back({w + DIR[c.dir[i]], w});
    }
    return out;
}

bool DiamondGraph::is_perfect_matching(const Covering& c) const {
    if (c.n != n_ || int(c.dir.size()) != vertices_per_color()) return false;
    std::vector<char> black_used(vertices_per_color(), 0);
    for (size_t i = 0; i < c.dir.size(); ++i) {
        if (c.dir[i] > 3) return false;
        Vec w = white_at(int(i));
        Vec b = w + DIR[c.dir[i]];
        if (!in_diamond(b)) return false;
        int bi = black_index(b);
        if (black_used[bi]) return false;
        black_used[bi] = 1;
    }
    return true;
}

double DiamondGraph::covering_weight(const Covering& c) const {
    double w = 1.0;
    for (size_t i = 0; i < c.dir.size(); ++i) {
        Vec wh = white_at(int(i));
        w *= edge_weight(wh + DIR[c.dir[i]], wh);
    }
    return w;
}

int DiamondGraph::a_dimer_count(const Covering& c) const {
    int count = 0;
    for (size_t i = 0; i < c.dir.size(); ++i) {
        Vec w = white_at(int(i));
        if (is_a_edge(w, w + DIR[c.dir[i]])) ++count;
    }
    return count;
}

MatC kasteleyn_matrix(const DiamondGraph& g) {
    int n = g.vertices_per_color();
    MatC k = MatC::Zero(n, n);
    for (int bi = 0; bi < n; ++bi) {
        Vec b = g.black_at(bi);
        for (int d = 0; d < 4; ++d) {
            Vec w = b + DIR[d];
            if (!g.in_diamond(w)) continue;
            k(bi, g.white_index(w)) = kasteleyn_entry(b, w, g.a(), g.b());
        }
    }
    return k;
}

double log_abs_det(const MatC& k) {
    Eigen::PartialPivLU<MatC> lu(k);
    double acc = 0.0;
    for (int i = 0; i < k.rows(); ++i) acc += std::log(std::abs(lu.matrixLU()(i, i)));
    return acc;
}

DenseInverse exact_inverse_kasteleyn(const DiamondGraph& g, int size_cap) {
    int n = g.vertices_per_color();
    if (n > size_cap) throw std::invalid_argument("exact_inverse_kasteleyn: size cap exceeded");
    MatC k = kasteleyn_matrix(g);
    Eigen::PartialPivLU<MatC> lu(k);
    MatC inv = lu.inverse();
    double res = (k * inv - MatC::Identity(n, n)).cwiseAbs().maxCoeff();
    double tol = n <= 2500 ? 1e-9 : 1e-8;
    if (!(res <= tol)) throw std::runtime_error("exact_inverse_kasteleyn: residual check failed");
    return {std::move(inv), res};
}

double local_statistics(const DiamondGraph& g, const MatC& kinv,
                        const std::vector<std::pair<Vec, Vec>>& edges) {
    size_t r = edges.size();
    if (r == 0) return 1.0;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = i + 1; j < r; ++j)
            if (edges[i] == edges[j]) throw std::invalid_argument("local_statistics: duplicate edges");
    // Edges sharing a vertex cannot be covered simultaneously.
    for (size_t i = 0; i < r; ++i)
        for (size_t j = i + 1; j < r; ++j)
            if (edges[i].first == edges[j].first || edges[i].second == edges[j].second) return 0.0;
    MatC l(r, r);
    for (size_t i = 0; i < r; ++i) {
        cplx ke = kasteleyn_entry(edges[i].first, edges[i].second, g.a(), g.b());
        for (size_t j = 0; j < r; ++j)
            l(i, j) = ke * kinv(g.white_index(edges[j].second), g.black_index(edges[i].first));
    }
    double p = l.determinant().real();
    if (p < -1e-9 || p > 1.0 + 1e-9)
        throw std::runtime_error("local_statistics: probability outside [0,1]");
    return p;
}

namespace {

struct EnumState {
    const DiamondGraph* g;
    std::vector<char> white_used;
    std::vector<char> black_used;
    Covering cov;
    double weight = 1.0;
    int covered = 0;
    const std::function<void(const Covering&, double)>* fn;

    int white_options(int wi, int* dirs) const {
        Vec w = g->white_at(wi);
        int k = 0;
        for (int d = 0; d < 4; ++d) {
            Vec b = w + DIR[d];
            if (g->in_diamond(b) && !black_used[g->black_index(b)]) dirs[k++] = d;
        }
        return k;
    }
    int black_options(int bi, int* dirs) const {
        Vec b = g->black_at(bi);
        int k = 0;
        for (int d = 0; d < 4; ++d) {
            Vec w = b + DIR[d];
            if (g->in_diamond(w) && !white_used[g->white_index(w)]) dirs[k++] = d;
        }
        return k;
    }
};

// Most-constrained-vertex pivoting: branch on an uncovered vertex with the
// fewest remaining partners (first by index on ties), which keeps the
// search tree proportional to the output and rules out dead branches
// early.  Enumeration order is deterministic.
void enum_rec(EnumState& s) {
    int total = s.g->vertices_per_color();
    if (s.covered == total) {
        (*s.fn)(s.cov, s.weight);
        return;
    }
    int best = 5, best_i = -1;
    bool best_white = true;
    int dirs[4], best_dirs[4];
    for (int i = 0; i < total && best > 1; ++i) {
        if (!s.white_used[i]) {
            int k = s.white_options(i, dirs);
            if (k < best) {
                best = k;
                best_i = i;
                best_white = true;
                std::copy(dirs, dirs + k, best_dirs);
            }
        }
        if (best > 1 && !s.black_used[i]) {
            int k = s.black_options(i, dirs);
            if (k < best) {
                best = k;
                best_i = i;
                best_white = false;
                std::copy(dirs, dirs + k, best_dirs);
            }
        }
    }
    if (best == 0) return;  // dead branch
    for (int c = 0; c < best; ++c) {
        int d = best_dirs[c];
        Vec w, b;
        if (best_white) {
            w = s.g->white_at(best_i);
            b = w + DIR[d];
        } else {
            b = s.g->black_at(best_i);
            w = b + DIR[d];
        }
        int wi = s.g->white_index(w), bi = s.g->black_index(b);
        s.white_used[wi] = 1;
        s.black_used[bi] = 1;
        s.cov.dir[wi] = uint8_t(dir_code(b - w));
        double ew = s.g->edge_weight(b, w);
        s.weight *= ew;
        ++s.covered;
        enum_rec(s);
        --s.covered;
        s.weight /= ew;
        s.white_used[wi] = 0;
        s.black_used[bi] = 0;
    }
}

}  // namespace

void enumerate_coverings(const DiamondGraph& g,
                         const std::function<void(const Covering&, double)>& fn) {
    if (g.n() > 6) throw std::invalid_argument("enumerate_coverings: n must be <= 6");
    EnumState s;
    s.g = &g;
    s.white_used.assign(g.vertices_per_color(), 0);
    s.black_used.assign(g.vertices_per_color(), 0);
    s.cov.n = g.n();
    s.cov.dir.assign(g.vertices_per_color(), 0);
    s.fn = &fn;
    enum_rec(s);
}

EnumeratedCoverings collect_coverings(const DiamondGraph& g) {
    EnumeratedCoverings out;
    enumerate_coverings(g, [&](const Covering& c, double w) {
        out.coverings.push_back(c);
        out.weights.push_back(w);
        out.total_weight += w;
    });
    return out;
}

}  // namespace aztec
