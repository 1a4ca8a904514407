#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "aztec/geom.hpp"

namespace aztec {

using cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;

// Perfect matching of a diamond graph of size n.  Each white vertex stores
// the direction code of its dimer: black = white + DIR[code].
struct Covering {
    int n = 0;
    std::vector<uint8_t> dir;  // indexed by white_index
    uint64_t seed = 0;

    bool operator==(const Covering& o) const { return n == o.n && dir == o.dir; }
};

// The two-periodic Aztec diamond graph of size n (n = 4m for the model
// studied here, but any n >= 1 is a valid diamond).  Vertices:
//   W = {(x,y): x odd, y even, 1<=x<=2n-1, 0<=y<=2n}
//   B = {(x,y): x even, y odd, 0<=x<=2n, 1<=y<=2n-1}
// Edge weight is a if the edge borders an a-face, else b.
class DiamondGraph {
  public:
    DiamondGraph(int m, double a, double b = 1.0);
    static DiamondGraph of_size(int n, double a, double b = 1.0);

    int n() const { return n_; }
    int m() const { return n_ / 4; }
    double a() const { return a_; }
    double b() const { return b_; }

    int vertices_per_color() const { return n_ * (n_ + 1); }

    bool in_diamond(Vec v) const {
        return v.x >= 0 && v.x <= 2 * n_ && v.y >= 0 && v.y <= 2 * n_ && mod4(v.x + v.y) % 2 == 1;
    }
    bool interior_face(Vec c) const {
        if (mod4(c.x + c.y) % 2 == 1) return false;
        return c.x >= 1 && c.x <= 2 * n_ - 1 && c.y >= 1 && c.y <= 2 * n_ - 1;
    }

    // Raster order (y, then x), as used for matrix indexing.
    int white_index(Vec w) const { return (w.y / 2) * n_ + (w.x - 1) / 2; }
    Vec white_at(int i) const { return {2 * (i % n_) + 1, 2 * (i / n_)}; }
    int black_index(Vec b) const { return ((b.y - 1) / 2) * (n_ + 1) + b.x / 2; }
    Vec black_at(int i) const { return {2 * (i % (n_ + 1)), 2 * (i / (n_ + 1)) + 1}; }

    // Edge weight (modulus of the Kasteleyn entry); 0 if not an edge.
    double edge_weight(Vec b, Vec w) const;

    std::vector<std::pair<Vec, Vec>> edges() const;  // (black, white)

    // Dimers of a covering as (black, white) pairs.
    std::vector<std::pair<Vec, Vec>> dimers(const Covering& c) const;
    bool is_perfect_matching(const Covering& c) const;
    double covering_weight(const Covering& c) const;
    int a_dimer_count(const Covering& c) const;

  private:
    int n_;
    double a_, b_;
};

// Kasteleyn entry for the two-periodic weighting: for black x in B_j,
//   K(x, x+e1)  = a(1-j)+bj          K(x, x-e1)  = aj+b(1-j)
//   K(x, x+e2)  = (aj+b(1-j)) i      K(x, x-e2)  = (a(1-j)+bj) i
cplx kasteleyn_entry(Vec black, Vec white, double a, double b);

// Dense Kasteleyn matrix, rows = black vertices, columns = white vertices,
// both in raster order.
MatC kasteleyn_matrix(const DiamondGraph& g);

// log |det K|; equals log Z of the weighted dimer model.
double log_abs_det(const MatC& k);

struct DenseInverse {
    MatC inv;          // rows = white, cols = black: inv(w, b) = K^{-1}(w,b)
    double residual;   // max-norm of K*K^{-1} - I
};

// Dense inverse via complex partial-pivot LU.  Throws if the graph exceeds
// the size cap (default 5000 vertices per color) or the residual check
// fails.
DenseInverse exact_inverse_kasteleyn(const DiamondGraph& g, int size_cap = 5000);

// det[ L(e_i,e_j) ] with L(e_i,e_j) = K(b_i,w_i) K^{-1}(w_j,b_i): the
// probability that all listed edges are covered.
double local_statistics(const DiamondGraph& g, const MatC& kinv,
                        const std::vector<std::pair<Vec, Vec>>& edges);

// Brute-force enumeration of all coverings (n <= 6).  The callback receives
// each covering and its weight; enumeration order is deterministic.
void enumerate_coverings(const DiamondGraph& g,
                         const std::function<void(const Covering&, double)>& fn);

struct EnumeratedCoverings {
    std::vector<Covering> coverings;
    std::vector<double> weights;
    double total_weight = 0.0;
};

EnumeratedCoverings collect_coverings(const DiamondGraph& g);

}  // namespace aztec
