#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>

namespace aztec {

struct Vec {
    int x = 0;
    int y = 0;

    friend Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
    friend bool operator==(Vec a, Vec b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Vec a, Vec b) { return !(a == b); }
    friend bool operator<(Vec a, Vec b) { return a.y != b.y ? a.y < b.y : a.x < b.x; }
};

// Lattice directions. Every edge of the diamond lattice satisfies
// black - white = +-e1 or +-e2.
inline constexpr Vec E1{1, 1};
inline constexpr Vec E2{-1, 1};

// Direction codes, in the order f1=e1, f2=e2, f3=-e1, f4=-e2.
inline constexpr std::array<Vec, 4> DIR{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};

inline int opposite_dir(int d) { return (d + 2) % 4; }

// Index of d in DIR, or -1.
inline int dir_code(Vec d) {
    for (int i = 0; i < 4; ++i)
        if (DIR[i].x == d.x && DIR[i].y == d.y) return i;
    return -1;
}

inline int mod4(int v) { return ((v % 4) + 4) % 4; }

// Vertices sit on lattice points with odd coordinate sum; white vertices
// have odd x and even y, black vertices even x and odd y.
inline bool is_lattice_vertex(Vec v) { return mod4(v.x + v.y) % 2 == 1; }
inline bool is_white(Vec v) { return std::abs(v.x) % 2 == 1; }
inline bool is_black(Vec v) { return std::abs(v.x) % 2 == 0; }

// Sublattice index: v is in W_j / B_j iff (x+y) mod 4 == 2j+1.
inline int parity(Vec v) {
    int r = mod4(v.x + v.y);
    return (r - 1) / 2;
}

// Face classification.  Face centers are the even-coordinate-sum points.
// The a/b classification of the two-periodic weighting applies to the
// faces with both coordinates odd: around an a-face all four edges carry
// weight a, around a b-face all four carry weight b.  Faces with both
// coordinates even have alternating weights a,b,a,b and carry neither
// label.
enum class FaceKind : uint8_t { A, B, Mixed, None };

inline FaceKind face_kind(Vec c) {
    if (mod4(c.x + c.y) % 2 == 1) return FaceKind::None;
    if (std::abs(c.x) % 2 == 1) return mod4(c.x + c.y) == 2 ? FaceKind::A : FaceKind::B;
    return FaceKind::Mixed;
}

inline bool is_a_face(Vec c) { return face_kind(c) == FaceKind::A; }
inline bool is_b_face(Vec c) { return face_kind(c) == FaceKind::B; }

// The unique odd-odd face adjacent to the edge {w,b}; this face determines
// the edge weight (a if it is an a-face, b otherwise).
inline Vec odd_odd_face_of_edge(Vec w, Vec b) {
    // The two faces adjacent to the edge are mid +- rot90(delta)/2 where
    // mid is the (half-integer) midpoint; exactly one has odd coordinates.
    Vec d = b - w;
    Vec c1{(w.x + b.x + d.y) / 2, (w.y + b.y - d.x) / 2};
    Vec c2{(w.x + b.x - d.y) / 2, (w.y + b.y + d.x) / 2};
    return (std::abs(c1.x) % 2 == 1) ? c1 : c2;
}

inline bool is_a_edge(Vec w, Vec b) { return is_a_face(odd_odd_face_of_edge(w, b)); }

// Every vertex lies on the boundary of exactly one a-face and one b-face.
inline Vec b_face_of_vertex(Vec v) {
    if (is_white(v)) {
        Vec c1{v.x, v.y + 1}, c2{v.x, v.y - 1};
        return mod4(c1.x + c1.y) == 0 ? c1 : c2;
    }
    Vec c1{v.x + 1, v.y}, c2{v.x - 1, v.y};
    return mod4(c1.x + c1.y) == 0 ? c1 : c2;
}

inline Vec a_face_of_vertex(Vec v) {
    if (is_white(v)) {
        Vec c1{v.x, v.y + 1}, c2{v.x, v.y - 1};
        return mod4(c1.x + c1.y) == 2 ? c1 : c2;
    }
    Vec c1{v.x + 1, v.y}, c2{v.x - 1, v.y};
    return mod4(c1.x + c1.y) == 2 ? c1 : c2;
}

struct VecHash {
    size_t operator()(Vec v) const {
        uint64_t k = (uint64_t(uint32_t(v.x)) << 32) | uint32_t(v.y);
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return size_t(k);
    }
};

inline std::string to_string(Vec v) {
    return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

}  // namespace aztec
