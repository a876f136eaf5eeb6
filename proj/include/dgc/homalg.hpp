#pragma once

#include "dgc/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dgc {

/* Cochain complex C^lo -> C^(lo+1) -> ... ; d[k] maps degree lo+k to lo+k+1.
   A chain complex C_n with boundary C_n -> C_(n-1) is stored with
   cochain degree -n (see from_chain). */
struct FiniteComplex {
    int lo = 0;
    std::vector<int> dims;
    std::vector<SpMat> d;  // size dims.size() - 1

    int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
    int dim(int deg) const;
    // zero matrix when deg is out of range
    SpMat diff(int deg) const;
    bool check_d2() const;
    void validate() const;

    // boundaries[n] : C_n -> C_(n-1) for n >= 1, dims[n] = dim C_n
    static FiniteComplex from_chain(const std::vector<int>& dims,
                                    const std::vector<SpMat>& boundaries);
};

// dim H^deg for deg = lo..hi, exact over Q
std::vector<int> homology_dims(const FiniteComplex& C);
// same through rank_kernel_image in the requested backend
std::vector<int> homology_dims(const FiniteComplex& C, Backend b, long p, int N, int slack = 4);

/* Levels 1..M (stored 0..M-1) and chain maps sigma[m][k]: level m+1 -> level m
   in cochain degree lo+k. */
struct ProComplex {
    std::vector<FiniteComplex> levels;
    std::vector<std::vector<SpMat>> sigma;

    int size() const { return static_cast<int>(levels.size()); }
    void validate() const;
};

/* Cone of the map prod_(m<=M) C_m -> prod_(m<M) C_m, (x_m) -> (x_m - sigma x_(m+1)).
   Cone^l = X^l + Y^(l-1), d(x, y) = (dx, phi x - dy). */
FiniteComplex holim(const ProComplex& P);

/* A tower V_1 <- V_2 <- ... <- V_M of finite-dimensional spaces.
   maps[m] : V_(m+1) -> V_m with dims[m] rows and dims[m+1] columns. */
struct Tower {
    std::vector<int> dims;
    std::vector<QMat> maps;
};

struct LimResult {
    int lim = 0;         // kernel of the difference map on the finite product
    int lim1 = 0;        // its cokernel
    int lim_stable = 0;  // rank of V_M -> V_1
};
LimResult lim_lim1(const Tower& T);

// tower of cohomology groups H^deg of the levels with the induced maps
Tower cohomology_tower(const ProComplex& P, int deg);

struct HolimCheck {
    int degree = 0;
    int holim_dim = 0;
    int lim = 0;
    int lim1_prev = 0;
    bool ok = false;
};
// H^l(holim) = lim H^l + lim^1 H^(l-1), one entry per degree
std::vector<HolimCheck> holim_bookkeeping(const ProComplex& P);

/* Betti numbers on a grid of truncation caps. */
struct BettiCell {
    int D = 0;
    int m = 0;
    std::vector<int> betti;
    int min_pivot_val = kValInf;
    int max_pivot_val = -1;
    double seconds = 0;
};

struct BettiReport {
    std::vector<int> caps;
    int m_max = 0;
    int window = 3;
    std::vector<BettiCell> cells;
    // per degree: stabilized value or nothing (unresolved)
    std::vector<std::optional<int>> stable;

    const BettiCell* cell(int D, int m) const;
    void stabilize();
    bool resolved() const;
};

std::string matrix_to_json(const SpMat& A);
SpMat matrix_from_json(const std::string& text);

}  // namespace dgc
