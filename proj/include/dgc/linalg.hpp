#pragma once

#include "dgc/scalars.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dgc {

// dense exact matrix, row-major
struct QMat {
    int rows = 0, cols = 0;
    std::vector<Q> a;
    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    Q& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Q& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    static QMat identity(int n);
    QMat operator*(const QMat& o) const;
    bool is_zero() const;
};

// sparse exact matrix stored by columns, entries sorted by row
struct SpMat {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, Q>>> col;
    SpMat() = default;
    SpMat(int r, int c) : rows(r), cols(c), col(c) {}
    static SpMat from_dense(const QMat& m);
    static SpMat identity(int n);
    void add(int i, int j, const Q& v);
    void finalize();  // sort and merge entries
    QMat dense() const;
    SpMat operator*(const SpMat& o) const;
    SpMat operator+(const SpMat& o) const;
    SpMat scaled(const Q& c) const;
    bool is_zero() const;
    size_t nnz() const;
    int min_valuation(long p) const;
};

struct RREF {
    QMat R;
    std::vector<int> pivots;
};
RREF rref(QMat m);
int rank(const QMat& m);
int rank(const SpMat& m);
std::vector<std::vector<Q>> kernel_basis(const QMat& m);

// ---- arithmetic over F_p ----
using FpVec = std::vector<uint32_t>;
int rank_mod_p(std::vector<FpVec> rows, uint32_t p);
// basis of {x : A x = 0} for A given by rows
std::vector<FpVec> kernel_mod_p(const std::vector<FpVec>& rows, int ncols, uint32_t p);
int rank_mod_p(const SpMat& m, long p);

/* Data of a valuation-pivoted one-sided elimination of an integral
   matrix over Z_(p). */
struct ElimStats {
    int min_pivot_val = kValInf;
    int max_pivot_val = -1;
    int pivots = 0;
};

/* Reduction mod p of { x : p^(N-1) x in image(A) + p^N Z^rows }.
   Columns of A are images of basis vectors; A is p-integral up to the
   factor p^shift handled internally. */
std::vector<FpVec> image_saturation_mod_p(const SpMat& A, long p, int N, Backend backend,
                                          ElimStats* stats = nullptr);
/* Reduction mod p of { x : A x in p^N Z^rows }. */
std::vector<FpVec> cycles_mod_p(const SpMat& A, long p, int N, Backend backend,
                                ElimStats* stats = nullptr);

// ---- generic rank with certificate ----
struct ScalarMatrix {
    int rows = 0, cols = 0;
    std::vector<Scalar> a;
    Scalar& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Scalar& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

struct PrecisionExhausted : std::runtime_error {
    PrecisionExhausted(const std::string& m) : std::runtime_error("precision exhausted: " + m) {}
};

struct RankResult {
    int rank = 0;
    std::vector<std::vector<Scalar>> kernel;
    std::vector<int> image_columns;  // columns of the input spanning the image
    int min_pivot_val = kValInf;
    int max_pivot_val = -1;
    int min_rejected_val = kValInf;
    bool certified = true;
};

ScalarMatrix to_scalar_matrix(const QMat& m, Backend b, long p, int N);
RankResult rank_kernel_image(const ScalarMatrix& M, int slack = 4);

}  // namespace dgc
