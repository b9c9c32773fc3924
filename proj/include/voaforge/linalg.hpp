// Exact linear algebra over the rationals.
//
// Matrices are Eigen dense types instantiated with the exact scalar Rat.
// On top of them we provide a deterministic reduced-row-echelon form with a
// fixed pivot order (first nonzero entry scanning columns left to right),
// which gives ranks, kernels and minimal-support solutions that are
// reproducible across platforms.
#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "voaforge/rational.hpp"

namespace Eigen {
template <>
struct NumTraits<voaforge::Rat> {
    using Real = voaforge::Rat;
    using NonInteger = voaforge::Rat;
    using Literal = voaforge::Rat;
    using Nested = voaforge::Rat;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 20,
        MulCost = 20,
    };
    static inline Real epsilon() { return voaforge::Rat(0); }
    static inline Real dummy_precision() { return voaforge::Rat(0); }
    static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace voaforge {

using MatrixXq = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXq = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

struct RrefResult {
    MatrixXq mat;                  // reduced row echelon form
    std::vector<int> pivot_cols;   // pivot column of each nonzero row
};

// Deterministic Gauss-Jordan elimination: pivots are chosen as the first
// nonzero entry when scanning columns left to right.
inline RrefResult rref(MatrixXq m) {
    RrefResult res;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = r; i < rows; ++i) {
            if (!m(i, c).is_zero()) { piv = i; break; }
        }
        if (piv < 0) continue;
        if (piv != r) m.row(piv).swap(m.row(r));
        Rat inv = Rat(1) / m(r, c);
        for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Rat f = m(i, c);
            for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        res.pivot_cols.push_back(static_cast<int>(c));
        ++r;
    }
    res.mat = std::move(m);
    return res;
}

inline int rank(const MatrixXq& m) {
    return static_cast<int>(rref(m).pivot_cols.size());
}

// Solves A x = b exactly.  Returns the solution with every free variable set
// to zero under the deterministic pivot order, or nullopt if inconsistent.
inline std::optional<VectorXq> solve(const MatrixXq& a, const VectorXq& b) {
    const Eigen::Index rows = a.rows(), cols = a.cols();
    MatrixXq aug(rows, cols + 1);
    aug.leftCols(cols) = a;
    aug.col(cols) = b;
    RrefResult rr = rref(std::move(aug));
    VectorXq x = VectorXq::Constant(cols, Rat(0));
    for (size_t i = 0; i < rr.pivot_cols.size(); ++i) {
        if (rr.pivot_cols[i] == static_cast<int>(cols)) return std::nullopt;
        x(rr.pivot_cols[i]) = rr.mat(static_cast<Eigen::Index>(i), cols);
    }
    return x;
}

// Basis of the null space of A, one column per free variable, in the
// deterministic pivot order.
inline MatrixXq kernel_basis(const MatrixXq& a) {
    const Eigen::Index cols = a.cols();
    RrefResult rr = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (Eigen::Index c = 0; c < cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(static_cast<int>(c));
    MatrixXq k = MatrixXq::Constant(cols, static_cast<Eigen::Index>(free_cols.size()), Rat(0));
    for (size_t fi = 0; fi < free_cols.size(); ++fi) {
        k(free_cols[fi], static_cast<Eigen::Index>(fi)) = Rat(1);
        for (size_t i = 0; i < rr.pivot_cols.size(); ++i)
            k(rr.pivot_cols[i], static_cast<Eigen::Index>(fi)) =
                -rr.mat(static_cast<Eigen::Index>(i), free_cols[fi]);
    }
    return k;
}

}  // namespace voaforge
