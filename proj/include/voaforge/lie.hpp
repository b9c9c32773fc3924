// Finite-dimensional Lie algebra presentations with structure constants,
// Killing form and dual-pair (Casimir) data.
//
// Formulas of the form "sum over an orthonormal basis" are evaluated with
// dual pairs (u_a, u^a) satisfying kappa(u_a, u^b) = delta_ab; such sums are
// bilinear in the repeated index, so the dual-pair contraction gives the same
// answer while staying inside the rationals.
#pragma once

#include <string>
#include <vector>

#include "voaforge/linalg.hpp"

namespace voaforge {

// Coefficient vector in the presentation basis (primal or dual space).
using GVec = std::vector<Rat>;

struct DualPair {
    GVec primal;  // u_a
    GVec dual;    // u^a, with kappa(u_a, u^b) = delta_ab
};

class LieAlgebraPresentation {
public:
    // structure[i][j] is the coefficient vector of [xi_i, xi_j].
    LieAlgebraPresentation(std::vector<std::string> labels,
                           std::vector<std::vector<GVec>> structure);

    // {"basis": [...], "brackets": [[i, j, [coeffs]] ...]}; the Killing form
    // is always recomputed from the structure constants.
    static LieAlgebraPresentation from_json(const std::string& text);

    int dim() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    int index_of(const std::string& label) const;

    const GVec& bracket_basis(int i, int j) const { return structure_[i][j]; }
    GVec bracket(const GVec& a, const GVec& b) const;

    // (ad*(xi) phi)(eta) = -phi([xi, eta]); phi is a dual-space vector.
    GVec coadjoint_action(const GVec& xi, const GVec& phi) const;

    // kappa_ij = trace(ad xi_i . ad xi_j)
    const MatrixXq& killing() const { return killing_; }
    bool semisimple() const { return has_inverse_; }
    const MatrixXq& killing_inverse() const;

    // Pairs (xi_i, sum_j (kappa^{-1})_ij xi_j).
    std::vector<DualPair> dual_pairs() const;

    // Throws std::logic_error on violated antisymmetry, Jacobi identity, or
    // kappa ad-invariance.
    void validate() const;

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<GVec>> structure_;
    MatrixXq killing_;
    MatrixXq killing_inv_;
    bool has_inverse_ = false;
};

// Basis (x, y, h) with [x,y] = h, [h,x] = 2x, [h,y] = -2y.
LieAlgebraPresentation sl2_root_basis();

}  // namespace voaforge
