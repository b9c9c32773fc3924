#include "voaforge/lie.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <stdexcept>
#include <utility>

namespace voaforge {

namespace {

GVec zero_vec(int n) { return GVec(static_cast<size_t>(n), Rat(0)); }

}  // namespace

LieAlgebraPresentation::LieAlgebraPresentation(
    std::vector<std::string> labels, std::vector<std::vector<GVec>> structure)
    : labels_(std::move(labels)), structure_(std::move(structure)) {
    const int n = dim();
    if (static_cast<int>(structure_.size()) != n)
        throw std::invalid_argument("lie: structure tensor has wrong shape");
    for (const auto& row : structure_) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("lie: structure tensor has wrong shape");
        for (const auto& v : row)
            if (static_cast<int>(v.size()) != n)
                throw std::invalid_argument("lie: structure tensor has wrong shape");
    }

    // ad(xi_i) as a matrix: column j holds [xi_i, xi_j].
    std::vector<MatrixXq> ad(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        ad[i] = MatrixXq::Constant(n, n, Rat(0));
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) ad[i](k, j) = structure_[i][j][k];
    }
    killing_ = MatrixXq::Constant(n, n, Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat tr(0);
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) tr += ad[i](k, l) * ad[j](l, k);
            killing_(i, j) = tr;
        }

    // Invert kappa by row reduction of [kappa | I].
    MatrixXq aug(n, 2 * n);
    aug.leftCols(n) = killing_;
    aug.rightCols(n) = MatrixXq::Identity(n, n);
    RrefResult rr = rref(std::move(aug));
    has_inverse_ = static_cast<int>(rr.pivot_cols.size()) == n &&
                   (n == 0 || rr.pivot_cols.back() < n);
    if (has_inverse_) killing_inv_ = rr.mat.rightCols(n);
}

int LieAlgebraPresentation::index_of(const std::string& label) const {
    for (int i = 0; i < dim(); ++i)
        if (labels_[i] == label) return i;
    throw std::invalid_argument("lie: unknown basis label '" + label + "'");
}

GVec LieAlgebraPresentation::bracket(const GVec& a, const GVec& b) const {
    const int n = dim();
    GVec out = zero_vec(n);
    for (int i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (b[j].is_zero()) continue;
            const Rat f = a[i] * b[j];
            for (int k = 0; k < n; ++k) out[k] += f * structure_[i][j][k];
        }
    }
    return out;
}

GVec LieAlgebraPresentation::coadjoint_action(const GVec& xi, const GVec& phi) const {
    const int n = dim();
    GVec out = zero_vec(n);
    // out_k = -phi([xi, xi_k])
    for (int k = 0; k < n; ++k) {
        GVec ek = zero_vec(n);
        ek[k] = Rat(1);
        GVec br = bracket(xi, ek);
        Rat val(0);
        for (int m = 0; m < n; ++m) val += phi[m] * br[m];
        out[k] = -val;
    }
    return out;
}

const MatrixXq& LieAlgebraPresentation::killing_inverse() const {
    if (!has_inverse_)
        throw std::logic_error("lie: Killing form is singular");
    return killing_inv_;
}

std::vector<DualPair> LieAlgebraPresentation::dual_pairs() const {
    const MatrixXq& inv = killing_inverse();
    const int n = dim();
    std::vector<DualPair> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        DualPair p;
        p.primal = zero_vec(n);
        p.primal[i] = Rat(1);
        p.dual = zero_vec(n);
        for (int j = 0; j < n; ++j) p.dual[j] = inv(i, j);
        out.push_back(std::move(p));
    }
    return out;
}

void LieAlgebraPresentation::validate() const {
    const int n = dim();
    auto basis = [&](int i) {
        GVec e = zero_vec(n);
        e[i] = Rat(1);
        return e;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (structure_[i][j][k] + structure_[j][i][k] != Rat(0))
                    throw std::logic_error("lie: bracket is not antisymmetric");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                GVec s = bracket(basis(i), bracket(basis(j), basis(k)));
                GVec t = bracket(basis(j), bracket(basis(k), basis(i)));
                GVec u = bracket(basis(k), bracket(basis(i), basis(j)));
                for (int m = 0; m < n; ++m)
                    if (s[m] + t[m] + u[m] != Rat(0))
                        throw std::logic_error("lie: Jacobi identity fails");
            }
    // kappa([a,b],c) + kappa(b,[a,c]) = 0 on basis triples.
    auto kappa = [&](const GVec& a, const GVec& b) {
        Rat v(0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v += a[i] * killing_(i, j) * b[j];
        return v;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Rat v = kappa(bracket(basis(i), basis(j)), basis(k)) +
                        kappa(basis(j), bracket(basis(i), basis(k)));
                if (v != Rat(0))
                    throw std::logic_error("lie: Killing form is not ad-invariant");
            }
}

LieAlgebraPresentation LieAlgebraPresentation::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<std::string> labels = j.at("basis").get<std::vector<std::string>>();
    const int n = static_cast<int>(labels.size());
    std::vector<std::vector<GVec>> f(
        static_cast<size_t>(n),
        std::vector<GVec>(static_cast<size_t>(n), GVec(static_cast<size_t>(n), Rat(0))));
    for (const auto& entry : j.at("brackets")) {
        const int a = entry.at(0).get<int>();
        const int b = entry.at(1).get<int>();
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw std::invalid_argument("lie: bracket index out of range");
        const auto& coeffs = entry.at(2);
        if (static_cast<int>(coeffs.size()) != n)
            throw std::invalid_argument("lie: bracket coefficient vector has wrong length");
        for (int k = 0; k < n; ++k) {
            Rat v = coeffs[static_cast<size_t>(k)].is_string()
                        ? Rat::parse(coeffs[static_cast<size_t>(k)].get<std::string>())
                        : Rat(coeffs[static_cast<size_t>(k)].get<long>());
            f[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(k)] = v;
            f[static_cast<size_t>(b)][static_cast<size_t>(a)][static_cast<size_t>(k)] = -v;
        }
    }
    LieAlgebraPresentation lie(std::move(labels), std::move(f));
    lie.validate();
    return lie;
}

LieAlgebraPresentation sl2_root_basis() {
    // basis order: x = 0, y = 1, h = 2
    const int n = 3;
    std::vector<std::vector<GVec>> f(
        3, std::vector<GVec>(3, GVec(static_cast<size_t>(n), Rat(0))));
    auto set = [&](int i, int j, int k, long v) {
        f[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] = Rat(v);
        f[static_cast<size_t>(j)][static_cast<size_t>(i)][static_cast<size_t>(k)] = Rat(-v);
    };
    set(0, 1, 2, 1);   // [x,y] = h
    set(2, 0, 0, 2);   // [h,x] = 2x
    set(2, 1, 1, -2);  // [h,y] = -2y
    return LieAlgebraPresentation({"x", "y", "h"}, std::move(f));
}

}  // namespace voaforge
