// Classes in the K(0)- and D(0)-cohomology of the basic subalgebra for sl2:
// the classes h_{2n+2}, the recursive construction phi on the monomial basis
// of U(sl2), the Koszul preimage psi obtained by exact linear solves on
// weight/degree slices, and verification of the explicit representatives and
// relations (circle products, the weight-4 normally ordered relation, and the
// graded contracting-homotopy data).
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "voaforge/expr.hpp"
#include "voaforge/operators.hpp"

namespace voaforge {

// mu = x^r y^s h^t in the standard monomial basis of U(sl2).
struct Sl2Monomial {
    int r = 0, s = 0, t = 0;
    int expected_degree() const { return 4 * r - 4 * s; }
    int expected_weight() const { return 2 * s + t + 2; }
    std::string str() const;
};

struct CocycleRecord {
    Sl2Monomial mu;
    Expr phi;
    Expr psi;
    std::pair<int, int> psi_solve_dimensions{0, 0};  // (rows, cols)
    Expr representative() const { return add(phi, psi); }
};

// A weight/degree slice of the invariant subalgebra S^{sl2[t]}: canonical
// normally ordered monomials in d^k v^x, d^k v^y, d^k v^h.
struct GradedSlice {
    int weight = 0;
    int degree = 0;
    std::vector<Expr> monomials;
    std::vector<std::string> names;
};

// h_{2n+2} for n >= 1: the four-term formula (the third term drops out at
// n = 1, recovering h_4).
Expr h_class(const NamedOperatorTable& t, int n);

// The K(0)-closed operator with leading term :(v^y)^s (v^h)^t C^{gbb}:
// (polynomial degree 2(s+t) + 3), times r Wick factors of v^x.  The recursion
// determines it only up to K(0)-closed corrections of lower polynomial degree;
// for t >= 1 that freedom is resolved toward the quasi-primary representative
// (L o_2 annihilates it) whenever one exists in the correction space.
Expr phi(const NamedOperatorTable& t, const Sl2Monomial& mu);

GradedSlice monomial_basis_S(const NamedOperatorTable& t, int weight,
                             int degree);

// Solves K(0) omega = -J(0) phi(mu) over the matching slice; throws
// std::runtime_error if the system is inconsistent.
Expr psi(const NamedOperatorTable& t, const Sl2Monomial& mu,
         std::pair<int, int>* solve_dims = nullptr);

CocycleRecord psi_class(const NamedOperatorTable& t, const Sl2Monomial& mu);

// Frozen reference representatives of the low-weight classes, keyed
// "L", "F_3", "F_4", "H_4", "H_6", "H_8".
std::map<std::string, Expr> reference_classes(const NamedOperatorTable& t);

std::vector<Report> verify_circle_relations(const NamedOperatorTable& t);
std::vector<Report> verify_weight4_relation(const NamedOperatorTable& t);
std::vector<Report> koszul_homotopy_data(const NamedOperatorTable& t);
// J o_0 omega = sum_{i,m} (1/m!) :(d^m c^{xi_i'}) (Theta^{xi_i}_S o_m omega):
// for omega in the beta-gamma subalgebra.
std::vector<Report> verify_lemma62(const NamedOperatorTable& t,
                                   const std::vector<Expr>& samples);

// Monomials in a generator list (with derivatives) at fixed weight/degree;
// used for the tier-2 coboundary search inside the C subalgebra.
std::vector<Expr> generator_monomials(const std::vector<Expr>& gens,
                                      int weight, int degree, int max_count);

// Finds w in span(basis) with D(0)w = target; nullopt if inconsistent.
std::optional<Expr> d0_preimage(const NamedOperatorTable& t,
                                const std::vector<Expr>& basis,
                                const Expr& target);

}  // namespace voaforge
