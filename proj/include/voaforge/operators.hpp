// Named operators of the chiral Weil complex W(g) and their verifications:
// the currents Theta, the conformal structures, the differentials J, K,
// D = J + K, both topological vertex algebra structures, and (for sl2 in the
// root basis) the nine distinguished invariant operators.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "voaforge/expr.hpp"
#include "voaforge/lie.hpp"

namespace voaforge {

struct Report {
    std::string identity;
    bool ok = false;
    Expr lhs;
    Expr rhs;
    std::string note;
};

inline bool all_ok(const std::vector<Report>& rs) {
    for (const auto& r : rs)
        if (!r.ok) return false;
    return true;
}

struct NamedOperatorTable {
    LieAlgebraPresentation lie;
    std::vector<DualPair> pairs;

    // Per basis element xi_i.
    std::vector<Expr> theta_E, theta_S, theta_W;

    Expr omega_E, omega_S, omega_W;
    Expr J, K, D;          // differentials, D = J + K
    Expr L_S, C_corr, L, H;

    // Standard topological structure of the bc-beta-gamma system.
    Expr L_std, F_std, J_std, G_std;
    // Twisted structure inside W(g)^{g[t]}.
    Expr L_tw, F_tw, J_tw, G_tw;

    // The nine sl2 operators (root basis only).
    bool has_sl2 = false;
    Expr v_x, v_y, v_h, K_op, Q_bb, C_bgb, C_gbb, C_bbb_beta, C_bbb;
};

// Field attached to a g-vector (for b, beta) or g*-vector (for c, gamma).
Expr gen_field(Species s, const GVec& v, int deriv = 0);

NamedOperatorTable build_table(const LieAlgebraPresentation& lie);

// Theta currents attached to arbitrary g-vectors, by linearity.
Expr theta_E_of(const NamedOperatorTable& t, const GVec& xi);
Expr theta_S_of(const NamedOperatorTable& t, const GVec& xi);
Expr theta_W_of(const NamedOperatorTable& t, const GVec& xi);

// op o_k target, k >= 0 (zero and positive Fourier modes as derivations).
Expr apply_mode(const Expr& op, long k, const Expr& target);

// Horizontal: b^xi o_k a = 0; invariant: Theta^xi_W o_k a = 0, both for all
// basis xi and 0 <= k <= weight(a) + 1; basic = both.
bool is_horizontal(const NamedOperatorTable& t, const Expr& a);
bool is_invariant(const NamedOperatorTable& t, const Expr& a);
bool is_basic(const NamedOperatorTable& t, const Expr& a);

std::vector<Report> verify_dva_structure(const NamedOperatorTable& t);
std::vector<Report> verify_tva(const NamedOperatorTable& t, bool twisted);
std::vector<Report> verify_s_current_map(const NamedOperatorTable& t);
// (L - omega_W) o_k a = D(0)(H o_k a) for basic a.
Report verify_L_coboundary_identity(const NamedOperatorTable& t, const Expr& a,
                                    long k);

// All printed sl2 identities of the operator section: the nine-operator OPE
// table, the relations among the C operators, and the J-OPEs.
std::vector<Report> verify_sl2_operator_tables(const NamedOperatorTable& t);
std::vector<Report> verify_c_relations(const NamedOperatorTable& t);

// Name -> operator lookup for the CLI.
std::map<std::string, Expr> named_operators(const NamedOperatorTable& t);

}  // namespace voaforge
