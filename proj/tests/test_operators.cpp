#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "voaforge/expr.hpp"
#include "voaforge/lie.hpp"
#include "voaforge/operators.hpp"

using namespace voaforge;

namespace {

constexpr int X = 0, Y = 1, H = 2;

const NamedOperatorTable& table() {
    static NamedOperatorTable t = build_table(sl2_root_basis());
    return t;
}

Expr mono(std::initializer_list<LetterKey> ls, long num, long den = 1) {
    return canonical_term(std::vector<LetterKey>(ls), Rat(num, den));
}

LetterKey B(int i, int d = 0) { return pack_letter(Species::b, i, d); }
LetterKey C(int i, int d = 0) { return pack_letter(Species::c, i, d); }
LetterKey Be(int i, int d = 0) { return pack_letter(Species::beta, i, d); }
LetterKey Ga(int i, int d = 0) { return pack_letter(Species::gamma, i, d); }

void require_all(const std::vector<Report>& rs) {
    for (const auto& r : rs) {
        INFO(r.identity, ": ", r.note.empty() ? expr_str(sub(r.lhs, r.rhs))
                                              : r.note);
        CHECK(r.ok);
    }
}

}  // namespace

TEST_CASE("Theta_W currents match their printed sl2 expansions") {
    const auto& t = table();
    Expr tx = add(add(mono({Be(X), Ga(H)}, 2), mono({Be(H), Ga(Y)}, -1)),
                  add(mono({B(X), C(H)}, -2), mono({B(H), C(Y)}, 1)));
    Expr ty = add(add(mono({Be(Y), Ga(H)}, -2), mono({Be(H), Ga(X)}, 1)),
                  add(mono({B(Y), C(H)}, 2), mono({B(H), C(X)}, -1)));
    Expr th = add(add(mono({Be(X), Ga(X)}, -2), mono({Be(Y), Ga(Y)}, 2)),
                  add(mono({B(X), C(X)}, 2), mono({B(Y), C(Y)}, -2)));
    CHECK(t.theta_W[X] == tx);
    CHECK(t.theta_W[Y] == ty);
    CHECK(t.theta_W[H] == th);
}

TEST_CASE("nine sl2 operators match their defining expansions") {
    const auto& t = table();
    CHECK(t.v_h == add(add(mono({Be(H), Ga(H)}, 1), mono({Be(X), Ga(X)}, 1)),
                       mono({Be(Y), Ga(Y)}, 1)));
    CHECK(t.v_x == add(mono({Ga(H), Ga(H)}, 1, 2), mono({Ga(X), Ga(Y)}, 1, 2)));
    CHECK(t.v_y == add(mono({Be(H), Be(H)}, -1, 2), mono({Be(X), Be(Y)}, -2)));
    CHECK(t.K_op == add(add(mono({Ga(H), B(H)}, 1), mono({Ga(X), B(X)}, 1)),
                        mono({Ga(Y), B(Y)}, 1)));
    CHECK(t.Q_bb == add(add(mono({Be(H), B(H)}, 1), mono({Be(X), B(Y)}, 2)),
                        mono({Be(Y), B(X)}, 2)));
    CHECK(t.C_gbb == add(add(mono({Ga(H), B(X), B(Y)}, -1),
                             mono({Ga(X), B(X), B(H)}, 1, 2)),
                         mono({Ga(Y), B(Y), B(H)}, -1, 2)));
    CHECK(t.C_bbb_beta == add(add(mono({Be(H), B(X), B(Y)}, 1),
                                  mono({Be(X), B(Y), B(H)}, 1)),
                              mono({Be(Y), B(X), B(H)}, -1)));
    CHECK(t.C_bbb == mono({B(X), B(Y), B(H)}, 1));
}

TEST_CASE("general constructions specialize correctly for sl2") {
    const auto& t = table();
    CHECK(t.K == t.K_op);
    CHECK(t.C_corr == t.C_gbb);
    CHECK(t.H == scale(t.C_bgb, Rat(-1, 4)));
    CHECK(sub(t.L, t.omega_W) == circle(t.D, t.H, 0));
    CHECK(t.D == add(t.J, t.K));
    CHECK(t.L == add(sub(t.omega_S, t.L_S), t.C_gbb));
    // gradings
    CHECK(weight_of(t.J) == 1);
    CHECK(degree_of(t.J) == 1);
    CHECK(parity_of(t.J) == 1);
    CHECK(weight_of(t.K) == 1);
    CHECK(degree_of(t.K) == 1);
    CHECK(weight_of(t.L) == 2);
    CHECK(degree_of(t.L) == 0);
    CHECK(parity_of(t.L) == 0);
    // J b^xi ~ Theta^xi_W / z
    for (int i = 0; i < 3; ++i) {
        auto ope = ope_singular(t.J, expr_letter(Species::b, i));
        REQUIRE(ope.size() == 1);
        CHECK(ope[0].first == 0);
        CHECK(ope[0].second == t.theta_W[static_cast<size_t>(i)]);
    }
}

TEST_CASE("differential vertex algebra structure") {
    require_all(verify_dva_structure(table()));
}

TEST_CASE("standard topological structure") {
    require_all(verify_tva(table(), false));
}

TEST_CASE("standard TVA sign adjudication") {
    const auto& t = table();
    // L_std is the weight-reading conformal structure.
    CHECK(t.L_std == t.omega_W);
    // G_std carries a plus sign: the minus-sign variant satisfies every other
    // TVA axiom but flips J(0)G to -L.
    Expr g_minus = negate(t.G_std);
    CHECK(circle(t.J_std, t.G_std, 0) == t.L_std);
    CHECK(circle(t.J_std, g_minus, 0) == negate(t.L_std));
}

TEST_CASE("twisted topological structure") {
    require_all(verify_tva(table(), true));
}

TEST_CASE("omega_W is a conformal structure and L matches it on weights") {
    const auto& t = table();
    // omega_W o_1 reads the weight, omega_W o_0 is the derivative.
    for (const Expr& a : {t.v_x, t.v_y, t.v_h, t.K_op, t.Q_bb, t.C_gbb,
                          t.C_bbb_beta, t.C_bbb, t.C_bgb}) {
        CHECK(circle(t.omega_W, a, 1) == scale(a, Rat(weight_of(a))));
        CHECK(circle(t.omega_W, a, 0) == derivative(a));
    }
    // L satisfies Virasoro with c = 0.
    auto ope = ope_singular(t.L, t.L);
    REQUIRE(ope.size() == 2);
    CHECK(ope[0].first == 0);
    CHECK(ope[0].second == derivative(t.L));
    CHECK(ope[1].first == 1);
    CHECK(ope[1].second == scale(t.L, Rat(2)));
    // L is D(0)-closed but omega_S - L_S alone is not.
    CHECK(is_zero(circle(t.D, t.L, 0)));
    CHECK(!is_zero(circle(t.D, sub(t.omega_S, t.L_S), 0)));
}

TEST_CASE("L - omega_W acts by a coboundary on basic elements") {
    const auto& t = table();
    for (const Expr& a : {t.v_x, t.v_y, t.v_h, t.K_op, t.Q_bb, t.C_gbb}) {
        for (long k = 0; k <= 2; ++k) {
            Report r = verify_L_coboundary_identity(t, a, k);
            INFO(r.identity);
            CHECK(r.ok);
        }
    }
}

TEST_CASE("s-superalgebra current map OPEs") {
    require_all(verify_s_current_map(table()));
}

TEST_CASE("selected s levels") {
    const auto& t = table();
    CHECK(circle(t.v_x, t.v_y, 1) == scale(expr_one(), Rat(-3, 2)));
    CHECK(circle(t.v_h, t.v_h, 1) == scale(expr_one(), Rat(-3)));
    CHECK(circle(t.v_x, t.v_x, 1) == expr_zero());
    CHECK(circle(t.v_x, t.v_y, 0) == t.v_h);
}

TEST_CASE("sl2 operator tables, J-OPEs, basic-ness") {
    require_all(verify_sl2_operator_tables(table()));
}

TEST_CASE("relations among the C operators") {
    require_all(verify_c_relations(table()));
}

TEST_CASE("pointwise frozen identities") {
    const auto& t = table();
    CHECK(apply_mode(t.J, 0, t.C_bbb) == negate(wick(t.K_op, t.Q_bb)));
    CHECK(apply_mode(t.J, 0, t.C_bgb) ==
          add(add(scale(wick(t.v_h, t.v_h), Rat(-2)),
                  scale(wick(t.v_x, t.v_y), Rat(-8))),
              add(scale(t.omega_W, Rat(4)), scale(derivative(t.v_h), Rat(2)))));
    CHECK(apply_mode(t.F_tw, 0, t.C_bgb) == negate(t.C_bgb));
    for (int i = 0; i < 3; ++i) {
        CHECK(apply_mode(t.D, 0, expr_letter(Species::b, i)) ==
              t.theta_W[static_cast<size_t>(i)]);
        CHECK(circle(t.theta_W[static_cast<size_t>(i)], t.C_bgb, 1) ==
              scale(expr_letter(Species::b, i), Rat(4)));
    }
    CHECK(!is_basic(t, t.C_bgb));
    CHECK(is_basic(t, t.L));
    CHECK(!is_basic(t, t.omega_W));
    CHECK(!is_basic(t, t.H));
}

TEST_CASE("named operator lookup is populated") {
    auto m = named_operators(table());
    CHECK(m.count("J") == 1);
    CHECK(m.count("L_tw") == 1);
    CHECK(m.count("Theta_W^h") == 1);
    CHECK(m.count("v^x") == 1);
    CHECK(m.count("C^bbb") == 1);
    CHECK(m.at("D") == add(m.at("J"), m.at("K")));
}
