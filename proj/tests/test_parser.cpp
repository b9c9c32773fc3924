#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "voaforge/lie.hpp"
#include "voaforge/operators.hpp"
#include "voaforge/parser.hpp"
#include "voaforge/random.hpp"

using namespace voaforge;

namespace {

const std::vector<std::string>& labels() {
    static std::vector<std::string> l = sl2_root_basis().basis_labels();
    return l;
}

Expr P(const std::string& s) { return parse_expr(s, labels()); }

}  // namespace

TEST_CASE("single generators and derivatives") {
    CHECK(P("b[x]") == expr_letter(Species::b, 0));
    CHECK(P("gamma[h]") == expr_letter(Species::gamma, 2));
    CHECK(P("d^2 beta[h]") == expr_letter(Species::beta, 2, 2));
    CHECK(P("d^1 (d^2 c[y])") == expr_letter(Species::c, 1, 3));
    CHECK(P("1") == expr_one());
    CHECK(P("0 1") == expr_zero());
}

TEST_CASE("coefficients and sums") {
    Expr bx = expr_letter(Species::b, 0);
    CHECK(P("3 b[x]") == scale(bx, Rat(3)));
    CHECK(P("3/4 b[x]") == scale(bx, Rat(3, 4)));
    CHECK(P("b[x] - b[x]") == expr_zero());
    CHECK(P("2 b[x] + 1/2 b[x]") == scale(bx, Rat(5, 2)));
    CHECK(P("- b[x] + c[y]") ==
          add(negate(bx), expr_letter(Species::c, 1)));
}

TEST_CASE("Wick products are right-nested") {
    Expr bx = expr_letter(Species::b, 0);
    Expr cx = expr_letter(Species::c, 0);
    Expr gy = expr_letter(Species::gamma, 1);
    CHECK(P(":b[x] c[x]:") == wick(bx, cx));
    CHECK(P(":b[x] c[x] gamma[y]:") == wick_all({bx, cx, gy}));
    // Nested Wick grouping differs from the flat product in general.
    CHECK(P("::b[x] c[x]: gamma[y]:") == wick(wick(bx, cx), gy));
    // Parenthesized sums as factors.
    CHECK(P(":(b[x] + b[y]) c[x]:") ==
          wick(add(bx, expr_letter(Species::b, 1)), cx));
}

TEST_CASE("the printed v^x display parses to the constructed operator") {
    const NamedOperatorTable t = build_table(sl2_root_basis());
    CHECK(P("1/2 (:gamma[h] gamma[h]: + :gamma[x] gamma[y]:)") == t.v_x);
}

TEST_CASE("parse errors carry positions") {
    auto expect_error = [](const std::string& text, int line, int column) {
        try {
            P(text);
            FAIL_CHECK("no error for: ", text);
        } catch (const ParseError& e) {
            CAPTURE(text);
            CAPTURE(e.what());
            CHECK(e.line == line);
            CHECK(e.column == column);
        }
    };
    expect_error("b[q]", 1, 3);        // unknown label
    expect_error("phi[x]", 1, 1);      // unknown species
    expect_error("b[x] +", 1, 7);      // missing term
    expect_error(":b[x]:", 1, 7);      // fewer than two Wick factors
    expect_error("(b[x]", 1, 6);       // unclosed paren
    expect_error("b[x] @", 1, 6);      // bad character
    expect_error("b[x]\n + ?", 2, 4);  // second line position
}

TEST_CASE("round trip: every named operator and random expressions") {
    const NamedOperatorTable t = build_table(sl2_root_basis());
    int count = 0;
    for (const auto& [name, e] : named_operators(t)) {
        CAPTURE(name);
        CHECK(P(format_expr(e, labels())) == e);
        ++count;
    }
    std::mt19937_64 rng = make_rng(default_seed());
    for (int w = 0; w <= 4 && count < 60; ++w) {
        for (int trial = 0; trial < 8; ++trial, ++count) {
            Expr e = random_homogeneous_expr(rng, w, 3);
            CHECK(P(format_expr(e, labels())) == e);
        }
    }
    CHECK(count >= 50);
}

TEST_CASE("JSON serialization") {
    Expr e = add(scale(wick(expr_letter(Species::b, 0),
                            expr_letter(Species::c, 1)),
                       Rat(-1, 2)),
                 expr_letter(Species::gamma, 2, 1));
    CHECK(expr_to_json(e, labels()) ==
          "{\"terms\":[{\"coeff\":\"-1/2\",\"letters\":"
          "[[\"b\",\"x\",0],[\"c\",\"y\",0]]},"
          "{\"coeff\":\"1\",\"letters\":[[\"gamma\",\"h\",1]]}]}");
    CHECK(expr_to_json(expr_zero(), labels()) == "{\"terms\":[]}");
    CHECK(expr_to_json(expr_one(), labels()) ==
          "{\"terms\":[{\"coeff\":\"1\",\"letters\":[]}]}");
}
