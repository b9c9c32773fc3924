#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "voaforge/expr.hpp"
#include "voaforge/random.hpp"

using namespace voaforge;

namespace {

// Lie indices in the sl2 root basis convention used across the library.
constexpr int X = 0, Y = 1, H = 2;

Expr gen(Species s, int i, int d = 0) { return expr_letter(s, i, d); }

}  // namespace

TEST_CASE("letter contractions") {
    // b o_0 c = c o_0 b = 1, beta o_0 gamma = 1, gamma o_0 beta = -1
    CHECK(circle(gen(Species::b, X), gen(Species::c, X), 0) == expr_one());
    CHECK(circle(gen(Species::c, X), gen(Species::b, X), 0) == expr_one());
    CHECK(circle(gen(Species::beta, H), gen(Species::gamma, H), 0) == expr_one());
    CHECK(circle(gen(Species::gamma, H), gen(Species::beta, H), 0) ==
          negate(expr_one()));
    CHECK(is_zero(circle(gen(Species::b, X), gen(Species::c, Y), 0)));
    CHECK(is_zero(circle(gen(Species::b, X), gen(Species::b, X), 0)));
    // (d b) o_1 c = -1, b o_1 (d c) = 1, (d b) o_2 (d c) = -2
    CHECK(circle(gen(Species::b, X, 1), gen(Species::c, X), 1) == negate(expr_one()));
    CHECK(circle(gen(Species::b, X), gen(Species::c, X, 1), 1) == expr_one());
    CHECK(circle(gen(Species::b, X, 1), gen(Species::c, X, 1), 2) ==
          scale(expr_one(), Rat(-2)));
    // Off-level contractions vanish.
    CHECK(is_zero(circle(gen(Species::b, X, 1), gen(Species::c, X), 0)));
    CHECK(is_zero(circle(gen(Species::b, X), gen(Species::c, X), 1)));
}

TEST_CASE("negative circle products are derivative Wick products") {
    // a o_{-k-1} b = (1/k!) :(d^k a) b:
    Expr b = gen(Species::b, X), c = gen(Species::c, Y);
    CHECK(circle(b, c, -2) == wick(derivative(b), c));
    CHECK(circle(b, c, -3) == scale(wick(derivative(b, 2), c), Rat(1, 2)));
    CHECK(circle(b, expr_one(), -3) == scale(derivative(b, 2), Rat(1, 2)));
}

TEST_CASE("canonical form of letter products") {
    // Odd letters anticommute: :c[x] b[x]: = -:b[x] c[x]:
    Expr bc = wick(gen(Species::b, X), gen(Species::c, X));
    Expr cb = wick(gen(Species::c, X), gen(Species::b, X));
    CHECK(cb == negate(bc));
    // Squares of odd letters vanish; even letters commute.
    CHECK(is_zero(wick(gen(Species::b, X), gen(Species::b, X))));
    CHECK(wick(gen(Species::gamma, X), gen(Species::gamma, H)) ==
          wick(gen(Species::gamma, H), gen(Species::gamma, X)));
    // canonical_term matches repeated Wick insertion with a Koszul sign.
    std::vector<LetterKey> fwd{pack_letter(Species::b, X, 0),
                               pack_letter(Species::c, Y, 0),
                               pack_letter(Species::b, H, 1)};
    std::vector<LetterKey> rev(fwd.rbegin(), fwd.rend());
    // Three pairwise-odd letters reversed: sign (-1)^3.
    CHECK(canonical_term(rev, Rat(1)) == canonical_term(fwd, Rat(-1)));
}

TEST_CASE("quasi-associativity witness") {
    // :(:gamma gamma:) beta: - :gamma (:gamma beta:): = -2 d gamma
    Expr g = gen(Species::gamma, H), be = gen(Species::beta, H);
    Expr lhs = sub(wick(wick(g, g), be), wick(g, wick(g, be)));
    CHECK(lhs == scale(derivative(g), Rat(-2)));
}

TEST_CASE("composite circle product example") {
    // (:gamma[h] gamma[h]:) o_0 beta[h] = -2 gamma[h]
    Expr g = gen(Species::gamma, H);
    Expr r = circle(wick(g, g), gen(Species::beta, H), 0);
    CHECK(r == scale(g, Rat(-2)));
}

TEST_CASE("derivative is a derivation of the Wick product on letters") {
    Expr b = gen(Species::b, X), c = gen(Species::c, Y);
    Expr lhs = derivative(wick(b, c));
    Expr rhs = add(wick(derivative(b), c), wick(b, derivative(c)));
    CHECK(lhs == rhs);
}

TEST_CASE("gradings") {
    Expr m = wick(gen(Species::beta, X, 2), wick(gen(Species::b, Y), gen(Species::gamma, H)));
    CHECK(weight_of(m) == 4);      // (1+2) + 1 + 0
    CHECK(degree_of(m) == -1);     // -2 - 1 + 2
    CHECK(parity_of(m) == 1);
    int v = 0;
    CHECK(homogeneous_bnumber(m, v));
    CHECK(v == 1);
    Expr mixed = add(m, gen(Species::c, X));
    CHECK(!homogeneous_weight(mixed, v));
}

TEST_CASE("locality bound") {
    std::mt19937_64 rng = make_rng(7);
    for (int i = 0; i < 30; ++i) {
        const int wa = static_cast<int>(rng() % 4);
        const int wb = static_cast<int>(rng() % 4);
        Expr a = random_homogeneous_expr(rng, wa, 2);
        Expr b = random_homogeneous_expr(rng, wb, 2);
        for (long n = wa + wb; n < wa + wb + 3; ++n)
            CHECK(is_zero(circle(a, b, n)));
    }
}

TEST_CASE("skew symmetry") {
    // a o_n b = (-1)^{|a||b|} sum_{j>=0} (-1)^{n+j+1} (1/j!) d^j (b o_{n+j} a)
    std::mt19937_64 rng = make_rng(11);
    for (int i = 0; i < 40; ++i) {
        const int wa = static_cast<int>(rng() % 3);
        const int wb = static_cast<int>(rng() % 3);
        Expr a = random_homogeneous_expr(rng, wa, 2);
        Expr b = random_homogeneous_expr(rng, wb, 2);
        int pa = 0, pb = 0;
        if (!homogeneous_parity(a, pa) || !homogeneous_parity(b, pb)) continue;
        for (long n = -2; n < wa + wb; ++n) {
            Expr lhs = circle(a, b, n);
            Expr rhs;
            for (long j = 0;; ++j) {
                Expr t = circle(b, a, n + j);
                if (n + j >= wa + wb && is_zero(t)) break;
                Rat f = Rat(1) / factorial(j);
                if ((n + j + 1) % 2 != 0) f = -f;
                rhs = add(rhs, scale(derivative(t, static_cast<int>(j)), f));
            }
            if (pa == 1 && pb == 1) rhs = negate(rhs);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("zero modes are derivations of circle products") {
    std::mt19937_64 rng = make_rng(13);
    for (int i = 0; i < 25; ++i) {
        Expr a = random_homogeneous_expr(rng, 1 + static_cast<int>(rng() % 2), 1);
        Expr b = random_homogeneous_expr(rng, static_cast<int>(rng() % 3), 1);
        Expr c = random_homogeneous_expr(rng, static_cast<int>(rng() % 3), 1);
        int pa = 0, pb = 0;
        if (!homogeneous_parity(a, pa) || !homogeneous_parity(b, pb)) continue;
        for (long n = -2; n <= 2; ++n) {
            Expr lhs = circle(a, circle(b, c, n), 0);
            Expr rhs = add(circle(circle(a, b, 0), c, n),
                           scale(circle(b, circle(a, c, 0), n),
                                 (pa == 1 && pb == 1) ? Rat(-1) : Rat(1)));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("ope_singular collects exactly the nonnegative circle products") {
    Expr b = gen(Species::b, X), c = gen(Species::c, X);
    auto terms = ope_singular(b, derivative(c));
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].first == 1);
    CHECK(terms[0].second == expr_one());
}

TEST_CASE("grading additivity under circle products") {
    std::mt19937_64 rng = make_rng(17);
    for (int i = 0; i < 30; ++i) {
        const int wa = static_cast<int>(rng() % 3);
        const int wb = static_cast<int>(rng() % 3);
        Expr a = random_homogeneous_expr(rng, wa, 2);
        Expr b = random_homogeneous_expr(rng, wb, 2);
        for (long n = -2; n < wa + wb; ++n) {
            Expr r = circle(a, b, n);
            if (is_zero(r)) continue;
            CHECK(weight_of(r) == wa + wb - static_cast<int>(n) - 1);
            int da = 0, db = 0, dr = 0;
            if (homogeneous_degree(a, da) && homogeneous_degree(b, db)) {
                CHECK(homogeneous_degree(r, dr));
                CHECK(dr == da + db);
            }
        }
    }
}
