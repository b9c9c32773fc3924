// Acceptance harness: one pass/fail line per criterion.  Exit code is the
// number of failed criteria.
#include <iostream>
#include <string>
#include <vector>

#include "voaforge/cohomology.hpp"
#include "voaforge/expr.hpp"
#include "voaforge/lie.hpp"
#include "voaforge/operators.hpp"
#include "voaforge/random.hpp"
#include "voaforge/suites.hpp"

using namespace voaforge;

namespace {

int failures = 0;

void line(int n, bool ok, const std::string& what) {
    std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << " - "
              << what << "\n";
    if (!ok) ++failures;
}

void detail(const std::string& s) { std::cout << "    " << s << "\n"; }

void print_failures(const std::vector<Report>& rs) {
    for (const Report& r : rs)
        if (!r.ok) detail("failed: " + r.identity);
}

bool suites_pass(uint64_t seed, const std::vector<std::string>& names) {
    bool ok = true;
    for (const std::string& name : names) {
        SuiteResult r = run_suite(name, seed);
        if (!r.ok) {
            ok = false;
            print_failures(r.reports);
        }
    }
    return ok;
}

const NamedOperatorTable& table() {
    static NamedOperatorTable t = build_table(sl2_root_basis());
    return t;
}

bool criterion4() {
    const auto& t = table();
    bool ok = true;
    auto ope = ope_singular(t.L, t.L);
    ok = ok && ope.size() == 2;
    ok = ok && circle(t.L, t.L, 1) == scale(t.L, Rat(2));
    ok = ok && circle(t.L, t.L, 0) == derivative(t.L);
    for (long n = 2; n <= 4; ++n) ok = ok && is_zero(circle(t.L, t.L, n));
    ok = ok && is_zero(apply_mode(t.D, 0, t.L));
    int samples = 0;
    for (const Expr& a : {t.v_x, t.v_y, t.v_h, t.K_op, t.Q_bb, t.C_gbb}) {
        if (!is_basic(t, a)) continue;
        ++samples;
        for (long k = 0; k <= 2; ++k) {
            Report r = verify_L_coboundary_identity(t, a, k);
            if (!r.ok) {
                ok = false;
                detail("failed: " + r.identity);
            }
        }
    }
    return ok && samples >= 5;
}

bool criterion6() {
    const auto& t = table();
    const auto refs = reference_classes(t);
    struct Item {
        Sl2Monomial mu;
        const char* key;
    };
    const std::vector<Item> items = {
        {{0, 0, 0}, "L"},   {{0, 0, 1}, "F_3"}, {{0, 0, 2}, "F_4"},
        {{0, 1, 0}, "H_4"}, {{0, 2, 0}, "H_6"}, {{0, 3, 0}, "H_8"},
    };
    bool ok = true;
    for (const Item& it : items) {
        Expr rep = psi_class(t, it.mu).representative();
        const Expr& ref = refs.at(it.key);
        const bool match = rep == ref;
        detail(std::string(it.key) + " (mu = " + it.mu.str() + "): " +
               (match ? "exact match" : "MISMATCH"));
        if (match) continue;
        ok = false;
        Expr diff = sub(rep, ref);
        const bool closed = is_zero(apply_mode(t.D, 0, diff));
        detail("  the computed representative differs from the reference by "
               "a nonzero correction (" +
               std::to_string(diff.size()) + " terms, " +
               std::string(closed ? "closed" : "NOT closed") +
               " under the total differential)");
        detail("  the reference is pinned by "
               "F_4 = :LL: - 4 :v^x H_4: + d F_3 + 7/6 d^2 L, which the "
               "computed class does not reproduce coefficient-for-coefficient");
    }
    return ok;
}

}  // namespace

int main() {
    const uint64_t seed = default_seed();
    std::cout << "acceptance (seed " << seed << ")\n";

    line(1, suites_pass(seed, {"dva"}),
         "differential vertex algebra structure: Theta OPEs, [D(0), b] = "
         "Theta, square-zero differentials");
    line(2, suites_pass(seed, {"tva-standard", "tva-twisted"}),
         "both topological vertex algebra structures, twisted quadruple "
         "commuting with every Theta_W");
    line(3, suites_pass(seed, {"sl2-operators", "c-relations"}),
         "sl2 operator OPE tables, C-operator relations, Theta_W o_1 C^bgb = "
         "4 b^xi");
    line(4, criterion4(),
         "L is Virasoro (L o_1 L = 2L, L o_0 L = dL, higher products vanish), "
         "D(0)-closed, and acts by a coboundary on basic samples");
    line(5, suites_pass(seed, {"h-classes"}),
         "K(0) h_{2n+2} = 0 with gradings for n = 1..5; the recursion "
         "succeeds for n <= 4 with every eigenvalue in (-1, 0)");

    const bool c6 = criterion6();
    line(6, c6,
         "computed cohomology representatives equal the frozen references "
         "coefficient-for-coefficient");

    line(7, suites_pass(seed, {"circle-relations", "weight4"}),
         "the three circle-product relations and the exact weight-4 "
         "normally ordered relation");
    line(8, suites_pass(seed, {"oracle-equivalence"}),
         "rewriting engine agrees with the Fock-space oracle on all generator "
         "pairs and >= 100 random homogeneous pairs");
    line(9, suites_pass(seed, {"jet-appendix"}),
         "jet change-of-variables determinants, invariant factors, and "
         "non-divisibility");
    line(10, suites_pass(seed, {"weyl-relations"}),
         "quadratic/cubic invariant relations vanish identically for all "
         "index tuples with <= 4 copies");
    line(11, suites_pass(seed, {"jet-theorem63"}),
         "invariant dimension equals generated dimension on every slice "
         "(2 and 3 copies, level <= 2, weight <= 3, degree <= 4)");

    std::vector<Report> props = engine_property_reports(seed, 100);
    if (!all_ok(props)) print_failures(props);
    line(12, all_ok(props),
         "property suites: grading additivity, locality, skew-symmetry, "
         "zero-mode derivation, canonical idempotence (>= 100 cases each)");

    std::cout << failures << " criterion(s) failed\n";
    return failures;
}
