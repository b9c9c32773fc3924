#include "voaforge/jets.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "voaforge/linalg.hpp"

namespace voaforge {

namespace {

void jp_add_term(JetPoly& p, const JetMonomial& m, const Rat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = p.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

JetMonomial merge_sorted(const JetMonomial& a, const JetMonomial& b) {
    JetMonomial out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Report plain_report(std::string identity, bool ok, std::string note = "") {
    Report r;
    r.identity = std::move(identity);
    r.ok = ok;
    r.note = std::move(note);
    return r;
}

// Determinant by minor expansion with subset memoization; `entry` must be
// defined for 0 <= row, col < n.
JetPoly jp_det(const std::function<const JetPoly&(int, int)>& entry, int n) {
    if (n == 0) return jp_one();
    std::vector<JetPoly> dp(static_cast<size_t>(1) << n);
    dp[0] = jp_one();
    for (uint32_t mask = 1; mask < dp.size(); ++mask) {
        const int row = __builtin_popcount(mask) - 1;
        JetPoly acc;
        int pos = 0;
        for (int j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            const JetPoly& sub = dp[mask ^ (1u << j)];
            if (!jp_is_zero(sub)) {
                JetPoly term = jp_mul(entry(row, j), sub);
                acc = ((row + pos) % 2 == 0) ? jp_add(acc, term)
                                             : jp_sub(acc, term);
            }
            ++pos;
        }
        dp[mask] = std::move(acc);
    }
    return dp.back();
}

// All level-0 variables of the ring in display order.
std::vector<JetVar> level0_vars(const JetRing& ring) {
    std::vector<JetVar> vars;
    for (int copy = 0; copy < ring.copies; ++copy)
        for (size_t slot = 0; slot < ring.slot_to_basis.size(); ++slot)
            vars.push_back(ring.var(copy, ring.slot_to_basis[slot], 0));
    return vars;
}

Rat evaluate(const JetPoly& p, const std::map<JetVar, Rat>& point) {
    Rat out(0);
    for (const auto& [m, c] : p) {
        Rat term = c;
        for (JetVar v : m) term *= point.at(v);
        out += term;
    }
    return out;
}

}  // namespace

JetVar JetRing::var(int copy, int basis_index, int jet_level) const {
    if (copy < 0 || copy >= copies)
        throw std::invalid_argument("JetRing::var: copy out of range");
    if (basis_index < 0 || basis_index >= lie.dim())
        throw std::invalid_argument("JetRing::var: basis index out of range");
    if (jet_level < 0 || jet_level > level)
        throw std::invalid_argument("JetRing::var: jet level out of range");
    return (static_cast<JetVar>(copy) << 16) |
           (static_cast<JetVar>(basis_to_slot[static_cast<size_t>(basis_index)])
            << 8) |
           static_cast<JetVar>(jet_level);
}

std::string JetRing::var_str(JetVar v) const {
    std::ostringstream os;
    os << "a^"
       << lie.basis_labels()[static_cast<size_t>(
              slot_to_basis[static_cast<size_t>(jetvar_slot(v))])]
       << "_" << (jetvar_copy(v) + 1);
    if (jetvar_level(v) > 0) os << "^(" << jetvar_level(v) << ")";
    return os.str();
}

JetRing adjoint_jet_ring(const LieAlgebraPresentation& lie, int copies,
                         int level) {
    if (copies < 1) throw std::invalid_argument("adjoint_jet_ring: copies < 1");
    if (level < 0) throw std::invalid_argument("adjoint_jet_ring: level < 0");
    JetRing ring{lie, copies, level, {}, {}};
    const int d = lie.dim();
    // Display order: "h" first when present (a^h < a^x < a^y for sl2),
    // otherwise the presentation order.
    std::vector<int> order;
    for (int i = 0; i < d; ++i)
        if (lie.basis_labels()[static_cast<size_t>(i)] == "h") order.push_back(i);
    for (int i = 0; i < d; ++i)
        if (lie.basis_labels()[static_cast<size_t>(i)] != "h") order.push_back(i);
    ring.slot_to_basis = order;
    ring.basis_to_slot.assign(static_cast<size_t>(d), 0);
    for (int s = 0; s < d; ++s)
        ring.basis_to_slot[static_cast<size_t>(order[static_cast<size_t>(s)])] =
            s;
    return ring;
}

JetPoly jp_zero() { return {}; }

JetPoly jp_one() { return jp_const(Rat(1)); }

JetPoly jp_const(const Rat& c) {
    JetPoly p;
    jp_add_term(p, {}, c);
    return p;
}

JetPoly jp_variable(const JetRing& ring, int copy, int basis_index,
                    int jet_level) {
    JetPoly p;
    jp_add_term(p, {ring.var(copy, basis_index, jet_level)}, Rat(1));
    return p;
}

JetPoly jp_add(const JetPoly& a, const JetPoly& b) {
    JetPoly out = a;
    for (const auto& [m, c] : b) jp_add_term(out, m, c);
    return out;
}

JetPoly jp_sub(const JetPoly& a, const JetPoly& b) {
    JetPoly out = a;
    for (const auto& [m, c] : b) jp_add_term(out, m, -c);
    return out;
}

JetPoly jp_scale(const JetPoly& a, const Rat& c) {
    JetPoly out;
    for (const auto& [m, k] : a) jp_add_term(out, m, k * c);
    return out;
}

JetPoly jp_mul(const JetPoly& a, const JetPoly& b) {
    JetPoly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b)
            jp_add_term(out, merge_sorted(ma, mb), ca * cb);
    return out;
}

bool jp_is_zero(const JetPoly& a) { return a.empty(); }

bool jp_equal(const JetPoly& a, const JetPoly& b) { return a == b; }

std::string jp_str(const JetRing& ring, const JetPoly& a) {
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : a) {
        if (!first) os << " + ";
        first = false;
        os << c;
        for (JetVar v : m) os << " " << ring.var_str(v);
    }
    return os.str();
}

int jp_monomial_weight(const JetMonomial& m) {
    int w = 0;
    for (JetVar v : m) w += jetvar_level(v);
    return w;
}

// Applies a derivation given by its action on single variables.
static JetPoly apply_derivation(
    const JetPoly& p, const std::function<JetPoly(JetVar)>& on_var) {
    JetPoly out;
    for (const auto& [m, c] : p) {
        for (size_t i = 0; i < m.size(); ++i) {
            if (i > 0 && m[i] == m[i - 1]) continue;  // handled with multiplicity
            size_t mult = 0;
            for (size_t j = i; j < m.size() && m[j] == m[i]; ++j) ++mult;
            JetPoly image = on_var(m[i]);
            if (jp_is_zero(image)) continue;
            JetMonomial rest;
            rest.reserve(m.size() - 1);
            bool skipped = false;
            for (size_t j = 0; j < m.size(); ++j) {
                if (!skipped && m[j] == m[i]) {
                    skipped = true;
                    continue;
                }
                rest.push_back(m[j]);
            }
            for (const auto& [mi, ci] : image)
                jp_add_term(out, merge_sorted(rest, mi),
                            c * ci * Rat(static_cast<long>(mult)));
        }
    }
    return out;
}

JetPoly jet_D(const JetRing& ring, const JetPoly& p) {
    return apply_derivation(p, [&ring](JetVar v) -> JetPoly {
        if (jetvar_level(v) >= ring.level) return jp_zero();
        JetPoly out;
        jp_add_term(out, {static_cast<JetVar>(v + 1)}, Rat(1));
        return out;
    });
}

JetPoly jp_partial(const JetPoly& p, JetVar v) {
    JetPoly out;
    for (const auto& [m, c] : p) {
        size_t mult = 0;
        JetMonomial rest;
        bool skipped = false;
        for (JetVar w : m) {
            if (w == v) ++mult;
            if (w == v && !skipped) {
                skipped = true;
                continue;
            }
            rest.push_back(w);
        }
        if (mult > 0)
            jp_add_term(out, rest, c * Rat(static_cast<long>(mult)));
    }
    return out;
}

JetPoly lie_jet_action(const JetRing& ring, const GVec& xi, int r,
                       const JetPoly& p) {
    if (r < 0) throw std::invalid_argument("lie_jet_action: r < 0");
    const int d = ring.lie.dim();
    return apply_derivation(p, [&](JetVar v) -> JetPoly {
        const int lev = jetvar_level(v);
        if (r > lev) return jp_zero();
        Rat coeff(1);
        for (int k = 0; k < r; ++k) coeff *= Rat(lev - k);
        const int u =
            ring.slot_to_basis[static_cast<size_t>(jetvar_slot(v))];
        GVec unit(static_cast<size_t>(d), Rat(0));
        unit[static_cast<size_t>(u)] = Rat(1);
        // The symbols carry the adjoint representation: xi . a^u = a^{[xi,u]}.
        GVec br = ring.lie.bracket(xi, unit);
        JetPoly out;
        for (int w = 0; w < d; ++w) {
            if (br[static_cast<size_t>(w)].is_zero()) continue;
            jp_add_term(out, {ring.var(jetvar_copy(v), w, lev - r)},
                        coeff * br[static_cast<size_t>(w)]);
        }
        return out;
    });
}

const JetPoly& WeylGeneratorSet::qq(int i, int j) const {
    return q.at(i <= j ? std::make_pair(i, j) : std::make_pair(j, i));
}

JetPoly WeylGeneratorSet::cc(int k, int l, int m) const {
    std::array<int, 3> idx = {k, l, m};
    int sign = 1;
    // Sort the three indices, tracking the permutation sign.
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2 - a; ++b)
            if (idx[static_cast<size_t>(b)] > idx[static_cast<size_t>(b + 1)]) {
                std::swap(idx[static_cast<size_t>(b)],
                          idx[static_cast<size_t>(b + 1)]);
                sign = -sign;
            }
    if (idx[0] == idx[1] || idx[1] == idx[2]) return jp_zero();
    return jp_scale(c.at(idx), Rat(sign));
}

WeylGeneratorSet weyl_generators(const JetRing& ring) {
    const int ih = ring.lie.index_of("h");
    const int ix = ring.lie.index_of("x");
    const int iy = ring.lie.index_of("y");
    auto ah = [&](int i) { return jp_variable(ring, i, ih, 0); };
    auto ax = [&](int i) { return jp_variable(ring, i, ix, 0); };
    auto ay = [&](int i) { return jp_variable(ring, i, iy, 0); };

    WeylGeneratorSet out;
    for (int i = 0; i < ring.copies; ++i)
        for (int j = i; j < ring.copies; ++j)
            out.q[{i, j}] = jp_add(
                jp_mul(ah(i), ah(j)),
                jp_add(jp_scale(jp_mul(ax(i), ay(j)), Rat(2)),
                       jp_scale(jp_mul(ax(j), ay(i)), Rat(2))));
    for (int k = 0; k < ring.copies; ++k)
        for (int l = k + 1; l < ring.copies; ++l)
            for (int m = l + 1; m < ring.copies; ++m) {
                const std::array<std::array<JetPoly, 3>, 3> rows = {
                    {{ah(k), ax(k), ay(k)},
                     {ah(l), ax(l), ay(l)},
                     {ah(m), ax(m), ay(m)}}};
                out.c[{k, l, m}] = jp_det(
                    [&rows](int r, int cidx) -> const JetPoly& {
                        return rows[static_cast<size_t>(r)]
                                   [static_cast<size_t>(cidx)];
                    },
                    3);
            }
    return out;
}

std::vector<Report> verify_weyl_relations(const JetRing& ring) {
    std::vector<Report> out;
    const WeylGeneratorSet g = weyl_generators(ring);
    const int p = ring.copies;

    // Invariance of the generators under the level-0 action.
    {
        bool ok = true;
        int count = 0;
        for (int b = 0; b < ring.lie.dim(); ++b) {
            GVec xi(static_cast<size_t>(ring.lie.dim()), Rat(0));
            xi[static_cast<size_t>(b)] = Rat(1);
            for (const auto& [key, poly] : g.q) {
                ok = ok && jp_is_zero(lie_jet_action(ring, xi, 0, poly));
                ++count;
            }
            for (const auto& [key, poly] : g.c) {
                ok = ok && jp_is_zero(lie_jet_action(ring, xi, 0, poly));
                ++count;
            }
        }
        out.push_back(plain_report(
            "q_ij and c_klm are g-invariant", ok,
            std::to_string(count) + " generator/vector pairs"));
    }

    // q c - q c + q c - q c relation.
    if (p >= 3) {
        bool ok = true;
        int count = 0;
        for (int j = 0; j < p; ++j)
            for (int k = 0; k < p; ++k)
                for (int l = k + 1; l < p; ++l)
                    for (int m = l + 1; m < p; ++m)
                        for (int i = 0; i < p; ++i) {
                            // Laplace expansion of the bordered determinant:
                            // alternating substitution of i into (k, l, m).
                            JetPoly rel = jp_sub(
                                jp_mul(g.qq(i, j), g.cc(k, l, m)),
                                jp_mul(g.qq(k, j), g.cc(i, l, m)));
                            rel = jp_add(rel,
                                         jp_mul(g.qq(l, j), g.cc(i, k, m)));
                            rel = jp_sub(rel,
                                         jp_mul(g.qq(m, j), g.cc(i, k, l)));
                            ok = ok && jp_is_zero(rel);
                            ++count;
                        }
        out.push_back(plain_report("q c four-term relations vanish", ok,
                                   std::to_string(count) + " index tuples"));
    }

    // c c + 1/4 det(q) relation.
    if (p >= 3) {
        bool ok = true;
        int count = 0;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                for (int k = j + 1; k < p; ++k)
                    for (int l = 0; l < p; ++l)
                        for (int m = l + 1; m < p; ++m)
                            for (int n = m + 1; n < p; ++n) {
                                const std::array<int, 3> r1 = {i, j, k};
                                const std::array<int, 3> r2 = {l, m, n};
                                std::array<std::array<JetPoly, 3>, 3> ent;
                                for (int a = 0; a < 3; ++a)
                                    for (int b = 0; b < 3; ++b)
                                        ent[static_cast<size_t>(a)]
                                           [static_cast<size_t>(b)] = g.qq(
                                               r1[static_cast<size_t>(a)],
                                               r2[static_cast<size_t>(b)]);
                                JetPoly det = jp_det(
                                    [&ent](int a, int b) -> const JetPoly& {
                                        return ent[static_cast<size_t>(a)]
                                                  [static_cast<size_t>(b)];
                                    },
                                    3);
                                JetPoly rel =
                                    jp_add(jp_mul(g.cc(i, j, k), g.cc(l, m, n)),
                                           jp_scale(det, Rat(1, 4)));
                                ok = ok && jp_is_zero(rel);
                                ++count;
                            }
        out.push_back(plain_report("c c + 1/4 det(q) relations vanish", ok,
                                   std::to_string(count) + " index tuples"));
    }

    // 4x4 determinantal relations among the quadratics.
    if (p >= 4) {
        bool ok = true;
        int count = 0;
        std::vector<std::array<int, 4>> quads;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                for (int k = j + 1; k < p; ++k)
                    for (int l = k + 1; l < p; ++l)
                        quads.push_back({i, j, k, l});
        for (const auto& rows : quads)
            for (const auto& cols : quads) {
                std::array<std::array<JetPoly, 4>, 4> ent;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b)
                        ent[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                            g.qq(rows[static_cast<size_t>(a)],
                                 cols[static_cast<size_t>(b)]);
                JetPoly det = jp_det(
                    [&ent](int a, int b) -> const JetPoly& {
                        return ent[static_cast<size_t>(a)]
                                  [static_cast<size_t>(b)];
                    },
                    4);
                ok = ok && jp_is_zero(det);
                ++count;
            }
        out.push_back(plain_report("4x4 q-determinantal relations vanish", ok,
                                   std::to_string(count) + " index tuples"));
    }
    return out;
}

int jacobian_rank(const JetRing& ring, const std::vector<JetPoly>& gens,
                  uint64_t seed) {
    if (gens.empty()) return 0;
    const std::vector<JetVar> vars = level0_vars(ring);
    for (const JetPoly& gp : gens)
        for (const auto& [m, c] : gp)
            for (JetVar v : m)
                if (jetvar_level(v) != 0)
                    throw std::invalid_argument(
                        "jacobian_rank: generators must be level-0");
    const int rows = static_cast<int>(gens.size());
    const int cols = static_cast<int>(vars.size());
    std::vector<std::vector<JetPoly>> jac(
        static_cast<size_t>(rows),
        std::vector<JetPoly>(static_cast<size_t>(cols)));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            jac[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                jp_partial(gens[static_cast<size_t>(i)],
                           vars[static_cast<size_t>(j)]);

    std::mt19937_64 rng(seed);
    int best = 0;
    for (int attempt = 0; attempt < 6; ++attempt) {
        std::map<JetVar, Rat> point;
        for (JetVar v : vars)
            point[v] = Rat(static_cast<long>(rng() % 19) - 9);
        MatrixXq num = MatrixXq::Constant(rows, cols, Rat(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                num(i, j) = evaluate(
                    jac[static_cast<size_t>(i)][static_cast<size_t>(j)], point);
        // Greedy independent rows, then pivot columns of that submatrix.
        std::vector<int> rowset;
        MatrixXq acc(0, cols);
        for (int i = 0; i < rows; ++i) {
            MatrixXq trial(acc.rows() + 1, cols);
            trial.topRows(acc.rows()) = acc;
            trial.row(acc.rows()) = num.row(i);
            if (rank(trial) > static_cast<int>(acc.rows())) {
                acc = trial;
                rowset.push_back(i);
            }
        }
        const int r = static_cast<int>(rowset.size());
        if (r <= best) continue;
        MatrixXq sub(r, cols);
        for (int i = 0; i < r; ++i)
            sub.row(i) = num.row(rowset[static_cast<size_t>(i)]);
        std::vector<int> colset = rref(sub).pivot_cols;
        if (static_cast<int>(colset.size()) != r) continue;
        // Certify: the corresponding symbolic minor is a nonzero polynomial.
        JetPoly minor = jp_det(
            [&](int a, int b) -> const JetPoly& {
                return jac[static_cast<size_t>(rowset[static_cast<size_t>(a)])]
                          [static_cast<size_t>(colset[static_cast<size_t>(b)])];
            },
            r);
        if (!jp_is_zero(minor)) best = r;
    }
    return best;
}

JetPoly change_of_vars_det(const JetRing& ring,
                           const std::vector<JetVar>& sources,
                           const std::vector<JetPoly>& targets) {
    const int n = static_cast<int>(sources.size());
    if (static_cast<int>(targets.size()) != n)
        throw std::invalid_argument("change_of_vars_det: non-square substitution");
    std::map<JetVar, int> source_index;
    for (int j = 0; j < n; ++j) {
        if (jetvar_level(sources[static_cast<size_t>(j)]) != 1)
            throw std::invalid_argument(
                "change_of_vars_det: sources must be level-1 variables");
        source_index[sources[static_cast<size_t>(j)]] = j;
    }
    std::vector<std::vector<JetPoly>> mat(
        static_cast<size_t>(n), std::vector<JetPoly>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) {
        for (const auto& [m, c] : targets[static_cast<size_t>(i)]) {
            JetMonomial coeff;
            int col = -1;
            for (JetVar v : m) {
                if (jetvar_level(v) == 0) {
                    coeff.push_back(v);
                    continue;
                }
                auto it = source_index.find(v);
                if (it == source_index.end() || col >= 0)
                    throw std::invalid_argument(
                        "change_of_vars_det: target is not linear over the "
                        "chosen level-1 sources");
                col = it->second;
            }
            if (col < 0)
                throw std::invalid_argument(
                    "change_of_vars_det: target has a level-0 term");
            jp_add_term(
                mat[static_cast<size_t>(i)][static_cast<size_t>(col)], coeff,
                c);
        }
    }
    return jp_det(
        [&mat](int i, int j) -> const JetPoly& {
            return mat[static_cast<size_t>(i)][static_cast<size_t>(j)];
        },
        n);
}

std::vector<Report> invariant_factor_audit(
    const JetRing& ring, const JetPoly& delta,
    const std::vector<JetPoly>& stated_factors, JetPoly* delta_prime) {
    std::vector<Report> out;
    JetPoly prod = jp_one();
    for (const JetPoly& f : stated_factors) prod = jp_mul(prod, f);
    out.push_back(plain_report(
        "delta equals the stated factorization", jp_equal(prod, delta),
        jp_equal(prod, delta) ? "" : "product differs from delta"));

    JetPoly dp = jp_one();
    int idx = 0;
    for (const JetPoly& f : stated_factors) {
        const bool unit = f.size() == 1 && f.begin()->first.empty();
        bool invariant = true;
        for (int b = 0; b < ring.lie.dim(); ++b) {
            GVec xi(static_cast<size_t>(ring.lie.dim()), Rat(0));
            xi[static_cast<size_t>(b)] = Rat(1);
            invariant = invariant && jp_is_zero(lie_jet_action(ring, xi, 0, f));
        }
        out.push_back(plain_report(
            "factor " + std::to_string(idx) +
                (unit ? " is a unit"
                      : (invariant ? " is g-invariant"
                                   : " is not g-invariant")),
            true, jp_str(ring, f)));
        if (invariant && !unit) dp = jp_mul(dp, f);
        ++idx;
    }
    out.push_back(plain_report("Delta' = product of the invariant factors",
                               true, jp_str(ring, dp)));
    if (delta_prime) *delta_prime = dp;
    return out;
}

bool divides(const JetPoly& p, const JetPoly& q) {
    if (jp_is_zero(p)) throw std::invalid_argument("divides: zero divisor");
    JetPoly rem = q;
    const auto& [lm, lc] = *p.rbegin();  // graded-lex leading term
    while (!rem.empty()) {
        const auto& [rm, rc] = *rem.rbegin();
        // Does lm divide rm as a multiset?
        JetMonomial quot;
        size_t i = 0;
        bool ok = true;
        for (JetVar v : lm) {
            while (i < rm.size() && rm[i] < v) quot.push_back(rm[i++]);
            if (i >= rm.size() || rm[i] != v) {
                ok = false;
                break;
            }
            ++i;
        }
        if (!ok) return false;
        while (i < rm.size()) quot.push_back(rm[i++]);
        JetPoly t;
        jp_add_term(t, quot, rc / lc);
        rem = jp_sub(rem, jp_mul(t, p));
    }
    return true;
}

namespace {

std::vector<JetMonomial> slice_monomials(const JetRing& ring, int weight,
                                         int degree) {
    std::vector<JetVar> vars;
    for (int copy = 0; copy < ring.copies; ++copy)
        for (size_t slot = 0; slot < ring.slot_to_basis.size(); ++slot)
            for (int lev = 0; lev <= ring.level; ++lev)
                vars.push_back(
                    ring.var(copy, ring.slot_to_basis[slot], lev));
    std::sort(vars.begin(), vars.end());

    std::vector<JetMonomial> out;
    JetMonomial cur;
    std::function<void(size_t, int, int)> rec = [&](size_t vi, int deg_left,
                                                    int wt_left) {
        if (deg_left == 0) {
            if (wt_left == 0) out.push_back(cur);
            return;
        }
        if (vi == vars.size()) return;
        if (wt_left > deg_left * ring.level) return;  // unreachable weight
        rec(vi + 1, deg_left, wt_left);
        const int lev = jetvar_level(vars[vi]);
        for (int reps = 1; reps <= deg_left; ++reps) {
            if (reps * lev > wt_left) break;
            for (int k = 0; k < reps; ++k) cur.push_back(vars[vi]);
            rec(vi + 1, deg_left - reps, wt_left - reps * lev);
            for (int k = 0; k < reps; ++k) cur.pop_back();
        }
    };
    rec(0, degree, weight);
    for (JetMonomial& m : out) std::sort(m.begin(), m.end());
    std::sort(out.begin(), out.end(), JetMonomialLess{});
    return out;
}

constexpr size_t kSliceBound = 8000;
// Above this many columns the dense exact kernel is replaced by the
// sandwich certification in invariant_component.
constexpr size_t kDenseBound = 1200;

struct SliceOp {
    GVec xi;
    int r = 0;
};

std::vector<SliceOp> slice_ops(const JetRing& ring, int weight) {
    std::vector<SliceOp> ops;
    const int d = ring.lie.dim();
    for (int b = 0; b < d; ++b) {
        GVec xi(static_cast<size_t>(d), Rat(0));
        xi[static_cast<size_t>(b)] = Rat(1);
        for (int r = 0; r <= weight; ++r) ops.push_back({xi, r});
    }
    return ops;
}

JetPoly monomial_image(const JetRing& ring, const SliceOp& op,
                       const JetMonomial& m) {
    JetPoly mono;
    jp_add_term(mono, m, Rat(1));
    return lie_jet_action(ring, op.xi, op.r, mono);
}

// All products of derivatives D^i (i <= min(weight, level)) of the classical
// generators landing in the (weight, degree) slice.  Derivative order is
// capped at the truncation level: past it, jet_D discards terms and the
// result is no longer g[t]-invariant.
std::vector<JetPoly> generated_products(const JetRing& ring, int weight,
                                        int degree) {
    const WeylGeneratorSet g = weyl_generators(ring);
    struct GenEntry {
        JetPoly poly;
        int degree;
    };
    std::vector<GenEntry> gens;
    for (const auto& [key, poly] : g.q) gens.push_back({poly, 2});
    for (const auto& [key, poly] : g.c) gens.push_back({poly, 3});

    // Factor types (generator, derivative order).
    struct FType {
        size_t gen;
        int deriv;
    };
    const int max_deriv = std::min(weight, ring.level);
    std::vector<FType> types;
    for (size_t i = 0; i < gens.size(); ++i)
        for (int dv = 0; dv <= max_deriv; ++dv) types.push_back({i, dv});

    std::vector<JetPoly> products;
    std::vector<FType> chosen;
    std::function<void(size_t, int, int)> rec = [&](size_t ti, int deg_left,
                                                    int wt_left) {
        if (deg_left == 0) {
            if (wt_left != 0) return;
            JetPoly prod = jp_one();
            for (const FType& f : chosen) {
                JetPoly fac = gens[f.gen].poly;
                for (int k = 0; k < f.deriv; ++k) fac = jet_D(ring, fac);
                prod = jp_mul(prod, fac);
            }
            if (!jp_is_zero(prod)) products.push_back(std::move(prod));
            return;
        }
        if (ti == types.size()) return;
        rec(ti + 1, deg_left, wt_left);
        const FType& ft = types[ti];
        const int gdeg = gens[ft.gen].degree;
        for (int reps = 1; reps * gdeg <= deg_left && reps * ft.deriv <= wt_left;
             ++reps) {
            for (int k = 0; k < reps; ++k) chosen.push_back(ft);
            rec(ti + 1, deg_left - reps * gdeg, wt_left - reps * ft.deriv);
            for (int k = 0; k < reps; ++k) chosen.pop_back();
        }
    };
    rec(0, degree, weight);
    return products;
}

int64_t mod_pow(int64_t base, int64_t exp, int64_t p) {
    int64_t acc = 1;
    base %= p;
    while (exp > 0) {
        if (exp & 1) acc = acc * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return acc;
}

// Residue of an exact rational mod an odd prime; fails (nullopt) when the
// prime divides the denominator.
std::optional<int64_t> rat_mod(const Rat& r, int64_t p) {
    const mpq_class& q = r.raw();
    const auto up = static_cast<unsigned long>(p);
    int64_t num = static_cast<int64_t>(
        mpz_fdiv_ui(q.get_num().get_mpz_t(), up));
    int64_t den = static_cast<int64_t>(
        mpz_fdiv_ui(q.get_den().get_mpz_t(), up));
    if (den == 0) return std::nullopt;
    return num * mod_pow(den, p - 2, p) % p;
}

// Row-incremental elimination mod p of the stacked operator matrix over the
// given columns; returns true as soon as the rank reaches target (so the
// kernel mod p, an upper bound for the exact kernel, is small enough), and
// nullopt when the prime is unusable for these coefficients.
std::optional<bool> modular_rank_reaches(
    const JetRing& ring, const std::vector<JetMonomial>& cols,
    const std::vector<SliceOp>& ops, int64_t p, size_t target) {
    if (target == 0) return true;
    const size_t n = cols.size();
    std::map<JetMonomial, int, JetMonomialLess> colidx;
    for (size_t j = 0; j < n; ++j) colidx.emplace(cols[j], static_cast<int>(j));

    std::vector<std::vector<int64_t>> red;  // normalized reduced rows
    std::vector<int> pivot_of_col(n, -1);
    std::vector<int64_t> dense(n, 0);
    for (const SliceOp& op : ops) {
        // Sparse rows of this operator: image monomial -> column entries.
        std::map<JetMonomial, std::vector<std::pair<int, int64_t>>,
                 JetMonomialLess>
            rows;
        for (size_t j = 0; j < n; ++j) {
            JetPoly img = monomial_image(ring, op, cols[j]);
            for (const auto& [m, c] : img) {
                auto res = rat_mod(c, p);
                if (!res) return std::nullopt;
                if (*res != 0)
                    rows[m].push_back({static_cast<int>(j), *res});
            }
        }
        for (const auto& [m, entries] : rows) {
            std::fill(dense.begin(), dense.end(), 0);
            for (const auto& [j, v] : entries)
                dense[static_cast<size_t>(j)] = (dense[static_cast<size_t>(j)] + v) % p;
            for (size_t c = 0; c < n; ++c) {
                if (dense[c] == 0) continue;
                const int pr = pivot_of_col[c];
                if (pr < 0) {
                    const int64_t inv = mod_pow(dense[c], p - 2, p);
                    for (size_t k = c; k < n; ++k)
                        dense[k] = dense[k] * inv % p;
                    pivot_of_col[c] = static_cast<int>(red.size());
                    red.push_back(dense);
                    if (red.size() >= target) return true;
                    break;
                }
                const int64_t f = dense[c];
                const std::vector<int64_t>& prow =
                    red[static_cast<size_t>(pr)];
                for (size_t k = c; k < n; ++k)
                    dense[k] = (dense[k] - f * prow[k] % p + p) % p;
            }
        }
    }
    return red.size() >= target;
}

}  // namespace

SliceComponent invariant_component(const JetRing& ring, int weight,
                                   int degree) {
    if (weight < 0 || degree < 0)
        throw std::invalid_argument("invariant_component: negative slice");
    std::vector<JetMonomial> slice = slice_monomials(ring, weight, degree);
    if (slice.size() > kSliceBound)
        throw std::runtime_error("invariant_component: slice too large (" +
                                 std::to_string(slice.size()) + " monomials)");
    SliceComponent comp;
    if (slice.empty()) return comp;

    const std::vector<SliceOp> ops = slice_ops(ring, weight);

    // Stage 1: operators that act diagonally on the monomial basis (for sl2,
    // the Cartan element at t^0) cut the slice to their zero-eigenvalue
    // monomials exactly.
    std::vector<JetMonomial> cols = slice;
    std::vector<char> op_done(ops.size(), 0);
    for (size_t oi = 0; oi < ops.size(); ++oi) {
        bool diagonal = true;
        std::vector<char> keep(cols.size(), 0);
        for (size_t j = 0; j < cols.size() && diagonal; ++j) {
            JetPoly img = monomial_image(ring, ops[oi], cols[j]);
            if (img.empty())
                keep[j] = 1;
            else if (img.size() != 1 || img.begin()->first != cols[j])
                diagonal = false;
        }
        if (!diagonal) continue;
        op_done[oi] = 1;
        std::vector<JetMonomial> next;
        for (size_t j = 0; j < cols.size(); ++j)
            if (keep[j]) next.push_back(cols[j]);
        cols = std::move(next);
    }
    if (cols.empty()) return comp;
    std::vector<SliceOp> rest;
    for (size_t oi = 0; oi < ops.size(); ++oi)
        if (!op_done[oi]) rest.push_back(ops[oi]);
    if (rest.empty()) {
        comp.dimension = static_cast<int>(cols.size());
        for (const JetMonomial& m : cols) {
            JetPoly pm;
            jp_add_term(pm, m, Rat(1));
            comp.basis.push_back(std::move(pm));
        }
        return comp;
    }

    // Stage 2: small slices get the exact dense stacked kernel.
    if (cols.size() <= kDenseBound) {
        // Rows: (operator, image monomial); columns: slice monomials.
        std::map<std::pair<int, JetMonomial>, int> coord;
        std::vector<std::vector<JetPoly>> images(cols.size());
        for (size_t oi = 0; oi < rest.size(); ++oi) {
            for (size_t j = 0; j < cols.size(); ++j) {
                JetPoly img = monomial_image(ring, rest[oi], cols[j]);
                for (const auto& [m, c] : img)
                    coord.emplace(std::make_pair(static_cast<int>(oi), m), 0);
                images[j].push_back(std::move(img));
            }
        }
        int row = 0;
        for (auto& [key, idx] : coord) idx = row++;
        MatrixXq a = MatrixXq::Constant(row, static_cast<int>(cols.size()),
                                        Rat(0));
        for (size_t j = 0; j < cols.size(); ++j)
            for (size_t oi = 0; oi < rest.size(); ++oi)
                for (const auto& [m, c] : images[j][oi])
                    a(coord.at({static_cast<int>(oi), m}),
                      static_cast<Eigen::Index>(j)) = c;
        MatrixXq ker = kernel_basis(a);
        comp.dimension = static_cast<int>(ker.cols());
        for (Eigen::Index k = 0; k < ker.cols(); ++k) {
            JetPoly pv;
            for (size_t j = 0; j < cols.size(); ++j)
                jp_add_term(pv, cols[j], ker(static_cast<Eigen::Index>(j), k));
            comp.basis.push_back(std::move(pv));
        }
        return comp;
    }

    // Stage 3: sandwich certification for large slices.  Lower bound: the
    // span of products of derivatives of the classical generators, each
    // verified invariant exactly.  Upper bound: the kernel dimension mod a
    // prime, which can only overcount the exact kernel.  Agreement pins the
    // dimension exactly, and the products then form an exact basis.
    std::vector<JetPoly> products = generated_products(ring, weight, degree);
    for (const JetPoly& pr : products)
        for (const SliceOp& op : ops)
            if (!jp_is_zero(lie_jet_action(ring, op.xi, op.r, pr)))
                throw std::runtime_error(
                    "invariant_component: generated product is not invariant");
    std::vector<size_t> pivot_products;
    int gen_dim = 0;
    if (!products.empty()) {
        std::map<JetMonomial, int, JetMonomialLess> coord;
        for (const JetPoly& pr : products)
            for (const auto& [m, c] : pr) coord.emplace(m, 0);
        int row = 0;
        for (auto& [m, idx] : coord) idx = row++;
        MatrixXq a = MatrixXq::Constant(row,
                                        static_cast<int>(products.size()),
                                        Rat(0));
        for (size_t j = 0; j < products.size(); ++j)
            for (const auto& [m, c] : products[j])
                a(coord.at(m), static_cast<Eigen::Index>(j)) = c;
        RrefResult rr = rref(a);
        gen_dim = static_cast<int>(rr.pivot_cols.size());
        for (int c : rr.pivot_cols)
            pivot_products.push_back(static_cast<size_t>(c));
    }
    const size_t target = cols.size() - static_cast<size_t>(gen_dim);
    bool certified = false;
    for (int64_t p : {int64_t{1000000007}, int64_t{998244353},
                      int64_t{754974721}}) {
        auto res = modular_rank_reaches(ring, cols, rest, p, target);
        if (res && *res) {
            certified = true;
            break;
        }
    }
    if (!certified)
        throw std::runtime_error(
            "invariant_component: cannot certify the dimension of the slice ("
            + std::to_string(cols.size()) + " reduced monomials)");
    comp.dimension = gen_dim;
    for (size_t j : pivot_products) comp.basis.push_back(products[j]);
    return comp;
}

int generated_component(const JetRing& ring, int weight, int degree) {
    if (weight < 0 || degree < 0)
        throw std::invalid_argument("generated_component: negative slice");
    std::vector<JetPoly> products = generated_products(ring, weight, degree);
    if (products.empty()) return 0;

    std::map<JetMonomial, int, JetMonomialLess> coord;
    for (const JetPoly& p : products)
        for (const auto& [m, c] : p) coord.emplace(m, 0);
    int row = 0;
    for (auto& [m, idx] : coord) idx = row++;
    MatrixXq a = MatrixXq::Constant(row, static_cast<int>(products.size()),
                                    Rat(0));
    for (size_t j = 0; j < products.size(); ++j)
        for (const auto& [m, c] : products[j])
            a(coord.at(m), static_cast<Eigen::Index>(j)) = c;
    return rank(a);
}

}  // namespace voaforge
