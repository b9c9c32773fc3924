#include "voaforge/expr.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace voaforge {

namespace {

// Letter-letter contraction at level 0 for underived generators:
//   b[i] o_0 c[i] = c[i] o_0 b[i] = 1,  beta[i] o_0 gamma[i] = 1,
//   gamma[i] o_0 beta[i] = -1,  everything else 0.
Rat base_contraction(Species sa, int ia, Species sb, int ib) {
    if (ia != ib) return Rat(0);
    if (sa == Species::b && sb == Species::c) return Rat(1);
    if (sa == Species::c && sb == Species::b) return Rat(1);
    if (sa == Species::beta && sb == Species::gamma) return Rat(1);
    if (sa == Species::gamma && sb == Species::beta) return Rat(-1);
    return Rat(0);
}

// (d^p a) o_n (d^q b) is a scalar, nonzero only at n = p+q, where the
// derivative shift rules give (-1)^p (p+q)! times the base contraction.
Rat letter_contraction(LetterKey a, LetterKey b, long n) {
    const int p = letter_deriv(a);
    const int q = letter_deriv(b);
    if (n != p + q) return Rat(0);
    Rat base = base_contraction(letter_species(a), letter_index(a),
                                letter_species(b), letter_index(b));
    if (base.is_zero()) return base;
    Rat v = factorial(p + q) * base;
    if (p % 2 != 0) v = -v;
    return v;
}

// Wick product :l M: of a letter with a canonical monomial: move l right past
// smaller letters picking up Koszul signs; zero if an equal odd letter exists.
void insert_letter(Expr& out, LetterKey l, const Monomial& m, const Rat& coeff) {
    if (coeff.is_zero()) return;
    Monomial res;
    res.reserve(m.size() + 1);
    size_t i = 0;
    bool neg = false;
    const bool lodd = letter_is_odd(l);
    while (i < m.size() && m[i] < l) {
        if (lodd && letter_is_odd(m[i])) neg = !neg;
        res.push_back(m[i]);
        ++i;
    }
    if (lodd && i < m.size() && m[i] == l) return;
    res.push_back(l);
    for (; i < m.size(); ++i) res.push_back(m[i]);
    add_term(out, res, neg ? -coeff : coeff);
}

LetterKey shift_deriv(LetterKey l, long extra) {
    return pack_letter(letter_species(l), letter_index(l),
                       letter_deriv(l) + static_cast<int>(extra));
}

using MemoKey = std::tuple<Monomial, Monomial, long>;
std::map<MemoKey, Expr>& memo_table() {
    static thread_local std::map<MemoKey, Expr> table;
    return table;
}

const Expr& circle_mono(const Monomial& a, const Monomial& b, long n);

Expr compute_circle_mono(const Monomial& a, const Monomial& b, long n) {
    Expr out;
    if (a.empty()) {  // the vacuum is the unit: 1 o_n b = delta_{n,-1} b
        if (n == -1) out[b] = Rat(1);
        return out;
    }
    const int wa = mono_weight(a);
    const int wb = mono_weight(b);
    if (n >= static_cast<long>(wa) + wb) return out;  // weight positivity

    if (a.size() == 1) {
        const LetterKey l = a[0];
        if (n <= -1) {
            // l o_{-k-1} b = (1/k!) :(d^k l) b:
            const long k = -n - 1;
            insert_letter(out, shift_deriv(l, k), b, Rat(1) / factorial(k));
            return out;
        }
        if (b.empty()) return out;  // l o_n 1 = 0 for n >= 0
        // Non-commutative Wick formula with scalar contractions: the
        // integral correction terms vanish, leaving
        //   l o_n :m b': = (l o_n m) b' + (-1)^{|l||m|} :m (l o_n b'):
        const LetterKey m = b[0];
        Monomial brest(b.begin() + 1, b.end());
        Rat cs = letter_contraction(l, m, n);
        if (!cs.is_zero()) add_term(out, brest, cs);
        const Expr& inner = circle_mono(a, brest, n);
        const bool neg = letter_is_odd(l) && letter_is_odd(m);
        for (const auto& t : inner)
            insert_letter(out, m, t.first, neg ? -t.second : t.second);
        return out;
    }

    // Composite a = :l a':.  Mode expansion of the Wick product, valid for
    // every n:
    //   (:l a':) o_n b = sum_{j>=0} (1/j!) :(d^j l)(a' o_{n+j} b):
    //                  + (-1)^{|l||a'|} sum_{j>=0} a' o_{n-j-1} (l o_j b)
    const LetterKey l = a[0];
    Monomial arest(a.begin() + 1, a.end());
    const int warest = mono_weight(arest);
    const bool neg = letter_is_odd(l) && (mono_parity(arest) == 1);

    for (long j = 0; n + j < static_cast<long>(warest) + wb; ++j) {
        const Expr& inner = circle_mono(arest, b, n + j);
        if (inner.empty()) continue;
        const LetterKey dl = shift_deriv(l, j);
        const Rat f = Rat(1) / factorial(j);
        for (const auto& t : inner) insert_letter(out, dl, t.first, f * t.second);
    }

    Monomial lmono{l};
    for (long j = 0; j < static_cast<long>(letter_weight(l)) + wb; ++j) {
        const Expr& lb = circle_mono(lmono, b, j);
        for (const auto& t : lb) {
            const Expr& r = circle_mono(arest, t.first, n - j - 1);
            for (const auto& tr : r) {
                Rat v = t.second * tr.second;
                add_term(out, tr.first, neg ? -v : v);
            }
        }
    }
    return out;
}

const Expr& circle_mono(const Monomial& a, const Monomial& b, long n) {
    auto& table = memo_table();
    MemoKey key(a, b, n);
    auto it = table.find(key);
    if (it != table.end()) return it->second;
    Expr value = compute_circle_mono(a, b, n);
    return table.emplace(std::move(key), std::move(value)).first->second;
}

}  // namespace

// --- construction -----------------------------------------------------------

Expr expr_zero() { return Expr{}; }

Expr expr_one() {
    Expr e;
    e[Monomial{}] = Rat(1);
    return e;
}

Expr expr_letter(Species s, int index, int deriv) {
    Expr e;
    e[Monomial{pack_letter(s, index, deriv)}] = Rat(1);
    return e;
}

void add_term(Expr& e, const Monomial& m, const Rat& coeff) {
    if (coeff.is_zero()) return;
    auto it = e.find(m);
    if (it == e.end()) {
        e.emplace(m, coeff);
        return;
    }
    it->second += coeff;
    if (it->second.is_zero()) e.erase(it);
}

Expr add(const Expr& a, const Expr& b) {
    Expr out = a;
    for (const auto& t : b) add_term(out, t.first, t.second);
    return out;
}

Expr sub(const Expr& a, const Expr& b) {
    Expr out = a;
    for (const auto& t : b) add_term(out, t.first, -t.second);
    return out;
}

Expr scale(const Expr& a, const Rat& c) {
    Expr out;
    if (c.is_zero()) return out;
    for (const auto& t : a) out[t.first] = t.second * c;
    return out;
}

Expr negate(const Expr& a) { return scale(a, Rat(-1)); }

bool is_zero(const Expr& a) { return a.empty(); }

bool equal(const Expr& a, const Expr& b) { return a == b; }

Expr canonical_term(const std::vector<LetterKey>& letters, const Rat& coeff) {
    Expr out;
    out[Monomial{}] = coeff;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        Expr next;
        for (const auto& t : out) insert_letter(next, *it, t.first, t.second);
        out = std::move(next);
        if (out.empty()) break;
    }
    return out;
}

// --- gradings ---------------------------------------------------------------

int mono_weight(const Monomial& m) {
    int w = 0;
    for (LetterKey l : m) w += letter_weight(l);
    return w;
}

int mono_degree(const Monomial& m) {
    int d = 0;
    for (LetterKey l : m) d += letter_degree(l);
    return d;
}

int mono_bnumber(const Monomial& m) {
    int d = 0;
    for (LetterKey l : m) d += letter_bnumber(l);
    return d;
}

int mono_parity(const Monomial& m) {
    int p = 0;
    for (LetterKey l : m) p ^= letter_is_odd(l) ? 1 : 0;
    return p;
}

int mono_letters(const Monomial& m) { return static_cast<int>(m.size()); }

namespace {
template <typename F>
bool homogeneous_by(const Expr& a, int& value, F f) {
    bool first = true;
    int v = 0;
    for (const auto& t : a) {
        const int w = f(t.first);
        if (first) {
            v = w;
            first = false;
        } else if (w != v) {
            return false;
        }
    }
    if (!first) value = v;
    return true;
}
}  // namespace

bool homogeneous_weight(const Expr& a, int& value) {
    return homogeneous_by(a, value, mono_weight);
}
bool homogeneous_degree(const Expr& a, int& value) {
    return homogeneous_by(a, value, mono_degree);
}
bool homogeneous_bnumber(const Expr& a, int& value) {
    return homogeneous_by(a, value, mono_bnumber);
}
bool homogeneous_parity(const Expr& a, int& value) {
    return homogeneous_by(a, value, mono_parity);
}

int weight_of(const Expr& a) {
    int v = 0;
    if (!homogeneous_weight(a, v))
        throw std::logic_error("expr: not weight homogeneous");
    return v;
}
int degree_of(const Expr& a) {
    int v = 0;
    if (!homogeneous_degree(a, v))
        throw std::logic_error("expr: not degree homogeneous");
    return v;
}
int parity_of(const Expr& a) {
    int v = 0;
    if (!homogeneous_parity(a, v))
        throw std::logic_error("expr: not parity homogeneous");
    return v;
}

int max_polydegree(const Expr& a) {
    int m = 0;
    for (const auto& t : a)
        if (static_cast<int>(t.first.size()) > m) m = static_cast<int>(t.first.size());
    return m;
}

Expr leading_polydegree_part(const Expr& a) {
    const int m = max_polydegree(a);
    Expr out;
    for (const auto& t : a)
        if (static_cast<int>(t.first.size()) == m) out[t.first] = t.second;
    return out;
}

// --- operations -------------------------------------------------------------

Rat contraction(LetterKey a, LetterKey b, long n) {
    if (n < 0) throw std::invalid_argument("contraction: n must be >= 0");
    return letter_contraction(a, b, n);
}

Expr derivative(const Expr& a, int times) {
    Expr cur = a;
    for (int rep = 0; rep < times; ++rep) {
        Expr next;
        for (const auto& t : cur) {
            for (size_t i = 0; i < t.first.size(); ++i) {
                std::vector<LetterKey> letters(t.first);
                letters[i] = shift_deriv(letters[i], 1);
                Expr term = canonical_term(letters, t.second);
                for (const auto& tt : term) add_term(next, tt.first, tt.second);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

Expr circle(const Expr& a, const Expr& b, long n) {
    Expr out;
    for (const auto& ta : a) {
        for (const auto& tb : b) {
            const Expr& r = circle_mono(ta.first, tb.first, n);
            const Rat f = ta.second * tb.second;
            for (const auto& tr : r) add_term(out, tr.first, f * tr.second);
        }
    }
    return out;
}

Expr wick(const Expr& a, const Expr& b) { return circle(a, b, -1); }

Expr wick_all(const std::vector<Expr>& factors) {
    if (factors.empty()) return expr_one();
    Expr out = factors.back();
    for (size_t i = factors.size() - 1; i-- > 0;) out = wick(factors[i], out);
    return out;
}

std::vector<std::pair<long, Expr>> ope_singular(const Expr& a, const Expr& b) {
    std::vector<std::pair<long, Expr>> out;
    int wa = 0, wb = 0;
    for (const auto& t : a)
        if (mono_weight(t.first) > wa) wa = mono_weight(t.first);
    for (const auto& t : b)
        if (mono_weight(t.first) > wb) wb = mono_weight(t.first);
    for (long n = 0; n < static_cast<long>(wa) + wb; ++n) {
        Expr r = circle(a, b, n);
        if (!r.empty()) out.emplace_back(n, std::move(r));
    }
    return out;
}

void clear_engine_cache() { memo_table().clear(); }

// --- text -------------------------------------------------------------------

std::string letter_str(LetterKey l) {
    static const char* names[] = {"b", "c", "beta", "gamma"};
    std::ostringstream os;
    if (letter_deriv(l) > 0) os << "d^" << letter_deriv(l) << " ";
    os << names[static_cast<uint32_t>(letter_species(l))] << "[" << letter_index(l)
       << "]";
    return os.str();
}

std::string expr_str(const Expr& a) {
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : a) {
        if (!first) os << " + ";
        first = false;
        os << t.second << "*";
        if (t.first.empty()) {
            os << "1";
            continue;
        }
        if (t.first.size() > 1) os << ":";
        for (size_t i = 0; i < t.first.size(); ++i) {
            if (i) os << " ";
            os << letter_str(t.first[i]);
        }
        if (t.first.size() > 1) os << ":";
    }
    return os.str();
}

}  // namespace voaforge
