#include "voaforge/fock.hpp"

#include <sstream>
#include <stdexcept>

namespace voaforge {

namespace {

constexpr long kModeBias = 1L << 30;

// Pairing scalar in [a(m), b(n)]_{+/-} = s * delta_{m+n+1,0} for underived
// generators a, b.
Rat mode_pairing(Species sa, int ia, Species sb, int ib) {
    if (ia != ib) return Rat(0);
    if (sa == Species::b && sb == Species::c) return Rat(1);
    if (sa == Species::c && sb == Species::b) return Rat(1);
    if (sa == Species::beta && sb == Species::gamma) return Rat(1);
    if (sa == Species::gamma && sb == Species::beta) return Rat(-1);
    return Rat(0);
}

void fock_add(FockState& s, const FockWord& w, const Rat& coeff) {
    if (coeff.is_zero()) return;
    auto it = s.find(w);
    if (it == s.end()) {
        s.emplace(w, coeff);
        return;
    }
    it->second += coeff;
    if (it->second.is_zero()) s.erase(it);
}

bool mode_is_odd(FockMode m) { return species_is_odd(mode_species(m)); }

// Generator mode g(n) applied to a single word.
void apply_gen_mode(FockState& out, Species s, int index, long n, const FockWord& w,
                    const Rat& coeff) {
    if (n <= -1) {
        // Creation: insert into the sorted word with Koszul signs.  Creation
        // modes never pair with each other (m+n+1 <= -1), so only the sign
        // survives from the commutation relations.
        const FockMode mode = pack_mode(s, index, n);
        const bool modd = species_is_odd(s);
        FockWord res;
        res.reserve(w.size() + 1);
        size_t i = 0;
        bool neg = false;
        while (i < w.size() && w[i] < mode) {
            if (modd && mode_is_odd(w[i])) neg = !neg;
            res.push_back(w[i]);
            ++i;
        }
        if (modd && i < w.size() && w[i] == mode) return;
        res.push_back(mode);
        for (; i < w.size(); ++i) res.push_back(w[i]);
        fock_add(out, res, neg ? -coeff : coeff);
        return;
    }
    // Annihilation: commute g(n) through the word; each pairing with a word
    // mode at level -n-1 removes it, and g(n) kills the vacuum.
    const bool modd = species_is_odd(s);
    bool neg = false;
    for (size_t i = 0; i < w.size(); ++i) {
        const Species ws = mode_species(w[i]);
        if (mode_index(w[i]) == index && mode_number(w[i]) == -n - 1) {
            Rat pairing = mode_pairing(s, index, ws, index);
            if (!pairing.is_zero()) {
                FockWord res;
                res.reserve(w.size() - 1);
                for (size_t j = 0; j < w.size(); ++j)
                    if (j != i) res.push_back(w[j]);
                Rat v = coeff * pairing;
                fock_add(out, res, neg ? -v : v);
            }
        }
        if (modd && mode_is_odd(w[i])) neg = !neg;
    }
}

int max_state_weight(const FockState& s) {
    int m = 0;
    for (const auto& t : s)
        if (fock_weight(t.first) > m) m = fock_weight(t.first);
    return m;
}

int field_weight_bound(const Monomial& f) {
    int w = 0;
    for (LetterKey l : f) w += letter_weight(l);
    return w;
}

// (d^k g)(n) = (-1)^k n(n-1)...(n-k+1) g(n-k) applied to a state.
FockState apply_letter_mode(LetterKey l, long n, const FockState& psi) {
    FockState out;
    const int k = letter_deriv(l);
    Rat factor(1);
    for (int t = 0; t < k; ++t) factor *= Rat(n - t);
    if (k % 2 != 0) factor = -factor;
    if (factor.is_zero()) return out;
    for (const auto& term : psi)
        apply_gen_mode(out, letter_species(l), letter_index(l), n - k, term.first,
                       term.second * factor);
    return out;
}

// F(n) psi for F a right-nested Wick word of letters, via
//   (:l f:)(n) = sum_{k<0} l(k) f(n-k-1) + (-1)^{|l||f|} sum_{k>=0} f(n-k-1) l(k).
FockState apply_field_mono(const Monomial& f, long n, const FockState& psi) {
    FockState out;
    if (psi.empty()) return out;
    if (f.empty()) {
        if (n == -1) out = psi;
        return out;
    }
    if (f.size() == 1) return apply_letter_mode(f[0], n, psi);

    const LetterKey l = f[0];
    Monomial frest(f.begin() + 1, f.end());
    int frest_parity = 0;
    for (LetterKey m : frest) frest_parity ^= letter_is_odd(m) ? 1 : 0;
    const bool neg = letter_is_odd(l) && frest_parity == 1;

    // k = -j-1 < 0: l(-j-1) applied to frest(n+j) psi, which vanishes once
    // n+j exceeds the weight bound of the intermediate state.
    const long jmax = static_cast<long>(field_weight_bound(frest)) +
                      max_state_weight(psi) - n;
    for (long j = 0; j < jmax; ++j) {
        FockState mid = apply_field_mono(frest, n + j, psi);
        if (mid.empty()) continue;
        FockState created = apply_letter_mode(l, -j - 1, mid);
        for (const auto& term : created) fock_add(out, term.first, term.second);
    }
    // k >= 0: frest(n-k-1) applied to l(k) psi; l(k) psi vanishes for
    // k >= wt(l) + wt(psi).
    const long kmax = static_cast<long>(letter_weight(l)) + max_state_weight(psi);
    for (long k = 0; k < kmax; ++k) {
        FockState mid = apply_letter_mode(l, k, psi);
        if (mid.empty()) continue;
        FockState res = apply_field_mono(frest, n - k - 1, mid);
        for (const auto& term : res)
            fock_add(out, term.first, neg ? -term.second : term.second);
    }
    return out;
}

}  // namespace

FockMode pack_mode(Species s, int index, long n) {
    return (static_cast<uint64_t>(s) << 40) |
           ((static_cast<uint64_t>(index) & 0xff) << 32) |
           static_cast<uint64_t>(static_cast<uint32_t>(n + kModeBias));
}
Species mode_species(FockMode m) { return static_cast<Species>(m >> 40); }
int mode_index(FockMode m) { return static_cast<int>((m >> 32) & 0xff); }
long mode_number(FockMode m) {
    return static_cast<long>(static_cast<uint32_t>(m & 0xffffffffULL)) - kModeBias;
}

FockState fock_vacuum() {
    FockState s;
    s[FockWord{}] = Rat(1);
    return s;
}

bool fock_equal(const FockState& a, const FockState& b) { return a == b; }

int fock_weight(const FockWord& w) {
    int wt = 0;
    for (FockMode m : w) {
        const Species s = mode_species(m);
        const int gw = (s == Species::b || s == Species::beta) ? 1 : 0;
        wt += gw - static_cast<int>(mode_number(m)) - 1;
    }
    return wt;
}

std::string fock_str(const FockState& s) {
    static const char* names[] = {"b", "c", "beta", "gamma"};
    if (s.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : s) {
        if (!first) os << " + ";
        first = false;
        os << t.second << "*";
        if (t.first.empty()) {
            os << "|0>";
            continue;
        }
        for (FockMode m : t.first)
            os << names[static_cast<uint32_t>(mode_species(m))] << "[" << mode_index(m)
               << "](" << mode_number(m) << ")";
        os << "|0>";
    }
    return os.str();
}

FockState fock_apply(const Expr& field, long n, const FockState& psi) {
    FockState out;
    for (const auto& t : field) {
        FockState part = apply_field_mono(t.first, n, psi);
        for (const auto& term : part) fock_add(out, term.first, t.second * term.second);
    }
    return out;
}

FockState fock_state_of(const Expr& field) {
    return fock_apply(field, -1, fock_vacuum());
}

FockState fock_circle(const Expr& a, const Expr& b, long n) {
    return fock_apply(a, n, fock_state_of(b));
}

bool oracle_matches_circle(const Expr& a, const Expr& b, long n) {
    return fock_equal(fock_state_of(circle(a, b, n)), fock_circle(a, b, n));
}

}  // namespace voaforge
