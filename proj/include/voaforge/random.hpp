// Seeded random expression generators for property suites.
//
// All randomized checks derive from a single std::mt19937_64 whose seed comes
// from --seed / the VOAFORGE_SEED environment variable (default 0), so every
// reported failure is reproducible.
#pragma once

#include <cstdlib>
#include <random>
#include <string>

#include "voaforge/expr.hpp"

namespace voaforge {

inline uint64_t default_seed() {
    if (const char* env = std::getenv("VOAFORGE_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0;
}

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(seed); }

// A canonical monomial of exact conformal weight w over `nindex` Lie indices.
inline Monomial random_monomial_of_weight(std::mt19937_64& rng, int w,
                                          int nindex = 3) {
    for (int attempt = 0; attempt < 2000; ++attempt) {
        const int k = 1 + static_cast<int>(rng() % 4);
        std::vector<LetterKey> letters;
        int weight = 0;
        for (int i = 0; i < k; ++i) {
            const Species s = static_cast<Species>(rng() % 4);
            const int idx = static_cast<int>(rng() % static_cast<uint64_t>(nindex));
            const int deriv = static_cast<int>(rng() % 3);
            const LetterKey l = pack_letter(s, idx, deriv);
            letters.push_back(l);
            weight += letter_weight(l);
        }
        if (weight != w) continue;
        Expr e = canonical_term(letters, Rat(1));
        if (e.empty()) continue;
        return e.begin()->first;
    }
    // Deterministic fallback of the requested weight.
    if (w == 0) return Monomial{pack_letter(Species::c, 0, 0)};
    return Monomial{pack_letter(Species::b, 0, w - 1)};
}

// Weight-homogeneous expression with `terms` monomials and small rational
// coefficients.
inline Expr random_homogeneous_expr(std::mt19937_64& rng, int w, int terms,
                                    int nindex = 3) {
    Expr e;
    for (int t = 0; t < terms; ++t) {
        const long num = 1 + static_cast<long>(rng() % 5);
        const long den = 1 + static_cast<long>(rng() % 4);
        const Rat coeff = (rng() % 2 == 0) ? Rat(num, den) : Rat(-num, den);
        add_term(e, random_monomial_of_weight(rng, w, nindex), coeff);
    }
    if (e.empty()) add_term(e, random_monomial_of_weight(rng, w, nindex), Rat(1));
    return e;
}

}  // namespace voaforge
