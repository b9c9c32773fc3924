// Exact symbolic engine for the bc-beta-gamma vertex algebra W(g).
//
// Elements are finite rational linear combinations of canonical monomials.
// A canonical monomial is a sorted list of letters; a letter is a derivative
// d^k applied to one of the generators b[i], c[i], beta[i], gamma[i].  The
// monomial stands for the right-nested Wick product of its letters.  Letter
// transpositions inside a Wick product of letters cost only a Koszul sign
// because all letter-letter circle products at nonnegative level are scalars
// (so the derivative-of-contraction correction terms vanish); hence sorting
// into a fixed total order is a valid normal form.
//
// Letter order: species (b < c < beta < gamma), then Lie index, then
// derivative count.  b and c are odd, beta and gamma are even.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "voaforge/rational.hpp"

namespace voaforge {

enum class Species : uint32_t { b = 0, c = 1, beta = 2, gamma = 3 };

// Packed letter: species in bits 24..31, Lie index in bits 16..23,
// derivative count in bits 0..15.  Integer order == canonical letter order.
using LetterKey = uint32_t;

inline LetterKey pack_letter(Species s, int index, int deriv) {
    return (static_cast<uint32_t>(s) << 24) |
           ((static_cast<uint32_t>(index) & 0xff) << 16) |
           (static_cast<uint32_t>(deriv) & 0xffff);
}
inline Species letter_species(LetterKey l) { return static_cast<Species>(l >> 24); }
inline int letter_index(LetterKey l) { return static_cast<int>((l >> 16) & 0xff); }
inline int letter_deriv(LetterKey l) { return static_cast<int>(l & 0xffff); }

inline bool species_is_odd(Species s) { return s == Species::b || s == Species::c; }
inline bool letter_is_odd(LetterKey l) { return species_is_odd(letter_species(l)); }

// b, beta have conformal weight 1; c, gamma have weight 0.
inline int letter_weight(LetterKey l) {
    const Species s = letter_species(l);
    return letter_deriv(l) + ((s == Species::b || s == Species::beta) ? 1 : 0);
}
// Cohomological degree: b -1, c +1, beta -2, gamma +2.
inline int letter_degree(LetterKey l) {
    switch (letter_species(l)) {
        case Species::b: return -1;
        case Species::c: return 1;
        case Species::beta: return -2;
        default: return 2;
    }
}
// b-number: +1 for b, -1 for c, 0 otherwise.
inline int letter_bnumber(LetterKey l) {
    switch (letter_species(l)) {
        case Species::b: return 1;
        case Species::c: return -1;
        default: return 0;
    }
}

// Sorted letter list; the empty monomial is the vacuum vector 1.
using Monomial = std::vector<LetterKey>;
// Canonical form: map from monomial to nonzero coefficient.
using Expr = std::map<Monomial, Rat>;

// --- construction -----------------------------------------------------------

Expr expr_zero();
Expr expr_one();
Expr expr_letter(Species s, int index, int deriv = 0);

void add_term(Expr& e, const Monomial& m, const Rat& coeff);
Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr scale(const Expr& a, const Rat& c);
Expr negate(const Expr& a);
bool is_zero(const Expr& a);
bool equal(const Expr& a, const Expr& b);

// Sorts an arbitrary letter sequence into canonical form with Koszul signs;
// returns zero on a repeated odd letter.
Expr canonical_term(const std::vector<LetterKey>& letters, const Rat& coeff);

// --- gradings ---------------------------------------------------------------

int mono_weight(const Monomial& m);
int mono_degree(const Monomial& m);
int mono_bnumber(const Monomial& m);
int mono_parity(const Monomial& m);  // 0 even, 1 odd
int mono_letters(const Monomial& m); // polynomial degree

// Each returns true and sets `value` iff a is homogeneous (zero counts as
// homogeneous of every value; value is then left untouched).
bool homogeneous_weight(const Expr& a, int& value);
bool homogeneous_degree(const Expr& a, int& value);
bool homogeneous_bnumber(const Expr& a, int& value);
bool homogeneous_parity(const Expr& a, int& value);

// Throwing variants for homogeneous inputs.
int weight_of(const Expr& a);
int degree_of(const Expr& a);
int parity_of(const Expr& a);

// Terms of maximal letter count (associated-graded leading part).
Expr leading_polydegree_part(const Expr& a);
int max_polydegree(const Expr& a);

// --- operations -------------------------------------------------------------

// Scalar lambda with a o_n b = lambda * 1 for letters a, b and n >= 0.
Rat contraction(LetterKey a, LetterKey b, long n);

Expr derivative(const Expr& a, int times = 1);
Expr wick(const Expr& a, const Expr& b);                 // a . b at level -1
Expr wick_all(const std::vector<Expr>& factors);         // right-nested
Expr circle(const Expr& a, const Expr& b, long n);
// Nonzero singular terms (n, a circle_n b) for n >= 0, ascending n.
std::vector<std::pair<long, Expr>> ope_singular(const Expr& a, const Expr& b);

// Clears the internal circle-product memo table (used by benchmarks/tests).
void clear_engine_cache();

// --- text -------------------------------------------------------------------

std::string letter_str(LetterKey l);
std::string expr_str(const Expr& a);

}  // namespace voaforge
