// Independent Fock-space oracle.
//
// This module knows nothing about normal ordering or operator product
// rewriting.  It represents states of the bc-beta-gamma Fock module as exact
// rational combinations of sorted creation-mode words applied to the vacuum,
// and applies field modes through the raw (anti)commutation relations
//   [a(m), b(n)]_{+/-} = (contraction scalar) * delta_{m+n+1,0}
// together with the mode expansions of derivatives and of Wick products.
// Agreement between engine results and this oracle is the correctness gate
// for the rewriting rules.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "voaforge/expr.hpp"

namespace voaforge {

// Packed creation mode: species, Lie index, and mode number n <= -1.
using FockMode = uint64_t;

FockMode pack_mode(Species s, int index, long n);
Species mode_species(FockMode m);
int mode_index(FockMode m);
long mode_number(FockMode m);

// Sorted word of creation modes (applied right to left to the vacuum).
using FockWord = std::vector<FockMode>;
using FockState = std::map<FockWord, Rat>;

FockState fock_vacuum();
bool fock_equal(const FockState& a, const FockState& b);
int fock_weight(const FockWord& w);
std::string fock_str(const FockState& s);

// Applies the n-th mode of the field attached to `field` (interpreted as a
// right-nested Wick product of derivative letters) to the state.
FockState fock_apply(const Expr& field, long n, const FockState& psi);

// field(-1) applied to the vacuum.
FockState fock_state_of(const Expr& field);

// a(n) applied to the state of b: the oracle's value of (a o_n b).
FockState fock_circle(const Expr& a, const Expr& b, long n);

// True iff the engine's a o_n b matches the oracle state.
bool oracle_matches_circle(const Expr& a, const Expr& b, long n);

}  // namespace voaforge
