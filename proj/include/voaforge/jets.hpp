// Jet rings O(J_m(V)) for copies of the adjoint representation, the g[t]
// action, Weyl's quadratic/cubic generators and their relations, Jacobian
// ranks, the level-one change-of-variables determinants with their invariant
// factors, and finite-slice comparison of the jet invariant ring with the
// ring generated by derivatives of the classical invariants.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "voaforge/lie.hpp"
#include "voaforge/operators.hpp"

namespace voaforge {

// Variable a^{u}_{copy}^{(level)} packed copy-major, slot (display order of
// the Lie basis), jet-level-minor, so the natural integer order on the key is
// the documented variable order.
using JetVar = uint32_t;

inline int jetvar_copy(JetVar v) { return static_cast<int>(v >> 16); }
inline int jetvar_slot(JetVar v) { return static_cast<int>((v >> 8) & 0xff); }
inline int jetvar_level(JetVar v) { return static_cast<int>(v & 0xff); }

// Sorted multiset of variables; compared graded-lexicographically.
using JetMonomial = std::vector<JetVar>;

struct JetMonomialLess {
    bool operator()(const JetMonomial& a, const JetMonomial& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// Sparse exact polynomial; zero = empty map.
using JetPoly = std::map<JetMonomial, Rat, JetMonomialLess>;

struct JetRing {
    LieAlgebraPresentation lie;
    int copies = 1;
    int level = 0;  // truncation m: the shift derivation kills level m
    std::vector<int> slot_to_basis;
    std::vector<int> basis_to_slot;

    JetVar var(int copy, int basis_index, int jet_level) const;
    std::string var_str(JetVar v) const;
};

// p copies of the adjoint representation, truncated at jet level m.  For the
// sl2 root basis the variable order is a^h < a^x < a^y within each copy.
JetRing adjoint_jet_ring(const LieAlgebraPresentation& lie, int copies,
                         int level);

JetPoly jp_zero();
JetPoly jp_one();
JetPoly jp_const(const Rat& c);
JetPoly jp_variable(const JetRing& ring, int copy, int basis_index,
                    int jet_level);
JetPoly jp_add(const JetPoly& a, const JetPoly& b);
JetPoly jp_sub(const JetPoly& a, const JetPoly& b);
JetPoly jp_scale(const JetPoly& a, const Rat& c);
JetPoly jp_mul(const JetPoly& a, const JetPoly& b);
bool jp_is_zero(const JetPoly& a);
bool jp_equal(const JetPoly& a, const JetPoly& b);
std::string jp_str(const JetRing& ring, const JetPoly& a);

// Total polynomial degree and jet weight (sum of levels) of a monomial.
int jp_monomial_weight(const JetMonomial& m);

// The shift derivation D: level i -> i + 1, truncated at ring.level.
JetPoly jet_D(const JetRing& ring, const JetPoly& p);

JetPoly jp_partial(const JetPoly& p, JetVar v);

// The action of xi t^r as a derivation: on generators,
// xi t^r (a^{(i)}) = (i!/(i-r)!) (xi . a)^{(i-r)} for r <= i, else 0,
// where xi acts on the symbols by the adjoint representation.
JetPoly lie_jet_action(const JetRing& ring, const GVec& xi, int r,
                       const JetPoly& p);

// Weyl's generators for p copies of the adjoint representation of sl2:
// quadratics q_ij and cubics c_klm (level-0 variables).
struct WeylGeneratorSet {
    std::map<std::pair<int, int>, JetPoly> q;    // keys i <= j
    std::map<std::array<int, 3>, JetPoly> c;     // keys k < l < m
    const JetPoly& qq(int i, int j) const;       // symmetric lookup
    JetPoly cc(int k, int l, int m) const;       // antisymmetric lookup
};
WeylGeneratorSet weyl_generators(const JetRing& ring);

// The classical relations among the q_ij and c_klm: the q-c relation, the
// c-c relation with the 3x3 q-determinant, and (given >= 4 copies) the 4x4
// determinantal relations among the quadratics alone.
std::vector<Report> verify_weyl_relations(const JetRing& ring);

// Generic rank of [d y_i / d x_j] over the level-0 variables: random rational
// evaluation, certified by a symbolically nonzero minor.
int jacobian_rank(const JetRing& ring, const std::vector<JetPoly>& gens,
                  uint64_t seed = 0);

// Determinant of the level-1 coefficient matrix of the substitution
// sources -> targets; each target must be linear in the level-1 variables
// with level-0 coefficients, and each source a single level-1 variable.
JetPoly change_of_vars_det(const JetRing& ring,
                           const std::vector<JetVar>& sources,
                           const std::vector<JetPoly>& targets);

// Checks delta = product(stated_factors) exactly, tests each factor for
// g-invariance, and reports Delta' = the product of the invariant factors
// (also returned through delta_prime when non-null).
std::vector<Report> invariant_factor_audit(
    const JetRing& ring, const JetPoly& delta,
    const std::vector<JetPoly>& stated_factors, JetPoly* delta_prime = nullptr);

// Exact divisibility under graded-lex division; p must be nonzero.
bool divides(const JetPoly& p, const JetPoly& q);

struct SliceComponent {
    int dimension = 0;
    std::vector<JetPoly> basis;
};

// Kernel of the joint action of {xi t^r : xi basis, 0 <= r <= weight} on the
// span of jet monomials of the given weight and polynomial degree.  Exact:
// small slices get a dense rational kernel; large slices are certified by
// sandwiching the dimension between the exactly-verified span of classical
// generator products (lower bound) and a modular-rank kernel bound (upper
// bound, since rank can only drop mod p), which also yields an exact basis.
// Throws std::runtime_error when the slice exceeds the desk-scale bound or
// when a large slice cannot be certified.
SliceComponent invariant_component(const JetRing& ring, int weight,
                                   int degree);

// Dimension of the span, inside the same slice, of products of truncated
// derivatives D^i of the classical generators q_ij, c_klm.
int generated_component(const JetRing& ring, int weight, int degree);

}  // namespace voaforge
