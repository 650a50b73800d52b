#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pinv/exterior.hpp"
#include "pinv/surface.hpp"

namespace pinv {

// The two sided invariants (P+, P-) of a polarization chamber, as
// elements of the homology of the Picard torus (rank = 2q).  The
// provenance string names the formula that produced the value;
// conjecture-dependent values say so.
struct PoincarePair {
    ExtElement p_plus;
    ExtElement p_minus;
    std::string provenance;
};

// Ruled-surface result.  Away from <m,[F]> = -1 only `value` is set.
// On the boundary both branches are evaluated; when they differ (which
// happens exactly for nu >= g) `alternate` carries the second branch
// and the flag is raised instead of silently choosing.
struct RuledPoincare {
    PoincarePair value;
    std::optional<PoincarePair> alternate;
    bool boundary_disagreement = false;
};

// Symmetric-product formula for a ruled surface of genus g:
//   P+ = Σ_{d=0}^{min(g,nu)} (<m,[F]>+1)^{g-d} [W_d],  P- = 0
// on the branch <m,[F]> >= -1, and the mirrored (0, -Σ ...) on the
// branch <m,[F]> <= -1, with [W_d] = cap(θ_std^{g-d}/(g-d)!) and the
// convention 0^0 = 1.  Requires nu >= 0.
RuledPoincare poincare_ruled(long genus, const RuledClass& m);

// Genus-0 specialization decided by the fiber sign rule:
// m·F >= 0 gives (1, 0), m·F < 0 gives (0, -1).
PoincarePair poincare_hirzebruch(const RuledClass& m);

// Fiber-decomposition formula for a minimal elliptic fibration:
//   P+(m) = Σ_{(d,a) decomposing m} (-1)^d binomial(2g-2+chi, d)
//   P-(m) = (-1)^chi Σ_{(d,a) decomposing k-m} (-1)^d binomial(2g-2+chi, d)
// both embedded as scalars of rank 2q.  m must be a fiber-type class.
PoincarePair poincare_elliptic(const EllipticModel& model, const FiberClass& m);

// Wall-crossing difference P+ - P- = Σ_{j=0}^{min(q,nu)}
// θ^{q-j}/(q-j)! ∩ [Pic] for an arbitrary integral 2-form θ.
ExtElement wall_crossing_difference(int q, const Int& nu, const ExtElement& theta);

// Same sum for a fibered surface, where θ_{2m-k} = c_half * θ_std with
// c_half = <2m-k, fiber>/2.
ExtElement wall_crossing_fibered(int q, const Int& nu, const Int& c_half);

// Chern character of the obstruction-theoretic pushforward:
// (chi + m(m-k)/2) - θ as an even element.  m(m-k) must be even.
ExtElement grr_character(const Int& chi, const Int& m_m_minus_k,
                         const ExtElement& theta);

// Modified Segre class: given the total Chern class of the negated
// virtual sheaf (unit scalar part, even degrees) and the virtual rank,
//   ŝ = Σ_{j=0}^{min(q, q-1+rank)} c_{q-j} ∩ [Pic].
// An empty index range yields zero.
ExtElement modified_segre(const Int& virtual_rank,
                          const ExtElement& total_chern_of_negative, int q);

// Truncation law for one blow-up: replace both sides by their
// truncation below degree m(m-k) - 2*binomial(l,2), where m(m-k) is
// the value on the base class.  Iterating over several exceptional
// curves composes, each step feeding its bound into the next.
PoincarePair blowup_transform(const PoincarePair& p, const Int& m_m_minus_k,
                              const Int& l);

// m(m-k) of a class: 2*nu for ruled classes, 0 for fiber-type and
// symbolic 0/k, 2*nu for symbolic others (which must carry nu), and
// the truncation chain value for blow-up classes.
Int class_m_m_minus_k(const DivisorClass& cls);

// Componentwise duality [P-(m)]_{2i} = (-1)^{chi+i} [P+(k-m)]_{2i}.
bool duality_check(const PoincarePair& at_m, const PoincarePair& at_k_minus_m,
                   long chi);

struct BasicClassEntry {
    std::vector<Int> coords;   // fiber-type coordinates, empty for symbolic
    std::string label;         // "0", "k", or the coordinate string
    PoincarePair pair;
};

struct BasicClassReport {
    std::vector<BasicClassEntry> classes;
    bool simple_type = true;   // every basic class satisfies m(m-k) = 0
};

// Basic classes (classes with nonzero invariant) for the models that
// have finitely many: K3/Abelian ({0} with P+ = P- = 1), minimal
// general type ({0, k}), and elliptic models with p_g > 0 (enumerated
// over the finite candidate grid).  Surfaces with p_g = 0 have
// infinitely many and are rejected.
BasicClassReport basic_classes(const SurfaceModel& m);

// Component of a twisted linear system |D_0 + L| for a twist L in the
// finite group P: d >= 0 and the decomposition realizing it, or an
// empty marker.  `twist` is the canonical fiber-coordinate vector of L
// (leading [F] coefficient may be negative, it is a torsion class).
struct ComponentDescriptor {
    std::vector<Int> twist;
    Int d;
    std::vector<Int> a;
    long dimension = -1; // = d when nonempty, -1 when empty
    bool empty = true;
};

// Census of the connected components of Hilb^m for a log-transform
// elliptic surface: one descriptor per element of the twist group P,
// sorted by twist vector.  The nonempty descriptors biject with
// enumerate_decompositions of m.
std::vector<ComponentDescriptor> hilbert_components(const EllipticModel& model,
                                                    const FiberClass& m);

// Degree bound for rational curve configurations: returns g after
// verifying the witness invariant poincare_ruled(g, {1, nu}) != 0 for
// nu in {0, 1}.
Int nagata_bound(long g);

// Count 2^g of maximal-subbundle walls, read off as the numeric degree
// of P+ for <m,[F]> = 1 at nu = g.
Int lange_count(long g);

// Full dispatch: invariant pair of `cls` on `model`.  Ruled genus 0
// goes through the fiber sign rule; ruled genus >= 1 through
// poincare_ruled (boundary disagreements are reported in provenance
// and the primary branch returned); elliptic through
// poincare_elliptic; blow-ups recurse and truncate; minimal models
// through their basic-class rules.
PoincarePair compute_pair(const SurfaceModel& model, const DivisorClass& cls);

} // namespace pinv
