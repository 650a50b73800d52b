#pragma once

#include <vector>

#include "pinv/numeric.hpp"

namespace pinv {

using Matrix = std::vector<std::vector<Int>>; // row-major, rectangular

// Finitely presented abelian group Z^generators / row span of rows.
// Class vectors are coordinate vectors in the generators.
struct RelationPresentation {
    int generators = 0;
    Matrix rows; // each row has `generators` entries; may be empty
};

// U * R * V = D with U, V unimodular and D diagonal, entries
// nonnegative, each dividing the next, zeros last.
struct SmithDecomposition {
    Matrix u; // rows x rows
    Matrix d; // rows x cols
    Matrix v; // cols x cols
};

// Exact Smith normal form.  Pivot selection: minimal absolute value
// among nonzero entries of the working block, ties broken row-major,
// which makes the whole reduction deterministic.
SmithDecomposition smith_normal_form(const Matrix& r);

// True iff x - y lies in the row span of the relations, i.e. x and y
// name the same group element.
bool classes_equal(const RelationPresentation& p,
                   const std::vector<Int>& x,
                   const std::vector<Int>& y);

// Canonical coordinates of a class: the image of vec * V with each
// torsion coordinate reduced mod its elementary divisor.  Two vectors
// are equal in the group iff their canonical coordinates coincide.
std::vector<Int> canonical_coords(const RelationPresentation& p,
                                  const std::vector<Int>& vec);

// One way of writing a class as d*[F] + Σ a_i*[F_i] with d >= 0 and
// 0 <= a_i < multiplicity_i.
struct FiberDecomposition {
    Int d;
    std::vector<Int> a;

    bool operator==(const FiberDecomposition& o) const {
        return d == o.d && a == o.a;
    }
    bool operator<(const FiberDecomposition& o) const {
        if (d != o.d) return d < o.d;
        return a < o.a;
    }
};

// All decompositions of `cls` over the presentation whose generator 0
// is the fiber class [F] and whose generators 1..r are the multiple
// fibers with the given multiplicities.  Requires [F] to have infinite
// order in the group.  For each choice of a in Π [0, m_i) there is at
// most one admissible d, so the result is finite; it is returned
// sorted lexicographically by (d, a).  `enumerate_decompositions`
// scans the multiplicity grid in parallel when it is large;
// the `_serial` variant is the reference loop.
std::vector<FiberDecomposition>
enumerate_decompositions(const RelationPresentation& p,
                         const std::vector<Int>& multiplicities,
                         const std::vector<Int>& cls);
std::vector<FiberDecomposition>
enumerate_decompositions_serial(const RelationPresentation& p,
                                const std::vector<Int>& multiplicities,
                                const std::vector<Int>& cls);

// Subgroup of (Q/Z)^2 generated by (u_i/n_i, v_i/n_i), returned as
// canonical representatives in [0,1) x [0,1), sorted.  Inputs must
// satisfy n_i >= 2, gcd(n_i, u_i, v_i) = 1, and the projectivity
// constraint Σ u_i/n_i = Σ v_i/n_i = 0 (exact rational arithmetic).
std::vector<std::pair<Rat, Rat>> twist_group(const std::vector<Int>& n,
                                             const std::vector<Int>& u,
                                             const std::vector<Int>& v);

} // namespace pinv
