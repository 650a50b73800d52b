#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pinv/numeric.hpp"

namespace pinv {

// Integral exterior algebra Λ*(Z^{2q}) on generators e_1,...,e_{2q},
// the first homology of a q-dimensional complex torus.  A monomial
// e_{i1}∧...∧e_{ik} with i1 < ... < ik is stored as a bitmask (bit i-1
// set iff e_i occurs), so rank is limited to 64 generators (q <= 32),
// far beyond anything the invariant formulas reach.
using Mono = std::uint64_t;

inline int mono_degree(Mono m) { return __builtin_popcountll(m); }

// Koszul sign merging two disjoint ascending monomials a, b into one
// ascending monomial: parity of #{(i,j) : i in a, j in b, i > j}.
int merge_sign(Mono a, Mono b);

// Element of Λ*(Z^{2q}) with exact integer coefficients.  The term map
// holds nonzero coefficients only and is keyed by monomial mask, which
// fixes a canonical ordering of every traversal and serialization.
class ExtElement {
public:
    ExtElement() : rank_(0) {}
    explicit ExtElement(int rank);

    static ExtElement scalar(int rank, Int value);
    // Single monomial from ascending 1-based indices.
    static ExtElement monomial(int rank, const std::vector<int>& indices, Int coeff);

    int rank() const { return rank_; }            // number of generators, 2q
    bool is_zero() const { return terms_.empty(); }
    const std::map<Mono, Int>& terms() const { return terms_; }

    Int coeff(Mono m) const;
    void add_term(Mono m, const Int& c);          // accumulates, drops zeros

    // Homogeneous part of the given degree.
    ExtElement component(int degree) const;
    // Largest degree with a nonzero term, -1 for the zero element.
    int top_degree() const;

    bool operator==(const ExtElement& o) const {
        return rank_ == o.rank_ && terms_ == o.terms_;
    }
    bool operator!=(const ExtElement& o) const { return !(*this == o); }

    ExtElement operator+(const ExtElement& o) const;
    ExtElement operator-(const ExtElement& o) const;
    ExtElement operator-() const;
    ExtElement scaled(const Int& c) const;

    // Ascending dotted index list, "" for the scalar monomial.
    static std::string mono_key(Mono m);

private:
    int rank_;
    std::map<Mono, Int> terms_;
};

// Integer skew-symmetric 2q x 2q matrix; the coefficient matrix of a
// 2-form.  Antisymmetry (and zero diagonal) is enforced on construction.
class SkewForm {
public:
    SkewForm(int q, const std::vector<std::vector<Int>>& entries);

    // Standard symplectic pairing: A[i][q+i] = 1 = -A[q+i][i].
    static SkewForm standard(int q);
    static SkewForm zero(int q);

    int q() const { return q_; }
    int size() const { return 2 * q_; }
    const Int& at(int i, int j) const { return a_[i][j]; } // 0-based

private:
    int q_;
    std::vector<std::vector<Int>> a_;
};

// Wedge product.  `wedge` runs the term-pair accumulation in parallel
// when the operand sizes warrant it; `wedge_serial` is the plain
// reference loop kept for cross-checking and benchmarking.  Both are
// exact and produce identical elements.
ExtElement wedge(const ExtElement& a, const ExtElement& b);
ExtElement wedge_serial(const ExtElement& a, const ExtElement& b);

// Σ_{i<j} A_ij e_i ∧ e_j as a degree-2 element.
ExtElement two_form(const SkewForm& a);

// θ^n / n!, computed by exact power-then-divide.  Integrality of the
// quotient is an invariant (divided powers of integral 2-forms are
// integral); violation aborts rather than rounding.
ExtElement divided_power(const ExtElement& theta, unsigned long n);

// exp(θ) = Σ_{n=0}^{max_n} θ^n/n!; θ must be concentrated in degree 2.
ExtElement exp_two_form(const ExtElement& theta, unsigned long max_n);

// Truncation τ_{<=n}: drop all terms of degree > n; n < 0 yields zero.
ExtElement truncate(const ExtElement& x, long max_degree);

// Cap with the fundamental class of the torus: e_S is sent to
// ±e_{S^c} with the Koszul shuffle sign of (S, S^c) times the global
// orientation (-1)^{q(q-1)/2}.  The orientation factor identifies the
// fundamental class with the symplectic volume form
// e_1∧e_{q+1}∧...∧e_q∧e_{2q}, which normalizes cap(θ_std^q/q!) = 1,
// the degree of a point.
ExtElement cap_fundamental(const ExtElement& x);

// Coefficient of the scalar monomial (degree-0 part).
Int numeric_degree(const ExtElement& x);

// Total Chern class from a Chern character by Newton's identities,
// truncated above degree 2*dim.  The character must be concentrated in
// even degrees; all divisions must be exact.
ExtElement chern_from_character(const ExtElement& character, int dim);

} // namespace pinv
