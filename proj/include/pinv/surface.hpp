#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "pinv/lattice.hpp"
#include "pinv/numeric.hpp"

namespace pinv {

struct SurfaceModel; // recursive via BlowUpModel

// One logarithmic transform datum: a fiber of multiplicity n with twist
// offsets u, v (numerators over n of the two lattice directions).
struct LogFiber {
    Int n, u, v;
};

// Geometrically ruled surface over a curve of genus g.  Divisor classes
// are recorded by their fiber pairing and expected dimension; the
// Neron-Severi coordinates themselves never enter the formulas.
struct RuledModel {
    long genus = 0;
};

// Minimal elliptic fibration over a base of genus g, with multiple
// fibers F_1..F_r.  Divisor classes of fiber type live in the presented
// group generated by [F], [F_1], ..., [F_r].  The presentation always
// contains the rows n_i*[F_i] - [F]; models built by a logarithmic
// transform also carry the two twist rows and remember their fibers.
struct EllipticModel {
    long base_genus = 0;
    long chi = 0;
    long irregularity = 0;                // q, an independent input
    std::vector<Int> multiplicities;      // each >= 2
    RelationPresentation presentation;    // generators = 1 + multiplicities
    std::vector<LogFiber> log_fibers;     // empty unless built by build_log_transform
    bool from_log_transform = false;
};

struct BlowUpModel {
    std::shared_ptr<const SurfaceModel> base;
    int exceptional_count = 0;
};

enum class MinimalKind { K3, Abelian, GeneralType };

// Minimal surface with p_g > 0 handled by the basic-class rules alone.
// K3 and Abelian have fixed invariants; GeneralType takes chi >= 1 and
// q >= 0 as free inputs.
struct MinimalPgPositiveModel {
    MinimalKind kind = MinimalKind::K3;
    long chi = 0;
    long irregularity = 0;
};

enum class SpecialKind { Enriques, Bielliptic };

// Enriques / bielliptic: carried only with their numerical invariants
// and the rule that for m outside {0, k} one of the two Hilbert schemes
// is empty.
struct MinimalPgZeroModel {
    SpecialKind kind = SpecialKind::Enriques;
};

using ModelVariant = std::variant<RuledModel, EllipticModel, BlowUpModel,
                                  MinimalPgPositiveModel, MinimalPgZeroModel>;

struct SurfaceModel {
    ModelVariant v;
};

// ---- divisor classes, one shape per model family -----------------------

// Class m on a ruled surface: pairing <m,[F]> and nu = m(m-k)/2 >= 0.
struct RuledClass {
    Int fiber_pairing;
    Int nu;
};

// Fiber-type class on an elliptic model: coordinates over the
// presentation generators ([F], [F_1], ..., [F_r]).
struct FiberClass {
    std::vector<Int> coeffs;
};

enum class SymbolicTag { Zero, Canonical, Other };

// Class on a minimal model addressed symbolically.  For q = 0, p_g = 0
// surfaces handled by the one-empty rule, `hilb_nonempty` supplies the
// emptiness oracle and `nu` the expected dimension.
struct SymbolicClass {
    SymbolicTag tag = SymbolicTag::Zero;
    std::optional<bool> hilb_nonempty;
    std::optional<Int> nu;
};

struct DivisorClass; // recursive via BlowUpClass

struct BlowUpClass {
    std::shared_ptr<const DivisorClass> base;
    std::vector<Int> l; // one multiple per exceptional curve
};

using ClassVariant = std::variant<RuledClass, FiberClass, SymbolicClass, BlowUpClass>;

struct DivisorClass {
    ClassVariant v;
};

struct SurfaceInvariants {
    long chi = 0; // holomorphic Euler characteristic
    long q = 0;   // irregularity
    long p_g = 0; // geometric genus
};

// Numerical invariants (chi, q, p_g); blow-ups inherit the base's.
// Always satisfies chi = 1 - q + p_g.
SurfaceInvariants invariants(const SurfaceModel& m);

// Canonical class where the model can express it: elliptic models get
// the fiber-type vector (2g-2+chi, m_1 - 1, ..., m_r - 1); minimal
// models with p_g > 0 get the symbolic tag.  Ruled surfaces have no
// fiber-type canonical class and are rejected.
DivisorClass canonical_class(const SurfaceModel& m);

// Elliptic surface over P^1 obtained from P^1 x E by logarithmic
// transforms with the given data.  Validates n_i >= 2,
// gcd(n_i, u_i, v_i) = 1 and the projectivity constraint
// Σ u_i/n_i = Σ v_i/n_i = 0.  The result has chi = 0, q = 1, p_g = 0.
SurfaceModel build_log_transform(const std::vector<LogFiber>& fibers);

// Exact pairing <cls, [E]> with the Albanese fiber E, equal to the
// rational fiber degree of cls times the lattice index [Γ':Γ] (the
// order of the twist group).  Only defined on log-transform models.
Rat albanese_fiber_pairing(const SurfaceModel& m, const FiberClass& cls);

} // namespace pinv
