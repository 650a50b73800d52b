#include "pinv/surface.hpp"

#include <numeric>

#include "pinv/errors.hpp"

namespace pinv {

namespace {

struct InvariantsVisitor {
    SurfaceInvariants operator()(const RuledModel& m) const {
        if (m.genus < 0) throw input_error("ruled model: genus must be nonnegative");
        return {1 - m.genus, m.genus, 0};
    }
    SurfaceInvariants operator()(const EllipticModel& m) const {
        long pg = m.chi + m.irregularity - 1;
        if (pg < 0)
            throw input_error("elliptic model: chi + q - 1 = p_g must be nonnegative");
        return {m.chi, m.irregularity, pg};
    }
    SurfaceInvariants operator()(const BlowUpModel& m) const {
        if (!m.base) throw input_error("blow-up model: missing base model");
        if (m.exceptional_count < 0)
            throw input_error("blow-up model: exceptional count must be nonnegative");
        return invariants(*m.base);
    }
    SurfaceInvariants operator()(const MinimalPgPositiveModel& m) const {
        switch (m.kind) {
        case MinimalKind::K3: return {2, 0, 1};
        case MinimalKind::Abelian: return {0, 2, 1};
        case MinimalKind::GeneralType: break;
        }
        if (m.chi < 1)
            throw input_error("general type model: chi must be at least 1");
        if (m.irregularity < 0)
            throw input_error("general type model: q must be nonnegative");
        return {m.chi, m.irregularity, m.chi + m.irregularity - 1};
    }
    SurfaceInvariants operator()(const MinimalPgZeroModel& m) const {
        return m.kind == SpecialKind::Enriques ? SurfaceInvariants{1, 0, 0}
                                               : SurfaceInvariants{0, 1, 0};
    }
};

void validate_fibers(const std::vector<LogFiber>& fibers) {
    Rat u_sum = 0, v_sum = 0;
    for (const auto& f : fibers) {
        if (f.n < 2)
            throw input_error("logarithmic transform: multiplicity must be at least 2");
        Int g = gcd(gcd(f.n, f.u), f.v);
        if (g != 1)
            throw input_error("logarithmic transform: gcd(n, u, v) must be 1");
        u_sum += Rat(f.u) / Rat(f.n);
        v_sum += Rat(f.v) / Rat(f.n);
    }
    if (u_sum != 0 || v_sum != 0)
        throw input_error(
            "a logarithmic transform yields a projective surface iff the twist "
            "offsets sum to zero: need sum(u_i/n_i) = 0 and sum(v_i/n_i) = 0");
}

} // namespace

SurfaceInvariants invariants(const SurfaceModel& m) {
    return std::visit(InvariantsVisitor{}, m.v);
}

DivisorClass canonical_class(const SurfaceModel& m) {
    if (const auto* em = std::get_if<EllipticModel>(&m.v)) {
        std::vector<Int> coeffs;
        coeffs.reserve(em->multiplicities.size() + 1);
        coeffs.push_back(Int(2 * em->base_genus - 2 + em->chi));
        for (const auto& n : em->multiplicities) coeffs.push_back(n - 1);
        return DivisorClass{FiberClass{std::move(coeffs)}};
    }
    if (std::get_if<MinimalPgPositiveModel>(&m.v) ||
        std::get_if<MinimalPgZeroModel>(&m.v)) {
        return DivisorClass{SymbolicClass{SymbolicTag::Canonical, {}, {}}};
    }
    if (const auto* bm = std::get_if<BlowUpModel>(&m.v)) {
        if (!bm->base) throw input_error("blow-up model: missing base model");
        auto base = std::make_shared<DivisorClass>(canonical_class(*bm->base));
        std::vector<Int> ones(static_cast<std::size_t>(bm->exceptional_count), Int(1));
        return DivisorClass{BlowUpClass{std::move(base), std::move(ones)}};
    }
    throw input_error("canonical class: ruled surfaces have no fiber-type canonical class");
}

SurfaceModel build_log_transform(const std::vector<LogFiber>& fibers) {
    validate_fibers(fibers);

    EllipticModel m;
    m.base_genus = 0;
    m.chi = 0;
    m.irregularity = 1;
    m.log_fibers = fibers;
    m.from_log_transform = true;

    const int r = static_cast<int>(fibers.size());
    m.presentation.generators = 1 + r;
    for (int i = 0; i < r; ++i) {
        m.multiplicities.push_back(fibers[static_cast<std::size_t>(i)].n);
        std::vector<Int> row(static_cast<std::size_t>(1 + r), Int(0));
        row[0] = -1;
        row[static_cast<std::size_t>(1 + i)] = fibers[static_cast<std::size_t>(i)].n;
        m.presentation.rows.push_back(std::move(row));
    }
    if (r > 0) {
        std::vector<Int> u_row(static_cast<std::size_t>(1 + r), Int(0));
        std::vector<Int> v_row(static_cast<std::size_t>(1 + r), Int(0));
        for (int i = 0; i < r; ++i) {
            u_row[static_cast<std::size_t>(1 + i)] = fibers[static_cast<std::size_t>(i)].u;
            v_row[static_cast<std::size_t>(1 + i)] = fibers[static_cast<std::size_t>(i)].v;
        }
        m.presentation.rows.push_back(std::move(u_row));
        m.presentation.rows.push_back(std::move(v_row));
    }
    return SurfaceModel{std::move(m)};
}

Rat albanese_fiber_pairing(const SurfaceModel& m, const FiberClass& cls) {
    const auto* em = std::get_if<EllipticModel>(&m.v);
    if (!em || !em->from_log_transform)
        throw input_error("albanese fiber pairing: defined on log-transform models only");
    if (cls.coeffs.size() != static_cast<std::size_t>(em->presentation.generators))
        throw input_error("albanese fiber pairing: class has the wrong number of coordinates");

    Rat degree = cls.coeffs[0];
    for (std::size_t i = 0; i < em->log_fibers.size(); ++i)
        degree += Rat(cls.coeffs[i + 1]) / Rat(em->log_fibers[i].n);

    std::vector<Int> n, u, v;
    for (const auto& f : em->log_fibers) {
        n.push_back(f.n);
        u.push_back(f.u);
        v.push_back(f.v);
    }
    const auto index = Int(static_cast<unsigned long>(twist_group(n, u, v).size()));
    return degree * Rat(index);
}

} // namespace pinv
