#include "pinv/engine.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pinv/errors.hpp"

namespace pinv {

namespace {

long to_long(const Int& x, const char* what) {
    if (!x.fits_slong_p())
        throw input_error(std::string(what) + ": value out of range");
    return x.get_si();
}

void check_genus(long g) {
    if (g < 0) throw input_error("genus must be nonnegative");
    if (g > 32) throw input_error("genus too large: rank 2g exceeds 64 generators");
}

void check_two_form(const ExtElement& theta, int q) {
    if (theta.rank() != 2 * q)
        throw input_error("2-form has the wrong rank for the given q");
    for (const auto& [m, c] : theta.terms())
        if (mono_degree(m) != 2)
            throw input_error("2-form must be homogeneous of degree 2");
}

// [W_d] = theta^(g-d)/(g-d)! ∩ [Pic] on a genus-g Picard torus;
// [W_0] is the point class, [W_g] the fundamental class.
ExtElement bn_class(long g, long d) {
    if (g == 0) return ExtElement::scalar(0, 1);
    auto theta = two_form(SkewForm::standard(static_cast<int>(g)));
    return cap_fundamental(divided_power(theta, g - d));
}

PoincarePair scalar_pair(int rank, const Int& plus, const Int& minus,
                         std::string provenance) {
    return {ExtElement::scalar(rank, plus), ExtElement::scalar(rank, minus),
            std::move(provenance)};
}

std::vector<Int> elliptic_canonical(const EllipticModel& model) {
    std::vector<Int> k;
    k.reserve(model.multiplicities.size() + 1);
    k.push_back(Int(2 * model.base_genus - 2 + model.chi));
    for (const auto& n : model.multiplicities) k.push_back(n - 1);
    return k;
}

} // namespace

Int class_m_m_minus_k(const DivisorClass& cls) {
    if (const auto* r = std::get_if<RuledClass>(&cls.v)) return 2 * r->nu;
    if (std::get_if<FiberClass>(&cls.v)) return 0;
    if (const auto* s = std::get_if<SymbolicClass>(&cls.v)) {
        if (s->tag != SymbolicTag::Other) return 0;
        if (!s->nu)
            throw input_error(
                "blow-up over a symbolic class needs its expected dimension nu");
        return 2 * *s->nu;
    }
    const auto& b = std::get<BlowUpClass>(cls.v);
    if (!b.base) throw input_error("blow-up class: missing base class");
    Int acc = class_m_m_minus_k(*b.base);
    for (const auto& l : b.l) acc -= l * (l - 1);
    return acc;
}

RuledPoincare poincare_ruled(long genus, const RuledClass& m) {
    check_genus(genus);
    if (m.nu < 0)
        throw input_error("ruled class: nu = m(m-k)/2 must be nonnegative");

    const int rank = static_cast<int>(2 * genus);
    const Int c = m.fiber_pairing + 1;
    const long top = m.nu < genus ? to_long(m.nu, "nu") : genus;
    ExtElement sum(rank);
    for (long d = 0; d <= top; ++d)
        sum = sum +
              bn_class(genus, d).scaled(pow_int(c, static_cast<unsigned long>(genus - d)));

    const ExtElement zero(rank);
    RuledPoincare out;
    if (m.fiber_pairing > -1) {
        out.value = {sum, zero, "ruled_symmetric_product"};
    } else if (m.fiber_pairing < -1) {
        out.value = {zero, -sum, "ruled_symmetric_product"};
    } else if (sum.is_zero()) {
        out.value = {zero, zero, "ruled_symmetric_product"};
    } else {
        out.boundary_disagreement = true;
        out.value = {sum, zero,
                     "ruled_symmetric_product[boundary pairing -1: plus branch]"};
        out.alternate =
            PoincarePair{zero, -sum,
                         "ruled_symmetric_product[boundary pairing -1: minus branch]"};
    }
    return out;
}

PoincarePair poincare_hirzebruch(const RuledClass& m) {
    if (m.nu < 0)
        throw input_error("ruled class: nu = m(m-k)/2 must be nonnegative");
    if (m.fiber_pairing >= 0)
        return scalar_pair(0, 1, 0, "hirzebruch_fiber_sign");
    return scalar_pair(0, 0, -1, "hirzebruch_fiber_sign");
}

PoincarePair poincare_elliptic(const EllipticModel& model, const FiberClass& m) {
    const long q = model.irregularity;
    if (q < 0 || q > 32) throw input_error("irregularity out of range");
    if (m.coeffs.size() != static_cast<std::size_t>(model.presentation.generators))
        throw input_error("fiber class has the wrong number of coordinates");

    const Int n = Int(2 * model.base_genus - 2 + model.chi);
    auto weight_sum = [&](const std::vector<Int>& cls) {
        Int total = 0;
        for (const auto& dec :
             enumerate_decompositions(model.presentation, model.multiplicities, cls)) {
            const long d = to_long(dec.d, "decomposition degree");
            Int w = binomial(n, static_cast<unsigned long>(d));
            if (d % 2 != 0) w = -w;
            total += w;
        }
        return total;
    };

    const Int plus = weight_sum(m.coeffs);
    const auto k = elliptic_canonical(model);
    std::vector<Int> km(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) km[i] = k[i] - m.coeffs[i];
    Int minus = weight_sum(km);
    if (model.chi % 2 != 0) minus = -minus;

    return scalar_pair(static_cast<int>(2 * q), plus, minus,
                       "elliptic_fiber_decomposition");
}

ExtElement wall_crossing_difference(int q, const Int& nu, const ExtElement& theta) {
    if (q < 0 || q > 32) throw input_error("q out of range");
    check_two_form(theta, q);
    if (nu < 0) throw input_error("nu must be nonnegative");

    const long top = nu < q ? to_long(nu, "nu") : q;
    ExtElement acc(2 * q);
    for (long j = 0; j <= top; ++j)
        acc = acc + cap_fundamental(divided_power(theta, q - j));
    return acc;
}

ExtElement wall_crossing_fibered(int q, const Int& nu, const Int& c_half) {
    if (q < 0 || q > 32) throw input_error("q out of range");
    ExtElement theta(2 * q);
    if (q > 0) theta = two_form(SkewForm::standard(q)).scaled(c_half);
    return wall_crossing_difference(q, nu, theta);
}

ExtElement grr_character(const Int& chi, const Int& m_m_minus_k,
                         const ExtElement& theta) {
    if (theta.rank() % 2 != 0) throw input_error("character rank must be even");
    check_two_form(theta, theta.rank() / 2);
    if (m_m_minus_k % 2 != 0) throw input_error("m(m-k) must be even");
    return ExtElement::scalar(theta.rank(), chi + m_m_minus_k / 2) - theta;
}

ExtElement modified_segre(const Int& virtual_rank,
                          const ExtElement& total_chern_of_negative, int q) {
    if (q < 0 || q > 32) throw input_error("q out of range");
    const ExtElement& c = total_chern_of_negative;
    if (c.rank() != 2 * q) throw input_error("Chern class has the wrong rank");
    if (c.coeff(0) != 1)
        throw input_error("total Chern class must have unit scalar part");
    for (const auto& [m, co] : c.terms())
        if (mono_degree(m) % 2 != 0)
            throw input_error("total Chern class must have even degrees only");

    Int top = virtual_rank + q - 1;
    if (top > q) top = q;
    if (top < 0) return ExtElement(2 * q);

    ExtElement acc(2 * q);
    for (long j = 0; j <= to_long(top, "index bound"); ++j)
        acc = acc + cap_fundamental(c.component(static_cast<int>(2 * (q - j))));
    return acc;
}

PoincarePair blowup_transform(const PoincarePair& p, const Int& m_m_minus_k,
                              const Int& l) {
    const Int bound = m_m_minus_k - l * (l - 1);
    // degrees never exceed 64, so clamp before narrowing
    long b = -1;
    if (bound >= 0) b = bound > 64 ? 64 : to_long(bound, "truncation bound");
    std::string provenance = p.provenance.empty()
                                 ? "blowup_truncation"
                                 : p.provenance + "; blowup_truncation";
    return {truncate(p.p_plus, b), truncate(p.p_minus, b), std::move(provenance)};
}

bool duality_check(const PoincarePair& at_m, const PoincarePair& at_k_minus_m,
                   long chi) {
    const int rank = at_m.p_minus.rank();
    if (rank != at_k_minus_m.p_plus.rank() || rank != at_m.p_plus.rank() ||
        rank != at_k_minus_m.p_minus.rank())
        throw input_error("duality check: rank mismatch");

    for (int i = 0; i <= rank / 2; ++i) {
        auto rhs = at_k_minus_m.p_plus.component(2 * i);
        if ((chi + i) % 2 != 0) rhs = -rhs;
        if (!(at_m.p_minus.component(2 * i) == rhs)) return false;
    }
    return true;
}

BasicClassReport basic_classes(const SurfaceModel& m) {
    if (std::get_if<BlowUpModel>(&m.v))
        throw input_error("basic class enumeration supports minimal models only");

    if (const auto* mm = std::get_if<MinimalPgPositiveModel>(&m.v)) {
        const auto inv = invariants(m);
        const int rank = static_cast<int>(2 * inv.q);
        BasicClassReport rep;
        if (mm->kind == MinimalKind::GeneralType) {
            const Int sign = inv.chi % 2 != 0 ? Int(-1) : Int(1);
            rep.classes.push_back(
                {{}, "0",
                 scalar_pair(rank, 1, 1,
                             "general_type_rule[p_minus conjecture-dependent]")});
            rep.classes.push_back(
                {{}, "k",
                 scalar_pair(rank, sign, sign,
                             "general_type_rule[p_plus conjecture-dependent]")});
        } else {
            // K3 / Abelian: k = 0 and the only basic class is 0
            rep.classes.push_back(
                {{}, "0", scalar_pair(rank, 1, 1, "minimal_one_basic_class")});
        }
        return rep;
    }

    const auto* em = std::get_if<EllipticModel>(&m.v);
    if (!em) throw input_error("infinite basic class set: p_g = 0");
    const auto inv = invariants(m);
    if (inv.p_g <= 0) throw input_error("infinite basic class set: p_g = 0");

    const long n = 2 * em->base_genus - 2 + em->chi;
    if (n < 0)
        throw input_error("basic class grid needs 2g - 2 + chi >= 0");

    const auto k = elliptic_canonical(*em);
    const std::vector<Int> zero(k.size(), Int(0));
    const auto zero_coords = canonical_coords(em->presentation, zero);
    const auto k_coords = canonical_coords(em->presentation, k);

    BasicClassReport rep;
    std::set<std::vector<Int>> seen;
    std::vector<Int> a(em->multiplicities.size(), Int(0));
    for (long d = 0; d <= n; ++d) {
        // odometer over 0 <= a_i < m_i, last coordinate fastest
        std::fill(a.begin(), a.end(), Int(0));
        while (true) {
            std::vector<Int> cls;
            cls.reserve(a.size() + 1);
            cls.push_back(Int(d));
            cls.insert(cls.end(), a.begin(), a.end());

            auto coords = canonical_coords(em->presentation, cls);
            if (seen.insert(coords).second) {
                auto pair = poincare_elliptic(*em, FiberClass{cls});
                if (!pair.p_plus.is_zero() || !pair.p_minus.is_zero()) {
                    std::string label;
                    if (coords == zero_coords) {
                        label = "0";
                    } else if (coords == k_coords) {
                        label = "k";
                    } else {
                        std::ostringstream os;
                        os << "(";
                        for (std::size_t i = 0; i < cls.size(); ++i)
                            os << (i ? "," : "") << cls[i];
                        os << ")";
                        label = os.str();
                    }
                    rep.classes.push_back({cls, std::move(label), std::move(pair)});
                }
            }

            bool carried_out = false;
            std::size_t i = a.size();
            while (true) {
                if (i == 0) {
                    carried_out = true;
                    break;
                }
                --i;
                if (++a[i] < em->multiplicities[i]) break;
                a[i] = 0;
            }
            if (carried_out) break;
        }
    }
    // fiber-type classes satisfy m(m-k) = 0: all pairwise products vanish
    rep.simple_type = true;
    return rep;
}

std::vector<ComponentDescriptor> hilbert_components(const EllipticModel& model,
                                                    const FiberClass& m) {
    if (!model.from_log_transform)
        throw input_error("component census requires a log-transform model");
    const std::size_t r = model.log_fibers.size();
    if (m.coeffs.size() != r + 1)
        throw input_error("fiber class has the wrong number of coordinates");

    // canonical representative (d, a) with 0 <= a_i < n_i, d absorbing
    auto canon = [&](const std::vector<Int>& c) {
        std::vector<Int> out(r + 1);
        Int d = c[0];
        for (std::size_t i = 0; i < r; ++i) {
            const Int& n = model.log_fibers[i].n;
            Int rem = c[i + 1] % n;
            if (rem < 0) rem += n;
            d += (c[i + 1] - rem) / n;
            out[i + 1] = rem;
        }
        out[0] = d;
        return out;
    };
    auto shift = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
        std::vector<Int> s(r + 1);
        for (std::size_t i = 0; i <= r; ++i) s[i] = x[i] + y[i];
        return canon(s);
    };

    std::vector<Int> u(r + 1, Int(0)), v(r + 1, Int(0));
    for (std::size_t i = 0; i < r; ++i) {
        u[i + 1] = model.log_fibers[i].u;
        v[i + 1] = model.log_fibers[i].v;
    }
    u = canon(u);
    v = canon(v);

    std::set<std::vector<Int>> group;
    std::vector<std::vector<Int>> frontier{canon(std::vector<Int>(r + 1, Int(0)))};
    group.insert(frontier.front());
    while (!frontier.empty()) {
        auto cur = std::move(frontier.back());
        frontier.pop_back();
        for (const auto* g : {&u, &v}) {
            auto next = shift(cur, *g);
            if (group.insert(next).second) frontier.push_back(next);
        }
    }

    std::vector<ComponentDescriptor> out;
    out.reserve(group.size());
    for (const auto& twist : group) {
        auto x = shift(m.coeffs, twist);
        ComponentDescriptor c;
        c.twist = twist;
        c.d = x[0];
        c.a.assign(x.begin() + 1, x.end());
        c.empty = x[0] < 0;
        c.dimension = c.empty ? -1 : to_long(x[0], "dimension");
        out.push_back(std::move(c));
    }

    // the nonempty census must equal the decomposition enumeration
    std::vector<FiberDecomposition> found;
    for (const auto& c : out)
        if (!c.empty) found.push_back({c.d, c.a});
    std::sort(found.begin(), found.end());
    const auto expected =
        enumerate_decompositions(model.presentation, model.multiplicities, m.coeffs);
    if (!(found == expected))
        throw engine_error("component census does not match the decomposition enumeration");
    return out;
}

Int nagata_bound(long g) {
    check_genus(g);
    for (long nu : {0L, 1L}) {
        auto witness = poincare_ruled(g, {1, nu});
        if (witness.value.p_plus.is_zero())
            throw engine_error("section witness invariant vanished");
    }
    return Int(g);
}

Int lange_count(long g) {
    check_genus(g);
    return numeric_degree(poincare_ruled(g, {1, Int(g)}).value.p_plus);
}

PoincarePair compute_pair(const SurfaceModel& model, const DivisorClass& cls) {
    if (const auto* rm = std::get_if<RuledModel>(&model.v)) {
        const auto* rc = std::get_if<RuledClass>(&cls.v);
        if (!rc)
            throw input_error("ruled models take classes given by (fiber pairing, nu)");
        if (rm->genus == 0) return poincare_hirzebruch(*rc);
        return poincare_ruled(rm->genus, *rc).value;
    }

    if (const auto* em = std::get_if<EllipticModel>(&model.v)) {
        const auto* fc = std::get_if<FiberClass>(&cls.v);
        if (!fc) throw input_error("elliptic models take fiber-coordinate classes");
        return poincare_elliptic(*em, *fc);
    }

    if (const auto* bm = std::get_if<BlowUpModel>(&model.v)) {
        const auto* bc = std::get_if<BlowUpClass>(&cls.v);
        if (!bc)
            throw input_error("blow-up models take (base class, multiples) classes");
        if (!bm->base || !bc->base)
            throw input_error("blow-up data is incomplete");
        if (bc->l.size() != static_cast<std::size_t>(bm->exceptional_count))
            throw input_error(
                "blow-up class: one multiple per exceptional curve required");
        auto pair = compute_pair(*bm->base, *bc->base);
        Int mmk = class_m_m_minus_k(*bc->base);
        for (const auto& l : bc->l) {
            pair = blowup_transform(pair, mmk, l);
            mmk -= l * (l - 1);
        }
        return pair;
    }

    const auto* sc = std::get_if<SymbolicClass>(&cls.v);
    if (!sc) throw input_error("minimal models take symbolic classes");

    if (const auto* mm = std::get_if<MinimalPgPositiveModel>(&model.v)) {
        const auto inv = invariants(model);
        const int rank = static_cast<int>(2 * inv.q);
        if (mm->kind == MinimalKind::GeneralType) {
            const Int sign = inv.chi % 2 != 0 ? Int(-1) : Int(1);
            switch (sc->tag) {
            case SymbolicTag::Zero:
                return scalar_pair(rank, 1, 1,
                                   "general_type_rule[p_minus conjecture-dependent]");
            case SymbolicTag::Canonical:
                return scalar_pair(rank, sign, sign,
                                   "general_type_rule[p_plus conjecture-dependent]");
            case SymbolicTag::Other:
                return scalar_pair(rank, 0, 0, "general_type_rule[nonbasic]");
            }
        }
        if (sc->tag == SymbolicTag::Other)
            return scalar_pair(rank, 0, 0, "minimal_one_basic_class[nonbasic]");
        // K3 / Abelian: the canonical class is trivial, so both tags mean 0
        return scalar_pair(rank, 1, 1, "minimal_one_basic_class");
    }

    const auto& zm = std::get<MinimalPgZeroModel>(model.v);
    if (zm.kind == SpecialKind::Enriques) {
        switch (sc->tag) {
        case SymbolicTag::Zero:
            // Hilb^0 = {0} is nonempty
            return scalar_pair(0, 1, 0, "pg_zero_one_empty_rule");
        case SymbolicTag::Canonical:
            // |k| is empty since p_g = 0 and k != 0
            return scalar_pair(0, 0, -1, "pg_zero_one_empty_rule");
        case SymbolicTag::Other:
            if (!sc->hilb_nonempty)
                throw input_error(
                    "Enriques classes outside {0, k} need the hilb_nonempty oracle");
            if (!sc->nu || *sc->nu < 0)
                throw input_error("the one-empty rule needs m(m-k) >= 0");
            return *sc->hilb_nonempty
                       ? scalar_pair(0, 1, 0, "pg_zero_one_empty_rule")
                       : scalar_pair(0, 0, -1, "pg_zero_one_empty_rule");
        }
    }
    if (sc->tag == SymbolicTag::Other)
        throw input_error(
            "bielliptic classes outside {0, k} need fibration data the model does not carry");
    // Hilb^0 and Hilb^k are both a single smooth point
    return scalar_pair(2, 1, 1, "bielliptic_single_point_rule");
}

} // namespace pinv
