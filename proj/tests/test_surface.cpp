#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pinv/surface.hpp"

using namespace pinv;

namespace {

std::vector<LogFiber> example_fibers() {
    return {{3, 1, 1}, {3, 1, 0}, {3, 1, 0}, {3, -3, -1}};
}

SurfaceModel ruled(long g) { return SurfaceModel{RuledModel{g}}; }

} // namespace

TEST_CASE("invariants of the model families") {
    auto check = [](const SurfaceModel& m, long chi, long q, long pg) {
        auto inv = invariants(m);
        CHECK(inv.chi == chi);
        CHECK(inv.q == q);
        CHECK(inv.p_g == pg);
        CHECK(inv.chi == 1 - inv.q + inv.p_g);
    };
    check(ruled(0), 1, 0, 0);
    check(ruled(2), -1, 2, 0);
    check(SurfaceModel{MinimalPgPositiveModel{MinimalKind::K3, 2, 0}}, 2, 0, 1);
    check(SurfaceModel{MinimalPgPositiveModel{MinimalKind::Abelian, 0, 2}}, 0, 2, 1);
    check(SurfaceModel{MinimalPgPositiveModel{MinimalKind::GeneralType, 3, 1}}, 3, 1, 3);
    check(SurfaceModel{MinimalPgZeroModel{SpecialKind::Enriques}}, 1, 0, 0);
    check(SurfaceModel{MinimalPgZeroModel{SpecialKind::Bielliptic}}, 0, 1, 0);
    check(build_log_transform(example_fibers()), 0, 1, 0);

    auto base = std::make_shared<SurfaceModel>(ruled(2));
    check(SurfaceModel{BlowUpModel{base, 3}}, -1, 2, 0);
}

TEST_CASE("elliptic invariants respect chi = 1 - q + p_g") {
    EllipticModel m;
    m.base_genus = 1;
    m.chi = 1;
    m.irregularity = 1;
    m.presentation = RelationPresentation{1, {}};
    auto inv = invariants(SurfaceModel{m});
    CHECK(inv.p_g == 1);
    // p_g would be negative
    m.chi = 0;
    m.irregularity = 0;
    CHECK_THROWS_AS(invariants(SurfaceModel{m}), input_error);
}

TEST_CASE("general type needs chi >= 1") {
    CHECK_THROWS_AS(
        invariants(SurfaceModel{MinimalPgPositiveModel{MinimalKind::GeneralType, 0, 1}}),
        input_error);
}

TEST_CASE("canonical_class of elliptic models") {
    EllipticModel plain;
    plain.base_genus = 1;
    plain.chi = 0;
    plain.irregularity = 1;
    plain.presentation = RelationPresentation{1, {}};
    auto k = canonical_class(SurfaceModel{plain});
    auto* fib = std::get_if<FiberClass>(&k.v);
    REQUIRE(fib != nullptr);
    CHECK(fib->coeffs == std::vector<Int>{0});

    auto v = build_log_transform(example_fibers());
    auto kv = canonical_class(v);
    auto* kf = std::get_if<FiberClass>(&kv.v);
    REQUIRE(kf != nullptr);
    CHECK(kf->coeffs == std::vector<Int>{-2, 2, 2, 2, 2});
}

TEST_CASE("canonical_class symbolic and rejected cases") {
    auto k3 = SurfaceModel{MinimalPgPositiveModel{MinimalKind::K3, 2, 0}};
    auto k = canonical_class(k3);
    auto* sym = std::get_if<SymbolicClass>(&k.v);
    REQUIRE(sym != nullptr);
    CHECK(sym->tag == SymbolicTag::Canonical);

    CHECK_THROWS_AS(canonical_class(ruled(1)), input_error);

    // blow-up: pull-back plus all exceptional curves once
    auto base = std::make_shared<SurfaceModel>(k3);
    auto kb = canonical_class(SurfaceModel{BlowUpModel{base, 2}});
    auto* bc = std::get_if<BlowUpClass>(&kb.v);
    REQUIRE(bc != nullptr);
    CHECK(bc->l == std::vector<Int>{1, 1});
    CHECK(std::get_if<SymbolicClass>(&bc->base->v) != nullptr);
}

TEST_CASE("build_log_transform fixes the numerical data") {
    auto v = build_log_transform(example_fibers());
    auto* em = std::get_if<EllipticModel>(&v.v);
    REQUIRE(em != nullptr);
    CHECK(em->base_genus == 0);
    CHECK(em->chi == 0);
    CHECK(em->irregularity == 1);
    CHECK(em->multiplicities == std::vector<Int>{3, 3, 3, 3});
    CHECK(em->from_log_transform);
    REQUIRE(em->presentation.generators == 5);
    // four multiplicity rows plus the two twist rows
    REQUIRE(em->presentation.rows.size() == 6);
    CHECK(em->presentation.rows[0] == std::vector<Int>{-1, 3, 0, 0, 0});
    CHECK(em->presentation.rows[4] == std::vector<Int>{0, 1, 1, 1, -3});
    CHECK(em->presentation.rows[5] == std::vector<Int>{0, 1, 0, 0, -1});
}

TEST_CASE("build_log_transform with no fibers gives the plain product") {
    auto v = build_log_transform({});
    auto* em = std::get_if<EllipticModel>(&v.v);
    REQUIRE(em != nullptr);
    CHECK(em->chi == 0);
    CHECK(em->irregularity == 1);
    CHECK(em->multiplicities.empty());
    CHECK(em->presentation.generators == 1);
    CHECK(em->presentation.rows.empty());
}

TEST_CASE("build_log_transform validates its data") {
    // multiplicity 1
    CHECK_THROWS_AS(build_log_transform({{1, 0, 0}}), input_error);
    // gcd(4, 2, 2) = 2
    CHECK_THROWS_AS(build_log_transform({{4, 2, 2}, {4, -2, -2}}), input_error);
    // projectivity: sum u_i/n_i = 1/2 + 1/2 != 0
    CHECK_THROWS_AS(build_log_transform({{2, 1, 1}, {2, 1, -1}}), input_error);
}

TEST_CASE("albanese_fiber_pairing on the four-fiber example") {
    auto v = build_log_transform(example_fibers());
    // E.F = |twist group| = 9
    CHECK(albanese_fiber_pairing(v, FiberClass{{1, 0, 0, 0, 0}}) == 9);
    // K has rational fiber degree 2/3, so K.E = 6
    CHECK(albanese_fiber_pairing(v, FiberClass{{-2, 2, 2, 2, 2}}) == 6);
    // equal classes pair equally: K ~ 2F4
    CHECK(albanese_fiber_pairing(v, FiberClass{{0, 0, 0, 0, 2}}) == 6);
    CHECK(albanese_fiber_pairing(v, FiberClass{{0, 0, 0, 0, 0}}) == 0);
}

TEST_CASE("albanese_fiber_pairing on the two-fiber family") {
    for (long n = 2; n <= 5; ++n) {
        auto v = build_log_transform({{n, 1, 0}, {n, -1, 0}});
        CHECK(albanese_fiber_pairing(v, FiberClass{{1, 0, 0}}) == n);
        // canonical class (-2, n-1, n-1) has rational degree -2/n
        CHECK(albanese_fiber_pairing(v, FiberClass{{-2, n - 1, n - 1}}) == -2);
    }
}

TEST_CASE("albanese_fiber_pairing needs a log-transform model") {
    CHECK_THROWS_AS(albanese_fiber_pairing(ruled(1), FiberClass{{1}}), input_error);
    auto v = build_log_transform(example_fibers());
    CHECK_THROWS_AS(albanese_fiber_pairing(v, FiberClass{{1, 0}}), input_error);
}

TEST_CASE("trivial transform list pairs [F] to 1") {
    auto v = build_log_transform({});
    CHECK(albanese_fiber_pairing(v, FiberClass{{1}}) == 1);
}
