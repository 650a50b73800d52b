#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pinv/lattice.hpp"

using namespace pinv;

namespace {

Matrix random_matrix(std::mt19937_64& rng, size_t rows, size_t cols, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    Matrix m(rows, std::vector<Int>(cols));
    for (auto& row : m)
        for (auto& x : row) x = dist(rng);
    return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    Matrix c(n, std::vector<Int>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t)
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    return c;
}

void check_smith_properties(const Matrix& r) {
    auto s = smith_normal_form(r);
    size_t rows = r.size(), cols = rows ? r[0].size() : 0;
    REQUIRE(s.u.size() == rows);
    REQUIRE(s.v.size() == cols);
    CHECK(mat_mul(mat_mul(s.u, r), s.v) == s.d);
    CHECK(abs(oracle::det(s.u)) == 1);
    CHECK(abs(oracle::det(s.v)) == 1);
    // diagonal, nonnegative, divisibility chain, zeros last
    std::vector<Int> diag;
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) {
            if (i == j) diag.push_back(s.d[i][j]);
            else CHECK(s.d[i][j] == 0);
        }
    for (size_t i = 0; i < diag.size(); ++i) {
        CHECK(diag[i] >= 0);
        if (i + 1 < diag.size()) {
            if (diag[i] == 0) CHECK(diag[i + 1] == 0);
            else if (diag[i + 1] != 0) CHECK(diag[i + 1] % diag[i] == 0);
        }
    }
    CHECK(diag == oracle::snf_diagonal(r));
}

RelationPresentation example_presentation() {
    // generators F, F1..F4; relations 3F_i = F plus the two twist rows
    // u = (1,1,1,-3), v = (1,0,0,-1)
    RelationPresentation p;
    p.generators = 5;
    p.rows = {{-1, 3, 0, 0, 0},
              {-1, 0, 3, 0, 0},
              {-1, 0, 0, 3, 0},
              {-1, 0, 0, 0, 3},
              {0, 1, 1, 1, -3},
              {0, 1, 0, 0, -1}};
    return p;
}

RelationPresentation two_fiber_presentation(long n) {
    RelationPresentation p;
    p.generators = 3;
    p.rows = {{-1, n, 0}, {-1, 0, n}, {0, 1, -1}, {0, 0, 0}};
    return p;
}

} // namespace

TEST_CASE("smith normal form of a fixed matrix") {
    Matrix r = {{2, 4}, {6, 8}};
    auto s = smith_normal_form(r);
    CHECK(s.d == Matrix{{2, 0}, {0, 4}});
    check_smith_properties(r);
}

TEST_CASE("smith normal form edge shapes") {
    check_smith_properties(Matrix{});
    check_smith_properties(Matrix{{0, 0, 0}});
    check_smith_properties(Matrix{{5}});
    check_smith_properties(Matrix{{0}, {0}});
    check_smith_properties(Matrix{{3, 6, 9}});
    check_smith_properties(Matrix{{4}, {6}});
    // wide and tall
    check_smith_properties(Matrix{{1, 2, 3}, {4, 5, 6}});
    check_smith_properties(Matrix{{1, 2}, {3, 4}, {5, 6}});
}

TEST_CASE("smith normal form is deterministic") {
    std::mt19937_64 rng(11);
    auto r = random_matrix(rng, 4, 5, 20);
    auto s1 = smith_normal_form(r);
    auto s2 = smith_normal_form(r);
    CHECK(s1.u == s2.u);
    CHECK(s1.d == s2.d);
    CHECK(s1.v == s2.v);
}

TEST_CASE("smith normal form properties on random matrices") {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 120; ++trial) {
        size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
        check_smith_properties(random_matrix(rng, rows, cols, 12));
    }
}

TEST_CASE("classes_equal on the four-fiber presentation") {
    auto p = example_presentation();
    std::vector<Int> K = {-2, 2, 2, 2, 2};
    std::vector<Int> twoF4 = {0, 0, 0, 0, 2};
    std::vector<Int> zero = {0, 0, 0, 0, 0};
    std::vector<Int> F1 = {0, 1, 0, 0, 0};
    std::vector<Int> F2 = {0, 0, 1, 0, 0};
    std::vector<Int> F4 = {0, 0, 0, 0, 1};
    CHECK(classes_equal(p, K, twoF4));
    CHECK_FALSE(classes_equal(p, K, zero));
    CHECK(classes_equal(p, F1, F4)); // the second twist row is F1 - F4
    // every span element has F2, F3 coefficients congruent mod 3
    CHECK_FALSE(classes_equal(p, F1, F2));
    CHECK(classes_equal(p, zero, zero));
    // canonical coordinates agree exactly with equality
    CHECK(canonical_coords(p, F1) == canonical_coords(p, F4));
    CHECK(canonical_coords(p, F1) != canonical_coords(p, F2));
    CHECK(canonical_coords(p, K) == canonical_coords(p, twoF4));
}

TEST_CASE("classes_equal matches Cramer membership on nonsingular presentations") {
    std::mt19937_64 rng(777);
    int checked = 0;
    while (checked < 60) {
        size_t n = 2 + rng() % 4;
        Matrix r = random_matrix(rng, n, n, 6);
        Int d = oracle::det(r);
        if (d == 0 || abs(d) > 200) continue; // quotient group order <= 200
        ++checked;
        RelationPresentation p{static_cast<int>(n), r};
        for (int t = 0; t < 8; ++t) {
            std::vector<Int> x(n), y(n);
            std::uniform_int_distribution<long> dist(-10, 10);
            for (auto& v : x) v = dist(rng);
            for (auto& v : y) v = dist(rng);
            std::vector<Int> z(n);
            for (size_t i = 0; i < n; ++i) z[i] = x[i] - y[i];
            CHECK(classes_equal(p, x, y) == oracle::in_row_span_square(r, z));
        }
        // membership of an explicit integer combination is always detected
        std::vector<Int> combo(n, 0);
        for (size_t i = 0; i < n; ++i) {
            long c = static_cast<long>(rng() % 7) - 3;
            for (size_t j = 0; j < n; ++j) combo[j] += c * r[i][j];
        }
        CHECK(classes_equal(p, combo, std::vector<Int>(n, 0)));
    }
}

TEST_CASE("enumerate_decompositions without multiple fibers") {
    RelationPresentation p{1, {}};
    auto dec = enumerate_decompositions(p, {}, {5});
    REQUIRE(dec.size() == 1);
    CHECK(dec[0].d == 5);
    CHECK(dec[0].a.empty());
    CHECK(enumerate_decompositions(p, {}, {-1}).empty());
    auto zero = enumerate_decompositions(p, {}, {0});
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].d == 0);
}

TEST_CASE("enumerate_decompositions rejects torsion fiber classes") {
    RelationPresentation p{1, {{1}}}; // forces [F] = 0
    CHECK_THROWS_AS(enumerate_decompositions(p, {}, {3}), input_error);
}

TEST_CASE("enumerate_decompositions on the two-fiber family") {
    // frozen census: [F] = 1*[F] + 0, or (a, n-a) for a = 1..n-1
    for (long n = 2; n <= 5; ++n) {
        auto p = two_fiber_presentation(n);
        auto dec = enumerate_decompositions(p, {n, n}, {1, 0, 0});
        REQUIRE(dec.size() == static_cast<size_t>(n));
        CHECK(dec.back().d == 1);
        CHECK(dec.back().a == std::vector<Int>{0, 0});
        for (long a = 1; a < n; ++a) {
            CHECK(dec[a - 1].d == 0);
            CHECK(dec[a - 1].a == std::vector<Int>{a, n - a});
        }
    }
}

TEST_CASE("enumerate_decompositions on the four-fiber presentation") {
    auto p = example_presentation();
    std::vector<Int> mult = {3, 3, 3, 3};
    std::vector<Int> K = {-2, 2, 2, 2, 2};

    auto dec = enumerate_decompositions(p, mult, K);
    // frozen: exactly the four systems 2F4, F2+F3, F1+F4, 2F1, all d=0
    std::vector<FiberDecomposition> expected = {
        {0, {0, 0, 0, 2}}, {0, {0, 1, 1, 0}}, {0, {1, 0, 0, 1}}, {0, {2, 0, 0, 0}}};
    CHECK(dec == expected);

    auto dec0 = enumerate_decompositions(p, mult, {0, 0, 0, 0, 0});
    std::vector<FiberDecomposition> expected0 = {{0, {0, 0, 0, 0}}};
    CHECK(dec0 == expected0);

    // K - F has negative rational fiber degree: empty
    CHECK(enumerate_decompositions(p, mult, {-3, 2, 2, 2, 2}).empty());
}

TEST_CASE("decompositions re-verify through classes_equal and match the serial scan") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 10; ++trial) {
        auto p = example_presentation();
        std::vector<Int> mult = {3, 3, 3, 3};
        std::vector<Int> cls(5);
        std::uniform_int_distribution<long> dist(-3, 5);
        for (auto& c : cls) c = dist(rng);
        auto dec = enumerate_decompositions(p, mult, cls);
        CHECK(dec == enumerate_decompositions_serial(p, mult, cls));
        for (const auto& [d, a] : dec) {
            CHECK(d >= 0);
            for (size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i] >= 0);
                CHECK(a[i] < mult[i]);
            }
            std::vector<Int> rebuilt(5, 0);
            rebuilt[0] = d;
            for (size_t i = 0; i < a.size(); ++i) rebuilt[1 + i] = a[i];
            CHECK(classes_equal(p, rebuilt, cls));
        }
        // distinct decompositions stay distinct
        for (size_t i = 0; i + 1 < dec.size(); ++i) CHECK(dec[i] < dec[i + 1]);
    }
}

TEST_CASE("twist_group of the four-fiber example is (Z/3)^2") {
    auto g = twist_group({3, 3, 3, 3}, {1, 1, 1, -3}, {1, 0, 0, -1});
    CHECK(g.size() == 9);
    for (const auto& [a, b] : g) {
        CHECK(a >= 0);
        CHECK(a < 1);
        CHECK(b >= 0);
        CHECK(b < 1);
        // exponent 3: every element killed by 3
        Rat a3 = a * 3, b3 = b * 3;
        CHECK(a3.get_den() == 1);
        CHECK(b3.get_den() == 1);
    }
    // matches the breadth-first closure in (Z/3)^2
    auto closure = oracle::closure_mod(
        {{1, 1}, {1, 0}, {1, 0}, {-3, -1}}, 3);
    CHECK(closure.size() == 9);
}

TEST_CASE("twist_group of the two-fiber family is cyclic of order n") {
    for (long n = 2; n <= 7; ++n) {
        auto g = twist_group({n, n}, {1, -1}, {0, 0});
        CHECK(g.size() == static_cast<size_t>(n));
        for (const auto& [a, b] : g) CHECK(b == 0);
    }
}

TEST_CASE("twist_group is trivial for no fibers") {
    auto g = twist_group({}, {}, {});
    REQUIRE(g.size() == 1);
    CHECK(g[0].first == 0);
    CHECK(g[0].second == 0);
}

TEST_CASE("twist_group validates its input") {
    // gcd(4, 2, 2) = 2
    CHECK_THROWS_AS(twist_group({4, 4}, {2, -2}, {2, -2}), input_error);
    // sum u_i/n_i = 1 != 0
    CHECK_THROWS_AS(twist_group({2, 2}, {1, 1}, {1, -1}), input_error);
    // multiplicity below 2
    CHECK_THROWS_AS(twist_group({1, 2}, {0, 0}, {1, -1}), input_error);
}

TEST_CASE("twist_group is closed under addition") {
    auto g = twist_group({3, 3, 3, 3}, {1, 1, 1, -3}, {1, 0, 0, -1});
    auto wrap = [](Rat x) {
        Rat r = x - Int(mpz_class(x.get_num() / x.get_den()));
        if (r < 0) r += 1;
        return r;
    };
    for (const auto& x : g)
        for (const auto& y : g) {
            std::pair<Rat, Rat> sum{wrap(x.first + y.first), wrap(x.second + y.second)};
            CHECK(std::find(g.begin(), g.end(), sum) != g.end());
        }
}

TEST_CASE("twist_group order equals the closure order on random balanced data") {
    std::mt19937_64 rng(404);
    int done = 0;
    while (done < 25) {
        long n = 2 + static_cast<long>(rng() % 5);
        size_t r = 2 + rng() % 3;
        std::vector<Int> nn(r, n), u(r), v(r);
        long su = 0, sv = 0;
        for (size_t i = 0; i + 1 < r; ++i) {
            long ui = static_cast<long>(rng() % 11) - 5;
            long vi = static_cast<long>(rng() % 11) - 5;
            u[i] = ui; v[i] = vi; su += ui; sv += vi;
        }
        u[r - 1] = -su;
        v[r - 1] = -sv;
        bool ok = true;
        for (size_t i = 0; i < r; ++i)
            if (gcd(gcd(nn[i], u[i]), v[i]) != 1) ok = false;
        if (!ok) continue;
        ++done;
        auto g = twist_group(nn, u, v);
        std::vector<std::pair<Int, Int>> gens;
        for (size_t i = 0; i < r; ++i) gens.push_back({u[i], v[i]});
        CHECK(g.size() == oracle::closure_mod(gens, n).size());
    }
}
