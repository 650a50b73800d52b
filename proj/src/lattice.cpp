#include "pinv/lattice.hpp"

#include <algorithm>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pinv {

namespace {

void check_rectangular(const Matrix& m) {
    for (const auto& row : m)
        if (row.size() != m[0].size())
            throw input_error("relation matrix must be rectangular");
}

Matrix identity(size_t n) {
    Matrix m(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Row vector times matrix.
std::vector<Int> vec_mat(const std::vector<Int>& v, const Matrix& m) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<Int> out(cols, 0);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) out[j] += v[i] * m[i][j];
    return out;
}

// Nonnegative residue.
Int mod_pos(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// Torsion structure of a presentation read from its Smith form:
// coordinate j of vec*V is constrained mod diag[j] (diag[j] > 0) or
// exactly (diag[j] == 0 or j beyond the diagonal).
struct QuotientCoords {
    Matrix v;
    std::vector<Int> diag; // length min(rows, cols); zeros mean free
};

QuotientCoords quotient_coords(const RelationPresentation& p) {
    if (p.generators < 0) throw input_error("negative generator count");
    for (const auto& row : p.rows)
        if (row.size() != static_cast<size_t>(p.generators))
            throw input_error("relation row length must equal generator count");
    if (p.rows.empty())
        return {identity(static_cast<size_t>(p.generators)), {}};
    auto s = smith_normal_form(p.rows);
    QuotientCoords qc;
    qc.v = std::move(s.v);
    size_t rank_bound = std::min(p.rows.size(), static_cast<size_t>(p.generators));
    for (size_t j = 0; j < rank_bound; ++j) qc.diag.push_back(s.d[j][j]);
    return qc;
}

std::vector<Int> reduce_coords(const QuotientCoords& qc, const std::vector<Int>& vec) {
    std::vector<Int> t = vec_mat(vec, qc.v);
    for (size_t j = 0; j < t.size(); ++j)
        if (j < qc.diag.size() && qc.diag[j] > 0) t[j] = mod_pos(t[j], qc.diag[j]);
    return t;
}

} // namespace

SmithDecomposition smith_normal_form(const Matrix& r) {
    const size_t rows = r.size();
    const size_t cols = rows ? r[0].size() : 0;
    if (rows) check_rectangular(r);

    SmithDecomposition s{identity(rows), r, identity(cols)};
    Matrix& d = s.d;

    auto row_sub = [&](size_t dst, size_t src, const Int& q) {
        for (size_t j = 0; j < cols; ++j) d[dst][j] -= q * d[src][j];
        for (size_t j = 0; j < rows; ++j) s.u[dst][j] -= q * s.u[src][j];
    };
    auto col_sub = [&](size_t dst, size_t src, const Int& q) {
        for (size_t i = 0; i < rows; ++i) d[i][dst] -= q * d[i][src];
        for (size_t i = 0; i < cols; ++i) s.v[i][dst] -= q * s.v[i][src];
    };
    auto row_swap = [&](size_t a, size_t b) {
        if (a == b) return;
        std::swap(d[a], d[b]);
        std::swap(s.u[a], s.u[b]);
    };
    auto col_swap = [&](size_t a, size_t b) {
        if (a == b) return;
        for (size_t i = 0; i < rows; ++i) std::swap(d[i][a], d[i][b]);
        for (size_t i = 0; i < cols; ++i) std::swap(s.v[i][a], s.v[i][b]);
    };

    size_t t = 0;
    while (t < rows && t < cols) {
        // deterministic pivot: minimal absolute value, row-major tie-break
        size_t pi = rows, pj = cols;
        Int best = 0;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j) {
                if (d[i][j] == 0) continue;
                Int a = abs(d[i][j]);
                if (pi == rows || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi == rows) break; // remaining block is zero
        row_swap(t, pi);
        col_swap(t, pj);

        bool clean = true;
        for (size_t i = t + 1; i < rows && clean; ++i)
            if (d[i][t] != 0) {
                row_sub(i, t, d[i][t] / d[t][t]);
                if (d[i][t] != 0) clean = false; // remainder became new minimum
            }
        if (!clean) continue;
        for (size_t j = t + 1; j < cols && clean; ++j)
            if (d[t][j] != 0) {
                col_sub(j, t, d[t][j] / d[t][t]);
                if (d[t][j] != 0) clean = false;
            }
        if (!clean) continue;
        // enforce the divisibility chain: fold any non-multiple into row t
        for (size_t i = t + 1; i < rows && clean; ++i)
            for (size_t j = t + 1; j < cols && clean; ++j)
                if (d[i][j] % d[t][t] != 0) {
                    row_sub(t, i, -1); // add row i, creates a smaller remainder
                    clean = false;
                }
        if (!clean) continue;
        if (d[t][t] < 0) {
            for (size_t j = 0; j < cols; ++j) d[t][j] = -d[t][j];
            for (size_t j = 0; j < rows; ++j) s.u[t][j] = -s.u[t][j];
        }
        ++t;
    }
    return s;
}

std::vector<Int> canonical_coords(const RelationPresentation& p,
                                  const std::vector<Int>& vec) {
    if (vec.size() != static_cast<size_t>(p.generators))
        throw input_error("class vector length must equal generator count");
    return reduce_coords(quotient_coords(p), vec);
}

bool classes_equal(const RelationPresentation& p, const std::vector<Int>& x,
                   const std::vector<Int>& y) {
    return canonical_coords(p, x) == canonical_coords(p, y);
}

namespace {

struct DecompositionContext {
    QuotientCoords qc;
    std::vector<Int> fiber_coords;      // e_0 * V
    std::vector<std::vector<Int>> gen_coords; // e_i * V for i = 1..r
    std::vector<Int> target;            // cls * V
    std::vector<unsigned long> mult;
};

// Solve target = d*fiber + Σ a_i*gen_i in the quotient for the given a,
// returning the unique admissible d >= 0 if any.
bool solve_d(const DecompositionContext& ctx, const std::vector<unsigned long>& a,
             Int& d_out) {
    size_t n = ctx.target.size();
    std::vector<Int> t = ctx.target;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < n; ++j)
            t[j] -= Int(static_cast<unsigned long>(a[i])) * ctx.gen_coords[i][j];
    }
    // free coordinates pin d exactly
    bool have_d = false;
    Int d = 0;
    for (size_t j = 0; j < n; ++j) {
        bool torsion = j < ctx.qc.diag.size() && ctx.qc.diag[j] > 0;
        if (torsion) continue;
        const Int& f = ctx.fiber_coords[j];
        if (f == 0) {
            if (t[j] != 0) return false;
            continue;
        }
        if (t[j] % f != 0) return false;
        Int cand = t[j] / f;
        if (have_d && cand != d) return false;
        d = cand;
        have_d = true;
    }
    if (!have_d)
        throw engine_error("fiber class has no free coordinate"); // guarded earlier
    if (d < 0) return false;
    // torsion congruences
    for (size_t j = 0; j < ctx.qc.diag.size(); ++j) {
        if (ctx.qc.diag[j] <= 0) continue;
        if (mod_pos(t[j] - d * ctx.fiber_coords[j], ctx.qc.diag[j]) != 0) return false;
    }
    d_out = d;
    return true;
}

DecompositionContext make_context(const RelationPresentation& p,
                                  const std::vector<Int>& multiplicities,
                                  const std::vector<Int>& cls) {
    if (p.generators < 1)
        throw input_error("decomposition presentation needs at least the fiber generator");
    if (multiplicities.size() + 1 != static_cast<size_t>(p.generators))
        throw input_error("need one multiplicity per non-fiber generator");
    if (cls.size() != static_cast<size_t>(p.generators))
        throw input_error("class vector length must equal generator count");

    DecompositionContext ctx;
    ctx.qc = quotient_coords(p);
    size_t n = static_cast<size_t>(p.generators);
    std::vector<Int> e(n, 0);
    e[0] = 1;
    ctx.fiber_coords = vec_mat(e, ctx.qc.v);
    for (size_t i = 1; i < n; ++i) {
        std::fill(e.begin(), e.end(), 0);
        e[i] = 1;
        ctx.gen_coords.push_back(vec_mat(e, ctx.qc.v));
    }
    ctx.target = vec_mat(cls, ctx.qc.v);

    // [F] must have infinite order: some free coordinate nonzero
    bool infinite = false;
    for (size_t j = 0; j < n; ++j) {
        bool torsion = j < ctx.qc.diag.size() && ctx.qc.diag[j] > 0;
        if (!torsion && ctx.fiber_coords[j] != 0) infinite = true;
    }
    if (!infinite)
        throw input_error("degenerate fiber class: [F] has finite order in the presented group");

    for (const auto& m : multiplicities) {
        if (m < 1 || !m.fits_ulong_p())
            throw input_error("multiplicities must be positive machine integers");
        ctx.mult.push_back(m.get_ui());
    }
    return ctx;
}

std::vector<FiberDecomposition> collect(const DecompositionContext& ctx,
                                        unsigned long long lo, unsigned long long hi) {
    std::vector<FiberDecomposition> out;
    std::vector<unsigned long> a(ctx.mult.size());
    for (unsigned long long idx = lo; idx < hi; ++idx) {
        unsigned long long rem = idx;
        for (size_t i = 0; i < a.size(); ++i) {
            a[i] = static_cast<unsigned long>(rem % ctx.mult[i]);
            rem /= ctx.mult[i];
        }
        Int d;
        if (!solve_d(ctx, a, d)) continue;
        FiberDecomposition fd;
        fd.d = d;
        fd.a.assign(a.begin(), a.end());
        out.push_back(std::move(fd));
    }
    return out;
}

unsigned long long grid_size(const DecompositionContext& ctx) {
    unsigned long long total = 1;
    for (unsigned long m : ctx.mult) {
        if (total > (1ull << 62) / std::max(1ul, m))
            throw input_error("decomposition grid too large");
        total *= m;
    }
    return total;
}

} // namespace

std::vector<FiberDecomposition>
enumerate_decompositions_serial(const RelationPresentation& p,
                                const std::vector<Int>& multiplicities,
                                const std::vector<Int>& cls) {
    auto ctx = make_context(p, multiplicities, cls);
    auto out = collect(ctx, 0, grid_size(ctx));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FiberDecomposition>
enumerate_decompositions(const RelationPresentation& p,
                         const std::vector<Int>& multiplicities,
                         const std::vector<Int>& cls) {
    auto ctx = make_context(p, multiplicities, cls);
    unsigned long long total = grid_size(ctx);
    std::vector<FiberDecomposition> out;
#ifdef _OPENMP
    if (total >= 4096) {
        int threads = omp_get_max_threads();
        std::vector<std::vector<FiberDecomposition>> partial(threads);
#pragma omp parallel for schedule(static)
        for (int chunk = 0; chunk < threads; ++chunk) {
            unsigned long long lo = total * chunk / threads;
            unsigned long long hi = total * (chunk + 1) / threads;
            partial[chunk] = collect(ctx, lo, hi);
        }
        for (auto& part : partial)
            out.insert(out.end(), part.begin(), part.end());
    } else
#endif
    {
        out = collect(ctx, 0, total);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<Rat, Rat>> twist_group(const std::vector<Int>& n,
                                             const std::vector<Int>& u,
                                             const std::vector<Int>& v) {
    if (n.size() != u.size() || n.size() != v.size())
        throw input_error("twist data needs equal-length n, u, v");
    Rat sum_u = 0, sum_v = 0;
    Int big_n = 1;
    for (size_t i = 0; i < n.size(); ++i) {
        if (n[i] < 2) throw input_error("fiber multiplicities must be at least 2");
        if (gcd(gcd(n[i], u[i]), v[i]) != 1)
            throw input_error("each fiber needs gcd(n, u, v) = 1");
        sum_u += Rat(u[i], n[i]);
        sum_v += Rat(v[i], n[i]);
        big_n = lcm(big_n, n[i]);
    }
    if (sum_u != 0 || sum_v != 0)
        throw input_error(
            "a logarithmic transform yields a projective surface iff the twist "
            "offsets sum to zero: need sum(u_i/n_i) = 0 and sum(v_i/n_i) = 0");

    std::vector<std::pair<Int, Int>> gens;
    for (size_t i = 0; i < n.size(); ++i)
        gens.push_back({mod_pos(u[i] * (big_n / n[i]), big_n),
                        mod_pos(v[i] * (big_n / n[i]), big_n)});

    std::set<std::pair<Int, Int>> seen{{0, 0}};
    std::vector<std::pair<Int, Int>> frontier{{0, 0}};
    while (!frontier.empty()) {
        auto cur = frontier.back();
        frontier.pop_back();
        for (const auto& g : gens) {
            std::pair<Int, Int> nxt{mod_pos(cur.first + g.first, big_n),
                                    mod_pos(cur.second + g.second, big_n)};
            if (seen.insert(nxt).second) frontier.push_back(nxt);
        }
    }
    std::vector<std::pair<Rat, Rat>> out;
    for (const auto& [a, b] : seen) {
        Rat ra(a, big_n), rb(b, big_n);
        ra.canonicalize();
        rb.canonicalize();
        out.push_back({ra, rb});
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace pinv
