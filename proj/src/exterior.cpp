#include "pinv/exterior.hpp"

#include <algorithm>
#include <bit>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pinv {

namespace {

void check_rank(int rank) {
    if (rank < 0 || rank > 64)
        throw engine_error("exterior rank out of range: " + std::to_string(rank));
}

void check_same_rank(const ExtElement& a, const ExtElement& b) {
    if (a.rank() != b.rank())
        throw engine_error("mixed exterior ranks: " + std::to_string(a.rank()) +
                           " vs " + std::to_string(b.rank()));
}

Mono full_mask(int rank) {
    return rank == 64 ? ~Mono(0) : (Mono(1) << rank) - 1;
}

// Exact division of every coefficient by n.
ExtElement divide_exact(const ExtElement& x, const Int& n, const char* what) {
    ExtElement out(x.rank());
    for (const auto& [m, c] : x.terms()) out.add_term(m, div_exact(c, n, what));
    return out;
}

} // namespace

int merge_sign(Mono a, Mono b) {
    // parity of pairs (i in a, j in b) with i > j
    int parity = 0;
    for (Mono m = b; m; m &= m - 1) {
        int j = std::countr_zero(m);
        parity ^= std::popcount(a >> (j + 1)) & 1;
    }
    return parity ? -1 : 1;
}

ExtElement::ExtElement(int rank) : rank_(rank) { check_rank(rank); }

ExtElement ExtElement::scalar(int rank, Int value) {
    ExtElement x(rank);
    x.add_term(0, value);
    return x;
}

ExtElement ExtElement::monomial(int rank, const std::vector<int>& indices, Int coeff) {
    ExtElement x(rank);
    Mono m = 0;
    int prev = 0;
    for (int i : indices) {
        if (i <= prev || i > rank)
            throw engine_error("monomial indices must be ascending in [1, rank]");
        m |= Mono(1) << (i - 1);
        prev = i;
    }
    x.add_term(m, coeff);
    return x;
}

Int ExtElement::coeff(Mono m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Int(0) : it->second;
}

void ExtElement::add_term(Mono m, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ExtElement ExtElement::component(int degree) const {
    ExtElement out(rank_);
    for (const auto& [m, c] : terms_)
        if (mono_degree(m) == degree) out.add_term(m, c);
    return out;
}

int ExtElement::top_degree() const {
    int top = -1;
    for (const auto& [m, c] : terms_) top = std::max(top, mono_degree(m));
    return top;
}

ExtElement ExtElement::operator+(const ExtElement& o) const {
    check_same_rank(*this, o);
    ExtElement out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

ExtElement ExtElement::operator-(const ExtElement& o) const {
    check_same_rank(*this, o);
    ExtElement out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
}

ExtElement ExtElement::operator-() const { return scaled(-1); }

ExtElement ExtElement::scaled(const Int& c) const {
    ExtElement out(rank_);
    if (c == 0) return out;
    for (const auto& [m, k] : terms_) out.add_term(m, k * c);
    return out;
}

std::string ExtElement::mono_key(Mono m) {
    std::string key;
    for (int i = 0; i < 64; ++i)
        if (m >> i & 1) {
            if (!key.empty()) key += '.';
            key += std::to_string(i + 1);
        }
    return key;
}

SkewForm::SkewForm(int q, const std::vector<std::vector<Int>>& entries) : q_(q), a_(entries) {
    if (q <= 0 || q > 32) throw input_error("skew form needs 0 < q <= 32");
    size_t n = static_cast<size_t>(2 * q);
    if (a_.size() != n) throw input_error("skew form must be 2q x 2q");
    for (size_t i = 0; i < n; ++i) {
        if (a_[i].size() != n) throw input_error("skew form must be 2q x 2q");
        for (size_t j = 0; j < n; ++j)
            if (a_[i][j] != -a_[j][i])
                throw input_error("skew form must be antisymmetric");
    }
}

SkewForm SkewForm::standard(int q) {
    std::vector<std::vector<Int>> a(2 * q, std::vector<Int>(2 * q, 0));
    for (int i = 0; i < q; ++i) {
        a[i][q + i] = 1;
        a[q + i][i] = -1;
    }
    return SkewForm(q, a);
}

SkewForm SkewForm::zero(int q) {
    return SkewForm(q, std::vector<std::vector<Int>>(2 * q, std::vector<Int>(2 * q, 0)));
}

ExtElement wedge_serial(const ExtElement& a, const ExtElement& b) {
    check_same_rank(a, b);
    ExtElement out(a.rank());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            if (ma & mb) continue;
            out.add_term(ma | mb, merge_sign(ma, mb) * ca * cb);
        }
    return out;
}

ExtElement wedge(const ExtElement& a, const ExtElement& b) {
#ifdef _OPENMP
    const size_t work = a.terms().size() * b.terms().size();
    if (work >= size_t(1) << 14) {
        check_same_rank(a, b);
        std::vector<const std::pair<const Mono, Int>*> left;
        left.reserve(a.terms().size());
        for (const auto& t : a.terms()) left.push_back(&t);
        int threads = omp_get_max_threads();
        std::vector<std::map<Mono, Int>> partial(threads);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(left.size()); ++i) {
            auto& local = partial[omp_get_thread_num()];
            const Mono ma = left[i]->first;
            const Int& ca = left[i]->second;
            for (const auto& [mb, cb] : b.terms()) {
                if (ma & mb) continue;
                Int& slot = local[ma | mb];
                if (merge_sign(ma, mb) > 0)
                    slot += ca * cb;
                else
                    slot -= ca * cb;
            }
        }
        // integer addition commutes, so any merge order gives the same sums
        ExtElement out(a.rank());
        for (const auto& part : partial)
            for (const auto& [m, c] : part) out.add_term(m, c);
        return out;
    }
#endif
    return wedge_serial(a, b);
}

ExtElement two_form(const SkewForm& f) {
    ExtElement out(f.size());
    for (int i = 0; i < f.size(); ++i)
        for (int j = i + 1; j < f.size(); ++j)
            if (f.at(i, j) != 0)
                out.add_term((Mono(1) << i) | (Mono(1) << j), f.at(i, j));
    return out;
}

ExtElement divided_power(const ExtElement& theta, unsigned long n) {
    ExtElement power = ExtElement::scalar(theta.rank(), 1);
    for (unsigned long i = 0; i < n; ++i) power = wedge(power, theta);
    return divide_exact(power, factorial(n), "divided_power");
}

ExtElement exp_two_form(const ExtElement& theta, unsigned long max_n) {
    for (const auto& [m, c] : theta.terms())
        if (mono_degree(m) != 2)
            throw engine_error("exp_two_form expects a pure 2-form");
    ExtElement out(theta.rank());
    ExtElement power = ExtElement::scalar(theta.rank(), 1);
    out = out + power;
    for (unsigned long n = 1; n <= max_n; ++n) {
        power = wedge(power, theta);
        out = out + divide_exact(power, factorial(n), "exp_two_form");
    }
    return out;
}

ExtElement truncate(const ExtElement& x, long max_degree) {
    ExtElement out(x.rank());
    if (max_degree < 0) return out;
    for (const auto& [m, c] : x.terms())
        if (mono_degree(m) <= max_degree) out.add_term(m, c);
    return out;
}

ExtElement cap_fundamental(const ExtElement& x) {
    const int rank = x.rank();
    if (rank % 2 != 0) throw engine_error("cap_fundamental needs even rank");
    const int q = rank / 2;
    const Mono full = full_mask(rank);
    // symplectic orientation of the torus relative to ascending order
    const int orientation = (q * (q - 1) / 2) % 2 ? -1 : 1;
    ExtElement out(rank);
    for (const auto& [m, c] : x.terms()) {
        Mono comp = full & ~m;
        int sign = orientation * merge_sign(m, comp);
        out.add_term(comp, sign * c);
    }
    return out;
}

Int numeric_degree(const ExtElement& x) { return x.coeff(0); }

ExtElement chern_from_character(const ExtElement& character, int dim) {
    if (dim < 0) throw engine_error("chern_from_character needs dim >= 0");
    for (const auto& [m, c] : character.terms())
        if (mono_degree(m) % 2 != 0)
            throw engine_error("chern character has an odd-degree component");
    const int rank = character.rank();
    // Newton's identities on the commuting even subring:
    //   n c_n = Σ_{i=1}^{n} (-1)^{i-1} c_{n-i} p_i,  p_i = i! ch_{2i}
    std::vector<ExtElement> c{ExtElement::scalar(rank, 1)};
    std::vector<ExtElement> p{ExtElement(rank)}; // p[0] unused
    for (int i = 1; i <= dim; ++i)
        p.push_back(character.component(2 * i).scaled(factorial(i)));
    ExtElement total = c[0];
    for (int n = 1; n <= dim; ++n) {
        ExtElement acc(rank);
        for (int i = 1; i <= n; ++i) {
            ExtElement term = wedge(c[n - i], p[i]);
            acc = (i % 2) ? acc + term : acc - term;
        }
        c.push_back(divide_exact(acc, n, "chern_from_character"));
        total = total + c[n];
    }
    return truncate(total, 2 * dim);
}

} // namespace pinv
