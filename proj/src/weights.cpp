#include "hecke/weights.hpp"

#include "hecke/errors.hpp"

namespace hecke {

namespace {

// binom(n, k) mod p for n < p by the multiplicative formula in F_p.
std::uint32_t small_binom(std::uint32_t n, std::uint32_t k, std::uint32_t p) {
    if (k > n) return 0;
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    // den is a unit since k < p; invert by Fermat
    std::uint64_t inv = 1;
    std::uint64_t b = den;
    for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1) inv = inv * b % p;
        b = b * b % p;
    }
    return static_cast<std::uint32_t>(num * inv % p);
}

// Matrix of the Frobenius-twisted k on Sym^r, basis X^(r-i) Y^i, i = 0..r.
std::vector<std::vector<FqElem>> sym_matrix(const Field& F, std::uint32_t r, const SL2q& k) {
    // X -> a X + c Y, Y -> b X + d Y; polynomials indexed by the Y exponent
    std::vector<std::vector<FqElem>> m(r + 1, std::vector<FqElem>(r + 1));
    const std::vector<FqElem> x_img{k.a, k.c};
    const std::vector<FqElem> y_img{k.b, k.d};
    auto multiply = [&](const std::vector<FqElem>& f, const std::vector<FqElem>& g) {
        std::vector<FqElem> h(f.size() + g.size() - 1);
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j) h[i + j] = F.add(h[i + j], F.mul(f[i], g[j]));
        return h;
    };
    for (std::uint32_t i = 0; i <= r; ++i) {
        std::vector<FqElem> poly{F.one()};
        for (std::uint32_t e = 0; e < r - i; ++e) poly = multiply(poly, x_img);
        for (std::uint32_t e = 0; e < i; ++e) poly = multiply(poly, y_img);
        for (std::uint32_t l = 0; l <= r; ++l) m[l][i] = poly[l];
    }
    return m;
}

SL2q frobenius(const Field& F, const SL2q& k, std::uint32_t j) {
    return {F.frobenius(k.a, j), F.frobenius(k.b, j), F.frobenius(k.c, j), F.frobenius(k.d, j)};
}

} // namespace

std::uint32_t lucas_binom(std::uint64_t r, std::uint64_t i, std::uint32_t p) {
    if (i > r) return 0;
    std::uint64_t result = 1;
    while (r > 0 || i > 0) {
        const auto rj = static_cast<std::uint32_t>(r % p);
        const auto ij = static_cast<std::uint32_t>(i % p);
        if (ij > rj) return 0;
        result = result * small_binom(rj, ij, p) % p;
        r /= p;
        i /= p;
    }
    return static_cast<std::uint32_t>(result);
}

WeightShape::WeightShape(const Field& F, std::vector<std::uint32_t> r) : F_(&F), r_(std::move(r)), dim_(1) {
    if (r_.size() != F.deg())
        throw InvalidParameter("weight needs " + std::to_string(F.deg()) + " digits, got " + std::to_string(r_.size()));
    for (std::uint32_t rj : r_) {
        if (rj >= F.p()) throw InvalidParameter("weight digit " + std::to_string(rj) + " not below p");
        dim_ *= rj + 1;
    }
}

std::uint32_t WeightShape::degree_sum() const noexcept {
    std::uint32_t s = 0;
    for (std::uint32_t rj : r_) s += rj;
    return s;
}

std::uint64_t WeightShape::embedded_degree() const noexcept {
    std::uint64_t s = 0;
    std::uint64_t w = 1;
    for (std::uint32_t rj : r_) {
        s += rj * w;
        w *= F_->p();
    }
    return s;
}

std::vector<std::uint32_t> WeightShape::tuple(std::size_t index) const {
    std::vector<std::uint32_t> t(r_.size());
    for (std::size_t j = r_.size(); j-- > 0;) {
        t[j] = static_cast<std::uint32_t>(index % (r_[j] + 1));
        index /= r_[j] + 1;
    }
    return t;
}

std::size_t WeightShape::index(const std::vector<std::uint32_t>& t) const {
    if (t.size() != r_.size()) throw InvalidParameter("weight tuple has wrong length");
    std::size_t idx = 0;
    for (std::size_t j = 0; j < r_.size(); ++j) {
        if (t[j] > r_[j]) throw InvalidParameter("weight tuple entry exceeds r");
        idx = idx * (r_[j] + 1) + t[j];
    }
    return idx;
}

std::uint64_t WeightShape::embedded_exponent(std::size_t index) const {
    const auto t = tuple(index);
    std::uint64_t s = 0;
    std::uint64_t w = 1;
    for (std::uint32_t ij : t) {
        s += ij * w;
        w *= F_->p();
    }
    return s;
}

DenseMatrix WeightShape::matrix(const SL2q& k) const {
    const Field& F = *F_;
    std::vector<std::vector<std::vector<FqElem>>> factors;
    factors.reserve(r_.size());
    for (std::uint32_t j = 0; j < r_.size(); ++j) factors.push_back(sym_matrix(F, r_[j], frobenius(F, k, j)));
    DenseMatrix M(dim_, dim_);
    std::vector<std::vector<std::uint32_t>> tuples(dim_);
    for (std::size_t i = 0; i < dim_; ++i) tuples[i] = tuple(i);
    for (std::size_t row = 0; row < dim_; ++row)
        for (std::size_t col = 0; col < dim_; ++col) {
            FqElem e = F.one();
            for (std::size_t j = 0; j < r_.size() && !F.is_zero(e); ++j)
                e = F.mul(e, factors[j][tuples[row][j]][tuples[col][j]]);
            M.at(row, col) = e;
        }
    return M;
}

WeightVec basis_vector(const WeightShape& S, std::size_t index) {
    WeightVec v(S.dim());
    v[index] = S.field().one();
    return v;
}

WeightVec act(const WeightShape& S, const SL2q& k, const WeightVec& v) {
    return apply(S.field(), S.matrix(k), v);
}

WeightVec u_project(const WeightShape& S, const WeightVec& v) {
    WeightVec out(S.dim());
    out[S.y_top()] = v[S.y_top()];
    return out;
}

bool is_zero(const WeightVec& v) {
    for (FqElem x : v)
        if (x.value != 0) return false;
    return true;
}

namespace {

SparseVec to_sparse(const WeightVec& v) {
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i].value != 0) s.emplace_back(static_cast<std::uint32_t>(i), v[i]);
    return s;
}

// Common fixed space of the given group elements, as a list of vectors.
std::vector<WeightVec> fixed_space(const WeightShape& S, const std::vector<SL2q>& gens) {
    const Field& F = S.field();
    const std::size_t n = S.dim();
    // Stack (M_g - 1) for every g; kernel via columns of the stacked matrix.
    std::vector<SparseVec> columns(n);
    std::uint32_t row_offset = 0;
    for (const SL2q& g : gens) {
        DenseMatrix M = S.matrix(g);
        for (std::size_t i = 0; i < n; ++i) M.at(i, i) = F.sub(M.at(i, i), F.one());
        for (std::size_t c = 0; c < n; ++c) {
            const SparseVec col = dense_column(M, c, row_offset);
            columns[c].insert(columns[c].end(), col.begin(), col.end());
        }
        row_offset += static_cast<std::uint32_t>(n);
    }
    std::vector<WeightVec> out;
    for (const SparseVec& k : kernel_of_columns(F, row_offset, columns)) {
        WeightVec v(n);
        for (const auto& [i, x] : k) v[i] = x;
        out.push_back(std::move(v));
    }
    return out;
}

bool is_line_of(const std::vector<WeightVec>& space, std::size_t index) {
    if (space.size() != 1) return false;
    for (std::size_t i = 0; i < space[0].size(); ++i)
        if ((space[0][i].value != 0) != (i == index)) return false;
    return true;
}

} // namespace

StructureReport structure_checks(const WeightShape& S) {
    const Field& F = S.field();
    if (F.q() > 9) throw InvalidParameter("structure checks are limited to q <= 9");
    StructureReport rep;
    rep.dim = S.dim();

    std::vector<SL2q> uppers;
    std::vector<SL2q> lowers;
    for (FqElem a : F.elements()) {
        uppers.push_back(sl2q_upper(F, a));
        lowers.push_back(sl2q_lower(F, a));
    }
    const WeightVec X = basis_vector(S, S.x_top());
    const WeightVec Y = basis_vector(S, S.y_top());

    std::vector<SparseVec> orbit;
    for (const SL2q& g : lowers) orbit.push_back(to_sparse(act(S, g, X)));
    rep.lower_orbit_rank = rank_of(F, S.dim(), orbit);
    orbit.clear();
    for (const SL2q& g : uppers) orbit.push_back(to_sparse(act(S, g, Y)));
    rep.upper_orbit_rank = rank_of(F, S.dim(), orbit);

    const auto ufix = fixed_space(S, uppers);
    const auto lfix = fixed_space(S, lowers);
    rep.upper_fixed_dim = ufix.size();
    rep.lower_fixed_dim = lfix.size();
    rep.upper_fixed_is_x_line = is_line_of(ufix, S.x_top());
    rep.lower_fixed_is_y_line = is_line_of(lfix, S.y_top());

    auto fail = [&](const std::string& why, WeightVec witness) {
        if (!rep.passed) return;
        rep.passed = false;
        rep.failure = why;
        rep.witness = std::move(witness);
    };
    if (rep.lower_orbit_rank != S.dim()) fail("lower unipotent orbit of X^r does not span", X);
    if (!rep.upper_fixed_is_x_line) {
        WeightVec w = X;
        for (const auto& v : ufix)
            if (v != X) w = v;
        fail("upper unipotent fixed space is not the line of X^r", w);
    }
    if (rep.upper_orbit_rank != S.dim()) fail("upper unipotent orbit of Y^r does not span", Y);
    if (!rep.lower_fixed_is_y_line) {
        WeightVec w = Y;
        for (const auto& v : lfix)
            if (v != Y) w = v;
        fail("lower unipotent fixed space is not the line of Y^r", w);
    }
    return rep;
}

} // namespace hecke
