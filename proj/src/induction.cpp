#include "hecke/induction.hpp"

#include "hecke/errors.hpp"
#include "hecke/parallel.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace hecke {

namespace {

std::vector<FqElem> digits_of(std::uint64_t index, std::uint32_t q, std::size_t len) {
    std::vector<FqElem> out(len);
    for (auto& x : out) {
        x.value = static_cast<std::uint32_t>(index % q);
        index /= q;
    }
    return out;
}

std::uint64_t power(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

InducedSpace::InducedSpace(const WeightShape& S, std::int64_t precision, W0Choice w0)
    : S_(&S),
      ring_(std::make_unique<SeriesRing>(S.field(), precision)),
      ops_(*ring_),
      w0_(w0),
      w0_mat_(w0_matrix(S.field(), w0)) {}

std::uint64_t InducedSpace::dim_C(int n) const { return shell_size(field().q(), n) * S_->dim(); }

std::uint64_t InducedSpace::dim_B(int N) const { return shell_offset(field().q(), N + 1) * S_->dim(); }

void InducedSpace::accumulate(InducedFn& f, std::uint64_t point, const WeightVec& v, FqElem c) const {
    const Field& F = field();
    if (F.is_zero(c) || is_zero(v)) return;
    auto [it, inserted] = f.entries.try_emplace(point, WeightVec(S_->dim()));
    WeightVec& w = it->second;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = F.add(w[i], F.mul(c, v[i]));
    if (is_zero(w)) f.entries.erase(it);
}

InducedFn InducedSpace::std_fn(const SL2Mat& g, const WeightVec& v) const {
    const CosetReduction red = ops_.reduce_coset(g);
    InducedFn f;
    accumulate(f, index(red.point), act(*S_, red.kbar, v), field().one());
    return f;
}

InducedFn InducedSpace::act_g(const SL2Mat& g, const InducedFn& f) const {
    InducedFn out;
    for (const auto& [idx, v] : f.entries) {
        const CosetReduction red = ops_.reduce_coset(ops_.mul(g, ops_.rep(point(idx))));
        accumulate(out, index(red.point), act(*S_, red.kbar, v), field().one());
    }
    return out;
}

std::vector<TauTerm> InducedSpace::tau_terms(const CosetPoint& P) const {
    const Field& F = field();
    const SL2Mat R = ops_.rep(P);
    const WeightVec Y = basis_vector(*S_, S_->y_top());
    const WeightVec w0Y = act(*S_, w0_mat_, Y);
    std::vector<TauTerm> terms;
    const auto elems = F.elements();
    terms.reserve(elems.size() * elems.size() + elems.size());

    const SL2Mat right_upper_tail = ops_.alpha0_pow(-1);
    for (FqElem l0 : elems) {
        const DenseMatrix M = S_->matrix(sl2q_m_lambda(F, l0));
        WeightVec row(S_->dim());
        for (std::size_t j = 0; j < S_->dim(); ++j) row[j] = M.at(S_->y_top(), j);
        for (FqElem l1 : elems) {
            const SL2Mat g =
                ops_.mul(ops_.mul(R, ops_.upper(ring_->teichmuller_sum({l0, l1}))), right_upper_tail);
            const CosetReduction red = ops_.reduce_coset(g);
            TauTerm t;
            t.point = red.point;
            t.point_index = index(red.point);
            t.upper = true;
            t.kbar = red.kbar;
            t.functional = row;
            t.value = act(*S_, red.kbar, w0Y);
            terms.push_back(std::move(t));
        }
    }
    const SL2Mat right_lower_tail = ops_.alpha0_pow(1);
    for (FqElem mu : elems) {
        const SL2Mat g = ops_.mul(ops_.mul(R, ops_.lower(TruncSeries::monomial(mu, 1))), right_lower_tail);
        const CosetReduction red = ops_.reduce_coset(g);
        TauTerm t;
        t.point = red.point;
        t.point_index = index(red.point);
        t.upper = false;
        t.kbar = red.kbar;
        t.functional = basis_vector(*S_, S_->y_top());
        t.value = act(*S_, red.kbar, Y);
        terms.push_back(std::move(t));
    }
    return terms;
}

InducedFn InducedSpace::tau_apply(const InducedFn& f, std::uint64_t shuffle_seed) const {
    const Field& F = field();
    struct Contribution {
        std::uint64_t point;
        const WeightVec* value;
        FqElem coeff;
    };
    std::vector<std::vector<TauTerm>> all_terms;
    all_terms.reserve(f.entries.size());
    std::vector<Contribution> contributions;
    for (const auto& [idx, v] : f.entries) {
        all_terms.push_back(tau_terms(point(idx)));
        for (const TauTerm& t : all_terms.back()) {
            FqElem c = F.zero();
            for (std::size_t j = 0; j < v.size(); ++j) c = F.add(c, F.mul(t.functional[j], v[j]));
            contributions.push_back({t.point_index, &t.value, c});
        }
    }
    if (shuffle_seed != 0) {
        std::mt19937_64 rng(shuffle_seed);
        std::shuffle(contributions.begin(), contributions.end(), rng);
    }
    InducedFn out;
    for (const auto& c : contributions) accumulate(out, c.point, *c.value, c.coeff);
    return out;
}

InducedFn InducedSpace::f_n(int n) const {
    const Field& F = field();
    const std::uint32_t q = F.q();
    InducedFn out;
    const WeightVec X = basis_vector(*S_, S_->x_top());
    if (n <= 0) {
        const int m = -n;
        const std::uint64_t count = power(q, 2 * m);
        for (std::uint64_t i = 0; i < count; ++i) {
            const auto x = digits_of(i, q, static_cast<std::size_t>(2 * m));
            const SL2Mat g = ops_.mul(ops_.upper(TruncSeries::exact(0, x)), ops_.alpha0_pow(n));
            for (const auto& [idx, v] : std_fn(g, X).entries) accumulate(out, idx, v, F.one());
        }
    } else {
        const WeightVec w0X = act(*S_, w0_mat_, X);
        const std::uint64_t count = power(q, 2 * n - 1);
        for (std::uint64_t i = 0; i < count; ++i) {
            const auto y = digits_of(i, q, static_cast<std::size_t>(2 * n - 1));
            const SL2Mat g = ops_.mul(ops_.lower(TruncSeries::exact(1, y)), ops_.alpha0_pow(n));
            for (const auto& [idx, v] : std_fn(g, w0X).entries) accumulate(out, idx, v, F.one());
        }
    }
    return out;
}

int InducedSpace::top(const InducedFn& f) const {
    if (f.entries.empty()) return -1;
    return point(f.entries.rbegin()->first).n;
}

InducedFn InducedSpace::project(const InducedFn& f, int n) const {
    const std::uint32_t q = field().q();
    const std::uint64_t lo = shell_offset(q, n);
    const std::uint64_t hi = lo + shell_size(q, n);
    InducedFn out;
    for (auto it = f.entries.lower_bound(lo); it != f.entries.end() && it->first < hi; ++it) out.entries.insert(*it);
    return out;
}

SparseVec InducedSpace::coords(const InducedFn& f, int N) const {
    const int t = top(f);
    if (t > N)
        throw TopExceedsLevel("function has top " + std::to_string(t) + " above level " + std::to_string(N));
    const std::uint64_t dim = S_->dim();
    SparseVec out;
    for (const auto& [idx, v] : f.entries) {
        const std::uint64_t base = idx * dim;
        if (base + dim > 0xffffffffULL) throw InvalidParameter("coordinate space exceeds 32-bit indexing");
        for (std::size_t b = 0; b < dim; ++b)
            if (v[b].value != 0) out.emplace_back(static_cast<std::uint32_t>(base + b), v[b]);
    }
    return out;
}

InducedFn InducedSpace::from_coords(const SparseVec& v) const {
    const std::uint64_t dim = S_->dim();
    InducedFn out;
    for (const auto& [i, c] : v) {
        auto [it, inserted] = out.entries.try_emplace(i / dim, WeightVec(dim));
        it->second[i % dim] = field().add(it->second[i % dim], c);
    }
    for (auto it = out.entries.begin(); it != out.entries.end();) {
        if (is_zero(it->second))
            it = out.entries.erase(it);
        else
            ++it;
    }
    return out;
}

TauMatrix InducedSpace::tau_matrix(int N) const {
    const std::uint32_t q = field().q();
    const std::size_t dim = S_->dim();
    const std::uint64_t points = shell_offset(q, N + 1);
    TauMatrix T;
    T.levels = N;
    if (dim_B(N + 1) > 0xffffffffULL) throw InvalidParameter("coordinate space exceeds 32-bit indexing");
    T.source_dim = static_cast<std::uint32_t>(dim_B(N));
    T.target_dim = static_cast<std::uint32_t>(dim_B(N + 1));
    T.columns.resize(T.source_dim);
    const Field& F = field();
    parallel_for(points, [&](std::size_t pi) {
        const auto terms = tau_terms(point(pi));
        for (std::size_t b = 0; b < dim; ++b) {
            SparseVec col;
            for (const TauTerm& t : terms) {
                const FqElem c = t.functional[b];
                if (F.is_zero(c)) continue;
                for (std::size_t i = 0; i < dim; ++i)
                    if (t.value[i].value != 0)
                        col.emplace_back(static_cast<std::uint32_t>(t.point_index * dim + i), F.mul(c, t.value[i]));
            }
            T.columns[pi * dim + b] = canonicalize(F, std::move(col));
        }
    });
    return T;
}

std::vector<SL2Mat> InducedSpace::i1_generators(int level) const {
    const Field& F = field();
    std::vector<SL2Mat> gens;
    for (int i = 0; i < level; ++i)
        for (FqElem c : F.elements()) {
            if (F.is_zero(c)) continue;
            gens.push_back(ops_.upper(TruncSeries::monomial(c, i)));
            gens.push_back(ops_.lower(TruncSeries::monomial(c, i + 1)));
            gens.push_back(ops_.diag(ring_->add(ring_->one(), TruncSeries::monomial(c, i + 1))));
        }
    return gens;
}

bool InducedSpace::i1_invariant(const InducedFn& f, int level) const {
    if (level < 2 * (top(f) + 1))
        throw InvalidParameter("invariance level " + std::to_string(level) + " below 2(top+1)");
    for (const SL2Mat& g : i1_generators(level))
        if (act_g(g, f) != f) return false;
    return true;
}

std::vector<SparseVec> InducedSpace::i1_invariants_of_shell(int n) const {
    const Field& F = field();
    const std::size_t dim = S_->dim();
    const std::uint64_t first = shell_offset(field().q(), n);
    const std::uint64_t count = shell_size(field().q(), n);
    const auto gens = i1_generators(2 * (n + 1));
    const std::uint64_t block = dim_B(n);
    std::vector<SparseVec> columns(count * dim);
    parallel_for(count, [&](std::size_t k) {
        for (std::size_t b = 0; b < dim; ++b) {
            InducedFn e;
            e.entries[first + k] = basis_vector(*S_, b);
            const SparseVec self = coords(e, n);
            SparseVec col;
            for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                const SparseVec img = axpy(F, coords(act_g(gens[gi], e), n), F.neg(F.one()), self);
                for (const auto& [i, c] : img) col.emplace_back(static_cast<std::uint32_t>(gi * block + i), c);
            }
            columns[k * dim + b] = std::move(col);
        }
    });
    std::vector<SparseVec> out;
    const auto offset = static_cast<std::uint32_t>(first * dim);
    for (SparseVec v : kernel_of_columns(F, gens.size() * block, columns)) {
        for (auto& e : v) e.first += offset;
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace hecke
