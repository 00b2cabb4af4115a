#include "hecke/linalg.hpp"

#include "hecke/errors.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace hecke {

SparseVec axpy(const Field& F, const SparseVec& y, FqElem c, const SparseVec& x) {
    if (F.is_zero(c) || x.empty()) return y;
    SparseVec out;
    out.reserve(x.size() + y.size());
    auto iy = y.begin();
    auto ix = x.begin();
    while (iy != y.end() || ix != x.end()) {
        if (ix == x.end() || (iy != y.end() && iy->first < ix->first)) {
            out.push_back(*iy++);
        } else if (iy == y.end() || ix->first < iy->first) {
            out.emplace_back(ix->first, F.mul(c, ix->second));
            ++ix;
        } else {
            const FqElem s = F.add(iy->second, F.mul(c, ix->second));
            if (!F.is_zero(s)) out.emplace_back(iy->first, s);
            ++ix;
            ++iy;
        }
    }
    return out;
}

SparseVec scale(const Field& F, FqElem c, const SparseVec& x) {
    if (F.is_zero(c)) return {};
    SparseVec out(x);
    for (auto& e : out) e.second = F.mul(c, e.second);
    return out;
}

SparseVec unit_vector(std::uint32_t index, FqElem one) { return {{index, one}}; }

SparseVec canonicalize(const Field& F, SparseVec v) {
    std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.first < b.first; });
    SparseVec out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!out.empty() && out.back().first == e.first)
            out.back().second = F.add(out.back().second, e.second);
        else
            out.push_back(e);
        if (F.is_zero(out.back().second)) out.pop_back();
    }
    return out;
}

Echelon::Echelon(const Field& F, std::size_t dim)
    : F_(&F), dim_(dim), pivot_row_(dim, -1), scratch_(dim), touched_(dim, 0) {}

std::pair<SparseVec, SparseVec> Echelon::reduce_tagged(const SparseVec& v, const SparseVec& tag, bool use_tag) const {
    const Field& F = *F_;
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
    std::vector<std::uint32_t> all_touched;
    for (const auto& [i, c] : v) {
        if (i >= dim_) throw InvalidParameter("vector coordinate outside echelon dimension");
        scratch_[i] = c;
        touched_[i] = 1;
        heap.push(i);
        all_touched.push_back(i);
    }
    SparseVec t = tag;
    SparseVec residual;
    while (!heap.empty()) {
        const std::uint32_t i = heap.top();
        heap.pop();
        const FqElem c = scratch_[i];
        if (F.is_zero(c)) continue;
        const std::int32_t r = pivot_row_[i];
        if (r < 0) {
            residual.emplace_back(i, c);
            continue;
        }
        const FqElem m = F.neg(c);
        for (const auto& [j, x] : rows_[r]) {
            if (!touched_[j]) {
                touched_[j] = 1;
                scratch_[j] = F.zero();
                heap.push(j);
                all_touched.push_back(j);
            }
            scratch_[j] = F.add(scratch_[j], F.mul(m, x));
        }
        if (use_tag) t = axpy(F, t, m, tags_[r]);
    }
    for (std::uint32_t i : all_touched) {
        touched_[i] = 0;
        scratch_[i] = F.zero();
    }
    return {std::move(residual), std::move(t)};
}

SparseVec Echelon::reduce(const SparseVec& v) const { return reduce_tagged(v, {}, false).first; }

bool Echelon::insert(const SparseVec& v, const SparseVec& tag) {
    auto [res, t] = reduce_tagged(v, tag, !tag.empty());
    if (res.empty()) {
        last_dependency_ = std::move(t);
        return false;
    }
    const FqElem inv_lead = F_->inv(res.front().second);
    res = scale(*F_, inv_lead, res);
    t = scale(*F_, inv_lead, t);
    pivot_row_[res.front().first] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(res));
    tags_.push_back(std::move(t));
    last_dependency_.clear();
    return true;
}

std::vector<std::uint32_t> Echelon::pivots() const {
    std::vector<std::uint32_t> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.front().first);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint32_t> Echelon::non_pivots() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < dim_; ++i)
        if (pivot_row_[i] < 0) out.push_back(i);
    return out;
}

std::size_t rank_of(const Field& F, std::size_t dim, const std::vector<SparseVec>& vectors) {
    Echelon e(F, dim);
    for (const auto& v : vectors) e.insert(v);
    return e.rank();
}

std::vector<SparseVec> kernel_of_columns(const Field& F, std::size_t rows, const std::vector<SparseVec>& columns) {
    Echelon e(F, rows);
    std::vector<SparseVec> kernel;
    for (std::uint32_t j = 0; j < columns.size(); ++j) {
        if (!e.insert(columns[j], unit_vector(j, F.one()))) kernel.push_back(e.last_dependency());
    }
    return kernel;
}

DenseMatrix DenseMatrix::identity(const Field& F, std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F.one();
    return m;
}

DenseMatrix operator_mul(const Field& F, const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) throw InvalidParameter("dense matrix shape mismatch");
    DenseMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const FqElem x = a.at(i, k);
            if (F.is_zero(x)) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) = F.add(c.at(i, j), F.mul(x, b.at(k, j)));
        }
    return c;
}

std::vector<FqElem> apply(const Field& F, const DenseMatrix& a, const std::vector<FqElem>& x) {
    if (a.cols != x.size()) throw InvalidParameter("dense matrix/vector shape mismatch");
    std::vector<FqElem> y(a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) y[i] = F.add(y[i], F.mul(a.at(i, k), x[k]));
    return y;
}

std::size_t dense_rank(const Field& F, const DenseMatrix& a) {
    std::vector<SparseVec> rows;
    for (std::size_t i = 0; i < a.rows; ++i) {
        SparseVec r;
        for (std::size_t j = 0; j < a.cols; ++j)
            if (!F.is_zero(a.at(i, j))) r.emplace_back(static_cast<std::uint32_t>(j), a.at(i, j));
        rows.push_back(std::move(r));
    }
    return rank_of(F, a.cols, rows);
}

std::optional<DenseMatrix> dense_inverse(const Field& F, const DenseMatrix& a) {
    if (a.rows != a.cols) throw InvalidParameter("inverse of a non-square matrix");
    const std::size_t n = a.rows;
    DenseMatrix m = a;
    DenseMatrix inv = DenseMatrix::identity(F, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && F.is_zero(m.at(piv, col))) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m.at(piv, j), m.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        const FqElem s = F.inv(m.at(col, col));
        for (std::size_t j = 0; j < n; ++j) {
            m.at(col, j) = F.mul(s, m.at(col, j));
            inv.at(col, j) = F.mul(s, inv.at(col, j));
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || F.is_zero(m.at(i, col))) continue;
            const FqElem f = F.neg(m.at(i, col));
            for (std::size_t j = 0; j < n; ++j) {
                m.at(i, j) = F.add(m.at(i, j), F.mul(f, m.at(col, j)));
                inv.at(i, j) = F.add(inv.at(i, j), F.mul(f, inv.at(col, j)));
            }
        }
    }
    return inv;
}

SparseVec dense_column(const DenseMatrix& a, std::size_t j, std::uint32_t offset) {
    SparseVec out;
    for (std::size_t i = 0; i < a.rows; ++i)
        if (a.at(i, j).value != 0) out.emplace_back(static_cast<std::uint32_t>(i) + offset, a.at(i, j));
    return out;
}

} // namespace hecke
