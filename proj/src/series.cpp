#include "hecke/series.hpp"

#include "hecke/errors.hpp"

#include <algorithm>

namespace hecke {

namespace {

// Stored coefficient of t^k, zero outside the stored window. Callers are
// responsible for staying below the absolute precision.
FqElem raw(const TruncSeries& s, std::int64_t k) {
    const std::int64_t i = k - s.offset();
    if (i < 0 || i >= static_cast<std::int64_t>(s.coeffs().size())) return {0};
    return s.coeffs()[static_cast<std::size_t>(i)];
}

std::int64_t add_inf(std::int64_t a, std::int64_t b) {
    if (a >= TruncSeries::kInfinity || b >= TruncSeries::kInfinity) return TruncSeries::kInfinity;
    return a + b;
}

} // namespace

TruncSeries TruncSeries::exact(std::int64_t offset, std::vector<FqElem> coeffs) {
    TruncSeries s;
    s.exact_ = true;
    s.offset_ = offset;
    s.coeffs_ = std::move(coeffs);
    s.normalize();
    return s;
}

TruncSeries TruncSeries::monomial(FqElem c, std::int64_t e) { return exact(e, {c}); }

TruncSeries TruncSeries::truncated(std::int64_t offset, std::vector<FqElem> coeffs) {
    TruncSeries s;
    s.exact_ = false;
    s.offset_ = offset;
    s.coeffs_ = std::move(coeffs);
    s.normalize();
    return s;
}

void TruncSeries::normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].value == 0) ++lead;
    offset_ += static_cast<std::int64_t>(lead);
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    if (exact_) {
        while (!coeffs_.empty() && coeffs_.back().value == 0) coeffs_.pop_back();
        if (coeffs_.empty()) offset_ = 0;
    }
}

std::int64_t TruncSeries::val() const {
    if (is_exact_zero()) return kInfinity;
    if (is_indeterminate())
        throw InsufficientPrecision("valuation of O(t^" + std::to_string(offset_) + ") is not determined");
    return offset_;
}

std::int64_t TruncSeries::val_lower_bound() const noexcept {
    if (is_exact_zero()) return kInfinity;
    return offset_;
}

std::int64_t TruncSeries::abs_prec() const noexcept {
    if (exact_) return kInfinity;
    return offset_ + static_cast<std::int64_t>(coeffs_.size());
}

FqElem TruncSeries::coeff(std::int64_t k) const {
    if (k >= abs_prec())
        throw InsufficientPrecision("coefficient of t^" + std::to_string(k) + " beyond precision " +
                                    std::to_string(abs_prec()));
    return raw(*this, k);
}

std::string TruncSeries::to_string() const {
    std::string body;
    if (!coeffs_.empty()) {
        body = "t^" + std::to_string(offset_) + " * (";
        bool first = true;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].value == 0) continue;
            if (!first) body += " + ";
            first = false;
            body += std::to_string(coeffs_[i].value);
            if (i == 1) body += "*t";
            if (i > 1) body += "*t^" + std::to_string(i);
        }
        body += ")";
    }
    if (exact_) return body.empty() ? "0" : body;
    const std::string tail = "O(t^" + std::to_string(abs_prec()) + ")";
    return body.empty() ? tail : body + " + " + tail;
}

SeriesRing::SeriesRing(const Field& F, std::int64_t rel_prec) : F_(&F), prec_(rel_prec) {
    if (rel_prec < 1) throw InvalidParameter("series precision must be positive");
}

TruncSeries SeriesRing::add(const TruncSeries& a, const TruncSeries& b) const {
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    const std::int64_t lo = std::min(a.val_lower_bound(), b.val_lower_bound());
    const std::int64_t A = std::min(a.abs_prec(), b.abs_prec());
    if (a.is_exact() && b.is_exact()) {
        const std::int64_t hi = std::max(a.offset() + static_cast<std::int64_t>(a.coeffs().size()),
                                         b.offset() + static_cast<std::int64_t>(b.coeffs().size()));
        std::vector<FqElem> c(static_cast<std::size_t>(hi - lo));
        for (std::int64_t k = lo; k < hi; ++k) c[static_cast<std::size_t>(k - lo)] = F_->add(raw(a, k), raw(b, k));
        return TruncSeries::exact(lo, std::move(c));
    }
    if (lo >= A) return TruncSeries::truncated(A, {});
    std::vector<FqElem> c(static_cast<std::size_t>(A - lo));
    for (std::int64_t k = lo; k < A; ++k) c[static_cast<std::size_t>(k - lo)] = F_->add(raw(a, k), raw(b, k));
    return TruncSeries::truncated(lo, std::move(c));
}

TruncSeries SeriesRing::neg(const TruncSeries& a) const {
    std::vector<FqElem> c(a.coeffs());
    for (auto& x : c) x = F_->neg(x);
    return a.is_exact() ? TruncSeries::exact(a.offset(), std::move(c)) : TruncSeries::truncated(a.offset(), std::move(c));
}

TruncSeries SeriesRing::sub(const TruncSeries& a, const TruncSeries& b) const { return add(a, neg(b)); }

TruncSeries SeriesRing::scale(FqElem c, const TruncSeries& a) const {
    if (a.is_exact() && F_->is_zero(c)) return {};
    std::vector<FqElem> out(a.coeffs());
    for (auto& x : out) x = F_->mul(c, x);
    if (a.is_exact()) return TruncSeries::exact(a.offset(), std::move(out));
    // c = 0 keeps the absolute precision of a
    if (F_->is_zero(c)) return TruncSeries::truncated(a.abs_prec(), {});
    return TruncSeries::truncated(a.offset(), std::move(out));
}

TruncSeries SeriesRing::mul(const TruncSeries& a, const TruncSeries& b) const {
    if (a.is_exact_zero() || b.is_exact_zero()) return {};
    const std::int64_t lo = a.val_lower_bound() + b.val_lower_bound();
    if (a.is_exact() && b.is_exact()) {
        const auto& x = a.coeffs();
        const auto& y = b.coeffs();
        std::vector<FqElem> c(x.size() + y.size() - 1);
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j) c[i + j] = F_->add(c[i + j], F_->mul(x[i], y[j]));
        return TruncSeries::exact(lo, std::move(c));
    }
    const std::int64_t A =
        std::min(add_inf(a.val_lower_bound(), b.abs_prec()), add_inf(b.val_lower_bound(), a.abs_prec()));
    if (lo >= A) return TruncSeries::truncated(A, {});
    std::vector<FqElem> c(static_cast<std::size_t>(A - lo));
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].value == 0) continue;
        for (std::size_t j = 0; j < y.size() && i + j < c.size(); ++j)
            c[i + j] = F_->add(c[i + j], F_->mul(x[i], y[j]));
    }
    return TruncSeries::truncated(lo, std::move(c));
}

TruncSeries SeriesRing::inv(const TruncSeries& a) const {
    if (a.is_exact_zero()) throw DivisionByZero("inverse of the zero series");
    if (a.is_indeterminate())
        throw InsufficientPrecision("inverse of O(t^" + std::to_string(a.offset()) + ") is not determined");
    const auto& c = a.coeffs();
    if (a.is_exact() && c.size() == 1) return TruncSeries::monomial(F_->inv(c[0]), -a.offset());
    const std::size_t L = a.is_exact() ? static_cast<std::size_t>(prec_) : c.size();
    std::vector<FqElem> b(L);
    const FqElem b0 = F_->inv(c[0]);
    b[0] = b0;
    for (std::size_t k = 1; k < L; ++k) {
        FqElem s = F_->zero();
        for (std::size_t i = 1; i <= k && i < c.size(); ++i) s = F_->add(s, F_->mul(c[i], b[k - i]));
        b[k] = F_->neg(F_->mul(b0, s));
    }
    return TruncSeries::truncated(-a.offset(), std::move(b));
}

TruncSeries SeriesRing::teichmuller_sum(const std::vector<FqElem>& lambda) const {
    return TruncSeries::exact(0, lambda);
}

bool SeriesRing::agree(const TruncSeries& a, const TruncSeries& b) const {
    const TruncSeries d = sub(a, b);
    return d.is_exact_zero() || d.is_indeterminate();
}

} // namespace hecke
