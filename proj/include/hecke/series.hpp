#pragma once

#include "hecke/field.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace hecke {

/// Element of F_q((t)) known either exactly or up to O(t^A).
///
/// Exact values are Laurent polynomials (zero included); they come from
/// group-theoretic constructions (u(x), alpha_0, representatives) and keep
/// every cancellation provable. Truncated values carry an absolute precision
/// A: coefficients below A are known, everything from A on is unknown.
/// A truncated value whose known window is entirely zero is only known to
/// lie in t^A O; it is kept (so entry-wise bounds such as "h has entries in
/// O" remain checkable) but valuation queries on it raise
/// InsufficientPrecision.
class TruncSeries {
public:
    static constexpr std::int64_t kInfinity = std::numeric_limits<std::int32_t>::max();

    /// Exact zero.
    TruncSeries() = default;

    static TruncSeries exact(std::int64_t offset, std::vector<FqElem> coeffs);
    static TruncSeries monomial(FqElem c, std::int64_t e);
    static TruncSeries constant(FqElem c) { return monomial(c, 0); }
    /// Σ coeffs[i] t^(offset+i) + O(t^(offset + coeffs.size())).
    static TruncSeries truncated(std::int64_t offset, std::vector<FqElem> coeffs);

    bool is_exact() const noexcept { return exact_; }
    bool is_exact_zero() const noexcept { return exact_ && coeffs_.empty(); }
    /// Truncated with no known nonzero coefficient.
    bool is_indeterminate() const noexcept { return !exact_ && coeffs_.empty(); }

    /// Valuation; kInfinity for exact zero. Throws InsufficientPrecision when indeterminate.
    std::int64_t val() const;
    /// Lower bound for the valuation that never throws.
    std::int64_t val_lower_bound() const noexcept;
    /// kInfinity for exact values.
    std::int64_t abs_prec() const noexcept;
    /// Throws InsufficientPrecision when k >= abs_prec().
    FqElem coeff(std::int64_t k) const;

    std::int64_t offset() const noexcept { return offset_; }
    const std::vector<FqElem>& coeffs() const noexcept { return coeffs_; }

    /// "t^e * (c0 + c1*t + ...)" with an "+ O(t^A)" suffix for truncated values.
    std::string to_string() const;

    friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

private:
    void normalize();

    bool exact_ = true;
    std::int64_t offset_ = 0;
    std::vector<FqElem> coeffs_;
};

/// Arithmetic on TruncSeries over a fixed field. The relative precision is
/// only consulted when inverting an exact value that is not a monomial.
class SeriesRing {
public:
    SeriesRing(const Field& F, std::int64_t rel_prec);

    const Field& field() const noexcept { return *F_; }
    std::int64_t precision() const noexcept { return prec_; }

    TruncSeries zero() const { return {}; }
    TruncSeries one() const { return TruncSeries::constant(F_->one()); }
    TruncSeries t_pow(std::int64_t e) const { return TruncSeries::monomial(F_->one(), e); }

    TruncSeries add(const TruncSeries& a, const TruncSeries& b) const;
    TruncSeries sub(const TruncSeries& a, const TruncSeries& b) const;
    TruncSeries neg(const TruncSeries& a) const;
    TruncSeries mul(const TruncSeries& a, const TruncSeries& b) const;
    TruncSeries scale(FqElem c, const TruncSeries& a) const;
    /// Throws DivisionByZero on exact zero, InsufficientPrecision when indeterminate.
    TruncSeries inv(const TruncSeries& a) const;
    TruncSeries div(const TruncSeries& a, const TruncSeries& b) const { return mul(a, inv(b)); }

    /// Σ lambda_j t^j, exact.
    TruncSeries teichmuller_sum(const std::vector<FqElem>& lambda) const;

    /// True when a - b is exactly zero or indeterminate, i.e. a and b agree
    /// on every coefficient known for both.
    bool agree(const TruncSeries& a, const TruncSeries& b) const;

private:
    const Field* F_;
    std::int64_t prec_;
};

} // namespace hecke
