#pragma once

#include "hecke/field.hpp"
#include "hecke/series.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace hecke {

struct SL2q {
    FqElem a, b, c, d;

    friend bool operator==(const SL2q&, const SL2q&) = default;
};

SL2q sl2q_identity(const Field& F);
SL2q sl2q_mul(const Field& F, const SL2q& x, const SL2q& y);
SL2q sl2q_inv(const Field& F, const SL2q& x);
bool sl2q_det_one(const Field& F, const SL2q& x);
SL2q sl2q_upper(const Field& F, FqElem x);
SL2q sl2q_lower(const Field& F, FqElem y);
/// [[0,1],[-1,l]], the reduction mod t of [[0,1],[-1,A(lambda)]].
SL2q sl2q_m_lambda(const Field& F, FqElem l);

/// The two sign conventions for the Weyl element.
enum class W0Choice { Standard, Alternative };

/// Standard: [[0,-1],[1,0]]; Alternative: [[0,1],[-1,0]].
SL2q w0_matrix(const Field& F, W0Choice choice);
std::string to_string(W0Choice choice);

struct SL2Mat {
    TruncSeries a, b, c, d;

    friend bool operator==(const SL2Mat&, const SL2Mat&) = default;
};

enum class CosetForm { Plus, Minus };

/// Canonical label of a coset g K_0.
///
/// Plus(n, x) has representative u(x) alpha_0^-n with x a polynomial of
/// degree < 2n; Minus(n, y) has representative ubar(y) alpha_0^n with y of
/// degree < 2n and y(0) = 0. param always has length 2n.
struct CosetPoint {
    CosetForm form = CosetForm::Plus;
    int n = 0;
    std::vector<FqElem> param;

    friend bool operator==(const CosetPoint&, const CosetPoint&) = default;
};

/// Number of points in shell n: 1 for n = 0, (q+1) q^(2n-1) otherwise.
std::uint64_t shell_size(std::uint32_t q, int n);
/// Number of points in shells 0..n-1.
std::uint64_t shell_offset(std::uint32_t q, int n);
/// Position inside the shell: Plus points first, ordered by Σ x_i q^i,
/// then Minus points ordered by Σ_{i>=1} y_i q^(i-1).
std::uint64_t in_shell_index(std::uint32_t q, const CosetPoint& P);
/// Position in the concatenation of shells 0, 1, 2, ...
inline std::uint64_t global_index(std::uint32_t q, const CosetPoint& P) {
    return shell_offset(q, P.n) + in_shell_index(q, P);
}
CosetPoint point_at(std::uint32_t q, int n, std::uint64_t index);
CosetPoint point_at_global(std::uint32_t q, std::uint64_t index);

/// Orders points by global index.
struct PointLess {
    std::uint32_t q;
    bool operator()(const CosetPoint& x, const CosetPoint& y) const {
        return global_index(q, x) < global_index(q, y);
    }
};

std::string to_string(const CosetPoint& P);

struct CosetReduction {
    CosetPoint point;
    SL2q kbar;
};

/// Matrix group operations over a SeriesRing.
class SL2Ops {
public:
    explicit SL2Ops(const SeriesRing& R) : R_(&R) {}

    const SeriesRing& ring() const noexcept { return *R_; }
    const Field& field() const noexcept { return R_->field(); }

    SL2Mat identity() const;
    SL2Mat mul(const SL2Mat& x, const SL2Mat& y) const;
    /// Adjugate; valid because det = 1.
    SL2Mat inv(const SL2Mat& x) const;
    TruncSeries det(const SL2Mat& x) const;
    /// det agrees with 1 to available precision.
    bool det_is_one(const SL2Mat& x) const;

    SL2Mat upper(const TruncSeries& x) const;
    SL2Mat lower(const TruncSeries& y) const;
    /// alpha_0^k = diag(t^-k, t^k).
    SL2Mat alpha0_pow(std::int64_t k) const;
    SL2Mat diag(const TruncSeries& a) const;
    SL2Mat lift(const SL2q& k) const;

    SL2Mat rep(const CosetPoint& P) const;

    /// Throws InsufficientPrecision when a valuation is not determined.
    int cartan_level(const SL2Mat& g) const;
    /// g = rep(P) h with h in K_0 and h = kbar mod t. The decomposition is
    /// self-checked; a failing check throws CheckFailed.
    CosetReduction reduce_coset(const SL2Mat& g) const;
    /// All entries of g in O and det g = 1 to available precision.
    bool in_K0(const SL2Mat& g) const;

    std::vector<CosetPoint> enumerate_shell(int n) const;

private:
    const SeriesRing* R_;
};

} // namespace hecke
