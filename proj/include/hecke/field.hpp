#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace hecke {

/// Element of F_q stored as its serialization Σ coeffs[i]·p^i, i.e. the
/// base-p digits of the value are the coordinates in the power basis of x.
struct FqElem {
    std::uint32_t value = 0;

    friend constexpr bool operator==(FqElem, FqElem) = default;
    friend constexpr auto operator<=>(FqElem, FqElem) = default;
};

/// The residue field F_q = F_p[x]/(f).
///
/// The modulus f is the lexicographically smallest monic irreducible
/// polynomial of the requested degree (coefficients compared from the
/// constant term upwards), so two builds with the same (p, deg) agree
/// exactly. All arithmetic goes through precomputed tables; the context is
/// immutable after construction and can be shared freely between threads.
class Field {
public:
    /// Throws InvalidParameter for non-prime p, deg < 1, or q above kMaxOrder.
    Field(std::uint32_t p, std::uint32_t deg);

    static constexpr std::uint32_t kMaxOrder = 1024;

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t deg() const noexcept { return deg_; }
    std::uint32_t q() const noexcept { return q_; }
    /// deg+1 coefficients, constant term first, leading coefficient 1.
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    FqElem zero() const noexcept { return {0}; }
    FqElem one() const noexcept { return {1}; }
    /// The image of an integer under Z -> F_p -> F_q.
    FqElem from_int(long long n) const noexcept;
    /// Throws InvalidParameter if v >= q.
    FqElem element(std::uint32_t v) const;
    FqElem from_coeffs(const std::vector<std::uint32_t>& coeffs) const;
    std::vector<std::uint32_t> coeffs(FqElem a) const;
    /// The generator x of the power basis (equals from_int(0) when deg = 1 and f = x).
    FqElem generator() const;

    /// All q elements in increasing serialized order.
    std::vector<FqElem> elements() const;

    FqElem add(FqElem a, FqElem b) const noexcept { return {add_[a.value * q_ + b.value]}; }
    FqElem sub(FqElem a, FqElem b) const noexcept { return add(a, neg(b)); }
    FqElem mul(FqElem a, FqElem b) const noexcept { return {mul_[a.value * q_ + b.value]}; }
    FqElem neg(FqElem a) const noexcept { return {neg_[a.value]}; }
    /// Throws DivisionByZero on 0.
    FqElem inv(FqElem a) const;
    FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
    /// a^e for e >= 0 (0^0 = 1).
    FqElem pow(FqElem a, std::uint64_t e) const noexcept;
    /// a^(p^j); periodic in j with period deg.
    FqElem frobenius(FqElem a, std::uint32_t j) const noexcept;

    bool is_zero(FqElem a) const noexcept { return a.value == 0; }

    friend bool operator==(const Field& x, const Field& y) {
        return x.p_ == y.p_ && x.deg_ == y.deg_;
    }

private:
    std::uint32_t p_;
    std::uint32_t deg_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> add_;
    std::vector<std::uint32_t> mul_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::uint32_t> inv_;
    std::vector<std::uint32_t> frob_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& monic, std::uint32_t p);

} // namespace hecke
