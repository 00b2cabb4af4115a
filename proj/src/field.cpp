#include "hecke/field.hpp"

#include "hecke/errors.hpp"

#include <string>

namespace hecke {

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of a modulo a monic b, coefficients in F_p.
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db && !a.empty()) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            const std::uint32_t sub = static_cast<std::uint32_t>((std::uint64_t{lead} * b[i]) % p);
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        trim(a);
    }
    return a;
}

Poly digits(std::uint32_t v, std::uint32_t p, std::uint32_t n) {
    Poly out(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        out[i] = v % p;
        v /= p;
    }
    return out;
}

std::uint32_t undigits(const Poly& d, std::uint32_t p) {
    std::uint32_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

} // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& monic, std::uint32_t p) {
    const std::size_t deg = monic.size() - 1;
    for (std::size_t k = 1; k <= deg / 2; ++k) {
        // all monic divisors of degree k: k free coefficients
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < k; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly g = digits(static_cast<std::uint32_t>(idx), p, static_cast<std::uint32_t>(k));
            g.push_back(1);
            if (poly_rem(monic, g, p).empty()) return false;
        }
    }
    return true;
}

Field::Field(std::uint32_t p, std::uint32_t deg) : p_(p), deg_(deg) {
    if (!is_prime(p)) throw InvalidParameter("p = " + std::to_string(p) + " is not prime");
    if (deg < 1) throw InvalidParameter("field degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < deg; ++i) {
        q *= p;
        if (q > kMaxOrder)
            throw InvalidParameter("field order exceeds " + std::to_string(kMaxOrder));
    }
    q_ = static_cast<std::uint32_t>(q);

    // Smallest irreducible monic modulus. The serialized integer of the
    // lower coefficients orders tuples high-digit first, so reverse the
    // digits to compare from the constant term upwards.
    for (std::uint32_t idx = 0; idx < q_; ++idx) {
        Poly low = digits(idx, p_, deg_);
        Poly cand(low.rbegin(), low.rend());
        cand.push_back(1);
        if (is_irreducible_mod_p(cand, p_)) {
            modulus_ = cand;
            break;
        }
    }

    add_.resize(std::size_t{q_} * q_);
    mul_.resize(std::size_t{q_} * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    frob_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
        const Poly da = digits(a, p_, deg_);
        Poly na(deg_);
        for (std::uint32_t i = 0; i < deg_; ++i) na[i] = (p_ - da[i]) % p_;
        neg_[a] = undigits(na, p_);
        for (std::uint32_t b = 0; b < q_; ++b) {
            const Poly db = digits(b, p_, deg_);
            Poly s(deg_);
            for (std::uint32_t i = 0; i < deg_; ++i) s[i] = (da[i] + db[i]) % p_;
            add_[a * q_ + b] = undigits(s, p_);

            Poly prod(2 * deg_, 0);
            for (std::uint32_t i = 0; i < deg_; ++i)
                for (std::uint32_t j = 0; j < deg_; ++j)
                    prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_);
            Poly r = poly_rem(prod, modulus_, p_);
            r.resize(deg_, 0);
            mul_[a * q_ + b] = undigits(r, p_);
        }
    }
    for (std::uint32_t a = 1; a < q_; ++a)
        for (std::uint32_t b = 1; b < q_; ++b)
            if (mul_[a * q_ + b] == 1) {
                inv_[a] = b;
                break;
            }
    for (std::uint32_t a = 0; a < q_; ++a) frob_[a] = pow({a}, p_).value;
}

FqElem Field::from_int(long long n) const noexcept {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint32_t>(r)};
}

FqElem Field::element(std::uint32_t v) const {
    if (v >= q_) throw InvalidParameter("element " + std::to_string(v) + " outside F_" + std::to_string(q_));
    return {v};
}

FqElem Field::from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() > deg_) throw InvalidParameter("too many coefficients for field element");
    Poly d(deg_, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= p_) throw InvalidParameter("field coefficient not reduced mod p");
        d[i] = c[i];
    }
    return {undigits(d, p_)};
}

std::vector<std::uint32_t> Field::coeffs(FqElem a) const { return digits(a.value, p_, deg_); }

FqElem Field::generator() const {
    Poly x{0, 1};
    Poly r = poly_rem(x, modulus_, p_);
    r.resize(deg_, 0);
    return {undigits(r, p_)};
}

std::vector<FqElem> Field::elements() const {
    std::vector<FqElem> out(q_);
    for (std::uint32_t i = 0; i < q_; ++i) out[i] = {i};
    return out;
}

FqElem Field::inv(FqElem a) const {
    if (a.value == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(q_));
    return {inv_[a.value]};
}

FqElem Field::pow(FqElem a, std::uint64_t e) const noexcept {
    FqElem result = one();
    FqElem base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

FqElem Field::frobenius(FqElem a, std::uint32_t j) const noexcept {
    j %= deg_;
    for (std::uint32_t i = 0; i < j; ++i) a = {frob_[a.value]};
    return a;
}

} // namespace hecke
