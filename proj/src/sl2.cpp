#include "hecke/sl2.hpp"

#include "hecke/errors.hpp"

#include <algorithm>

namespace hecke {

SL2q sl2q_identity(const Field& F) { return {F.one(), F.zero(), F.zero(), F.one()}; }

SL2q sl2q_mul(const Field& F, const SL2q& x, const SL2q& y) {
    return {F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)), F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
            F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)), F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
}

SL2q sl2q_inv(const Field& F, const SL2q& x) { return {x.d, F.neg(x.b), F.neg(x.c), x.a}; }

bool sl2q_det_one(const Field& F, const SL2q& x) {
    return F.sub(F.mul(x.a, x.d), F.mul(x.b, x.c)) == F.one();
}

SL2q sl2q_upper(const Field& F, FqElem x) { return {F.one(), x, F.zero(), F.one()}; }
SL2q sl2q_lower(const Field& F, FqElem y) { return {F.one(), F.zero(), y, F.one()}; }
SL2q sl2q_m_lambda(const Field& F, FqElem l) { return {F.zero(), F.one(), F.neg(F.one()), l}; }

SL2q w0_matrix(const Field& F, W0Choice choice) {
    const FqElem m1 = F.neg(F.one());
    if (choice == W0Choice::Standard) return {F.zero(), m1, F.one(), F.zero()};
    return {F.zero(), F.one(), m1, F.zero()};
}

std::string to_string(W0Choice choice) {
    return choice == W0Choice::Standard ? "[[0,-1],[1,0]]" : "[[0,1],[-1,0]]";
}

std::uint64_t shell_size(std::uint32_t q, int n) {
    if (n == 0) return 1;
    std::uint64_t s = q + 1;
    for (int i = 0; i < 2 * n - 1; ++i) s *= q;
    return s;
}

std::uint64_t shell_offset(std::uint32_t q, int n) {
    std::uint64_t s = 0;
    for (int k = 0; k < n; ++k) s += shell_size(q, k);
    return s;
}

std::uint64_t in_shell_index(std::uint32_t q, const CosetPoint& P) {
    std::uint64_t idx = 0;
    std::uint64_t w = 1;
    if (P.form == CosetForm::Plus) {
        for (const FqElem& x : P.param) {
            idx += x.value * w;
            w *= q;
        }
        return idx;
    }
    std::uint64_t base = 1;
    for (int i = 0; i < 2 * P.n; ++i) base *= q;
    for (std::size_t i = 1; i < P.param.size(); ++i) {
        idx += P.param[i].value * w;
        w *= q;
    }
    return base + idx;
}

CosetPoint point_at(std::uint32_t q, int n, std::uint64_t index) {
    if (index >= shell_size(q, n)) throw InvalidParameter("point index outside shell");
    CosetPoint P;
    P.n = n;
    P.param.assign(static_cast<std::size_t>(2 * n), FqElem{0});
    std::uint64_t plus = 1;
    for (int i = 0; i < 2 * n; ++i) plus *= q;
    if (index < plus) {
        P.form = CosetForm::Plus;
        for (auto& x : P.param) {
            x.value = static_cast<std::uint32_t>(index % q);
            index /= q;
        }
    } else {
        P.form = CosetForm::Minus;
        index -= plus;
        for (std::size_t i = 1; i < P.param.size(); ++i) {
            P.param[i].value = static_cast<std::uint32_t>(index % q);
            index /= q;
        }
    }
    return P;
}

CosetPoint point_at_global(std::uint32_t q, std::uint64_t index) {
    int n = 0;
    while (index >= shell_size(q, n)) {
        index -= shell_size(q, n);
        ++n;
    }
    return point_at(q, n, index);
}

std::string to_string(const CosetPoint& P) {
    std::string s = P.form == CosetForm::Plus ? "Plus(" : "Minus(";
    s += std::to_string(P.n) + ",[";
    for (std::size_t i = 0; i < P.param.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(P.param[i].value);
    }
    return s + "])";
}

SL2Mat SL2Ops::identity() const { return {R_->one(), R_->zero(), R_->zero(), R_->one()}; }

SL2Mat SL2Ops::mul(const SL2Mat& x, const SL2Mat& y) const {
    const SeriesRing& R = *R_;
    return {R.add(R.mul(x.a, y.a), R.mul(x.b, y.c)), R.add(R.mul(x.a, y.b), R.mul(x.b, y.d)),
            R.add(R.mul(x.c, y.a), R.mul(x.d, y.c)), R.add(R.mul(x.c, y.b), R.mul(x.d, y.d))};
}

SL2Mat SL2Ops::inv(const SL2Mat& x) const { return {x.d, R_->neg(x.b), R_->neg(x.c), x.a}; }

TruncSeries SL2Ops::det(const SL2Mat& x) const { return R_->sub(R_->mul(x.a, x.d), R_->mul(x.b, x.c)); }

bool SL2Ops::det_is_one(const SL2Mat& x) const { return R_->agree(det(x), R_->one()); }

SL2Mat SL2Ops::upper(const TruncSeries& x) const { return {R_->one(), x, R_->zero(), R_->one()}; }
SL2Mat SL2Ops::lower(const TruncSeries& y) const { return {R_->one(), R_->zero(), y, R_->one()}; }

SL2Mat SL2Ops::alpha0_pow(std::int64_t k) const { return {R_->t_pow(-k), R_->zero(), R_->zero(), R_->t_pow(k)}; }

SL2Mat SL2Ops::diag(const TruncSeries& a) const { return {a, R_->zero(), R_->zero(), R_->inv(a)}; }

SL2Mat SL2Ops::lift(const SL2q& k) const {
    return {TruncSeries::constant(k.a), TruncSeries::constant(k.b), TruncSeries::constant(k.c),
            TruncSeries::constant(k.d)};
}

SL2Mat SL2Ops::rep(const CosetPoint& P) const {
    const TruncSeries p = TruncSeries::exact(-P.n, P.param);
    if (P.form == CosetForm::Plus) return {R_->t_pow(P.n), p, R_->zero(), R_->t_pow(-P.n)};
    return {R_->t_pow(-P.n), R_->zero(), p, R_->t_pow(P.n)};
}

int SL2Ops::cartan_level(const SL2Mat& g) const {
    const std::int64_t m = std::min({g.a.val(), g.b.val(), g.c.val(), g.d.val()});
    if (m > 0) throw CheckFailed("matrix with all entries in tO cannot have determinant 1");
    return static_cast<int>(-m);
}

bool SL2Ops::in_K0(const SL2Mat& g) const {
    for (const TruncSeries* e : {&g.a, &g.b, &g.c, &g.d})
        if (e->val_lower_bound() < 0) return false;
    return det_is_one(g);
}

CosetReduction SL2Ops::reduce_coset(const SL2Mat& g) const {
    const SeriesRing& R = *R_;
    const Field& F = R.field();
    const int n = cartan_level(g);
    CosetPoint P;
    P.n = n;
    P.param.assign(static_cast<std::size_t>(2 * n), F.zero());
    if (n > 0) {
        const std::int64_t vc = g.c.val();
        const std::int64_t vd = g.d.val();
        TruncSeries quotient;
        if (std::min(vc, vd) == -n) {
            // bottom row reaches the Cartan level: g = u(x) alpha_0^-n h
            P.form = CosetForm::Plus;
            quotient = vd <= vc ? R.div(g.b, g.d) : R.div(g.a, g.c);
        } else {
            P.form = CosetForm::Minus;
            if (std::min(g.a.val(), g.b.val()) != -n)
                throw CheckFailed("top row of " + to_string(P) + " candidate misses the Cartan level");
            quotient = g.a.val() <= g.b.val() ? R.div(g.c, g.a) : R.div(g.d, g.b);
        }
        for (int i = 0; i < 2 * n; ++i) P.param[static_cast<std::size_t>(i)] = quotient.coeff(i);
        if (P.form == CosetForm::Minus && !F.is_zero(P.param[0]))
            throw CheckFailed("Minus parameter with nonzero constant term");
    } else {
        P.form = CosetForm::Plus;
    }

    const SL2Mat h = mul(inv(rep(P)), g);
    if (!in_K0(h)) throw CheckFailed("reduction of g to " + to_string(P) + " leaves K_0");
    const SL2q kbar{h.a.coeff(0), h.b.coeff(0), h.c.coeff(0), h.d.coeff(0)};
    if (!sl2q_det_one(F, kbar)) throw CheckFailed("reduction mod t is not in SL_2(F_q)");
    return {std::move(P), kbar};
}

std::vector<CosetPoint> SL2Ops::enumerate_shell(int n) const {
    const std::uint32_t q = field().q();
    const std::uint64_t s = shell_size(q, n);
    std::vector<CosetPoint> out;
    out.reserve(s);
    for (std::uint64_t i = 0; i < s; ++i) out.push_back(point_at(q, n, i));
    return out;
}

} // namespace hecke
