#include "hecke/freeness.hpp"

#include "hecke/errors.hpp"
#include "hecke/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace hecke {

namespace {

std::vector<std::uint32_t> dims_B(const InducedSpace& V, int N) {
    std::vector<std::uint32_t> out;
    for (int k = 0; k <= N; ++k) out.push_back(static_cast<std::uint32_t>(V.dim_B(k)));
    return out;
}

SparseVec apply_columns(const Field& F, const std::vector<SparseVec>& columns, const SparseVec& v) {
    SparseVec acc;
    for (const auto& [i, c] : v)
        for (const auto& [k, x] : columns.at(i)) acc.emplace_back(k, F.mul(c, x));
    return canonicalize(F, std::move(acc));
}

CosetPoint anchor(int m) {
    CosetPoint P;
    P.form = m > 0 ? CosetForm::Minus : CosetForm::Plus;
    P.n = m > 0 ? m : -m;
    P.param.assign(static_cast<std::size_t>(2 * P.n), FqElem{0});
    return P;
}

std::string describe(const SparseVec& combo) {
    std::string s;
    for (const auto& [i, c] : combo) s += (s.empty() ? "" : " + ") + std::to_string(c.value) + "*v" + std::to_string(i);
    return s;
}

} // namespace

ConditionReport verify_C1(const InducedSpace& V, int N) {
    ConditionReport r;
    r.name = "C1";
    const std::uint32_t q = V.field().q();
    for (int n = 1; n <= N; ++n) {
        const std::uint64_t cn = V.dim_C(n), below = V.dim_B(n - 1);
        r.rows.push_back({n, static_cast<std::int64_t>(shell_size(q, n)), static_cast<std::int64_t>(shell_offset(q, n)),
                          static_cast<std::int64_t>(cn), static_cast<std::int64_t>(below)});
        if (cn <= below && r.passed) {
            r.passed = false;
            r.detail = "dim C_" + std::to_string(n) + " = " + std::to_string(cn) + " <= " + std::to_string(below);
        }
    }
    return r;
}

ConditionReport verify_C2(const InducedSpace& V, const TauMatrix& T) {
    ConditionReport r;
    r.name = "C2";
    const Field& F = V.field();
    const auto dim = static_cast<std::uint32_t>(V.dim_C(0));
    const auto lo = static_cast<std::uint32_t>(V.dim_B(0)), hi = static_cast<std::uint32_t>(V.dim_B(1));
    std::vector<SparseVec> cols(T.columns.begin(), T.columns.begin() + dim);
    for (std::uint32_t b = 0; b < dim && r.passed; ++b)
        for (const auto& e : cols[b])
            if (e.first < lo || e.first >= hi) {
                r.passed = false;
                r.detail = "tau of C_0 basis vector " + std::to_string(b) + " leaves C_1";
                r.witness = unit_vector(b, F.one());
                break;
            }
    const std::size_t rank = rank_of(F, T.target_dim, cols);
    r.rows.push_back({static_cast<std::int64_t>(rank), static_cast<std::int64_t>(dim)});
    if (r.passed && rank != dim) {
        r.passed = false;
        r.detail = "rank " + std::to_string(rank) + " < dim sigma " + std::to_string(dim);
        r.witness = kernel_of_columns(F, T.target_dim, cols).front();
    }
    return r;
}

ConditionReport verify_C3(const InducedSpace& V, const TauMatrix& T) {
    ConditionReport r;
    r.name = "C3";
    const std::size_t dim = V.shape().dim();
    std::int64_t checked = 0;
    for (std::uint32_t c = 0; c < T.source_dim && r.passed; ++c) {
        const CosetPoint src = V.point(c / dim);
        ++checked;
        for (const auto& e : T.columns[c]) {
            const CosetPoint dst = V.point(e.first / dim);
            bool ok;
            if (src.n == 0)
                ok = dst.n == 1;
            else
                ok = std::abs(dst.n - src.n) <= 1 && (dst.form == src.form || dst.n == 0);
            if (!ok) {
                r.passed = false;
                r.detail = "tau[" + to_string(src) + ", e_" + std::to_string(c % dim) + "] meets " + to_string(dst);
                r.witness = unit_vector(c, V.field().one());
                break;
            }
        }
    }
    r.rows.push_back({checked});
    return r;
}

ConditionReport c4_containment(const Field& F, const std::vector<SparseVec>& columns,
                               const std::vector<std::uint32_t>& dim_B, std::uint32_t row_dim) {
    ConditionReport r;
    r.name = "C4";
    for (std::size_t n = 0; n + 1 < dim_B.size(); ++n) {
        const std::uint32_t src = dim_B[n + 1];
        std::vector<SparseVec> projected(src);
        for (std::uint32_t c = 0; c < src; ++c)
            for (const auto& e : columns.at(c))
                if (e.first >= src) projected[c].push_back(e);
        const auto kernel = kernel_of_columns(F, row_dim, projected);
        std::int64_t outside = 0;
        for (const SparseVec& k : kernel)
            if (!k.empty() && k.back().first >= dim_B[n]) {
                ++outside;
                if (r.passed) {
                    r.passed = false;
                    r.detail = "f in B_" + std::to_string(n + 1) + " with tau f in B_" + std::to_string(n + 1) +
                               " is not in B_" + std::to_string(n);
                    r.witness = k;
                }
            }
        r.rows.push_back({static_cast<std::int64_t>(n), static_cast<std::int64_t>(kernel.size()), outside});
    }
    return r;
}

ConditionReport verify_C4(const InducedSpace& V, const TauMatrix& T) {
    return c4_containment(V.field(), T.columns, dims_B(V, T.levels), T.target_dim);
}

FqElem expected_lambda(const InducedSpace& V) {
    const auto& r = V.shape().r();
    return std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; }) ? V.field().one()
                                                                                   : V.field().zero();
}

TauFnEntry tau_fn_entry(const InducedSpace& V, int n) {
    const Field& F = V.field();
    const int level = std::abs(n) + 1;
    const SparseVec image = V.coords(V.tau_apply(V.f_n(n)), level);
    TauFnEntry e;
    e.n = n;
    const int delta = n > 0 ? 1 : -1;
    e.next = n + delta;
    e.other = n - delta;
    e.expected_other = n == 0 ? expected_lambda(V) : F.zero();

    SparseVec rest = image;
    const std::size_t dim = V.shape().dim();
    for (int m = n - 1; m <= n + 1; ++m) {
        const InducedFn fm = V.f_n(m);
        const auto& at = fm.entries.at(V.index(anchor(m)));
        std::size_t b = 0;
        while (F.is_zero(at[b])) ++b;
        const std::uint32_t coord = static_cast<std::uint32_t>(V.index(anchor(m)) * dim + b);
        FqElem value = F.zero();
        for (const auto& [i, c] : image)
            if (i == coord) value = c;
        const FqElem coeff = F.div(value, at[b]);
        if (!F.is_zero(coeff)) {
            e.expansion.emplace_back(m, coeff);
            rest = axpy(F, rest, F.neg(coeff), V.coords(fm, level));
        }
        if (m == e.next) e.coeff_next = coeff;
        if (m == e.other) e.coeff_other = coeff;
        if (m == n) e.c_n = coeff;
    }
    e.exact = rest.empty();
    e.passed = e.exact && e.coeff_next == F.one() && e.coeff_other == e.expected_other &&
               (n != 0 || F.is_zero(e.c_n));
    return e;
}

std::vector<TauFnEntry> tau_fn_table(const InducedSpace& V, int N) {
    std::vector<TauFnEntry> out;
    for (int n = -(N - 1); n <= N - 1; ++n) out.push_back(tau_fn_entry(V, n));
    return out;
}

FreeBasis build_free_basis(const InducedSpace& V, const TauMatrix& T) {
    const Field& F = V.field();
    const int N = T.levels;
    const auto dimB = dims_B(V, N);
    FreeBasis out;
    out.A.resize(static_cast<std::size_t>(N) + 1);
    std::vector<SparseVec> E;
    for (std::uint32_t b = 0; b < dimB[0]; ++b) {
        out.A[0].push_back(unit_vector(b, F.one()));
        E.push_back(out.A[0].back());
    }
    std::vector<SparseVec> family = E;
    for (int l = 0; l < N; ++l) {
        std::vector<SparseVec> images(E.size());
        parallel_for(E.size(), [&](std::size_t k) { images[k] = apply_columns(F, T.columns, E[k]); });
        const std::uint32_t lo = dimB[static_cast<std::size_t>(l)], hi = dimB[static_cast<std::size_t>(l) + 1];
        Echelon ech(F, hi - lo);
        for (std::uint32_t k = 0; k < images.size(); ++k) {
            SparseVec proj;
            for (const auto& [i, c] : images[k])
                if (i >= lo && i < hi) proj.emplace_back(i - lo, c);
                else if (i >= hi) throw CheckFailed("tau(E_" + std::to_string(l) + ") leaves B_" + std::to_string(l + 1));
            if (!ech.insert(proj, unit_vector(k, F.one())))
                throw CheckFailed("projection of tau(E_" + std::to_string(l) + ") to C_" + std::to_string(l + 1) +
                                  " is dependent: " + describe(ech.last_dependency()));
        }
        E = std::move(images);
        for (std::uint32_t k : ech.non_pivots()) {
            out.A[static_cast<std::size_t>(l) + 1].push_back(unit_vector(lo + k, F.one()));
            E.push_back(out.A[static_cast<std::size_t>(l) + 1].back());
        }
        family.insert(family.end(), E.begin(), E.end());
    }
    const std::uint32_t total = dimB.back();
    out.family_size = family.size();
    Echelon ech(F, total);
    for (std::uint32_t k = 0; k < family.size(); ++k) {
        SparseVec rev;
        rev.reserve(family[k].size());
        for (auto it = family[k].rbegin(); it != family[k].rend(); ++it) rev.emplace_back(total - 1 - it->first, it->second);
        if (!ech.insert(rev, unit_vector(k, F.one())))
            throw CheckFailed("family is dependent: " + describe(ech.last_dependency()));
    }
    out.rank = ech.rank();
    for (std::uint32_t p : ech.pivots()) out.pivots.push_back(total - 1 - p);
    std::sort(out.pivots.begin(), out.pivots.end());
    if (out.rank != total || out.family_size != total)
        throw CheckFailed("family of " + std::to_string(out.family_size) + " vectors has rank " +
                          std::to_string(out.rank) + ", dim B_N = " + std::to_string(total));
    return out;
}

GradedInstance export_graded(const InducedSpace& V, const TauMatrix& T) {
    const int N = T.levels;
    std::map<MultiIndex, std::uint32_t> dims, overflow;
    for (int n = 0; n <= N; ++n) dims[{n}] = static_cast<std::uint32_t>(V.dim_C(n));
    overflow[{N + 1}] = static_cast<std::uint32_t>(V.dim_C(N + 1));
    GradedInstance inst(std::make_shared<const Field>(V.field()), 1, N, dims, overflow);
    for (std::uint32_t c = 0; c < T.source_dim; ++c) inst.set_column(0, c, T.columns[c]);
    return inst;
}

FreenessCertificate certify(const WeightShape& S, int N, std::optional<std::int64_t> precision, W0Choice w0) {
    if (N < 1) throw InvalidParameter("freeness certificate needs N >= 1");
    const std::int64_t prec = precision.value_or(InducedSpace::policy_precision(N));
    if (prec < InducedSpace::policy_precision(N))
        throw InvalidParameter("precision " + std::to_string(prec) + " below the policy minimum " +
                               std::to_string(InducedSpace::policy_precision(N)));
    const InducedSpace V(S, prec, w0);
    FreenessCertificate cert;
    cert.params = {S.field().p(), S.field().deg(), S.r(), N, prec, w0};
    for (int n = 0; n <= N; ++n) cert.dims.push_back(V.dim_C(n));
    cert.dim_B = V.dim_B(N);
    const TauMatrix T = V.tau_matrix(N);
    cert.conditions.push_back(verify_C1(V, N));
    cert.conditions.push_back(verify_C2(V, T));
    cert.conditions.push_back(verify_C3(V, T));
    cert.conditions.push_back(verify_C4(V, T));
    cert.lambda = expected_lambda(V);
    cert.tau_table = tau_fn_table(V, N);
    const bool conditions_ok = std::all_of(cert.conditions.begin(), cert.conditions.end(),
                                           [](const ConditionReport& r) { return r.passed; });
    const bool table_ok =
        std::all_of(cert.tau_table.begin(), cert.tau_table.end(), [](const TauFnEntry& e) { return e.passed; });
    if (conditions_ok) {
        try {
            cert.basis = build_free_basis(V, T);
        } catch (const CheckFailed& e) {
            cert.basis_failure = e.what();
        }
    } else {
        cert.basis_failure = "skipped: a condition failed";
    }
    cert.passed = conditions_ok && table_ok && cert.basis.has_value();
    return cert;
}

} // namespace hecke
