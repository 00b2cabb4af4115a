#include <doctest.h>

#include "hecke/errors.hpp"
#include "hecke/freeness.hpp"

using namespace hecke;

namespace {

// 1 + (q+1) q (q^{2(n-1)} - 1) / (q^2 - 1): number of points in shells < n.
std::uint64_t points_below(std::uint64_t q, int n) {
    std::uint64_t pw = 1;
    for (int i = 0; i < 2 * (n - 1); ++i) pw *= q;
    return 1 + (q + 1) * q * (pw - 1) / (q * q - 1);
}

std::uint64_t pow_u(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

TEST_SUITE("freeness") {
    TEST_CASE("C1 dimension inequality") {
        Field F(2, 1);
        WeightShape S(F, {0});
        InducedSpace V(S, InducedSpace::policy_precision(3));
        const auto r = verify_C1(V, 3);
        CHECK(r.passed);
        // q = 2, n = 2: 24 > 7
        CHECK(r.rows[1] == std::vector<std::int64_t>{2, 24, 7, 24, 7});
        for (int n = 1; n <= 3; ++n) CHECK(static_cast<std::uint64_t>(r.rows[n - 1][2]) == points_below(2, n));
        Field F3(3, 1);
        WeightShape S3(F3, {1});
        InducedSpace V3(S3, InducedSpace::policy_precision(1));
        const auto r3 = verify_C1(V3, 1);
        CHECK(r3.rows[0][1] == 12);
        CHECK(r3.rows[0][2] == 1);
    }

    TEST_CASE("C2 rank of tau on C_0") {
        struct Case {
            std::uint32_t p, deg;
            std::vector<std::uint32_t> r;
            std::int64_t rank;
        };
        for (const Case& c : {Case{3, 1, {1}, 2}, Case{2, 1, {0}, 1}, Case{2, 2, {1, 1}, 4}}) {
            Field F(c.p, c.deg);
            WeightShape S(F, c.r);
            InducedSpace V(S, InducedSpace::policy_precision(1));
            const auto rep = verify_C2(V, V.tau_matrix(1));
            CHECK(rep.passed);
            CHECK(rep.rows[0][0] == c.rank);
        }
    }

    TEST_CASE("C3 shells and sides, with a tampered column rejected") {
        Field F(3, 1);
        WeightShape S(F, {1});
        InducedSpace V(S, InducedSpace::policy_precision(2));
        TauMatrix T = V.tau_matrix(2);
        CHECK(verify_C3(V, T).passed);
        // a Plus shell-1 point receiving a Minus shell-1 contribution
        const std::uint64_t plus1 = V.index(CosetPoint{CosetForm::Plus, 1, {FqElem{1}, FqElem{0}}});
        const std::uint64_t minus1 = V.index(CosetPoint{CosetForm::Minus, 1, {FqElem{0}, FqElem{2}}});
        T.columns[plus1 * 2].emplace_back(static_cast<std::uint32_t>(minus1 * 2), F.one());
        const auto bad = verify_C3(V, T);
        CHECK_FALSE(bad.passed);
        CHECK(bad.witness == unit_vector(static_cast<std::uint32_t>(plus1 * 2), F.one()));
    }

    TEST_CASE("C4 containment and its negative control") {
        Field F(3, 1);
        WeightShape S(F, {1});
        InducedSpace V(S, InducedSpace::policy_precision(2));
        const TauMatrix T = V.tau_matrix(2);
        const auto rep = verify_C4(V, T);
        CHECK(rep.passed);
        // n = 0: the solution space is exactly B_0 (2-dimensional kernel)
        CHECK(rep.rows[0] == std::vector<std::int64_t>{0, 2, 0});
        // projecting tau back into B_{n+1} makes every f a solution
        std::vector<SparseVec> projected = T.columns;
        const auto limit = static_cast<std::uint32_t>(V.dim_B(1));
        for (auto& col : projected) {
            SparseVec kept;
            for (const auto& e : col)
                if (e.first < limit) kept.push_back(e);
            col = kept;
        }
        const auto neg = c4_containment(F, projected, {static_cast<std::uint32_t>(V.dim_B(0)), limit},
                                        T.target_dim);
        CHECK_FALSE(neg.passed);
        CHECK_FALSE(neg.witness.empty());

        Field F2(2, 1);
        WeightShape S2(F2, {0});
        InducedSpace V2(S2, InducedSpace::policy_precision(2));
        CHECK(verify_C4(V2, V2.tau_matrix(2)).passed);
    }

    TEST_CASE("tau(f_0) side coefficients") {
        for (std::uint32_t p : {2u, 3u, 5u})
            for (std::uint32_t r = 0; r < p; ++r) {
                Field F(p, 1);
                WeightShape S(F, {r});
                InducedSpace V(S, InducedSpace::policy_precision(2));
                const auto e = tau_fn_entry(V, 0);
                CHECK(e.passed);
                CHECK(e.coeff_next == F.one());
                CHECK(e.coeff_other == (r == 0 ? F.one() : F.zero()));
            }
    }

    TEST_CASE("tau(f_n) table for q = 3, r = 1") {
        Field F(3, 1);
        WeightShape S(F, {1});
        InducedSpace V(S, InducedSpace::policy_precision(3));
        const auto table = tau_fn_table(V, 3);
        REQUIRE(table.size() == 5);
        for (const auto& e : table) {
            CHECK_MESSAGE(e.passed, e.n);
            CHECK(e.exact);
            if (e.n != 0) {
                CHECK(e.next == e.n + (e.n > 0 ? 1 : -1));
                CHECK(e.coeff_other == F.zero());
            }
        }
    }

    TEST_CASE("free basis for q = 3, r = 1, N = 2") {
        Field F(3, 1);
        WeightShape S(F, {1});
        InducedSpace V(S, InducedSpace::policy_precision(2));
        const TauMatrix T = V.tau_matrix(2);
        const FreeBasis B = build_free_basis(V, T);
        std::vector<std::uint64_t> dims{2, 2 * 4 * pow_u(3, 1), 2 * 4 * pow_u(3, 3)};
        CHECK(dims == std::vector<std::uint64_t>{2, 24, 216});
        CHECK(B.A[0].size() == 2);
        CHECK(B.A[1].size() == 22);
        CHECK(B.A[2].size() == 192);
        CHECK(B.rank == 242);
        CHECK(B.pivots.size() == 242);
        std::size_t weighted = 0;
        for (std::size_t j = 0; j < B.A.size(); ++j) weighted += (3 - j) * B.A[j].size();
        CHECK(weighted == 242);

        // cross-module: the exported d = 1 instance passes H1-H4 and gives the same A sizes
        const GradedInstance G = export_graded(V, T);
        const auto rep = check_hypotheses(G);
        for (const char* h : {"H1", "H2", "H3", "H4"}) CHECK_MESSAGE(rep.get(h).passed, h);
        const auto built = build_basis(G);
        CHECK(built.verified);
        for (int n = 0; n <= 2; ++n) CHECK(built.A.at({n}) == B.A[static_cast<std::size_t>(n)]);
    }

    TEST_CASE("certificate is independent of precision and w0 choice is visible") {
        Field F(2, 1);
        WeightShape S(F, {1});
        const auto a = certify(S, 2);
        const auto b = certify(S, 2, 14);
        CHECK(a.passed);
        CHECK(b.passed);
        CHECK(a.params.precision == 10);
        REQUIRE(a.basis.has_value());
        CHECK(a.basis->A == b.basis->A);
        CHECK(a.basis->pivots == b.basis->pivots);
        CHECK(a.tau_table.size() == b.tau_table.size());
        for (std::size_t i = 0; i < a.tau_table.size(); ++i) CHECK(a.tau_table[i].c_n == b.tau_table[i].c_n);
        CHECK_THROWS_AS(certify(S, 2, 8), InvalidParameter);
    }
}
