#include <doctest.h>

#include "hecke/linalg.hpp"

#include <random>

using namespace hecke;

namespace {

SparseVec random_vec(const Field& F, std::mt19937_64& rng, std::uint32_t dim, double density) {
    std::bernoulli_distribution keep(density);
    SparseVec v;
    for (std::uint32_t i = 0; i < dim; ++i)
        if (keep(rng)) {
            FqElem c{static_cast<std::uint32_t>(rng() % F.q())};
            if (c.value) v.emplace_back(i, c);
        }
    return v;
}

// Dense reference rank by textbook elimination.
std::size_t reference_rank(const Field& F, std::vector<std::vector<FqElem>> rows) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c].value == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        const FqElem s = F.inv(rows[rank][c]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][c].value == 0) continue;
            const FqElem f = F.neg(F.mul(rows[i][c], s));
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] = F.add(rows[i][j], F.mul(f, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

} // namespace

TEST_SUITE("linalg") {

TEST_CASE("rank agrees with dense elimination") {
    std::mt19937_64 rng(7);
    for (auto [p, d] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
        Field F(p, d);
        for (int trial = 0; trial < 30; ++trial) {
            const std::uint32_t dim = 1 + rng() % 12;
            const std::size_t n = 1 + rng() % 14;
            std::vector<SparseVec> vs;
            std::vector<std::vector<FqElem>> dense;
            for (std::size_t i = 0; i < n; ++i) {
                vs.push_back(random_vec(F, rng, dim, 0.4));
                std::vector<FqElem> row(dim);
                for (auto [j, c] : vs.back()) row[j] = c;
                dense.push_back(row);
            }
            CHECK(rank_of(F, dim, vs) == reference_rank(F, dense));
        }
    }
}

TEST_CASE("kernel vectors annihilate the columns") {
    std::mt19937_64 rng(11);
    Field F(3, 1);
    for (int trial = 0; trial < 40; ++trial) {
        const std::uint32_t rows = 1 + rng() % 8;
        std::vector<SparseVec> cols;
        const std::size_t n = 1 + rng() % 10;
        for (std::size_t i = 0; i < n; ++i) cols.push_back(random_vec(F, rng, rows, 0.5));
        const auto K = kernel_of_columns(F, rows, cols);
        CHECK(K.size() + rank_of(F, rows, cols) == n);
        for (const auto& k : K) {
            SparseVec sum;
            for (auto [j, c] : k) sum = axpy(F, sum, c, cols[j]);
            CHECK(sum.empty());
        }
    }
}

TEST_CASE("pivots are independent of insertion order") {
    Field F(2, 1);
    const FqElem one = F.one();
    const SparseVec a{{0, one}, {2, one}};
    const SparseVec b{{0, one}, {1, one}};
    Echelon e1(F, 3);
    e1.insert(a);
    e1.insert(b);
    Echelon e2(F, 3);
    e2.insert(b);
    e2.insert(a);
    CHECK(e1.pivots() == e2.pivots());
    CHECK(e1.pivots() == std::vector<std::uint32_t>{0, 1});
    CHECK(e1.non_pivots() == std::vector<std::uint32_t>{2});
}

TEST_CASE("dense inverse") {
    Field F(5, 1);
    DenseMatrix m(2, 2);
    m.at(0, 0) = F.from_int(2);
    m.at(0, 1) = F.from_int(1);
    m.at(1, 0) = F.from_int(1);
    m.at(1, 1) = F.from_int(1);
    auto inv = dense_inverse(F, m);
    REQUIRE(inv);
    CHECK(operator_mul(F, m, *inv) == DenseMatrix::identity(F, 2));
    DenseMatrix s(2, 2);
    s.at(0, 0) = F.one();
    s.at(1, 0) = F.one();
    CHECK_FALSE(dense_inverse(F, s));
    CHECK(dense_rank(F, s) == 1);
}

}
