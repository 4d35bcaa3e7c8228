#include <sstream>

#include "common.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace melcoh;

TEST_CASE("field arithmetic")
{
    for (int a = 1; a < 5; ++a) CHECK(Fp(a) * field_inv(Fp(a)) == Fp(1));
    CHECK_THROWS_AS(field_inv(Fp(0)), std::domain_error);
    CHECK(Fp(-1) == Fp(4));
    CHECK(Fp(7) == Fp(2));
    // Fermat
    for (int a = 1; a < 5; ++a) CHECK(pow(Fp(a), 4) == Fp(1));
    CHECK(pow(Fp(3), 0) == Fp(1));
}

TEST_CASE("sparse vectors keep canonical form")
{
    SparseVec v(6, {{3, 2}, {1, 4}, {3, 3}, {5, 0}});
    CHECK(v.nnz() == 1);
    CHECK(v.at(1) == Fp(4));
    CHECK(v.at(3) == Fp(0));
    SparseVec w = v;
    w.axpy(Fp(1), SparseVec::unit(6, 1));
    CHECK(w.empty());
    CHECK((v - v).empty());
    CHECK(dot(v, SparseVec::unit(6, 1, 2)) == Fp(3));
}

TEST_CASE("identity and zero matrices")
{
    const auto id = SparseMatrix::identity(7);
    CHECK(rank(id) == 7);
    CHECK(rank_nullspace(id).nullspace.empty());
    SparseMatrix z(4, 9);
    CHECK(rank(z) == 0);
    CHECK(rank_nullspace(z).nullspace.size() == 9);
    CHECK(z.is_zero());
}

TEST_CASE("rank agrees with dense elimination and with the transpose")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
        const std::size_t rows = 1 + rng() % 60, cols = 1 + rng() % 60;
        const auto m = t % 2 ? random_matrix(rng, rows, cols, 0.1) : random_low_rank(rng, rows, cols, 1 + rng() % 8);
        const std::size_t r = oracle::dense_rank(m);
        CHECK(rank(m) == r);
        CHECK(rank(m.transpose()) == r);
        const auto e = rank_nullspace(m);
        CHECK(e.rank == r);
        CHECK(e.nullspace.size() == cols - r);
        for (const auto& v : e.nullspace) CHECK(m.multiply(v).empty());
    }
}

TEST_CASE("solve finds a preimage exactly when one exists")
{
    std::mt19937_64 rng(12);
    for (int t = 0; t < 30; ++t) {
        const std::size_t rows = 5 + rng() % 30, cols = 5 + rng() % 30;
        const auto m = random_low_rank(rng, rows, cols, 3);
        SparseVec x(cols);
        for (std::size_t j = 0; j < cols; ++j) x.push_back(uint32_t(j), Fp(int(rng() % 5)));
        const SparseVec b = m.multiply(x);
        const auto got = solve(m, b);
        REQUIRE(got.has_value());
        CHECK(m.multiply(*got) == b);

        // a right-hand side outside the column span: the dense rank of [m | b] grows
        SparseVec c = SparseVec::unit(rows, rng() % rows);
        const auto mt = m.transpose();
        std::vector<SparseVec> cols_plus = mt.row_data();
        cols_plus.push_back(c);
        const SparseMatrix stacked(rows, cols_plus);
        const bool outside = oracle::dense_rank(stacked) > oracle::dense_rank(mt);
        CHECK(solve(m, c).has_value() == !outside);
    }
}

TEST_CASE("rank_delta counts new directions")
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 20; ++t) {
        const auto m = random_low_rank(rng, 20, 25, 4);
        const auto extra = random_matrix(rng, 1 + rng() % 5, 25, 0.2);
        std::vector<SparseVec> all = m.row_data();
        for (const auto& r : extra.row_data()) all.push_back(r);
        const std::size_t expected = oracle::dense_rank(SparseMatrix(25, all)) - oracle::dense_rank(m);
        CHECK(rank_delta(m, extra.row_data()) == expected);
    }
}

TEST_CASE("echelon basis is canonical")
{
    std::mt19937_64 rng(14);
    const auto m = random_low_rank(rng, 15, 20, 5);
    EchelonBasis a(20), b(20);
    for (const auto& r : m.row_data()) a.insert(r);
    for (auto it = m.row_data().rbegin(); it != m.row_data().rend(); ++it) b.insert(*it);
    CHECK(a.size() == oracle::dense_rank(m));
    CHECK(a.basis() == b.basis());
    for (const auto& r : m.row_data()) CHECK(a.contains(r));
}

TEST_CASE("streaming kernel matches batch elimination")
{
    std::mt19937_64 rng(15);
    for (int t = 0; t < 20; ++t) {
        const std::size_t rows = 1 + rng() % 80, cols = 1 + rng() % 70;
        const auto m = t % 2 ? random_matrix(rng, rows, cols, 0.05) : random_low_rank(rng, rows, cols, 1 + rng() % 10);
        StreamingKernel k(cols);
        for (const auto& r : m.row_data()) k.add_row(r);
        CHECK(k.rank() == oracle::dense_rank(m));
        const auto basis = k.kernel();
        CHECK(basis.size() == k.kernel_dim());
        for (const auto& v : basis) CHECK(m.multiply(v).empty());
        EchelonBasis batch(cols);
        for (const auto& v : rank_nullspace(m).nullspace) batch.insert(v);
        CHECK(batch.basis() == basis);
    }
}

TEST_CASE("triplet format round trip")
{
    std::mt19937_64 rng(16);
    const auto m = random_matrix(rng, 9, 13, 0.3);
    std::stringstream ss;
    write_triplets(ss, m);
    CHECK(read_triplets(ss) == m);

    std::istringstream bad_mod("2 2 7\n0 0 0\n");
    CHECK_THROWS_AS(read_triplets(bad_mod), UsageError);
    std::istringstream no_end("2 2 5\n1 1 3\n");
    CHECK_THROWS_AS(read_triplets(no_end), UsageError);
    std::istringstream out_of_range("2 2 5\n3 1 1\n0 0 0\n");
    CHECK_THROWS_AS(read_triplets(out_of_range), UsageError);
}
