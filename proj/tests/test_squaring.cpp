#include "common.hpp"
#include "doctest.h"
#include "melcoh/squaring.hpp"
#include "support/oracles.hpp"

using namespace melcoh;

namespace {

const char* const kGammas[] = {"1", "D1", "D2", "Dt1", "Dt2"};

}  // namespace

TEST_CASE("squaring matches direct evaluation")
{
    const auto& alg = melikian();
    std::mt19937_64 rng(31);
    for (const char* g : kGammas) {
        const SqCocycle c = sq(alg, named_derivation(alg, g));
        CHECK(c.name() == "Sq(" + std::string(g) + ")");
        for (int t = 0; t < 200; ++t) {
            const std::size_t x = rng() % alg.dim(), y = rng() % alg.dim();
            CHECK(c.value(x, y) == oracle::squaring_value(alg, alg.generator(g), x, y));
            CHECK(c.value(y, x) == c.value(x, y).scaled(Fp(-1)));
        }
        CHECK(c.value(7, 7).empty());
        REQUIRE(c.degree().has_value());
        CHECK(*c.degree() == 5 * alg.degree(alg.index_of_symbol(g)));
    }
}

TEST_CASE("squaring values on test pairs")
{
    const auto& alg = melikian();
    auto value = [&](const char* g, const char* x, const char* y) {
        return alg.format(sq(alg, named_derivation(alg, g)).value(alg.index_of(x), alg.index_of(y)));
    };
    CHECK(value("Dt1", "x^(1,0)D_2", "x~^(1,0)D_2") == "x^(0,0)D_1");
    CHECK(value("1", "x^(1,0)", "x^(1,2)D_1") == "2*x^(0,0)D_1");
    CHECK(value("D1", "x^(1,0)D_2", "x^(4,1)D_2") == "x^(0,0)D_2");
    CHECK(value("D1", "x^(1,0)D_2", "x^(3,2)D_2") == "0");
}

TEST_CASE("derivations")
{
    const auto& alg = melikian();
    const SparseVec x = alg.generator("x^(1,1)D_2") + alg.generator("x~^(2,0)D_1").scaled(3);
    const Derivation a = Derivation::adjoint(alg, x, "ad x");
    const Derivation b = Derivation::from_matrix(alg, adjoint_matrix(alg, x), "ad x");
    for (std::size_t j = 0; j < alg.dim(); ++j) CHECK(a.image(j) == b.image(j));
    CHECK(!a.degree().has_value());
    CHECK(named_derivation(alg, "D1").degree() == -3);

    SparseMatrix junk(alg.dim(), alg.dim());
    junk.set_row(0, SparseVec::unit(alg.dim(), 5));
    CHECK_THROWS_AS(Derivation::from_matrix(alg, junk), UsageError);
    CHECK(Derivation::from_matrix(alg, SparseMatrix(alg.dim(), alg.dim())).is_zero());
    CHECK(sq(alg, Derivation::from_matrix(alg, SparseMatrix(alg.dim(), alg.dim()))).is_zero());
}

TEST_CASE("coordinates in a cochain block")
{
    const auto& alg = melikian();
    const Domain M = Domain::graded(alg, {DegreeRelation::Ge, -3}, "M");
    const auto adj = CoefficientModule::adjoint(alg);
    const SqCocycle c = sq(alg, named_derivation(alg, "Dt2"));
    CochainBlock b(2, Weight(), -5, M, adj);
    const SparseVec v = sq_coordinates(c, b);
    CHECK(!v.empty());
    for (const auto& e : v) {
        auto t = b.tuple(e.index);
        CHECK(c.value(M.gen(t[0]), M.gen(t[1])).at(b.target(e.index)) == e.coeff);
    }
    CHECK_THROWS_AS(sq_coordinates(c, CochainBlock(2, Weight(), -10, M, adj)), VerificationError);
}

TEST_CASE("the five squares are independent cocycles")
{
    const auto& alg = melikian();
    std::vector<SqCocycle> all;
    for (const char* g : kGammas) all.push_back(sq(alg, named_derivation(alg, g)));
    const Certification cert = certify_classes(alg, all);
    std::map<int, std::size_t> by_degree;
    for (const auto& e : cert.entries) {
        CHECK(e.rows_checked > 0);
        by_degree[e.degree] = e.rank_delta;
    }
    CHECK(by_degree == std::map<int, std::size_t>{{-15, 2}, {-10, 1}, {-5, 2}});
    CHECK(cert.total() == 5);
}
