#include "common.hpp"
#include "doctest.h"

using namespace melcoh;

namespace {

SparseVec br(const std::string& a, const std::string& b)
{
    const auto& alg = melikian();
    return bracket(alg, alg.generator(a), alg.generator(b));
}

SparseVec e(const std::string& name, int c = 1)
{
    return SparseVec::unit(melikian().dim(), melikian().index_of(name), Fp(c));
}

}  // namespace

TEST_CASE("basis and grading")
{
    const auto& alg = melikian();
    CHECK(alg.dim() == 125);
    CHECK(alg.min_degree() == -3);
    CHECK(alg.max_degree() == 23);
    CHECK(graded_indices(alg, {DegreeRelation::Eq, -3}).size() == 2);
    CHECK(graded_indices(alg, {DegreeRelation::Eq, -2}).size() == 1);
    CHECK(graded_indices(alg, {DegreeRelation::Eq, -1}).size() == 2);
    CHECK(graded_indices(alg, {DegreeRelation::Eq, 0}).size() == 4);
    const auto top = graded_indices(alg, {DegreeRelation::Eq, 23});
    REQUIRE(top.size() == 2);
    CHECK(alg.element(top[0]).name() == "x~^(4,4)D_1");
    CHECK(alg.element(top[1]).name() == "x~^(4,4)D_2");
    CHECK(alg.element(alg.index_of_symbol("Dt2")).name() == "x~^(0,0)D_2");
    CHECK_THROWS_AS(alg.index_of("y^(0,0)"), UsageError);
}

TEST_CASE("brackets from the defining rules")
{
    // [f1 E1~ + f2 E2~, g1 E1~ + g2 E2~] = f1 g2 - f2 g1
    CHECK(br("Dt1", "Dt2") == e("x^(0,0)"));
    // [f, g] = 2(g D2 f - f D2 g) D1~ + 2(f D1 g - g D1 f) D2~
    CHECK(br("x^(1,0)", "x^(0,1)") == e("x~^(1,0)D_1", -2) + e("x~^(0,1)D_2", -2));
    // [f, E~] = f E
    CHECK(br("x^(0,0)", "Dt1") == e("x^(0,0)D_1"));
    // [D, f] = D(f) - 2 div(D) f
    CHECK(br("D1", "x^(1,0)") == e("x^(0,0)"));
    CHECK(br("x^(2,4)D_2", "x^(1,0)") == e("x^(3,3)", -2 * 4));
    // [D, E~] = [D, E]~ + 2 div(D) E~
    CHECK(br("x^(1,0)D_1", "x~^(1,0)D_1") == e("x~^(1,0)D_1", 2));
    // Witt bracket
    CHECK(br("D1", "x^(2,0)D_2") == e("x^(1,0)D_2", 2));
    CHECK(br("x^(1,0)", "x^(2,4)D_2") == e("x^(3,3)", 2 * 4));
}

TEST_CASE("structure identities hold")
{
    const auto& alg = melikian();
    CHECK(antisymmetry_violations(alg) == 0);
    const auto j = jacobi_check(alg);
    CHECK(j.triples == 317750);
    CHECK(j.failures == 0);
    CHECK(grading_violations(alg).none());
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        const Weight w = alg.weight(i);
        CHECK(((alg.degree(i) - 3 * (w.w1 + w.w2)) % 5 + 5) % 5 == 0);
    }
}

TEST_CASE("torus, weight spaces and the centralizer")
{
    const auto& alg = melikian();
    int count[5][5] = {};
    for (std::size_t i = 0; i < alg.dim(); ++i) ++count[alg.weight(i).w1][alg.weight(i).w2];
    for (auto& row : count)
        for (int c : row) CHECK(c == 5);

    Subspace torus(alg, canonical_torus(alg));
    CHECK(torus.dim() == 2);
    const Subspace cm(alg, {alg.generator("x^(1,0)D_1"), alg.generator("x^(0,1)D_2"), alg.generator("x^(2,2)"),
                            alg.generator("x~^(4,3)D_1"), alg.generator("x~^(3,4)D_2")});
    CHECK(centralizer(torus, full_space(alg)) == cm);
    CHECK(Subspace(alg, canonical_cartan(alg)) == cm);
}

TEST_CASE("p-map satisfies ad(x^[p]) = ad(x)^p")
{
    const auto& alg = melikian();
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        SparseVec x(alg.dim());
        for (std::size_t i = 0; i < alg.dim(); ++i)
            if (rng() % 8 == 0) x.push_back(uint32_t(i), Fp(int(rng() % 5)));
        CHECK(adjoint_matrix(alg, p_power(alg, x)) == adjoint_power(alg, x));
    }
    const SparseVec t = alg.generator("x^(1,0)D_1");
    CHECK(p_power(alg, t) == t);
    CHECK(p_power(alg, alg.generator("D1")).empty());
}

TEST_CASE("a perturbed structure constant is detected")
{
    LieAlgebra broken = melikian();
    CHECK_THROWS_AS(broken.set_structure_constant(3, 3, 0, Fp(1)), UsageError);
    const std::size_t a = broken.index_of("x^(1,0)D_1"), b = broken.index_of_symbol("D1"), k = broken.index_of_symbol("D2");
    broken.set_structure_constant(a, b, k, Fp(1));
    CHECK(antisymmetry_violations(broken) == 0);
    CHECK(!grading_violations(broken).none());
    CHECK(jacobi_check(broken).failures > 0);
}
