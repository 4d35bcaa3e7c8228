#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "melcoh/gfp.hpp"

namespace melcoh {

enum class Sector : uint8_t { A, W, Wt };

/// Multi-index of a truncated monomial x1^a1 x2^a2, each part in [0, p).
struct Exponent {
    int a1 = 0;
    int a2 = 0;
    int total() const { return a1 + a2; }
    auto operator<=>(const Exponent&) const = default;
};

/// Pair of residues mod 5: eigenvalues of ad(x1 D1), ad(x2 D2).
struct Weight {
    int w1 = 0;
    int w2 = 0;
    Weight() = default;
    Weight(int a, int b) : w1(((a % int(kP)) + int(kP)) % int(kP)), w2(((b % int(kP)) + int(kP)) % int(kP)) {}
    Weight operator+(Weight o) const { return {w1 + o.w1, w2 + o.w2}; }
    Weight operator-(Weight o) const { return {w1 - o.w1, w2 - o.w2}; }
    Weight operator-() const { return {-w1, -w2}; }
    bool is_zero() const { return w1 == 0 && w2 == 0; }
    auto operator<=>(const Weight&) const = default;
    std::string str() const;
};

/// x^a (sector A, dir 0), x^a D_i (W) or the tilde copy x~^a D_i (Wt).
struct BasisElement {
    Sector sector = Sector::A;
    Exponent exp;
    int dir = 0;

    int degree() const;
    Weight weight() const;
    int z3() const;
    /// Canonical name: x^(a1,a2), x^(a1,a2)D_i or x~^(a1,a2)D_i.
    std::string name() const;
    auto operator<=>(const BasisElement&) const = default;
};

using AlgebraElement = SparseVec;

/// Finite-dimensional graded Lie algebra given by a full structure-constant table.
class LieAlgebra {
public:
    LieAlgebra(std::vector<BasisElement> basis, std::vector<SparseVec> table);

    std::size_t dim() const { return basis_.size(); }
    const BasisElement& element(std::size_t i) const { return basis_[i]; }
    const std::vector<BasisElement>& elements() const { return basis_; }
    int degree(std::size_t i) const { return degree_[i]; }
    Weight weight(std::size_t i) const { return weight_[i]; }
    int z3(std::size_t i) const { return z3_[i]; }
    int min_degree() const { return degree_.front(); }
    int max_degree() const { return degree_.back(); }

    /// [b_i, b_j] in canonical coordinates.
    const SparseVec& bracket_basis(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

    std::size_t index_of(const BasisElement& e) const;
    std::size_t index_of(const std::string& name) const;
    /// Accepts canonical names plus the shorthands 1, D1, D2, Dt1, Dt2.
    std::size_t index_of_symbol(const std::string& symbol) const;
    AlgebraElement generator(std::size_t i) const { return SparseVec::unit(dim(), i); }
    AlgebraElement generator(const std::string& symbol) const { return generator(index_of_symbol(symbol)); }

    /// Overwrites the coefficient of b_k in [b_i, b_j] (and in [b_j, b_i] with opposite sign).
    void set_structure_constant(std::size_t i, std::size_t j, std::size_t k, Fp c);

    std::string format(const AlgebraElement& x) const;

private:
    std::vector<BasisElement> basis_;
    std::vector<SparseVec> table_;
    std::vector<int> degree_;
    std::vector<Weight> weight_;
    std::vector<int> z3_;
};

/// The 125-dimensional Melikian algebra over GF(5) in canonical basis order
/// (ascending degree, then exponent, then direction).
LieAlgebra build_melikian();

AlgebraElement bracket(const LieAlgebra& alg, const AlgebraElement& x, const AlgebraElement& y);

/// Column j is [x, b_j].
SparseMatrix adjoint_matrix(const LieAlgebra& alg, const AlgebraElement& x);

/// Subspace of the algebra, held as a canonical echelon basis.
class Subspace {
public:
    explicit Subspace(const LieAlgebra& alg) : alg_(&alg), basis_(alg.dim()) {}
    Subspace(const LieAlgebra& alg, const std::vector<AlgebraElement>& span);

    const LieAlgebra& ambient() const { return *alg_; }
    std::size_t dim() const { return basis_.size(); }
    std::vector<AlgebraElement> basis() const { return basis_.basis(); }
    bool contains(const AlgebraElement& v) const { return basis_.contains(v); }
    bool contains(const Subspace& other) const;
    void add(const AlgebraElement& v) { basis_.insert(v); }
    Subspace operator+(const Subspace& other) const;
    bool operator==(const Subspace& other) const;

private:
    const LieAlgebra* alg_;
    EchelonBasis basis_;
};

enum class DegreeRelation { Eq, Ge, Lt, Le };

struct DegreePredicate {
    DegreeRelation rel;
    int d;
    bool operator()(int degree) const;
};

/// Indices of the generators whose degree satisfies pred.
std::vector<std::size_t> graded_indices(const LieAlgebra& alg, DegreePredicate pred);
Subspace graded_part(const LieAlgebra& alg, DegreePredicate pred);

Subspace span_bracket(const Subspace& s, const Subspace& t);
Subspace centralizer(const Subspace& t, const Subspace& within);
Subspace full_space(const LieAlgebra& alg);
bool is_subalgebra(const Subspace& s);

/// Ordered pairs (i, j) with [b_i, b_j] != -[b_j, b_i] or [b_i, b_i] != 0.
std::size_t antisymmetry_violations(const LieAlgebra& alg);

struct JacobiCheck {
    std::size_t triples = 0;
    std::size_t failures = 0;
};
/// Jacobi identity on all triples i < j < k of basis elements.
JacobiCheck jacobi_check(const LieAlgebra& alg);

/// Nonzero structure constants c_ij^k that break additivity of each grading.
struct GradingViolations {
    std::size_t degree = 0;
    std::size_t weight = 0;
    std::size_t z3 = 0;
    bool none() const { return degree == 0 && weight == 0 && z3 == 0; }
};
GradingViolations grading_violations(const LieAlgebra& alg);

/// ad(x)^5 as a matrix.
SparseMatrix adjoint_power(const LieAlgebra& alg, const AlgebraElement& x, unsigned e = kP);

/// The p-map of a centerless algebra: the unique y with ad(y) = ad(x)^5.
/// Throws VerificationError when no such y exists.
AlgebraElement p_power(const LieAlgebra& alg, const AlgebraElement& x);

/// Canonical element of the Cartan subalgebra named in the root decomposition.
std::vector<AlgebraElement> canonical_torus(const LieAlgebra& alg);
std::vector<AlgebraElement> canonical_cartan(const LieAlgebra& alg);

}  // namespace melcoh
