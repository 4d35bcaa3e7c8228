#pragma once

#include <optional>
#include <string>
#include <vector>

#include "melcoh/cochains.hpp"
#include "melcoh/melikian.hpp"

namespace melcoh {

/// A derivation of the algebra, stored by its images of the basis.
class Derivation {
public:
    /// ad(g).
    static Derivation adjoint(const LieAlgebra& alg, const AlgebraElement& g, std::string name = "");
    /// Column j of m is the image of b_j. Throws UsageError unless the Leibniz rule holds.
    static Derivation from_matrix(const LieAlgebra& alg, const SparseMatrix& m, std::string name = "");

    const std::string& name() const { return name_; }
    std::size_t dim() const { return images_.size(); }
    const SparseVec& image(std::size_t j) const { return images_[j]; }
    SparseVec apply(const SparseVec& x) const;
    /// Degree when every image b_j -> delta(b_j) shifts degree by the same amount.
    std::optional<int> degree() const { return degree_; }
    bool is_zero() const;

private:
    Derivation(const LieAlgebra& alg, std::vector<SparseVec> images, std::string name);
    std::vector<SparseVec> images_;
    std::string name_;
    std::optional<int> degree_;
};

/// Pairs (i < j) where delta([b_i, b_j]) != [delta b_i, b_j] + [b_i, delta b_j].
std::size_t leibniz_violations(const LieAlgebra& alg, const std::vector<SparseVec>& images);

/// The 2-cochain Sq(gamma)(x, y) = sum_{i=1}^{4} [gamma^i x, gamma^{5-i} y] / (i! (5-i)!).
class SqCocycle {
public:
    const std::string& name() const { return name_; }
    std::size_t dim() const { return dim_; }
    /// Sq(b_i, b_j) for any i, j.
    SparseVec value(std::size_t i, std::size_t j) const;
    /// Degree shift when all nonzero values are homogeneous; absent for the zero cochain.
    std::optional<int> degree() const { return degree_; }
    bool is_zero() const;

private:
    friend SqCocycle sq(const LieAlgebra& alg, const Derivation& gamma);
    std::string name_;
    std::size_t dim_ = 0;
    std::vector<SparseVec> upper_;  // (i, j) with i < j at i * dim + j
    std::optional<int> degree_;
};

SqCocycle sq(const LieAlgebra& alg, const Derivation& gamma);

/// ad of the named element: 1, D1, D2, Dt1, Dt2 or a canonical name.
Derivation named_derivation(const LieAlgebra& alg, const std::string& symbol);

/// Coordinates of c in a C^2 block with the adjoint module over the full algebra.
/// Throws VerificationError if a value falls outside the block.
SparseVec sq_coordinates(const SqCocycle& c, const CochainBlock& block);

struct CertificationEntry {
    int degree = 0;
    std::vector<std::string> cocycles;
    std::size_t rows_checked = 0;  // rows of d^2 each cocycle was tested against
    std::size_t rank_delta = 0;    // independent classes modulo B^2
};

struct Certification {
    std::vector<CertificationEntry> entries;
    std::size_t total() const;
};

/// For each degree present: checks d(Sq) = 0 row by row and counts the classes
/// independent modulo coboundaries. All cocycles must have weight (0,0).
Certification certify_classes(const LieAlgebra& alg, const std::vector<SqCocycle>& cocycles,
                              const EngineOptions& opts = {});

}  // namespace melcoh
