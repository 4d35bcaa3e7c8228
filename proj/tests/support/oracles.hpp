#pragma once

// Independent reference implementations used to cross-check the library.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "melcoh/cochains.hpp"
#include "melcoh/gfp.hpp"
#include "melcoh/melikian.hpp"

namespace oracle {

using melcoh::SparseEntry;

/// Dense reduced row echelon form over GF(5), one byte per entry.
class DenseEchelon {
public:
    explicit DenseEchelon(std::size_t cols) : cols_(cols), pivot_of_col_(cols, -1) {}

    bool insert(std::span<const SparseEntry> v);
    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

private:
    std::size_t cols_;
    std::vector<std::vector<uint8_t>> rows_;
    std::vector<int> pivot_of_col_;
};

std::size_t dense_rank(const melcoh::SparseMatrix& m);

/// Number of basis cochains of C^n(domain, coeff) per (weight, degree), found
/// by testing every increasing tuple against every target.
std::map<std::pair<melcoh::Weight, int>, std::size_t> brute_force_block_sizes(int n, const melcoh::Domain& domain,
                                                                              const melcoh::CoefficientModule& coeff);

/// Direct evaluation of sum_{i=1}^{4} [g^i x, g^{5-i} y] / (i!(5-i)!) with g = ad(gamma),
/// computing the factorial inverses from scratch.
melcoh::SparseVec squaring_value(const melcoh::LieAlgebra& alg, const melcoh::SparseVec& gamma, std::size_t x,
                                 std::size_t y);

}  // namespace oracle
