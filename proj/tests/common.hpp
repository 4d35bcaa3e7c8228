#pragma once

#include <random>

#include "melcoh/gfp.hpp"
#include "melcoh/melikian.hpp"

// Built once per test binary.
inline const melcoh::LieAlgebra& melikian()
{
    static const melcoh::LieAlgebra alg = melcoh::build_melikian();
    return alg;
}

inline melcoh::SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density)
{
    std::uniform_real_distribution<double> u(0, 1);
    melcoh::SparseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        melcoh::SparseVec v(cols);
        for (std::size_t j = 0; j < cols; ++j)
            if (u(rng) < density) v.push_back(uint32_t(j), melcoh::Fp(int(1 + rng() % 4)));
        m.set_row(i, v);
    }
    return m;
}

// Low-rank matrix: a product of two random factors.
inline melcoh::SparseMatrix random_low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t r)
{
    return random_matrix(rng, rows, r, 0.5).multiply(random_matrix(rng, r, cols, 0.5));
}
