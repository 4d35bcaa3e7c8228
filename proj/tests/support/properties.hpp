#pragma once

// Algebraic property checks shared by the unit tests and the acceptance runner.

#include <cstdint>
#include <string>
#include <vector>

#include "melcoh/melikian.hpp"

namespace props {

struct Result {
    std::string name;
    bool ok = true;
    std::string detail;
    double seconds = 0;
};

/// d^{n+1} o d^n = 0 on every block of a fixed list of complexes.
Result dd_zero(const melcoh::LieAlgebra& alg);

/// (df)_g = g.f - d(f_g) on random blocks, cochains and generators.
Result restriction_identity(const melcoh::LieAlgebra& alg, int samples, uint64_t seed);

/// H^n(M, M) vanishes on nonzero-weight blocks for n = 1, 2 and |degree| <= max_abs_degree.
Result nonzero_weights_vanish(const melcoh::LieAlgebra& alg, int max_abs_degree, unsigned threads);

/// Sparse ranks and streamed kernels agree with dense elimination on every
/// block with at most max_cols columns.
Result dense_agreement(const melcoh::LieAlgebra& alg, std::size_t max_cols);

/// Block sizes from the enumerator agree with a brute-force count.
Result block_sizes(const melcoh::LieAlgebra& alg);

/// JSON reports are identical (apart from timings) across runs and thread counts.
Result deterministic_reports(const melcoh::LieAlgebra& alg);

std::vector<Result> run_suite(const melcoh::LieAlgebra& alg, unsigned threads);

}  // namespace props
