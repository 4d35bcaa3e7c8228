#include "oracles.hpp"

namespace oracle {

namespace {

// dst += c * src, entries in [0, 5).
void axpy(uint8_t* dst, const uint8_t* src, unsigned c, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        unsigned t = dst[i] + c * src[i];
        t -= 10 * (t >= 10);
        t -= 5 * (t >= 5);
        t -= 5 * (t >= 5);
        dst[i] = uint8_t(t);
    }
}

unsigned inverse(unsigned a)
{
    for (unsigned b = 1; b < 5; ++b)
        if (a * b % 5 == 1) return b;
    return 0;
}

}  // namespace

bool DenseEchelon::insert(std::span<const SparseEntry> v)
{
    std::vector<uint8_t> row(cols_, 0);
    for (const auto& e : v) row[e.index] = uint8_t((row[e.index] + e.coeff.value()) % 5);
    // Rows are fully reduced, so eliminating one pivot never touches another
    // pivot column and the original support lists every pivot to clear.
    for (const auto& e : v) {
        const int p = pivot_of_col_[e.index];
        if (p < 0 || row[e.index] == 0) continue;
        axpy(row.data(), rows_[std::size_t(p)].data(), 5 - row[e.index], cols_);
    }
    std::size_t lead = 0;
    while (lead < cols_ && row[lead] == 0) ++lead;
    if (lead == cols_) return false;
    const unsigned inv = inverse(row[lead]);
    for (auto& x : row) x = uint8_t(x * inv % 5);
    for (auto& r : rows_)
        if (r[lead]) axpy(r.data(), row.data(), 5 - r[lead], cols_);
    pivot_of_col_[lead] = int(rows_.size());
    rows_.push_back(std::move(row));
    return true;
}

std::size_t dense_rank(const melcoh::SparseMatrix& m)
{
    DenseEchelon e(m.cols());
    for (const auto& r : m.row_data()) e.insert(r.entries());
    return e.rank();
}

std::map<std::pair<melcoh::Weight, int>, std::size_t> brute_force_block_sizes(int n, const melcoh::Domain& domain,
                                                                              const melcoh::CoefficientModule& coeff)
{
    std::map<std::pair<melcoh::Weight, int>, std::size_t> out;
    const std::size_t size = domain.size();
    // odometer over all n-tuples, keeping the strictly increasing ones
    std::vector<std::size_t> odo(std::size_t(n), 0);
    for (;;) {
        bool increasing = true;
        for (int k = 1; k < n; ++k)
            if (odo[k - 1] >= odo[k]) increasing = false;
        if (increasing) {
            melcoh::Weight w;
            int d = 0;
            for (auto g : odo) {
                w = w + domain.weight(g);
                d += domain.degree(g);
            }
            for (std::size_t s = 0; s < coeff.dim(); ++s) ++out[{coeff.weight(s) - w, coeff.degree(s) - d}];
        }
        int k = n - 1;
        while (k >= 0 && ++odo[k] == size) odo[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

melcoh::SparseVec squaring_value(const melcoh::LieAlgebra& alg, const melcoh::SparseVec& gamma, std::size_t x,
                                 std::size_t y)
{
    auto power = [&](std::size_t b, int k) {
        melcoh::SparseVec v = alg.generator(b);
        for (int i = 0; i < k; ++i) v = melcoh::bracket(alg, gamma, v);
        return v;
    };
    const int fact[5] = {1, 1, 2, 6, 24};
    melcoh::SparseVec out(alg.dim());
    for (int i = 1; i <= 4; ++i) {
        const unsigned denom = unsigned(fact[i] * fact[5 - i]) % 5;
        out.axpy(melcoh::Fp(int(inverse(denom))), melcoh::bracket(alg, power(x, i), power(y, 5 - i)));
    }
    return out;
}

}  // namespace oracle
