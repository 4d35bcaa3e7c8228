#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace melcoh {

/// Characteristic of every field in this project.
inline constexpr unsigned kP = 5;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Residue modulo kP, always kept in [0, kP).
class Fp {
public:
    constexpr Fp() = default;
    constexpr Fp(int v) : v_(static_cast<uint8_t>(((v % int(kP)) + int(kP)) % int(kP))) {}

    static constexpr Fp raw(uint8_t v) { Fp f; f.v_ = v; return f; }

    constexpr uint8_t value() const { return v_; }
    constexpr bool is_zero() const { return v_ == 0; }
    explicit constexpr operator bool() const { return v_ != 0; }

    constexpr Fp operator+(Fp o) const { return raw(uint8_t((v_ + o.v_) % kP)); }
    constexpr Fp operator-(Fp o) const { return raw(uint8_t((v_ + kP - o.v_) % kP)); }
    constexpr Fp operator-() const { return raw(uint8_t((kP - v_) % kP)); }
    constexpr Fp operator*(Fp o) const { return raw(uint8_t((v_ * o.v_) % kP)); }
    constexpr Fp& operator+=(Fp o) { return *this = *this + o; }
    constexpr Fp& operator-=(Fp o) { return *this = *this - o; }
    constexpr Fp& operator*=(Fp o) { return *this = *this * o; }
    constexpr bool operator==(const Fp&) const = default;

private:
    uint8_t v_ = 0;
};

/// Multiplicative inverse; throws std::domain_error on zero.
Fp field_inv(Fp a);
Fp pow(Fp a, unsigned e);

struct SparseEntry {
    uint32_t index;
    Fp coeff;
    bool operator==(const SparseEntry&) const = default;
};

/// Sparse vector over GF(p): strictly increasing indices, no stored zeros.
class SparseVec {
public:
    SparseVec() = default;
    explicit SparseVec(std::size_t dim) : dim_(dim) {}
    /// Builds from arbitrary (index, coeff) pairs; duplicates are summed.
    SparseVec(std::size_t dim, std::vector<SparseEntry> entries);

    static SparseVec unit(std::size_t dim, std::size_t i, Fp c = 1);
    static SparseVec from_dense(std::span<const Fp> dense);

    std::size_t dim() const { return dim_; }
    std::size_t nnz() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<SparseEntry>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    Fp at(std::size_t i) const;
    std::vector<Fp> to_dense() const;

    /// this += c * other
    void axpy(Fp c, const SparseVec& other);
    SparseVec scaled(Fp c) const;
    SparseVec operator+(const SparseVec& o) const;
    SparseVec operator-(const SparseVec& o) const;
    bool operator==(const SparseVec&) const = default;

    /// Appends an entry with index larger than any stored; zero coefficients are dropped.
    void push_back(uint32_t index, Fp c);

private:
    std::size_t dim_ = 0;
    std::vector<SparseEntry> entries_;
};

Fp dot(const SparseVec& a, const SparseVec& b);

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);
    SparseMatrix(std::size_t cols, std::vector<SparseVec> rows);

    static SparseMatrix identity(std::size_t n);

    std::size_t rows() const { return data_.size(); }
    std::size_t cols() const { return cols_; }
    const SparseVec& row(std::size_t i) const { return data_[i]; }
    const std::vector<SparseVec>& row_data() const { return data_; }
    void set_row(std::size_t i, SparseVec v);
    void append_row(SparseVec v);
    std::size_t nnz() const;

    Fp at(std::size_t i, std::size_t j) const { return data_[i].at(j); }

    SparseVec multiply(const SparseVec& x) const;
    SparseMatrix multiply(const SparseMatrix& other) const;
    SparseMatrix transpose() const;
    bool is_zero() const;
    bool operator==(const SparseMatrix&) const = default;

private:
    std::size_t cols_ = 0;
    std::vector<SparseVec> data_;
};

struct EliminationResult {
    std::size_t rank = 0;
    std::vector<uint32_t> pivot_columns;
    std::vector<SparseVec> nullspace;
};

/// Row rank, pivot columns and a kernel basis.
///
/// Pivot policy: columns are processed left to right; the pivot of a column
/// is the sparsest remaining row with a nonzero there, ties going to the
/// lowest row index. Kernel vectors come from the reduced echelon form, one
/// per free column, with a 1 in that column.
EliminationResult rank_nullspace(const SparseMatrix& m);

std::size_t rank(const SparseMatrix& m);

/// Some x with m x = b, or nullopt when b is outside the column span.
std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b);

/// rank(m stacked with extra) - rank(m).
std::size_t rank_delta(const SparseMatrix& m, std::span<const SparseVec> extra);

/// Incrementally built echelon basis of a subspace of GF(p)^dim.
/// Stored vectors are monic at their leading index and fully reduced against
/// each other, so the basis is canonical for the subspace.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t dim = 0) : dim_(dim), slot_(dim, -1) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return basis_.size(); }

    /// Residue of v modulo the current span (reduced at every pivot).
    SparseVec reduce(const SparseVec& v) const;
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    /// Returns true when v enlarged the span.
    bool insert(const SparseVec& v);

    /// Basis sorted by leading index.
    std::vector<SparseVec> basis() const;
    std::vector<uint32_t> pivots() const;

private:
    std::size_t dim_;
    std::vector<int> slot_;
    std::vector<SparseVec> basis_;
    std::vector<uint32_t> lead_;
};

/// Kernel of a linear map GF(p)^dim -> GF(p)^?, accumulated from its rows
/// one at a time. Memory is dim * (current kernel dimension) bytes, so the
/// rows never need to be stored.
class StreamingKernel {
public:
    explicit StreamingKernel(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t kernel_dim() const { return k_; }
    std::size_t rank() const { return dim_ - k_; }

    /// Imposes row . x = 0. Returns true when the kernel shrank.
    bool add_row(std::span<const SparseEntry> row);
    bool add_row(const SparseVec& row) { return add_row(std::span(row.entries())); }

    /// Kernel basis in canonical echelon form.
    std::vector<SparseVec> kernel() const;

private:
    std::size_t dim_;
    std::size_t k_;
    std::size_t stride_;
    std::vector<uint8_t> n_;
    std::vector<uint16_t> acc_;
};

/// Triplet text format: "R C M", then "i j v" lines (1-based), then "0 0 0".
void write_triplets(std::ostream& os, const SparseMatrix& m);
SparseMatrix read_triplets(std::istream& is);

}  // namespace melcoh
