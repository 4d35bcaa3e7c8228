#include "melcoh/gfp.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace melcoh {

namespace {

constexpr uint8_t kInv[kP] = {0, 1, 3, 2, 4};

// x in [0, 20] -> x mod 5, written so that loops over it vectorize.
inline uint16_t mod5_small(uint16_t x) { return uint16_t(x - 5 * ((x * 52) >> 8)); }

}  // namespace

Fp field_inv(Fp a)
{
    if (a.is_zero())
        throw std::domain_error("field_inv: zero has no inverse");
    return Fp::raw(kInv[a.value()]);
}

Fp pow(Fp a, unsigned e)
{
    Fp r = 1;
    while (e) {
        if (e & 1) r *= a;
        a *= a;
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------- SparseVec

SparseVec::SparseVec(std::size_t dim, std::vector<SparseEntry> entries) : dim_(dim)
{
    std::sort(entries.begin(), entries.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    for (const auto& e : entries) {
        if (e.index >= dim)
            throw UsageError("SparseVec: index out of range");
        if (!entries_.empty() && entries_.back().index == e.index) {
            entries_.back().coeff += e.coeff;
            if (entries_.back().coeff.is_zero()) entries_.pop_back();
        } else if (!e.coeff.is_zero()) {
            entries_.push_back(e);
        }
    }
}

SparseVec SparseVec::unit(std::size_t dim, std::size_t i, Fp c)
{
    SparseVec v(dim);
    v.push_back(uint32_t(i), c);
    return v;
}

SparseVec SparseVec::from_dense(std::span<const Fp> dense)
{
    SparseVec v(dense.size());
    for (std::size_t i = 0; i < dense.size(); ++i) v.push_back(uint32_t(i), dense[i]);
    return v;
}

void SparseVec::push_back(uint32_t index, Fp c)
{
    if (c.is_zero()) return;
    if (index >= dim_ || (!entries_.empty() && entries_.back().index >= index))
        throw UsageError("SparseVec::push_back: index out of order");
    entries_.push_back({index, c});
}

Fp SparseVec::at(std::size_t i) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const SparseEntry& e, std::size_t j) { return e.index < j; });
    return (it != entries_.end() && it->index == i) ? it->coeff : Fp{};
}

std::vector<Fp> SparseVec::to_dense() const
{
    std::vector<Fp> d(dim_);
    for (const auto& e : entries_) d[e.index] = e.coeff;
    return d;
}

void SparseVec::axpy(Fp c, const SparseVec& other)
{
    if (other.dim_ != dim_)
        throw UsageError("SparseVec::axpy: dimension mismatch");
    if (c.is_zero() || other.empty()) return;
    std::vector<SparseEntry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin(), ae = entries_.end();
    auto b = other.entries_.begin(), be = other.entries_.end();
    while (a != ae || b != be) {
        if (b == be || (a != ae && a->index < b->index)) {
            out.push_back(*a++);
        } else if (a == ae || b->index < a->index) {
            out.push_back({b->index, c * b->coeff});
            ++b;
        } else {
            Fp s = a->coeff + c * b->coeff;
            if (!s.is_zero()) out.push_back({a->index, s});
            ++a;
            ++b;
        }
    }
    entries_ = std::move(out);
}

SparseVec SparseVec::scaled(Fp c) const
{
    SparseVec r(dim_);
    if (c.is_zero()) return r;
    r.entries_ = entries_;
    for (auto& e : r.entries_) e.coeff *= c;
    return r;
}

SparseVec SparseVec::operator+(const SparseVec& o) const
{
    SparseVec r = *this;
    r.axpy(1, o);
    return r;
}

SparseVec SparseVec::operator-(const SparseVec& o) const
{
    SparseVec r = *this;
    r.axpy(-Fp(1), o);
    return r;
}

Fp dot(const SparseVec& a, const SparseVec& b)
{
    if (a.dim() != b.dim())
        throw UsageError("dot: dimension mismatch");
    Fp s;
    auto i = a.begin(), j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (i->index < j->index) ++i;
        else if (j->index < i->index) ++j;
        else s += (i++)->coeff * (j++)->coeff;
    }
    return s;
}

// ------------------------------------------------------------- SparseMatrix

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows, SparseVec(cols)) {}

SparseMatrix::SparseMatrix(std::size_t cols, std::vector<SparseVec> rows) : cols_(cols), data_(std::move(rows))
{
    for (const auto& r : data_)
        if (r.dim() != cols_)
            throw UsageError("SparseMatrix: row dimension mismatch");
}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i] = SparseVec::unit(n, i);
    return m;
}

void SparseMatrix::set_row(std::size_t i, SparseVec v)
{
    if (v.dim() != cols_) throw UsageError("SparseMatrix::set_row: dimension mismatch");
    data_.at(i) = std::move(v);
}

void SparseMatrix::append_row(SparseVec v)
{
    if (v.dim() != cols_) throw UsageError("SparseMatrix::append_row: dimension mismatch");
    data_.push_back(std::move(v));
}

std::size_t SparseMatrix::nnz() const
{
    std::size_t n = 0;
    for (const auto& r : data_) n += r.nnz();
    return n;
}

SparseVec SparseMatrix::multiply(const SparseVec& x) const
{
    if (x.dim() != cols_) throw UsageError("SparseMatrix::multiply: dimension mismatch");
    SparseVec y(rows());
    for (std::size_t i = 0; i < rows(); ++i) y.push_back(uint32_t(i), dot(data_[i], x));
    return y;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& other) const
{
    if (other.rows() != cols_) throw UsageError("SparseMatrix::multiply: dimension mismatch");
    SparseMatrix out(rows(), other.cols());
    std::vector<Fp> acc(other.cols());
    std::vector<uint32_t> touched;
    for (std::size_t i = 0; i < rows(); ++i) {
        touched.clear();
        for (const auto& e : data_[i]) {
            for (const auto& f : other.row(e.index)) {
                if (acc[f.index].is_zero()) touched.push_back(f.index);
                acc[f.index] += e.coeff * f.coeff;
            }
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        SparseVec r(other.cols());
        for (auto j : touched) {
            r.push_back(j, acc[j]);
            acc[j] = 0;
        }
        out.data_[i] = std::move(r);
    }
    return out;
}

SparseMatrix SparseMatrix::transpose() const
{
    std::vector<std::vector<SparseEntry>> cols(cols_);
    for (std::size_t i = 0; i < rows(); ++i)
        for (const auto& e : data_[i]) cols[e.index].push_back({uint32_t(i), e.coeff});
    SparseMatrix t(cols_, rows());
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j] = SparseVec(rows(), std::move(cols[j]));
    return t;
}

bool SparseMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const SparseVec& r) { return r.empty(); });
}

// -------------------------------------------------------------- elimination

namespace {

struct Echelon {
    std::vector<SparseVec> rows;      // working copies
    std::vector<uint32_t> pivot_cols; // ascending
    std::vector<uint32_t> pivot_rows; // row holding each pivot
};

Echelon eliminate(std::vector<SparseVec> rows, std::size_t cols)
{
    Echelon ech;
    const std::size_t n = rows.size();
    std::vector<std::vector<uint32_t>> col_rows(cols);
    for (std::size_t r = 0; r < n; ++r)
        for (const auto& e : rows[r]) col_rows[e.index].push_back(uint32_t(r));

    std::vector<char> used(n, 0);
    std::vector<uint32_t> stamp(n, UINT32_MAX);
    std::vector<uint32_t> cand;
    for (uint32_t c = 0; c < cols; ++c) {
        cand.clear();
        for (auto r : col_rows[c]) {
            if (used[r] || stamp[r] == c) continue;
            stamp[r] = c;
            if (!rows[r].at(c).is_zero()) cand.push_back(r);
        }
        std::vector<uint32_t>().swap(col_rows[c]);
        if (cand.empty()) continue;
        uint32_t p = cand.front();
        for (auto r : cand)
            if (rows[r].nnz() < rows[p].nnz() || (rows[r].nnz() == rows[p].nnz() && r < p)) p = r;
        used[p] = 1;
        rows[p] = rows[p].scaled(field_inv(rows[p].at(c)));
        for (auto r : cand) {
            if (r == p) continue;
            rows[r].axpy(-rows[r].at(c), rows[p]);
            for (const auto& e : rows[p])
                if (e.index > c) col_rows[e.index].push_back(r);
        }
        ech.pivot_cols.push_back(c);
        ech.pivot_rows.push_back(p);
    }
    ech.rows = std::move(rows);
    return ech;
}

// Clears every pivot row at the later pivot columns.
void back_substitute(Echelon& ech, std::size_t cols)
{
    std::vector<int> row_of_col(cols, -1);
    for (std::size_t k = 0; k < ech.pivot_cols.size(); ++k) row_of_col[ech.pivot_cols[k]] = int(ech.pivot_rows[k]);
    for (std::size_t k = ech.pivot_cols.size(); k-- > 0;) {
        SparseVec& row = ech.rows[ech.pivot_rows[k]];
        std::vector<std::pair<int, Fp>> hits;
        for (const auto& e : row)
            if (e.index != ech.pivot_cols[k] && row_of_col[e.index] >= 0) hits.push_back({row_of_col[e.index], e.coeff});
        for (auto [r, c] : hits) row.axpy(-c, ech.rows[r]);
    }
}

}  // namespace

EliminationResult rank_nullspace(const SparseMatrix& m)
{
    const std::size_t cols = m.cols();
    Echelon ech = eliminate(m.row_data(), cols);
    back_substitute(ech, cols);

    EliminationResult res;
    res.rank = ech.pivot_cols.size();
    res.pivot_columns = ech.pivot_cols;

    std::vector<char> is_pivot(cols, 0);
    for (auto c : ech.pivot_cols) is_pivot[c] = 1;
    std::vector<std::vector<SparseEntry>> kernel(cols);
    for (uint32_t f = 0; f < cols; ++f)
        if (!is_pivot[f]) kernel[f].push_back({f, Fp(1)});
    for (std::size_t k = 0; k < ech.pivot_cols.size(); ++k)
        for (const auto& e : ech.rows[ech.pivot_rows[k]])
            if (!is_pivot[e.index]) kernel[e.index].push_back({ech.pivot_cols[k], -e.coeff});
    for (uint32_t f = 0; f < cols; ++f)
        if (!is_pivot[f]) res.nullspace.emplace_back(cols, std::move(kernel[f]));
    return res;
}

std::size_t rank(const SparseMatrix& m) { return eliminate(m.row_data(), m.cols()).pivot_cols.size(); }

std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b)
{
    if (b.dim() != m.rows()) throw UsageError("solve: right-hand side has wrong dimension");
    const std::size_t cols = m.cols();
    std::vector<SparseVec> aug;
    aug.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<SparseEntry> e(m.row(i).begin(), m.row(i).end());
        e.push_back({uint32_t(cols), b.at(i)});
        aug.emplace_back(cols + 1, std::move(e));
    }
    Echelon ech = eliminate(std::move(aug), cols + 1);
    if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == cols) return std::nullopt;
    back_substitute(ech, cols + 1);
    SparseVec x(cols);
    for (std::size_t k = 0; k < ech.pivot_cols.size(); ++k)
        x.push_back(ech.pivot_cols[k], ech.rows[ech.pivot_rows[k]].at(cols));
    return x;
}

std::size_t rank_delta(const SparseMatrix& m, std::span<const SparseVec> extra)
{
    SparseMatrix stacked = m;
    for (const auto& v : extra) {
        if (v.dim() != m.cols()) throw UsageError("rank_delta: extra vector has wrong dimension");
        stacked.append_row(v);
    }
    return rank(stacked) - rank(m);
}

// ------------------------------------------------------------ EchelonBasis

SparseVec EchelonBasis::reduce(const SparseVec& v) const
{
    if (v.dim() != dim_) throw UsageError("EchelonBasis::reduce: dimension mismatch");
    SparseVec r = v;
    for (const auto& e : v)
        if (slot_[e.index] >= 0) r.axpy(-e.coeff, basis_[slot_[e.index]]);
    return r;
}

bool EchelonBasis::insert(const SparseVec& v)
{
    SparseVec r = reduce(v);
    if (r.empty()) return false;
    const uint32_t lead = r.begin()->index;
    r = r.scaled(field_inv(r.begin()->coeff));
    for (auto& b : basis_) {
        Fp c = b.at(lead);
        if (!c.is_zero()) b.axpy(-c, r);
    }
    slot_[lead] = int(basis_.size());
    basis_.push_back(std::move(r));
    lead_.push_back(lead);
    return true;
}

std::vector<SparseVec> EchelonBasis::basis() const
{
    std::vector<SparseVec> out;
    out.reserve(basis_.size());
    for (std::size_t i = 0; i < dim_; ++i)
        if (slot_[i] >= 0) out.push_back(basis_[slot_[i]]);
    return out;
}

std::vector<uint32_t> EchelonBasis::pivots() const
{
    std::vector<uint32_t> p = lead_;
    std::sort(p.begin(), p.end());
    return p;
}

// --------------------------------------------------------- StreamingKernel

StreamingKernel::StreamingKernel(std::size_t dim)
    : dim_(dim), k_(dim), stride_((dim + 31) / 32 * 32), n_(dim * stride_, 0), acc_(stride_, 0)
{
    for (std::size_t c = 0; c < dim_; ++c) n_[c * stride_ + c] = 1;
}

bool StreamingKernel::add_row(std::span<const SparseEntry> row)
{
    if (k_ == 0 || row.empty()) return false;
    uint16_t* acc = acc_.data();
    std::fill(acc, acc + k_, 0);
    std::size_t pending = 0;
    for (const auto& e : row) {
        if (e.index >= dim_) throw UsageError("StreamingKernel::add_row: index out of range");
        const uint8_t* src = &n_[e.index * stride_];
        const uint16_t c = e.coeff.value();
        for (std::size_t j = 0; j < k_; ++j) acc[j] = uint16_t(acc[j] + c * src[j]);
        if (++pending == 3000) {
            for (std::size_t j = 0; j < k_; ++j) acc[j] %= kP;
            pending = 0;
        }
    }
    std::size_t j0 = k_;
    for (std::size_t j = 0; j < k_; ++j) {
        acc[j] %= kP;
        if (acc[j] && j0 == k_) j0 = j;
    }
    if (j0 == k_) return false;

    // Column j0 is the pivot; fold it into every column the row sees, then drop it.
    const uint8_t inv = kInv[acc[j0]];
    std::vector<uint8_t> alpha(k_);
    for (std::size_t j = 0; j < k_; ++j) alpha[j] = uint8_t((kP - (acc[j] * inv) % kP) % kP);
    alpha[j0] = 0;
    const std::size_t last = k_ - 1;
    for (std::size_t c = 0; c < dim_; ++c) {
        uint8_t* dst = &n_[c * stride_];
        const uint16_t v = dst[j0];
        if (v) {
            for (std::size_t j = 0; j < k_; ++j) dst[j] = uint8_t(mod5_small(uint16_t(dst[j] + v * alpha[j])));
        }
        dst[j0] = dst[last];
        dst[last] = 0;
    }
    --k_;
    return true;
}

std::vector<SparseVec> StreamingKernel::kernel() const
{
    EchelonBasis eb(dim_);
    for (std::size_t j = 0; j < k_; ++j) {
        SparseVec v(dim_);
        for (std::size_t c = 0; c < dim_; ++c) v.push_back(uint32_t(c), Fp::raw(n_[c * stride_ + j]));
        eb.insert(v);
    }
    if (eb.size() != k_) throw VerificationError("StreamingKernel: kernel basis lost independence");
    return eb.basis();
}

// ---------------------------------------------------------------- triplets

void write_triplets(std::ostream& os, const SparseMatrix& m)
{
    os << m.rows() << ' ' << m.cols() << ' ' << kP << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (const auto& e : m.row(i)) os << (i + 1) << ' ' << (e.index + 1) << ' ' << int(e.coeff.value()) << '\n';
    os << "0 0 0\n";
}

SparseMatrix read_triplets(std::istream& is)
{
    std::size_t rows = 0, cols = 0;
    unsigned mod = 0;
    if (!(is >> rows >> cols >> mod)) throw UsageError("read_triplets: missing header");
    if (mod != kP) throw UsageError("read_triplets: modulus " + std::to_string(mod) + " is not " + std::to_string(kP));
    std::vector<std::vector<SparseEntry>> data(rows);
    for (;;) {
        long long i = 0, j = 0, v = 0;
        if (!(is >> i >> j >> v)) throw UsageError("read_triplets: missing 0 0 0 terminator");
        if (i == 0 && j == 0 && v == 0) break;
        if (i < 1 || j < 1 || std::size_t(i) > rows || std::size_t(j) > cols)
            throw UsageError("read_triplets: index out of range");
        data[i - 1].push_back({uint32_t(j - 1), Fp(int(v % kP))});
    }
    SparseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) m.set_row(i, SparseVec(cols, std::move(data[i])));
    return m;
}

}  // namespace melcoh
