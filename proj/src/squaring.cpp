#include "melcoh/squaring.hpp"

#include <map>

#include "melcoh/parallel.hpp"

namespace melcoh {

namespace {

// 1 / (i! (5-i)!) mod 5 for i = 1..4; the denominators are 4, 2, 2, 4.
constexpr Fp kSqCoeff[5] = {Fp(0), Fp(4), Fp(3), Fp(3), Fp(4)};

std::optional<int> uniform_shift(const LieAlgebra& alg, const std::vector<SparseVec>& images)
{
    std::optional<int> shift;
    for (std::size_t j = 0; j < images.size(); ++j)
        for (const auto& e : images[j]) {
            const int s = alg.degree(e.index) - alg.degree(j);
            if (shift && *shift != s) return std::nullopt;
            shift = s;
        }
    return shift;
}

}  // namespace

Derivation::Derivation(const LieAlgebra& alg, std::vector<SparseVec> images, std::string name)
    : images_(std::move(images)), name_(std::move(name)), degree_(uniform_shift(alg, images_))
{
}

Derivation Derivation::adjoint(const LieAlgebra& alg, const AlgebraElement& g, std::string name)
{
    if (g.dim() != alg.dim()) throw UsageError("Derivation::adjoint: element has wrong dimension");
    std::vector<SparseVec> images;
    for (std::size_t j = 0; j < alg.dim(); ++j) images.push_back(bracket(alg, g, alg.generator(j)));
    if (name.empty()) name = "ad(" + alg.format(g) + ")";
    return Derivation(alg, std::move(images), std::move(name));
}

Derivation Derivation::from_matrix(const LieAlgebra& alg, const SparseMatrix& m, std::string name)
{
    if (m.rows() != alg.dim() || m.cols() != alg.dim()) throw UsageError("Derivation: matrix must be dim x dim");
    auto cols = m.transpose();
    std::vector<SparseVec> images(cols.row_data().begin(), cols.row_data().end());
    if (leibniz_violations(alg, images)) throw UsageError("Derivation: matrix violates the Leibniz rule");
    return Derivation(alg, std::move(images), std::move(name));
}

SparseVec Derivation::apply(const SparseVec& x) const
{
    SparseVec out(dim());
    for (const auto& e : x) out.axpy(e.coeff, images_[e.index]);
    return out;
}

bool Derivation::is_zero() const
{
    for (const auto& v : images_)
        if (!v.empty()) return false;
    return true;
}

std::size_t leibniz_violations(const LieAlgebra& alg, const std::vector<SparseVec>& images)
{
    const std::size_t n = alg.dim();
    if (images.size() != n) throw UsageError("leibniz_violations: wrong number of images");
    auto apply = [&](const SparseVec& x) {
        SparseVec out(n);
        for (const auto& e : x) out.axpy(e.coeff, images[e.index]);
        return out;
    };
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const SparseVec lhs = apply(alg.bracket_basis(i, j));
            const SparseVec rhs =
                bracket(alg, images[i], alg.generator(j)) + bracket(alg, alg.generator(i), images[j]);
            if (!(lhs == rhs)) ++bad;
        }
    return bad;
}

SparseVec SqCocycle::value(std::size_t i, std::size_t j) const
{
    if (i >= dim_ || j >= dim_) throw UsageError("SqCocycle::value: index out of range");
    if (i == j) return SparseVec(dim_);
    if (i < j) return upper_[i * dim_ + j];
    return upper_[j * dim_ + i].scaled(Fp(-1));
}

bool SqCocycle::is_zero() const
{
    for (const auto& v : upper_)
        if (!v.empty()) return false;
    return true;
}

SqCocycle sq(const LieAlgebra& alg, const Derivation& gamma)
{
    const std::size_t n = alg.dim();
    if (gamma.dim() != n) throw UsageError("sq: derivation of another algebra");
    // iter[k][j] = gamma^k(b_j)
    std::vector<std::vector<SparseVec>> iter(kP);
    for (std::size_t j = 0; j < n; ++j) iter[0].push_back(alg.generator(j));
    for (std::size_t k = 1; k < kP; ++k)
        for (std::size_t j = 0; j < n; ++j) iter[k].push_back(gamma.apply(iter[k - 1][j]));

    SqCocycle c;
    c.name_ = "Sq(" + gamma.name() + ")";
    c.dim_ = n;
    c.upper_.assign(n * n, SparseVec(n));
    bool homogeneous = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            SparseVec v(n);
            for (std::size_t k = 1; k < kP; ++k) {
                if (iter[k][i].empty() || iter[kP - k][j].empty()) continue;
                v.axpy(kSqCoeff[k], bracket(alg, iter[k][i], iter[kP - k][j]));
            }
            for (const auto& e : v) {
                const int s = alg.degree(e.index) - alg.degree(i) - alg.degree(j);
                if (c.degree_ && *c.degree_ != s) homogeneous = false;
                c.degree_ = s;
            }
            c.upper_[i * n + j] = std::move(v);
        }
    if (!homogeneous) c.degree_.reset();
    return c;
}

Derivation named_derivation(const LieAlgebra& alg, const std::string& symbol)
{
    return Derivation::adjoint(alg, alg.generator(symbol), symbol);
}

SparseVec sq_coordinates(const SqCocycle& c, const CochainBlock& block)
{
    const Domain& dom = block.domain();
    if (block.arity() != 2 || dom.size() != c.dim() || block.coeff().dim() != c.dim())
        throw UsageError("sq_coordinates: block must be C^2 of the full algebra with adjoint coefficients");
    std::vector<SparseEntry> out;
    uint16_t t[2];
    for (std::size_t a = 0; a < dom.size(); ++a)
        for (std::size_t b = a + 1; b < dom.size(); ++b)
            for (const auto& e : c.value(dom.gen(a), dom.gen(b))) {
                t[0] = uint16_t(a);
                t[1] = uint16_t(b);
                auto idx = block.find(std::span<const uint16_t>(t, 2), uint16_t(e.index));
                if (!idx) throw VerificationError(c.name() + " has a value outside block " + block.id());
                out.push_back({uint32_t(*idx), e.coeff});
            }
    return SparseVec(block.size(), std::move(out));
}

std::size_t Certification::total() const
{
    std::size_t t = 0;
    for (const auto& e : entries) t += e.rank_delta;
    return t;
}

Certification certify_classes(const LieAlgebra& alg, const std::vector<SqCocycle>& cocycles, const EngineOptions& opts)
{
    std::map<int, std::vector<const SqCocycle*>> by_degree;
    for (const auto& c : cocycles) {
        if (!c.degree()) throw VerificationError(c.name() + " is zero or not homogeneous");
        by_degree[*c.degree()].push_back(&c);
    }
    const Domain dom = Domain::graded(alg, {DegreeRelation::Ge, alg.min_degree()}, "M");
    const CoefficientModule adj = CoefficientModule::adjoint(alg);

    Certification cert;
    std::vector<std::pair<int, std::vector<const SqCocycle*>>> work(by_degree.begin(), by_degree.end());
    cert.entries.resize(work.size());
    parallel_for(work.size(), opts.threads, [&](std::size_t w) {
        const int d = work[w].first;
        CertificationEntry& entry = cert.entries[w];
        entry.degree = d;
        CochainBlock block(2, Weight{}, d, dom, adj);
        std::vector<SparseVec> coords;
        for (const auto* c : work[w].second) {
            entry.cocycles.push_back(c->name());
            coords.push_back(sq_coordinates(*c, block));
        }
        for_each_cochain(3, Weight{}, d, dom, adj, [&](std::span<const uint16_t> t, uint16_t s) {
            const SparseVec row = differential_row(block, t, s);
            for (std::size_t k = 0; k < coords.size(); ++k)
                if (!dot(row, coords[k]).is_zero())
                    throw VerificationError(entry.cocycles[k] + " is not a cocycle");
            ++entry.rows_checked;
        });
        CochainBlock prev(1, Weight{}, d, dom, adj);
        SparseMatrix coboundaries = prev.empty() ? SparseMatrix(0, block.size()) : differential(prev).matrix.transpose();
        entry.rank_delta = rank_delta(coboundaries, coords);
    });
    return cert;
}

}  // namespace melcoh
