#include "melcoh/cochains.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "melcoh/parallel.hpp"

namespace melcoh {

namespace {

constexpr int kTupleBits = 10;

int weight_key(Weight w) { return w.w1 * int(kP) + w.w2; }

uint64_t pack(std::span<const uint16_t> tuple, uint16_t target)
{
    uint64_t key = target;
    for (auto e : tuple) key = (key << kTupleBits) | e;
    return key;
}

// Sorts a small tuple in place; returns the sign of the permutation or 0 on a repeat.
int sort_with_sign(std::span<uint16_t> t)
{
    int sign = 1;
    for (std::size_t i = 1; i < t.size(); ++i)
        for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
            if (t[j - 1] == t[j]) return 0;
            std::swap(t[j - 1], t[j]);
            sign = -sign;
        }
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i - 1] == t[i]) return 0;
    return sign;
}

// Bucket of module basis vectors by (weight, degree).
class TargetIndex {
public:
    explicit TargetIndex(const CoefficientModule& m)
    {
        for (std::size_t s = 0; s < m.dim(); ++s) {
            by_key_[key(m.weight(s), m.degree(s))].push_back(uint16_t(s));
            by_weight_[weight_key(m.weight(s))].push_back(uint16_t(s));
        }
    }
    const std::vector<uint16_t>* find(Weight w, int degree) const
    {
        auto it = by_key_.find(key(w, degree));
        return it == by_key_.end() ? nullptr : &it->second;
    }
    const std::vector<uint16_t>& with_weight(Weight w) const { return by_weight_[weight_key(w)]; }

private:
    static int64_t key(Weight w, int degree) { return int64_t(degree) * 64 + weight_key(w); }
    std::unordered_map<int64_t, std::vector<uint16_t>> by_key_;
    std::vector<uint16_t> by_weight_[kP * kP];
};

// Visits strictly increasing n-tuples of [0, size) with their weight and degree sums.
template <class F>
void for_each_tuple(int n, const Domain& dom, F&& f)
{
    std::vector<uint16_t> t(std::size_t(std::max(n, 0)));
    const int size = int(dom.size());
    if (n == 0) {
        f(std::span<const uint16_t>(t), Weight{}, 0);
        return;
    }
    if (n > size) return;
    for (int i = 0; i < n; ++i) t[i] = uint16_t(i);
    for (;;) {
        Weight w;
        int d = 0;
        for (auto e : t) {
            w = w + dom.weight(e);
            d += dom.degree(e);
        }
        f(std::span<const uint16_t>(t), w, d);
        int i = n - 1;
        while (i >= 0 && t[i] == size - n + i) --i;
        if (i < 0) return;
        ++t[i];
        for (int j = i + 1; j < n; ++j) t[j] = uint16_t(t[j - 1] + 1);
    }
}

}  // namespace

// ------------------------------------------------------------------ Domain

Domain::Domain(const LieAlgebra& alg, std::vector<std::size_t> gens, std::string name, std::optional<int> truncate_at)
    : alg_(&alg), name_(std::move(name)), gens_(std::move(gens)), local_(alg.dim(), -1), truncate_at_(truncate_at)
{
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    if (gens_.size() >= (1u << kTupleBits)) throw UsageError("Domain: too many generators");
    for (std::size_t i = 0; i < gens_.size(); ++i) local_[gens_[i]] = int(i);
    if (truncate_at_)
        for (auto g : gens_)
            if (alg.degree(g) >= *truncate_at_) throw UsageError("Domain: generator above the truncation window");
    table_.resize(size() * size());
    for (std::size_t a = 0; a < size(); ++a)
        for (std::size_t b = 0; b < size(); ++b) table_[a * size() + b] = bracket_from(gens_[a], b);
}

Domain Domain::graded(const LieAlgebra& alg, DegreePredicate pred, std::string name, std::optional<int> truncate_at)
{
    std::vector<std::size_t> gens;
    for (auto i : graded_indices(alg, pred))
        if (!truncate_at || alg.degree(i) < *truncate_at) gens.push_back(i);
    return Domain(alg, std::move(gens), std::move(name), truncate_at);
}

std::vector<SparseEntry> Domain::bracket_from(std::size_t ambient_x, std::size_t b) const
{
    std::vector<SparseEntry> out;
    for (const auto& e : alg_->bracket_basis(ambient_x, gens_[b])) {
        if (truncate_at_ && alg_->degree(e.index) >= *truncate_at_) continue;
        if (local_[e.index] < 0)
            throw UsageError("domain " + name_ + " is not normalized by " + alg_->element(ambient_x).name());
        out.push_back({uint32_t(local_[e.index]), e.coeff});
    }
    std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.index < y.index; });
    return out;
}

bool Domain::contains_torus() const
{
    return contains(alg_->index_of("x^(1,0)D_1")) && contains(alg_->index_of("x^(0,1)D_2"));
}

// ------------------------------------------------------- CoefficientModule

CoefficientModule::CoefficientModule(std::string name, std::vector<std::string> names, std::vector<int> degrees,
                                     std::vector<Weight> weights, std::vector<char> acting,
                                     std::vector<std::vector<SparseVec>> action)
    : name_(std::move(name)), names_(std::move(names)), degree_(std::move(degrees)), weight_(std::move(weights)),
      acting_(std::move(acting)), action_(std::move(action))
{
    const std::size_t m = degree_.size();
    if (names_.size() != m || weight_.size() != m) throw UsageError("CoefficientModule: inconsistent sizes");
    if (m >= (1u << 16)) throw UsageError("CoefficientModule: dimension too large");
    preimages_.resize(action_.size());
    for (std::size_t g = 0; g < action_.size(); ++g) {
        if (!acts(g)) continue;
        if (action_[g].size() != m) throw UsageError("CoefficientModule: action table has wrong size");
        preimages_[g].resize(m);
        for (std::size_t s = 0; s < m; ++s)
            for (const auto& e : action_[g][s]) preimages_[g][e.index].push_back({uint32_t(s), e.coeff});
    }
}

const SparseVec& CoefficientModule::act(std::size_t g, std::size_t s) const
{
    if (!acts(g)) throw UsageError("module " + name_ + " has no action of generator " + std::to_string(g));
    return action_[g][s];
}

const std::vector<SparseEntry>& CoefficientModule::preimages(std::size_t g, std::size_t t) const
{
    if (!acts(g)) throw UsageError("module " + name_ + " has no action of generator " + std::to_string(g));
    return preimages_[g][t];
}

CoefficientModule CoefficientModule::adjoint(const LieAlgebra& alg)
{
    const std::size_t n = alg.dim();
    std::vector<std::string> names;
    std::vector<int> degrees;
    std::vector<Weight> weights;
    std::vector<std::vector<SparseVec>> action(n);
    for (std::size_t s = 0; s < n; ++s) {
        names.push_back(alg.element(s).name());
        degrees.push_back(alg.degree(s));
        weights.push_back(alg.weight(s));
    }
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t s = 0; s < n; ++s) action[g].push_back(alg.bracket_basis(g, s));
    return CoefficientModule("adjoint", std::move(names), std::move(degrees), std::move(weights),
                             std::vector<char>(n, 1), std::move(action));
}

CoefficientModule CoefficientModule::minus3(const LieAlgebra& alg)
{
    const std::size_t d1 = alg.index_of_symbol("D1"), d2 = alg.index_of_symbol("D2");
    const std::size_t tgt[2] = {d1, d2};
    std::vector<char> acting(alg.dim(), 0);
    std::vector<std::vector<SparseVec>> action(alg.dim());
    for (std::size_t g = 0; g < alg.dim(); ++g) {
        if (alg.degree(g) < 0) continue;
        acting[g] = 1;
        for (std::size_t s = 0; s < 2; ++s) {
            const SparseVec& b = alg.bracket_basis(g, tgt[s]);
            SparseVec v(2);
            v.push_back(0, b.at(d1));
            v.push_back(1, b.at(d2));
            action[g].push_back(std::move(v));
        }
    }
    return CoefficientModule("m-3", {alg.element(d1).name(), alg.element(d2).name()},
                             {alg.degree(d1), alg.degree(d2)}, {alg.weight(d1), alg.weight(d2)}, std::move(acting),
                             std::move(action));
}

CoefficientModule CoefficientModule::maps_to_minus3(const LieAlgebra& alg, int d)
{
    if (d < 1) throw UsageError("maps_to_minus3: degree must be positive");
    const CoefficientModule m3 = minus3(alg);
    const auto src = graded_indices(alg, {DegreeRelation::Eq, d});
    std::vector<int> pos(alg.dim(), -1);
    for (std::size_t k = 0; k < src.size(); ++k) pos[src[k]] = int(k);

    std::vector<std::string> names;
    std::vector<int> degrees;
    std::vector<Weight> weights;
    for (auto s : src)
        for (std::size_t t = 0; t < 2; ++t) {
            names.push_back("delta[" + alg.element(s).name() + "->" + m3.basis_name(t) + "]");
            degrees.push_back(m3.degree(t) - alg.degree(s));
            weights.push_back(m3.weight(t) - alg.weight(s));
        }
    const std::size_t dim = names.size();
    std::vector<char> acting(alg.dim(), 0);
    std::vector<std::vector<SparseVec>> action(alg.dim());
    for (std::size_t g = 0; g < alg.dim(); ++g) {
        if (alg.degree(g) != 0) continue;
        acting[g] = 1;
        for (std::size_t k = 0; k < src.size(); ++k)
            for (std::size_t t = 0; t < 2; ++t) {
                std::vector<SparseEntry> e;
                // g . f(s) part: f = delta[s_k -> t]
                for (const auto& a : m3.act(g, t)) e.push_back({uint32_t(k * 2 + a.index), a.coeff});
                // -f([g, s']) part: s' with [g, s'] touching s_k
                for (std::size_t k2 = 0; k2 < src.size(); ++k2) {
                    Fp c = alg.bracket_basis(g, src[k2]).at(src[k]);
                    if (!c.is_zero()) e.push_back({uint32_t(k2 * 2 + t), -c});
                }
                action[g].emplace_back(dim, std::move(e));
            }
    }
    return CoefficientModule("C1(M_" + std::to_string(d) + ",m-3)", std::move(names), std::move(degrees),
                             std::move(weights), std::move(acting), std::move(action));
}

CoefficientModule CoefficientModule::submodule(const CoefficientModule& parent, const std::vector<SparseVec>& span,
                                               std::string name)
{
    EchelonBasis eb(parent.dim());
    for (const auto& v : span) eb.insert(v);
    const auto basis = eb.basis();
    const auto piv = eb.pivots();
    std::vector<std::string> names;
    std::vector<int> degrees;
    std::vector<Weight> weights;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const auto lead = basis[k].begin()->index;
        for (const auto& e : basis[k])
            if (parent.degree(e.index) != parent.degree(lead) || parent.weight(e.index) != parent.weight(lead))
                throw UsageError("submodule: basis vector is not homogeneous");
        names.push_back(parent.basis_name(lead) + (basis[k].nnz() > 1 ? "+..." : ""));
        degrees.push_back(parent.degree(lead));
        weights.push_back(parent.weight(lead));
    }
    auto coords = [&](const SparseVec& v) {
        SparseVec c(basis.size()), back(parent.dim());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            Fp x = v.at(piv[k]);
            c.push_back(uint32_t(k), x);
            back.axpy(x, basis[k]);
        }
        if (!(back == v)) throw UsageError("submodule: span is not stable under the action");
        return c;
    };
    std::vector<char> acting(parent.acting_);
    std::vector<std::vector<SparseVec>> action(acting.size());
    for (std::size_t g = 0; g < acting.size(); ++g) {
        if (!acting[g]) continue;
        for (const auto& b : basis) {
            SparseVec img(parent.dim());
            for (const auto& e : b) img.axpy(e.coeff, parent.act(g, e.index));
            action[g].push_back(coords(img));
        }
    }
    return CoefficientModule(std::move(name), std::move(names), std::move(degrees), std::move(weights),
                             std::move(acting), std::move(action));
}

std::size_t CoefficientModule::module_law_violations(const LieAlgebra& alg, const std::vector<std::size_t>& gens) const
{
    std::size_t bad = 0;
    for (std::size_t a = 0; a < gens.size(); ++a)
        for (std::size_t b = a + 1; b < gens.size(); ++b) {
            const std::size_t x = gens[a], y = gens[b];
            bool ok = true;
            for (std::size_t m = 0; m < dim() && ok; ++m) {
                SparseVec lhs(dim());
                for (const auto& e : alg.bracket_basis(x, y)) {
                    if (!acts(e.index)) {
                        ok = false;
                        break;
                    }
                    lhs.axpy(e.coeff, act(e.index, m));
                }
                if (!ok) break;
                SparseVec rhs(dim());
                for (const auto& e : act(y, m)) rhs.axpy(e.coeff, act(x, e.index));
                for (const auto& e : act(x, m)) rhs.axpy(-e.coeff, act(y, e.index));
                ok = lhs == rhs;
            }
            if (!ok) ++bad;
        }
    return bad;
}

// ------------------------------------------------------------ CochainBlock

void for_each_cochain(int n, Weight weight, int degree, const Domain& domain, const CoefficientModule& coeff,
                      const std::function<void(std::span<const uint16_t>, uint16_t)>& visit)
{
    TargetIndex targets(coeff);
    for_each_tuple(n, domain, [&](std::span<const uint16_t> t, Weight w, int d) {
        if (const auto* bucket = targets.find(weight + w, degree + d))
            for (auto s : *bucket) visit(t, s);
    });
}

std::vector<int> cochain_degrees(int n, Weight weight, const Domain& domain, const CoefficientModule& coeff)
{
    TargetIndex targets(coeff);
    std::set<int> degrees;
    for_each_tuple(n, domain, [&](std::span<const uint16_t>, Weight w, int d) {
        for (auto s : targets.with_weight(weight + w)) degrees.insert(coeff.degree(s) - d);
    });
    return {degrees.begin(), degrees.end()};
}

CochainBlock::CochainBlock(int n, Weight weight, int degree, const Domain& domain, const CoefficientModule& coeff)
    : n_(n), weight_(weight), degree_(degree), domain_(&domain), coeff_(&coeff)
{
    if (n < 0 || n > 5) throw UsageError("CochainBlock: arity must be in [0, 5]");
    for_each_cochain(n, weight, degree, domain, coeff, [&](std::span<const uint16_t> t, uint16_t s) {
        index_.emplace(pack(t, s), uint32_t(targets_.size()));
        tuples_.insert(tuples_.end(), t.begin(), t.end());
        targets_.push_back(s);
    });
}

std::optional<std::size_t> CochainBlock::find(std::span<const uint16_t> tuple, uint16_t target) const
{
    auto it = index_.find(pack(tuple, target));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string CochainBlock::id() const
{
    return "n=" + std::to_string(n_) + ",w=" + weight_.str() + ",d=" + std::to_string(degree_);
}

std::string CochainBlock::describe(std::size_t i) const
{
    std::string s = "(";
    auto t = tuple(i);
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k) s += ", ";
        s += domain_->ambient().element(domain_->gen(t[k])).name();
    }
    return s + ") -> " + coeff_->basis_name(target(i));
}

BlockId parse_block_id(const std::string& id)
{
    BlockId b;
    int w1 = 0, w2 = 0, used = 0;
    if (std::sscanf(id.c_str(), "n=%d,w=(%d,%d),d=%d%n", &b.n, &w1, &w2, &b.degree, &used) != 4 ||
        used != int(id.size()) || b.n < 0)
        throw UsageError("malformed block id '" + id + "', expected n=<n>,w=(<w1>,<w2>),d=<degree>");
    b.weight = Weight(w1, w2);
    return b;
}

CochainBlock enumerate_block(int n, Weight weight, int degree, const Domain& domain, const CoefficientModule& coeff)
{
    return CochainBlock(n, weight, degree, domain, coeff);
}

// ------------------------------------------------------------ differential

namespace {

std::size_t require(const CochainBlock& b, std::span<const uint16_t> tuple, uint16_t target)
{
    auto idx = b.find(tuple, target);
    if (!idx) throw VerificationError("cochain outside its weight-degree block: " + b.id());
    return *idx;
}

void differential_entries(const CochainBlock& src, std::span<const uint16_t> sigma, uint16_t t,
                          std::vector<SparseEntry>& out)
{
    out.clear();
    const int n = src.arity();
    const Domain& dom = src.domain();
    const CoefficientModule& coeff = src.coeff();
    uint16_t buf[8];
    // sum_i (-1)^i sigma_i . f(..., ^sigma_i, ...)
    for (int i = 0; i <= n; ++i) {
        int k = 0;
        for (int j = 0; j <= n; ++j)
            if (j != i) buf[k++] = sigma[j];
        const std::span<const uint16_t> tau(buf, std::size_t(n));
        const Fp sign = (i % 2) ? Fp(-1) : Fp(1);
        for (const auto& pre : coeff.preimages(dom.gen(sigma[i]), t))
            out.push_back({uint32_t(require(src, tau, uint16_t(pre.index))), sign * pre.coeff});
    }
    // sum_{p<q} (-1)^{p+q} f([sigma_p, sigma_q], ..., ^p, ^q, ...)
    for (int p = 0; p <= n; ++p)
        for (int q = p + 1; q <= n; ++q) {
            const auto& br = dom.bracket(sigma[p], sigma[q]);
            if (br.empty()) continue;
            uint16_t rest[8];
            int r = 0;
            for (int j = 0; j <= n; ++j)
                if (j != p && j != q) rest[r++] = sigma[j];
            for (const auto& e : br) {
                // insert e.index into rest at its sorted position
                int pos = 0;
                bool dup = false;
                while (pos < r && rest[pos] <= e.index) {
                    if (rest[pos] == e.index) dup = true;
                    ++pos;
                }
                if (dup) continue;
                int k = 0;
                for (int j = 0; j < pos; ++j) buf[k++] = rest[j];
                buf[k++] = uint16_t(e.index);
                for (int j = pos; j < r; ++j) buf[k++] = rest[j];
                const Fp sign = ((p + q + pos) % 2) ? Fp(-1) : Fp(1);
                out.push_back({uint32_t(require(src, std::span<const uint16_t>(buf, std::size_t(n)), t)),
                               sign * e.coeff});
            }
        }
}

}  // namespace

SparseVec differential_row(const CochainBlock& src, std::span<const uint16_t> tuple, uint16_t target)
{
    if (int(tuple.size()) != src.arity() + 1) throw UsageError("differential_row: tuple has wrong arity");
    std::vector<SparseEntry> e;
    differential_entries(src, tuple, target, e);
    return SparseVec(src.size(), std::move(e));
}

DifferentialMatrix differential(const CochainBlock& src)
{
    CochainBlock dst(src.arity() + 1, src.weight(), src.degree(), src.domain(), src.coeff());
    SparseMatrix m(dst.size(), src.size());
    std::vector<SparseEntry> e;
    for (std::size_t i = 0; i < dst.size(); ++i) {
        differential_entries(src, dst.tuple(i), dst.target(i), e);
        m.set_row(i, SparseVec(src.size(), e));
    }
    return {src, std::move(dst), std::move(m)};
}

KernelResult differential_kernel(const CochainBlock& src, const std::vector<SparseVec>* within, bool want_basis)
{
    KernelResult res;
    const std::size_t k = within ? within->size() : src.size();
    // coordinate -> (within index, value)
    std::vector<std::vector<SparseEntry>> transform;
    if (within) {
        transform.resize(src.size());
        for (std::size_t j = 0; j < within->size(); ++j)
            for (const auto& e : (*within)[j]) transform[e.index].push_back({uint32_t(j), e.coeff});
    }
    StreamingKernel ker(k);
    std::vector<SparseEntry> row, mapped;
    for_each_cochain(src.arity() + 1, src.weight(), src.degree(), src.domain(), src.coeff(),
                     [&](std::span<const uint16_t> t, uint16_t s) {
                         ++res.rows;
                         if (ker.kernel_dim() == 0) return;
                         differential_entries(src, t, s, row);
                         if (within) {
                             mapped.clear();
                             for (const auto& e : row)
                                 for (const auto& m : transform[e.index])
                                     mapped.push_back({m.index, e.coeff * m.coeff});
                             ker.add_row(SparseVec(k, mapped));
                         } else {
                             ker.add_row(std::span<const SparseEntry>(row));
                         }
                     });
    res.kernel_dim = ker.kernel_dim();
    if (want_basis) res.basis = ker.kernel();
    return res;
}

SparseVec evaluate_cochain(const CochainBlock& block, const SparseVec& f, std::span<const uint16_t> args)
{
    if (int(args.size()) != block.arity()) throw UsageError("evaluate_cochain: wrong number of arguments");
    std::vector<uint16_t> t(args.begin(), args.end());
    const int sign = sort_with_sign(t);
    SparseVec out(block.coeff().dim());
    if (sign == 0) return out;
    std::vector<SparseEntry> e;
    for (std::size_t s = 0; s < block.coeff().dim(); ++s)
        if (auto idx = block.find(t, uint16_t(s))) e.push_back({uint32_t(s), f.at(*idx) * Fp(sign)});
    return SparseVec(out.dim(), std::move(e));
}

namespace {

ActionMatrix action_impl(std::size_t gamma, const CochainBlock& block, bool project)
{
    const Domain& dom = block.domain();
    const LieAlgebra& alg = dom.ambient();
    const CoefficientModule& coeff = block.coeff();
    if (!coeff.acts(gamma))
        throw UsageError("cochain_action: " + alg.element(gamma).name() + " does not act on " + coeff.name());
    CochainBlock dst(block.arity(), block.weight() + alg.weight(gamma), block.degree() + alg.degree(gamma), dom,
                     coeff);
    // [gamma, g_b] in local coordinates, optionally dropping components outside the domain.
    std::vector<std::vector<SparseEntry>> ad(dom.size());
    for (std::size_t b = 0; b < dom.size(); ++b) {
        if (!project) {
            ad[b] = dom.bracket_from(gamma, b);
            continue;
        }
        for (const auto& e : alg.bracket_basis(gamma, dom.gen(b))) {
            if (dom.truncation() && alg.degree(e.index) >= *dom.truncation()) continue;
            if (dom.contains(e.index)) ad[b].push_back({uint32_t(dom.local_of(e.index)), e.coeff});
        }
    }
    SparseMatrix m(dst.size(), block.size());
    std::vector<uint16_t> buf;
    for (std::size_t r = 0; r < dst.size(); ++r) {
        auto sigma = dst.tuple(r);
        const uint16_t t = dst.target(r);
        std::vector<SparseEntry> e;
        for (const auto& pre : coeff.preimages(gamma, t))
            if (auto idx = block.find(sigma, uint16_t(pre.index))) e.push_back({uint32_t(*idx), pre.coeff});
        for (std::size_t i = 0; i < sigma.size(); ++i)
            for (const auto& x : ad[sigma[i]]) {
                buf.assign(sigma.begin(), sigma.end());
                buf[i] = uint16_t(x.index);
                const int sign = sort_with_sign(buf);
                if (!sign) continue;
                if (auto idx = block.find(buf, t)) e.push_back({uint32_t(*idx), -x.coeff * Fp(sign)});
            }
        m.set_row(r, SparseVec(block.size(), std::move(e)));
    }
    return {std::move(dst), std::move(m)};
}

}  // namespace

ActionMatrix cochain_action(std::size_t gamma, const CochainBlock& block) { return action_impl(gamma, block, false); }

ActionMatrix contraction(std::size_t gamma, const CochainBlock& block)
{
    const Domain& dom = block.domain();
    if (!dom.contains(gamma)) throw UsageError("contraction: generator outside the domain");
    if (block.arity() == 0) throw UsageError("contraction: arity 0");
    const uint16_t g = uint16_t(dom.local_of(gamma));
    const LieAlgebra& alg = dom.ambient();
    CochainBlock dst(block.arity() - 1, block.weight() + alg.weight(gamma), block.degree() + alg.degree(gamma), dom,
                     block.coeff());
    SparseMatrix m(dst.size(), block.size());
    std::vector<uint16_t> buf;
    for (std::size_t r = 0; r < dst.size(); ++r) {
        buf.assign(1, g);
        auto sigma = dst.tuple(r);
        buf.insert(buf.end(), sigma.begin(), sigma.end());
        const int sign = sort_with_sign(buf);
        if (!sign) continue;
        if (auto idx = block.find(buf, dst.target(r))) m.set_row(r, SparseVec::unit(block.size(), *idx, Fp(sign)));
    }
    return {std::move(dst), std::move(m)};
}

SparseMatrix restriction_map(const CochainBlock& src, const CochainBlock& dst, const std::vector<SparseVec>& coeff_map)
{
    if (src.arity() != dst.arity()) throw UsageError("restriction_map: arity mismatch");
    if (coeff_map.size() != src.coeff().dim()) throw UsageError("restriction_map: coefficient map has wrong size");
    const Domain& from = src.domain();
    const Domain& to = dst.domain();
    SparseMatrix cols(src.size(), dst.size());
    std::vector<uint16_t> t(std::size_t(src.arity()));
    for (std::size_t i = 0; i < src.size(); ++i) {
        bool inside = true;
        auto sigma = src.tuple(i);
        for (std::size_t k = 0; k < sigma.size() && inside; ++k) {
            const std::size_t g = from.gen(sigma[k]);
            inside = to.contains(g);
            if (inside) t[k] = uint16_t(to.local_of(g));
        }
        if (!inside) continue;
        std::vector<SparseEntry> e;
        for (const auto& c : coeff_map[src.target(i)]) {
            auto idx = dst.find(t, uint16_t(c.index));
            if (!idx) throw VerificationError("restriction_map: image outside block " + dst.id());
            e.push_back({uint32_t(*idx), c.coeff});
        }
        cols.set_row(i, SparseVec(dst.size(), std::move(e)));
    }
    return cols.transpose();
}

// ------------------------------------------------------------- cohomology

std::size_t CohomologyReport::total() const
{
    std::size_t t = 0;
    for (const auto& b : blocks) t += b.h;
    return t;
}

std::size_t CohomologyReport::total_at(Weight w, int degree) const
{
    std::size_t t = 0;
    for (const auto& b : blocks)
        if (b.weight == w && b.degree == degree) t += b.h;
    return t;
}

std::vector<Weight> cohomology_weights(const Domain& domain)
{
    if (domain.contains_torus()) return {Weight{}};
    std::vector<Weight> all;
    for (int a = 0; a < int(kP); ++a)
        for (int b = 0; b < int(kP); ++b) all.push_back({a, b});
    return all;
}

namespace {

std::size_t image_rank(const CochainBlock& prev)
{
    if (prev.empty()) return 0;
    return rank(differential(prev).matrix);
}

BlockCohomology block_cohomology(int n, Weight w, int d, const Domain& domain, const CoefficientModule& coeff)
{
    BlockCohomology b;
    b.weight = w;
    b.degree = d;
    CochainBlock cur(n, w, d, domain, coeff);
    b.dim_cur = cur.size();
    if (n > 0) {
        CochainBlock prev(n - 1, w, d, domain, coeff);
        b.dim_prev = prev.size();
        b.rank_prev = image_rank(prev);
    }
    auto ker = differential_kernel(cur);
    b.dim_next = ker.rows;
    b.kernel = ker.kernel_dim;
    if (b.kernel < b.rank_prev) throw VerificationError("d o d != 0 on block " + cur.id());
    b.h = b.kernel - b.rank_prev;
    return b;
}

}  // namespace

CohomologyReport cohomology_dim(int n, Weight weight, const Domain& domain, const CoefficientModule& coeff,
                                const EngineOptions& opts)
{
    CohomologyReport rep;
    rep.n = n;
    rep.domain = domain.name();
    rep.coeff = coeff.name();
    std::vector<int> degrees = cochain_degrees(n, weight, domain, coeff);
    if (opts.degree)
        degrees.erase(std::remove_if(degrees.begin(), degrees.end(), [&](int d) { return d != *opts.degree; }),
                      degrees.end());
    rep.blocks.resize(degrees.size());
    parallel_for(degrees.size(), opts.threads,
                 [&](std::size_t i) { rep.blocks[i] = block_cohomology(n, weight, degrees[i], domain, coeff); });
    return rep;
}

CohomologyReport cohomology_dim(int n, const Domain& domain, const CoefficientModule& coeff, const EngineOptions& opts)
{
    CohomologyReport rep;
    rep.n = n;
    rep.domain = domain.name();
    rep.coeff = coeff.name();
    for (Weight w : cohomology_weights(domain)) {
        auto part = cohomology_dim(n, w, domain, coeff, opts);
        rep.blocks.insert(rep.blocks.end(), part.blocks.begin(), part.blocks.end());
    }
    return rep;
}

// --------------------------------------------------------------- relative

RelativeBlock relative_block(int n, Weight weight, int degree, const Domain& domain, const Domain& complement,
                             const CoefficientModule& coeff)
{
    const LieAlgebra& alg = domain.ambient();
    std::vector<std::size_t> h;
    for (auto g : domain.gens())
        if (!complement.contains(g)) h.push_back(g);
    for (auto g : complement.gens())
        if (!domain.contains(g)) throw UsageError("relative_block: complement is not inside the domain");
    // h must be a subalgebra
    for (auto a : h)
        for (auto b : h)
            for (const auto& e : alg.bracket_basis(a, b))
                if (complement.contains(e.index)) throw UsageError("relative_block: h is not closed under bracket");

    RelativeBlock rb{CochainBlock(n, weight, degree, complement, coeff), {}};
    if (rb.full.empty()) return rb;
    std::vector<SparseVec> rows;
    for (auto g : h) {
        auto a = action_impl(g, rb.full, true);
        for (const auto& r : a.matrix.row_data()) rows.push_back(r);
    }
    rb.basis = rank_nullspace(SparseMatrix(rb.full.size(), std::move(rows))).nullspace;
    return rb;
}

std::size_t RelativeCohomology::total() const
{
    std::size_t t = 0;
    for (const auto& b : blocks) t += b.h;
    return t;
}

RelativeCohomology relative_cohomology(int n, const Domain& domain, const Domain& complement,
                                       const CoefficientModule& coeff, const EngineOptions& opts)
{
    RelativeCohomology out;
    for (Weight w : cohomology_weights(domain)) {
        std::vector<int> degrees = cochain_degrees(n, w, complement, coeff);
        if (opts.degree)
            degrees.erase(std::remove_if(degrees.begin(), degrees.end(), [&](int d) { return d != *opts.degree; }),
                          degrees.end());
        std::vector<BlockCohomology> part(degrees.size());
        parallel_for(degrees.size(), opts.threads, [&](std::size_t i) {
            BlockCohomology& b = part[i];
            b.weight = w;
            b.degree = degrees[i];
            RelativeBlock cur = relative_block(n, w, b.degree, domain, complement, coeff);
            b.dim_cur = cur.basis.size();
            if (n > 0) {
                RelativeBlock prev = relative_block(n - 1, w, b.degree, domain, complement, coeff);
                b.dim_prev = prev.basis.size();
                if (!prev.basis.empty()) {
                    DifferentialMatrix d = differential(prev.full);
                    EchelonBasis img(cur.full.size());
                    for (const auto& v : prev.basis) img.insert(d.matrix.multiply(v));
                    b.rank_prev = img.size();
                }
            }
            if (!cur.basis.empty()) {
                auto ker = differential_kernel(cur.full, &cur.basis);
                b.dim_next = ker.rows;
                b.kernel = ker.kernel_dim;
            }
            if (b.kernel < b.rank_prev) throw VerificationError("relative complex: d o d != 0");
            b.h = b.kernel - b.rank_prev;
        });
        out.blocks.insert(out.blocks.end(), part.begin(), part.end());
    }
    return out;
}

// ------------------------------------------------------------- invariants

InvariantCohomology invariant_cohomology(int n, const Domain& domain, const CoefficientModule& coeff,
                                         const std::vector<std::size_t>& actors, const EngineOptions& opts)
{
    const LieAlgebra& alg = domain.ambient();
    bool torus_acts = domain.contains_torus();
    {
        const auto t1 = alg.index_of("x^(1,0)D_1"), t2 = alg.index_of("x^(0,1)D_2");
        const bool a1 = std::find(actors.begin(), actors.end(), t1) != actors.end();
        const bool a2 = std::find(actors.begin(), actors.end(), t2) != actors.end();
        torus_acts = torus_acts || (a1 && a2);
    }
    if (!torus_acts) throw UsageError("invariant_cohomology: the torus must act");

    std::vector<int> degrees = cochain_degrees(n, Weight{}, domain, coeff);
    if (opts.degree)
        degrees.erase(std::remove_if(degrees.begin(), degrees.end(), [&](int d) { return d != *opts.degree; }),
                      degrees.end());

    struct Part {
        std::size_t dim = 0;
        std::vector<SparseVec> reps;
    };
    std::vector<Part> parts(degrees.size());
    parallel_for(degrees.size(), opts.threads, [&](std::size_t di) {
        const int d = degrees[di];
        CochainBlock cur(n, Weight{}, d, domain, coeff);
        auto z = differential_kernel(cur, nullptr, true);
        EchelonBasis b0(cur.size());
        if (n > 0) {
            CochainBlock prev(n - 1, Weight{}, d, domain, coeff);
            if (!prev.empty()) {
                auto dm = differential(prev).matrix.transpose();
                for (const auto& col : dm.row_data()) b0.insert(col);
            }
        }

        // residues of actor images modulo coboundaries of the target blocks
        std::vector<std::vector<SparseEntry>> eq_rows;
        for (auto g : actors) {
            ActionMatrix a = cochain_action(g, cur);
            const CochainBlock& dst = a.dst;
            EchelonBasis bt(dst.size());
            if (n > 0) {
                CochainBlock prev(n - 1, dst.weight(), dst.degree(), domain, coeff);
                if (!prev.empty()) {
                    auto dm = differential(prev).matrix.transpose();
                    for (const auto& col : dm.row_data()) bt.insert(col);
                }
            }
            for (const auto& v : b0.basis())
                if (!bt.contains(a.matrix.multiply(v)))
                    throw VerificationError("invariant_cohomology: coboundaries not stable under " +
                                            alg.element(g).name());
            std::vector<SparseVec> images;
            for (const auto& v : z.basis) images.push_back(a.matrix.multiply(v));
            // cocycles must map to cocycles
            if (!images.empty() && !dst.empty()) {
                std::vector<SparseEntry> row;
                for_each_cochain(n + 1, dst.weight(), dst.degree(), domain, coeff,
                                 [&](std::span<const uint16_t> t, uint16_t s) {
                                     SparseVec r = differential_row(dst, t, s);
                                     for (const auto& img : images)
                                         if (!dot(r, img).is_zero())
                                             throw VerificationError("invariant_cohomology: cocycles not stable under " +
                                                                     alg.element(g).name());
                                 });
            }
            const std::size_t base = eq_rows.size();
            eq_rows.resize(base + dst.size());
            for (std::size_t k = 0; k < images.size(); ++k)
                for (const auto& e : bt.reduce(images[k])) eq_rows[base + e.index].push_back({uint32_t(k), e.coeff});
        }
        SparseMatrix eq(eq_rows.size(), z.basis.size());
        for (std::size_t r = 0; r < eq_rows.size(); ++r) eq.set_row(r, SparseVec(z.basis.size(), eq_rows[r]));
        auto combos = rank_nullspace(eq).nullspace;
        EchelonBasis inv = b0;
        for (const auto& c : combos) {
            SparseVec v(cur.size());
            for (const auto& e : c) v.axpy(e.coeff, z.basis[e.index]);
            SparseVec r = b0.reduce(v);
            if (inv.insert(v)) parts[di].reps.push_back(r);
        }
        parts[di].dim = inv.size() - b0.size();
    });

    InvariantCohomology out;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (parts[i].dim) out.by_degree.push_back({degrees[i], parts[i].dim});
        out.dim += parts[i].dim;
        for (auto& r : parts[i].reps) out.representatives.push_back({degrees[i], std::move(r)});
    }
    return out;
}

}  // namespace melcoh
