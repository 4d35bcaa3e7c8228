#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "melcoh/gfp.hpp"
#include "melcoh/melikian.hpp"

namespace melcoh {

/// A graded subalgebra of the ambient algebra spanned by generators, or a
/// quotient window M_{>=lo} / M_{>=hi}: bracket components of degree >= hi
/// are dropped.
class Domain {
public:
    Domain(const LieAlgebra& alg, std::vector<std::size_t> gens, std::string name,
           std::optional<int> truncate_at = std::nullopt);
    static Domain graded(const LieAlgebra& alg, DegreePredicate pred, std::string name,
                         std::optional<int> truncate_at = std::nullopt);

    const LieAlgebra& ambient() const { return *alg_; }
    const std::string& name() const { return name_; }
    std::size_t size() const { return gens_.size(); }
    std::size_t gen(std::size_t local) const { return gens_[local]; }
    const std::vector<std::size_t>& gens() const { return gens_; }
    int local_of(std::size_t ambient_index) const { return local_[ambient_index]; }
    bool contains(std::size_t ambient_index) const { return local_[ambient_index] >= 0; }
    int degree(std::size_t local) const { return alg_->degree(gens_[local]); }
    Weight weight(std::size_t local) const { return alg_->weight(gens_[local]); }
    std::optional<int> truncation() const { return truncate_at_; }

    /// [g_a, g_b] in local coordinates.
    const std::vector<SparseEntry>& bracket(std::size_t a, std::size_t b) const { return table_[a * size() + b]; }
    /// [x, g_b] for an ambient generator x normalizing the domain, in local coordinates.
    std::vector<SparseEntry> bracket_from(std::size_t ambient_x, std::size_t b) const;

    bool contains_torus() const;

private:
    const LieAlgebra* alg_;
    std::string name_;
    std::vector<std::size_t> gens_;
    std::vector<int> local_;
    std::optional<int> truncate_at_;
    std::vector<std::vector<SparseEntry>> table_;
};

/// Finite-dimensional module over (part of) the ambient algebra with a
/// homogeneous basis. act(g, s) is defined for every ambient generator g in
/// the acting set.
class CoefficientModule {
public:
    CoefficientModule(std::string name, std::vector<std::string> names, std::vector<int> degrees,
                      std::vector<Weight> weights, std::vector<char> acting,
                      std::vector<std::vector<SparseVec>> action);

    /// M acting on itself.
    static CoefficientModule adjoint(const LieAlgebra& alg);
    /// M_{-3} = <D1, D2> over M_{>=0}, through the projection onto M_0:
    /// M_0 acts by ad, M_{>=1} acts by zero.
    static CoefficientModule minus3(const LieAlgebra& alg);
    /// Linear maps M_d -> M_{-3} (d >= 1) over M_0:
    /// (g.f)(s) = g.f(s) - f([g, s]).
    static CoefficientModule maps_to_minus3(const LieAlgebra& alg, int d);
    /// The submodule spanned by homogeneous vectors of a parent module.
    static CoefficientModule submodule(const CoefficientModule& parent, const std::vector<SparseVec>& basis,
                                       std::string name);

    const std::string& name() const { return name_; }
    std::size_t dim() const { return degree_.size(); }
    int degree(std::size_t s) const { return degree_[s]; }
    Weight weight(std::size_t s) const { return weight_[s]; }
    const std::string& basis_name(std::size_t s) const { return names_[s]; }
    bool acts(std::size_t g) const { return g < acting_.size() && acting_[g]; }

    const SparseVec& act(std::size_t g, std::size_t s) const;
    /// All (s, c) with coefficient c of basis t in act(g, s).
    const std::vector<SparseEntry>& preimages(std::size_t g, std::size_t t) const;

    /// Generator pairs (x, y) from `gens` where [x,y].m != x.(y.m) - y.(x.m) for some m.
    std::size_t module_law_violations(const LieAlgebra& alg, const std::vector<std::size_t>& gens) const;

private:
    std::string name_;
    std::vector<std::string> names_;
    std::vector<int> degree_;
    std::vector<Weight> weight_;
    std::vector<char> acting_;
    std::vector<std::vector<SparseVec>> action_;
    std::vector<std::vector<std::vector<SparseEntry>>> preimages_;
};

/// Basis of the (weight, degree) piece of C^n(domain, coeff): alternating
/// cochains delta on strictly increasing generator tuples with a single
/// target basis vector.
class CochainBlock {
public:
    CochainBlock(int n, Weight weight, int degree, const Domain& domain, const CoefficientModule& coeff);

    int arity() const { return n_; }
    Weight weight() const { return weight_; }
    int degree() const { return degree_; }
    const Domain& domain() const { return *domain_; }
    const CoefficientModule& coeff() const { return *coeff_; }
    std::size_t size() const { return targets_.size(); }
    bool empty() const { return targets_.empty(); }

    /// Local domain indices of basis element i.
    std::span<const uint16_t> tuple(std::size_t i) const { return {&tuples_[i * std::size_t(n_)], std::size_t(n_)}; }
    uint16_t target(std::size_t i) const { return targets_[i]; }
    /// Index of the basis element (tuple, target); tuple must be strictly increasing.
    std::optional<std::size_t> find(std::span<const uint16_t> tuple, uint16_t target) const;

    /// "n=<n>,w=(<w1>,<w2>),d=<degree>"
    std::string id() const;
    std::string describe(std::size_t i) const;

private:
    int n_;
    Weight weight_;
    int degree_;
    const Domain* domain_;
    const CoefficientModule* coeff_;
    std::vector<uint16_t> tuples_;
    std::vector<uint16_t> targets_;
    std::unordered_map<uint64_t, uint32_t> index_;
};

struct BlockId {
    int n = 0;
    Weight weight;
    int degree = 0;
};
/// Parses "n=<n>,w=(<w1>,<w2>),d=<degree>"; throws UsageError on malformed input.
BlockId parse_block_id(const std::string& id);

/// Calls visit(tuple, target) for every basis element of the (weight, degree)
/// piece of C^n(domain, coeff), in canonical order, without storing them.
void for_each_cochain(int n, Weight weight, int degree, const Domain& domain, const CoefficientModule& coeff,
                      const std::function<void(std::span<const uint16_t>, uint16_t)>& visit);

/// Degrees d with a nonempty (weight, d) piece of C^n(domain, coeff).
std::vector<int> cochain_degrees(int n, Weight weight, const Domain& domain, const CoefficientModule& coeff);

CochainBlock enumerate_block(int n, Weight weight, int degree, const Domain& domain, const CoefficientModule& coeff);

/// Row of d^n at the basis element (tuple, target) of C^{n+1}, as a linear
/// functional on the coordinates of src.
SparseVec differential_row(const CochainBlock& src, std::span<const uint16_t> tuple, uint16_t target);

struct DifferentialMatrix {
    CochainBlock src;
    CochainBlock dst;
    SparseMatrix matrix;  // dst.size() x src.size()
};

DifferentialMatrix differential(const CochainBlock& src);

/// Kernel of d^n on a block, computed by streaming the rows of d^n.
/// If `within` is given, the kernel of d^n restricted to the span of those
/// vectors is returned in coordinates of that span.
struct KernelResult {
    std::size_t rows = 0;
    std::size_t kernel_dim = 0;
    std::vector<SparseVec> basis;
};
KernelResult differential_kernel(const CochainBlock& src, const std::vector<SparseVec>* within = nullptr,
                                 bool want_basis = false);

/// The full alternating function of a block vector evaluated on an
/// arbitrary (unsorted) tuple of local generators.
SparseVec evaluate_cochain(const CochainBlock& block, const SparseVec& f, std::span<const uint16_t> args);

/// f |-> gamma . f for an ambient generator gamma normalizing the domain.
/// Rows index the target block (weight + wt(gamma), degree + deg(gamma)).
struct ActionMatrix {
    CochainBlock dst;
    SparseMatrix matrix;
};
ActionMatrix cochain_action(std::size_t gamma, const CochainBlock& block);

/// Contraction f |-> f_gamma = f(gamma, ...) for a domain generator gamma.
/// Rows index the (weight + wt(gamma), degree + deg(gamma)) piece of C^{n-1}.
ActionMatrix contraction(std::size_t gamma, const CochainBlock& block);

/// Pullback of cochains along the inclusion of dst's domain into src's domain,
/// composed with a coefficient map: coeff_map[s] is the image of src's
/// coefficient basis vector s. Rows index dst.
SparseMatrix restriction_map(const CochainBlock& src, const CochainBlock& dst,
                             const std::vector<SparseVec>& coeff_map);

struct BlockCohomology {
    Weight weight;
    int degree = 0;
    std::size_t dim_prev = 0;
    std::size_t dim_cur = 0;
    std::size_t dim_next = 0;
    std::size_t rank_prev = 0;
    std::size_t kernel = 0;
    std::size_t h = 0;
};

struct CohomologyReport {
    int n = 0;
    std::string domain;
    std::string coeff;
    std::vector<BlockCohomology> blocks;  // only blocks with a nonzero cochain space
    std::size_t total() const;
    std::size_t total_at(Weight w, int degree) const;
};

struct EngineOptions {
    unsigned threads = 1;
    /// Restrict to one degree.
    std::optional<int> degree;
};

/// Weights to scan: only (0,0) when the torus lies in the domain (nonzero
/// weights carry no cohomology then), otherwise all 25.
std::vector<Weight> cohomology_weights(const Domain& domain);

CohomologyReport cohomology_dim(int n, const Domain& domain, const CoefficientModule& coeff,
                                const EngineOptions& opts = {});
CohomologyReport cohomology_dim(int n, Weight weight, const Domain& domain, const CoefficientModule& coeff,
                                const EngineOptions& opts = {});

// ------------------------------------------------------------ relative

/// Piece of C^n(g, h; M): cochains vanishing on h and annihilated by h.
/// `complement` is the domain with the generators of h removed; the basis
/// lives in coordinates of `full`.
struct RelativeBlock {
    CochainBlock full;
    std::vector<SparseVec> basis;
};

/// h is given by the generators of `domain` not in `complement`.
RelativeBlock relative_block(int n, Weight weight, int degree, const Domain& domain, const Domain& complement,
                             const CoefficientModule& coeff);

struct RelativeCohomology {
    std::vector<BlockCohomology> blocks;
    std::size_t total() const;
};
RelativeCohomology relative_cohomology(int n, const Domain& domain, const Domain& complement,
                                       const CoefficientModule& coeff, const EngineOptions& opts = {});

// ------------------------------------------------------------ invariants

struct InvariantCohomology {
    std::size_t dim = 0;
    std::vector<std::pair<int, std::size_t>> by_degree;
    /// Representative cocycles with their weight-0 block.
    std::vector<std::pair<int, SparseVec>> representatives;
};

/// H^n(domain, coeff)^{actors}, for actors normalizing the domain and acting
/// on coeff. The weight-(0,0) part is used, so the torus must lie among the
/// actors or in the domain.
InvariantCohomology invariant_cohomology(int n, const Domain& domain, const CoefficientModule& coeff,
                                         const std::vector<std::size_t>& actors, const EngineOptions& opts = {});

}  // namespace melcoh
