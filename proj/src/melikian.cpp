#include "melcoh/melikian.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace melcoh {

namespace {

constexpr int kTrunc = int(kP);

// Truncated polynomial in A(2); coefficient of x1^a1 x2^a2 at a1 * 5 + a2.
struct Poly {
    std::array<Fp, kTrunc * kTrunc> c{};

    static Poly monomial(Exponent a, Fp v = 1)
    {
        Poly p;
        p.c[a.a1 * kTrunc + a.a2] = v;
        return p;
    }
    Fp at(int a1, int a2) const { return c[a1 * kTrunc + a2]; }
    Poly operator+(const Poly& o) const
    {
        Poly r;
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Poly operator-(const Poly& o) const
    {
        Poly r;
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    Poly operator*(Fp s) const
    {
        Poly r;
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] * s;
        return r;
    }
    Poly operator*(const Poly& o) const
    {
        Poly r;
        for (int a1 = 0; a1 < kTrunc; ++a1)
            for (int a2 = 0; a2 < kTrunc; ++a2) {
                Fp x = at(a1, a2);
                if (x.is_zero()) continue;
                for (int b1 = 0; a1 + b1 < kTrunc; ++b1)
                    for (int b2 = 0; a2 + b2 < kTrunc; ++b2)
                        r.c[(a1 + b1) * kTrunc + a2 + b2] += x * o.at(b1, b2);
            }
        return r;
    }
    // partial derivative d/dx_i, i in {1, 2}
    Poly d(int i) const
    {
        Poly r;
        for (int a1 = 0; a1 < kTrunc; ++a1)
            for (int a2 = 0; a2 < kTrunc; ++a2) {
                Fp x = at(a1, a2);
                if (x.is_zero()) continue;
                if (i == 1 && a1 > 0) r.c[(a1 - 1) * kTrunc + a2] += x * Fp(a1);
                if (i == 2 && a2 > 0) r.c[a1 * kTrunc + a2 - 1] += x * Fp(a2);
            }
        return r;
    }
};

// f1 D1 + f2 D2 in W(2).
struct Vec {
    Poly f1, f2;
    Poly apply(const Poly& g) const { return f1 * g.d(1) + f2 * g.d(2); }
    Poly div() const { return f1.d(1) + f2.d(2); }
    Vec operator+(const Vec& o) const { return {f1 + o.f1, f2 + o.f2}; }
    Vec operator*(const Poly& g) const { return {f1 * g, f2 * g}; }
    Vec operator*(Fp s) const { return {f1 * s, f2 * s}; }
};

Vec witt_bracket(const Vec& d, const Vec& e) { return {d.apply(e.f1) - e.apply(d.f1), d.apply(e.f2) - e.apply(d.f2)}; }

// General element f + D + E~ of M.
struct Elem {
    Poly a;
    Vec w;
    Vec t;
};

Elem bracket_elem(const Elem& x, const Elem& y)
{
    const Fp two = 2;
    Elem r;
    // W-W
    r.w = witt_bracket(x.w, y.w);
    // [D, E~] = [D,E]~ + 2 div(D) E~, and [E~, D] = -[D, E~]
    Vec dt = witt_bracket(x.w, y.t) + y.t * (x.w.div() * two);
    Vec td = witt_bracket(y.w, x.t) + x.t * (y.w.div() * two);
    r.t = dt + td * Fp(-1);
    // [D, f] = D(f) - 2 div(D) f, and [f, D] = -[D, f]
    r.a = x.w.apply(y.a) - x.w.div() * y.a * two;
    r.a = r.a - (y.w.apply(x.a) - y.w.div() * x.a * two);
    // [f1 D1~ + f2 D2~, g1 D1~ + g2 D2~] = f1 g2 - f2 g1
    r.a = r.a + (x.t.f1 * y.t.f2 - x.t.f2 * y.t.f1);
    // [f, E~] = f E, and [E~, f] = -f E
    r.w = r.w + y.t * x.a + x.t * y.a * Fp(-1);
    // [f, g] = 2 (g D2 f - f D2 g) D1~ + 2 (f D1 g - g D1 f) D2~
    Vec fg{(y.a * x.a.d(2) - x.a * y.a.d(2)) * two, (x.a * y.a.d(1) - y.a * x.a.d(1)) * two};
    r.t = r.t + fg;
    return r;
}

Elem to_elem(const BasisElement& b)
{
    Elem e;
    Poly m = Poly::monomial(b.exp);
    switch (b.sector) {
    case Sector::A: e.a = m; break;
    case Sector::W: (b.dir == 1 ? e.w.f1 : e.w.f2) = m; break;
    case Sector::Wt: (b.dir == 1 ? e.t.f1 : e.t.f2) = m; break;
    }
    return e;
}

std::vector<BasisElement> canonical_basis()
{
    std::vector<BasisElement> out;
    for (int a1 = 0; a1 < kTrunc; ++a1)
        for (int a2 = 0; a2 < kTrunc; ++a2) {
            out.push_back({Sector::A, {a1, a2}, 0});
            for (int i = 1; i <= 2; ++i) {
                out.push_back({Sector::W, {a1, a2}, i});
                out.push_back({Sector::Wt, {a1, a2}, i});
            }
        }
    std::stable_sort(out.begin(), out.end(), [](const BasisElement& x, const BasisElement& y) {
        if (x.degree() != y.degree()) return x.degree() < y.degree();
        if (x.exp != y.exp) return x.exp < y.exp;
        return x.dir < y.dir;
    });
    return out;
}

}  // namespace

std::string Weight::str() const { return "(" + std::to_string(w1) + "," + std::to_string(w2) + ")"; }

int BasisElement::degree() const
{
    switch (sector) {
    case Sector::A: return 3 * exp.total() - 2;
    case Sector::W: return 3 * (exp.total() - 1);
    case Sector::Wt: return 3 * (exp.total() - 1) + 2;
    }
    return 0;
}

Weight BasisElement::weight() const
{
    const int d1 = dir == 1 ? 1 : 0, d2 = dir == 2 ? 1 : 0;
    switch (sector) {
    case Sector::A: return {exp.a1 - 2, exp.a2 - 2};
    case Sector::W: return {exp.a1 - d1, exp.a2 - d2};
    case Sector::Wt: return {exp.a1 + 2 - d1, exp.a2 + 2 - d2};
    }
    return {};
}

int BasisElement::z3() const
{
    switch (sector) {
    case Sector::A: return 1;
    case Sector::W: return 0;
    case Sector::Wt: return 2;
    }
    return 0;
}

std::string BasisElement::name() const
{
    std::string s = sector == Sector::Wt ? "x~^(" : "x^(";
    s += std::to_string(exp.a1) + "," + std::to_string(exp.a2) + ")";
    if (sector != Sector::A) s += "D_" + std::to_string(dir);
    return s;
}

// ------------------------------------------------------------- LieAlgebra

LieAlgebra::LieAlgebra(std::vector<BasisElement> basis, std::vector<SparseVec> table)
    : basis_(std::move(basis)), table_(std::move(table))
{
    if (table_.size() != basis_.size() * basis_.size()) throw UsageError("LieAlgebra: table size mismatch");
    for (const auto& b : basis_) {
        degree_.push_back(b.degree());
        weight_.push_back(b.weight());
        z3_.push_back(b.z3());
    }
}

std::size_t LieAlgebra::index_of(const BasisElement& e) const
{
    auto it = std::find(basis_.begin(), basis_.end(), e);
    if (it == basis_.end()) throw UsageError("unknown basis element");
    return std::size_t(it - basis_.begin());
}

std::size_t LieAlgebra::index_of(const std::string& name) const
{
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].name() == name) return i;
    throw UsageError("unknown generator name: " + name);
}

std::size_t LieAlgebra::index_of_symbol(const std::string& symbol) const
{
    static const std::map<std::string, BasisElement> shorthand = {
        {"1", {Sector::A, {0, 0}, 0}},
        {"D1", {Sector::W, {0, 0}, 1}},
        {"D2", {Sector::W, {0, 0}, 2}},
        {"Dt1", {Sector::Wt, {0, 0}, 1}},
        {"Dt2", {Sector::Wt, {0, 0}, 2}},
    };
    if (auto it = shorthand.find(symbol); it != shorthand.end()) return index_of(it->second);
    return index_of(symbol);
}

void LieAlgebra::set_structure_constant(std::size_t i, std::size_t j, std::size_t k, Fp c)
{
    if (i == j) throw UsageError("set_structure_constant: i == j would break antisymmetry");
    auto patch = [&](std::size_t a, std::size_t b, Fp v) {
        std::vector<SparseEntry> e;
        for (const auto& x : table_[a * dim() + b])
            if (x.index != k) e.push_back(x);
        e.push_back({uint32_t(k), v});
        table_[a * dim() + b] = SparseVec(dim(), std::move(e));
    };
    patch(i, j, c);
    patch(j, i, -c);
}

std::string LieAlgebra::format(const AlgebraElement& x) const
{
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& e : x) {
        if (!first) os << " + ";
        first = false;
        if (e.coeff.value() != 1) os << int(e.coeff.value()) << "*";
        os << basis_[e.index].name();
    }
    return os.str();
}

LieAlgebra build_melikian()
{
    std::vector<BasisElement> basis = canonical_basis();
    const std::size_t n = basis.size();
    std::map<BasisElement, uint32_t> pos;
    for (std::size_t i = 0; i < n; ++i) pos[basis[i]] = uint32_t(i);

    auto coords = [&](const Elem& e) {
        std::vector<SparseEntry> out;
        for (int a1 = 0; a1 < kTrunc; ++a1)
            for (int a2 = 0; a2 < kTrunc; ++a2) {
                Exponent x{a1, a2};
                out.push_back({pos[{Sector::A, x, 0}], e.a.at(a1, a2)});
                out.push_back({pos[{Sector::W, x, 1}], e.w.f1.at(a1, a2)});
                out.push_back({pos[{Sector::W, x, 2}], e.w.f2.at(a1, a2)});
                out.push_back({pos[{Sector::Wt, x, 1}], e.t.f1.at(a1, a2)});
                out.push_back({pos[{Sector::Wt, x, 2}], e.t.f2.at(a1, a2)});
            }
        return SparseVec(n, std::move(out));
    };

    std::vector<Elem> elems;
    for (const auto& b : basis) elems.push_back(to_elem(b));
    std::vector<SparseVec> table(n * n, SparseVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            SparseVec v = coords(bracket_elem(elems[i], elems[j]));
            table[j * n + i] = v.scaled(-Fp(1));
            table[i * n + j] = std::move(v);
        }
    return LieAlgebra(std::move(basis), std::move(table));
}

AlgebraElement bracket(const LieAlgebra& alg, const AlgebraElement& x, const AlgebraElement& y)
{
    if (x.dim() != alg.dim() || y.dim() != alg.dim()) throw UsageError("bracket: dimension mismatch");
    std::vector<SparseEntry> acc;
    for (const auto& a : x)
        for (const auto& b : y)
            for (const auto& e : alg.bracket_basis(a.index, b.index)) acc.push_back({e.index, a.coeff * b.coeff * e.coeff});
    return SparseVec(alg.dim(), std::move(acc));
}

SparseMatrix adjoint_matrix(const LieAlgebra& alg, const AlgebraElement& x)
{
    const std::size_t n = alg.dim();
    std::vector<std::vector<SparseEntry>> rows(n);
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& e : bracket(alg, x, alg.generator(j))) rows[e.index].push_back({uint32_t(j), e.coeff});
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set_row(i, SparseVec(n, std::move(rows[i])));
    return m;
}

// --------------------------------------------------------------- Subspace

Subspace::Subspace(const LieAlgebra& alg, const std::vector<AlgebraElement>& span) : Subspace(alg)
{
    for (const auto& v : span) basis_.insert(v);
}

bool Subspace::contains(const Subspace& other) const
{
    for (const auto& v : other.basis())
        if (!contains(v)) return false;
    return true;
}

Subspace Subspace::operator+(const Subspace& other) const
{
    Subspace r = *this;
    for (const auto& v : other.basis()) r.add(v);
    return r;
}

bool Subspace::operator==(const Subspace& other) const
{
    return alg_ == other.alg_ && basis() == other.basis();
}

bool DegreePredicate::operator()(int degree) const
{
    switch (rel) {
    case DegreeRelation::Eq: return degree == d;
    case DegreeRelation::Ge: return degree >= d;
    case DegreeRelation::Lt: return degree < d;
    case DegreeRelation::Le: return degree <= d;
    }
    return false;
}

std::vector<std::size_t> graded_indices(const LieAlgebra& alg, DegreePredicate pred)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < alg.dim(); ++i)
        if (pred(alg.degree(i))) out.push_back(i);
    return out;
}

Subspace graded_part(const LieAlgebra& alg, DegreePredicate pred)
{
    Subspace s(alg);
    for (auto i : graded_indices(alg, pred)) s.add(alg.generator(i));
    return s;
}

Subspace full_space(const LieAlgebra& alg) { return graded_part(alg, {DegreeRelation::Ge, alg.min_degree()}); }

Subspace span_bracket(const Subspace& s, const Subspace& t)
{
    if (&s.ambient() != &t.ambient()) throw UsageError("span_bracket: different ambient algebras");
    const LieAlgebra& alg = s.ambient();
    Subspace out(alg);
    const auto sb = s.basis(), tb = t.basis();
    for (const auto& x : sb)
        for (const auto& y : tb) out.add(bracket(alg, x, y));
    return out;
}

bool is_subalgebra(const Subspace& s) { return s.contains(span_bracket(s, s)); }

Subspace centralizer(const Subspace& t, const Subspace& within)
{
    if (&t.ambient() != &within.ambient()) throw UsageError("centralizer: different ambient algebras");
    const LieAlgebra& alg = t.ambient();
    const auto tb = t.basis(), wb = within.basis();
    // Unknown: coefficients c_k of v = sum c_k w_k; one equation per (u, output coordinate).
    std::vector<std::vector<SparseEntry>> rows(tb.size() * alg.dim());
    for (std::size_t k = 0; k < wb.size(); ++k)
        for (std::size_t u = 0; u < tb.size(); ++u)
            for (const auto& e : bracket(alg, tb[u], wb[k])) rows[u * alg.dim() + e.index].push_back({uint32_t(k), e.coeff});
    SparseMatrix m(rows.size(), wb.size());
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, SparseVec(wb.size(), std::move(rows[r])));
    Subspace out(alg);
    for (const auto& c : rank_nullspace(m).nullspace) {
        SparseVec v(alg.dim());
        for (const auto& e : c) v.axpy(e.coeff, wb[e.index]);
        out.add(v);
    }
    return out;
}

std::size_t antisymmetry_violations(const LieAlgebra& alg)
{
    std::size_t bad = 0;
    for (std::size_t i = 0; i < alg.dim(); ++i)
        for (std::size_t j = 0; j < alg.dim(); ++j)
            if (!(alg.bracket_basis(i, j) == alg.bracket_basis(j, i).scaled(Fp(-1)))) ++bad;
    return bad;
}

JacobiCheck jacobi_check(const LieAlgebra& alg)
{
    JacobiCheck r;
    const std::size_t n = alg.dim();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                ++r.triples;
                SparseVec s = bracket(alg, alg.bracket_basis(a, b), alg.generator(c));
                s.axpy(Fp(1), bracket(alg, alg.bracket_basis(b, c), alg.generator(a)));
                s.axpy(Fp(1), bracket(alg, alg.bracket_basis(c, a), alg.generator(b)));
                if (!s.empty()) ++r.failures;
            }
    return r;
}

GradingViolations grading_violations(const LieAlgebra& alg)
{
    GradingViolations v;
    for (std::size_t i = 0; i < alg.dim(); ++i)
        for (std::size_t j = 0; j < alg.dim(); ++j)
            for (const auto& e : alg.bracket_basis(i, j)) {
                if (alg.degree(e.index) != alg.degree(i) + alg.degree(j)) ++v.degree;
                if (alg.weight(e.index) != alg.weight(i) + alg.weight(j)) ++v.weight;
                if (alg.z3(e.index) != (alg.z3(i) + alg.z3(j)) % 3) ++v.z3;
            }
    return v;
}

SparseMatrix adjoint_power(const LieAlgebra& alg, const AlgebraElement& x, unsigned e)
{
    SparseMatrix ad = adjoint_matrix(alg, x);
    SparseMatrix r = SparseMatrix::identity(alg.dim());
    for (unsigned i = 0; i < e; ++i) r = ad.multiply(r);
    return r;
}

AlgebraElement p_power(const LieAlgebra& alg, const AlgebraElement& x)
{
    const std::size_t n = alg.dim();
    SparseMatrix target = adjoint_power(alg, x, kP);
    // ad(y)[r][c] = sum_k y_k * coeff of b_r in [b_k, b_c]
    std::vector<std::vector<SparseEntry>> rows(n * n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t c = 0; c < n; ++c)
            for (const auto& e : alg.bracket_basis(k, c)) rows[e.index * n + c].push_back({uint32_t(k), e.coeff});
    SparseMatrix sys(n * n, n);
    SparseVec rhs(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            sys.set_row(r * n + c, SparseVec(n, std::move(rows[r * n + c])));
            rhs.push_back(uint32_t(r * n + c), target.at(r, c));
        }
    auto y = solve(sys, rhs);
    if (!y) throw VerificationError("p_power: ad(x)^5 is not inner");
    return *y;
}

std::vector<AlgebraElement> canonical_torus(const LieAlgebra& alg)
{
    return {alg.generator("x^(1,0)D_1"), alg.generator("x^(0,1)D_2")};
}

std::vector<AlgebraElement> canonical_cartan(const LieAlgebra& alg)
{
    auto c = canonical_torus(alg);
    c.push_back(alg.generator("x^(2,2)"));
    c.push_back(alg.generator("x~^(4,3)D_1"));
    c.push_back(alg.generator("x~^(3,4)D_2"));
    return c;
}

}  // namespace melcoh
