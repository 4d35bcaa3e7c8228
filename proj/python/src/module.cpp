#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "melcoh/cochains.hpp"
#include "melcoh/squaring.hpp"
#include "melcoh/verifier.hpp"

namespace py = pybind11;
using namespace melcoh;

namespace {

const LieAlgebra& algebra()
{
    static const LieAlgebra alg = build_melikian();
    return alg;
}

Domain make_domain(const std::string& name)
{
    const LieAlgebra& alg = algebra();
    if (name == "M") return Domain::graded(alg, {DegreeRelation::Ge, alg.min_degree()}, "M");
    if (name == "ge0") return Domain::graded(alg, {DegreeRelation::Ge, 0}, "M>=0");
    if (name == "ge1") return Domain::graded(alg, {DegreeRelation::Ge, 1}, "M>=1");
    if (name == "lt0") return Domain::graded(alg, {DegreeRelation::Lt, 0}, "M<0");
    if (name == "m3") return Domain::graded(alg, {DegreeRelation::Eq, -3}, "M-3");
    if (name == "m0") return Domain::graded(alg, {DegreeRelation::Eq, 0}, "M0");
    throw UsageError("unknown domain " + name + " (M, ge0, ge1, lt0, m3, m0)");
}

CoefficientModule make_coeff(const std::string& name)
{
    if (name == "adjoint") return CoefficientModule::adjoint(algebra());
    if (name == "m-3") return CoefficientModule::minus3(algebra());
    throw UsageError("unknown coefficient module " + name + " (adjoint, m-3)");
}

py::dict as_dict(const SparseVec& v)
{
    py::dict d;
    for (const auto& e : v) d[py::str(algebra().element(e.index).name())] = int(e.coeff.value());
    return d;
}

std::size_t lookup(const std::string& name) { return algebra().index_of_symbol(name); }

}  // namespace

PYBIND11_MODULE(_melcoh, m)
{
    m.doc() = "Cohomology of the Melikian algebra over GF(5)";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<VerificationError>(m, "VerificationError", PyExc_RuntimeError);

    m.def("dim", [] { return algebra().dim(); });
    m.def("basis", [] {
        std::vector<std::string> names;
        for (const auto& e : algebra().elements()) names.push_back(e.name());
        return names;
    });
    m.def("degree", [](const std::string& x) { return algebra().degree(lookup(x)); });
    m.def("weight", [](const std::string& x) {
        const Weight w = algebra().weight(lookup(x));
        return std::make_pair(w.w1, w.w2);
    });
    m.def("bracket", [](const std::string& x, const std::string& y) {
        return as_dict(algebra().bracket_basis(lookup(x), lookup(y)));
    }, "[x, y] of two basis elements as {name: coefficient}", py::arg("x"), py::arg("y"));
    m.def("jacobi_failures", [] { return jacobi_check(algebra()).failures; });

    m.def("cohomology", [](int n, const std::string& domain, const std::string& coeff, std::optional<int> degree,
                           unsigned threads) {
        const Domain dom = make_domain(domain);
        const CoefficientModule c = make_coeff(coeff);
        CohomologyReport rep;
        {
            py::gil_scoped_release release;
            rep = cohomology_dim(n, dom, c, {threads, degree});
        }
        py::list blocks;
        for (const auto& b : rep.blocks) {
            py::dict d;
            d["weight"] = std::make_pair(b.weight.w1, b.weight.w2);
            d["degree"] = b.degree;
            d["cochains"] = b.dim_cur;
            d["kernel"] = b.kernel;
            d["rank_prev"] = b.rank_prev;
            d["h"] = b.h;
            blocks.append(d);
        }
        return blocks;
    }, "per-block dimensions of H^n(domain, coeff)", py::arg("n"), py::arg("domain") = "M",
       py::arg("coeff") = "adjoint", py::arg("degree") = py::none(), py::arg("threads") = 1);

    m.def("sq_value", [](const std::string& gamma, const std::string& x, const std::string& y) {
        return as_dict(sq(algebra(), named_derivation(algebra(), gamma)).value(lookup(x), lookup(y)));
    }, "Sq(ad gamma)(x, y)", py::arg("gamma"), py::arg("x"), py::arg("y"));
    m.def("certify_squares", [](const std::vector<std::string>& gammas) {
        std::vector<SqCocycle> cs;
        for (const auto& g : gammas) cs.push_back(sq(algebra(), named_derivation(algebra(), g)));
        Certification cert;
        {
            py::gil_scoped_release release;
            cert = certify_classes(algebra(), cs);
        }
        std::map<int, std::size_t> out;
        for (const auto& e : cert.entries) out[e.degree] = e.rank_delta;
        return out;
    }, "classes independent modulo coboundaries, by degree", py::arg("gammas"));

    m.def("claim_ids", [] {
        std::vector<std::string> ids;
        for (const auto& c : claim_catalog()) ids.push_back(c.id);
        return ids;
    });
    m.def("verify_json", [](std::optional<std::string> claim, std::optional<std::string> tag, unsigned threads) {
        py::gil_scoped_release release;
        Verifier v(algebra(), {threads, std::nullopt});
        std::vector<ClaimReport> reports;
        if (claim)
            reports.push_back(v.run_claim(*claim));
        else
            reports = v.run_all(tag);
        return emit_report(reports, ReportFormat::Json);
    }, py::arg("claim") = py::none(), py::arg("tag") = py::none(), py::arg("threads") = 1);
}
