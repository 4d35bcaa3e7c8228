// melcoh: command-line front end for the Melikian cohomology library.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "melcoh/cochains.hpp"
#include "melcoh/squaring.hpp"
#include "melcoh/verifier.hpp"

using namespace melcoh;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Domain make_domain(const LieAlgebra& alg, const std::string& name)
{
    if (name == "M") return Domain::graded(alg, {DegreeRelation::Ge, alg.min_degree()}, "M");
    if (name == "ge0") return Domain::graded(alg, {DegreeRelation::Ge, 0}, "M>=0");
    if (name == "ge1") return Domain::graded(alg, {DegreeRelation::Ge, 1}, "M>=1");
    if (name == "lt0") return Domain::graded(alg, {DegreeRelation::Lt, 0}, "M<0");
    if (name == "m0") return Domain::graded(alg, {DegreeRelation::Eq, 0}, "M0");
    throw UsageError("unknown domain " + name);
}

CoefficientModule make_coeff(const LieAlgebra& alg, const std::string& name)
{
    if (name == "adjoint") return CoefficientModule::adjoint(alg);
    if (name == "m-3") return CoefficientModule::minus3(alg);
    throw UsageError("unknown coefficient module " + name);
}

void dump_matrix(const Domain& dom, const CoefficientModule& coeff, const std::string& id)
{
    const BlockId b = parse_block_id(id);
    CochainBlock block(b.n, b.weight, b.degree, dom, coeff);
    write_triplets(std::cout, differential(block).matrix);
}

int cmd_verify(const LieAlgebra& alg, const std::string& claim, const std::string& tag, const std::string& json_path,
               const std::string& dump, bool list, unsigned threads)
{
    if (list) {
        for (const auto& c : claim_catalog()) {
            std::string tags;
            for (const auto& t : c.tags) tags += (tags.empty() ? "" : ",") + t;
            std::printf("%-24s %-11s %s\n", c.id.c_str(), tags.c_str(), c.paper_ref.c_str());
        }
        std::printf("\nnot separate claims:\n");
        for (const auto& o : out_of_scope()) std::printf("  %s (covered by %s)\n", o.statement.c_str(), o.covered_by.c_str());
        return 0;
    }
    if (!dump.empty()) {
        dump_matrix(make_domain(alg, "M"), make_coeff(alg, "adjoint"), dump);
        return 0;
    }
    Verifier v(alg, {threads, std::nullopt});
    std::vector<ClaimReport> reports;
    if (!claim.empty())
        reports.push_back(v.run_claim(claim));
    else
        reports = v.run_all(tag.empty() ? std::nullopt : std::optional<std::string>(tag));
    if (json_path == "-") {
        std::cout << emit_report(reports, ReportFormat::Json);
    } else {
        std::cout << emit_report(reports, ReportFormat::Text);
        if (!json_path.empty()) {
            std::ofstream out(json_path);
            out << emit_report(reports, ReportFormat::Json);
            if (!out) throw IoError("cannot write " + json_path);
        }
    }
    return exit_code(reports);
}

int cmd_table(const LieAlgebra& alg, bool dump)
{
    if (!dump) {
        std::size_t count[3] = {0, 0, 0};
        for (const auto& e : alg.elements()) ++count[int(e.sector)];
        std::printf("dim %zu (A %zu, W %zu, W~ %zu), degrees %d..%d\n", alg.dim(), count[0], count[1], count[2],
                    alg.min_degree(), alg.max_degree());
        return 0;
    }
    for (std::size_t i = 0; i < alg.dim(); ++i)
        for (std::size_t j = i + 1; j < alg.dim(); ++j) {
            const auto& b = alg.bracket_basis(i, j);
            if (b.empty()) continue;
            std::cout << "[" << alg.element(i).name() << ", " << alg.element(j).name() << "] = " << alg.format(b)
                      << "\n";
        }
    return 0;
}

int cmd_cohomology(const LieAlgebra& alg, const std::string& domain, const std::string& coeff_name, int n,
                   std::optional<int> degree, const std::string& dump, unsigned threads)
{
    const Domain dom = make_domain(alg, domain);
    const CoefficientModule coeff = make_coeff(alg, coeff_name);
    if (!dump.empty()) {
        dump_matrix(dom, coeff, dump);
        return 0;
    }
    auto rep = cohomology_dim(n, dom, coeff, {threads, degree});
    std::printf("H^%d(%s, %s)\n", n, dom.name().c_str(), coeff.name().c_str());
    std::printf("%-8s %7s %9s %9s %9s %9s %9s %5s\n", "weight", "degree", "C^n-1", "C^n", "C^n+1", "rank d", "ker d",
                "H");
    for (const auto& b : rep.blocks)
        std::printf("%-8s %7d %9zu %9zu %9zu %9zu %9zu %5zu\n", b.weight.str().c_str(), b.degree, b.dim_prev,
                    b.dim_cur, b.dim_next, b.rank_prev, b.kernel, b.h);
    std::printf("total %zu\n", rep.total());
    return 0;
}

int cmd_squaring(const LieAlgebra& alg, const std::string& gamma, bool dump_values)
{
    static const std::vector<std::string> allowed = {"1", "D1", "D2", "Dt1", "Dt2"};
    if (std::find(allowed.begin(), allowed.end(), gamma) == allowed.end())
        throw UsageError("gamma must be one of 1, D1, D2, Dt1, Dt2");
    SqCocycle c = sq(alg, named_derivation(alg, gamma));
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < alg.dim(); ++i)
        for (std::size_t j = i + 1; j < alg.dim(); ++j) {
            SparseVec v = c.value(i, j);
            if (v.empty()) continue;
            ++nonzero;
            if (dump_values)
                std::cout << c.name() << "(" << alg.element(i).name() << ", " << alg.element(j).name()
                          << ") = " << alg.format(v) << "\n";
        }
    if (!dump_values) {
        auto cert = certify_classes(alg, {c});
        std::printf("%s: degree %d, %zu nonzero pairs, cocycle (checked against %zu rows of d^2), "
                    "independent classes modulo coboundaries: %zu\n",
                    c.name().c_str(), *c.degree(), nonzero, cert.entries.front().rows_checked, cert.total());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Chevalley-Eilenberg cohomology of the Melikian algebra over GF(5)"};
    app.require_subcommand(1);
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());

    auto* verify = app.add_subcommand("verify", "run the claim catalog");
    std::string claim, tag, json_path, dump;
    bool list = false;
    auto* claim_opt = verify->add_option("--claim", claim, "run a single claim");
    verify->add_option("--tag", tag, "run claims with this tag")->excludes(claim_opt);
    verify->add_option("--json", json_path, "also write the JSON report here ('-' for stdout only)");
    verify->add_option("--dump-matrix", dump, "write d^n of a C(M,M) block as triplets and exit");
    verify->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    verify->add_flag("--list", list, "list claim ids");

    auto* table = app.add_subcommand("table", "structure constants");
    bool table_dump = false;
    table->add_flag("--dump", table_dump, "print every nonzero bracket of basis elements");

    auto* coh = app.add_subcommand("cohomology", "cohomology dimensions by weight-degree block");
    std::string domain = "M", coeff = "adjoint", coh_dump;
    int n = 1;
    std::optional<int> degree;
    coh->add_option("--domain", domain)->check(CLI::IsMember({"M", "ge0", "ge1", "lt0", "m0"}));
    coh->add_option("--coeff", coeff)->check(CLI::IsMember({"adjoint", "m-3"}));
    coh->add_option("--n", n)->check(CLI::Range(0, 2));
    coh->add_option("--degree", degree);
    coh->add_option("--dump-matrix", coh_dump, "write d^n of the given block as triplets and exit");
    coh->add_option("--threads", threads)->check(CLI::PositiveNumber);

    auto* sqc = app.add_subcommand("squaring", "squaring cocycles Sq(ad g)");
    std::string gamma;
    bool dump_values = false;
    sqc->add_option("--gamma", gamma)->required()->check(CLI::IsMember({"1", "D1", "D2", "Dt1", "Dt2"}));
    sqc->add_flag("--dump-values", dump_values, "print all nonzero values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const LieAlgebra alg = build_melikian();
        if (*verify) return cmd_verify(alg, claim, tag, json_path, dump, list, threads);
        if (*table) return cmd_table(alg, table_dump);
        if (*coh) return cmd_cohomology(alg, domain, coeff, n, degree, coh_dump, threads);
        if (*sqc) return cmd_squaring(alg, gamma, dump_values);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
