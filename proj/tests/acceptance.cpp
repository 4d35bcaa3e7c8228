// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "melcoh/cochains.hpp"
#include "melcoh/verifier.hpp"
#include "support/properties.hpp"

using namespace melcoh;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Runs claims through the verifier and summarizes them on one line.
Outcome claims(Verifier& v, const std::vector<std::string>& ids)
{
    Outcome o;
    for (const auto& id : ids) {
        const ClaimReport r = v.run_claim(id);
        const bool ok = r.status == "pass";
        o.ok = o.ok && ok;
        if (!o.detail.empty()) o.detail += "; ";
        o.detail += id + (ok ? " ok" : " FAILED expected " + r.expected.dump() + " computed " + r.computed.dump());
    }
    return o;
}

Outcome degree_weight_congruence(const LieAlgebra& alg)
{
    std::size_t bad = 0;
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        const Weight w = alg.weight(i);
        if (((alg.degree(i) - 3 * (w.w1 + w.w2)) % 5 + 5) % 5 != 0) ++bad;
    }
    return {bad == 0, "deg = 3(w1+w2) mod 5 fails on " + std::to_string(bad) + " generators"};
}

Outcome fault_injection(const LieAlgebra& alg, int trials, uint64_t seed)
{
    std::mt19937_64 rng(seed);
    int caught = 0;
    std::string missed;
    for (int t = 0; t < trials; ++t) {
        LieAlgebra broken = alg;
        std::size_t i = rng() % alg.dim(), j = rng() % alg.dim();
        while (j == i) j = rng() % alg.dim();
        const std::size_t k = rng() % alg.dim();
        const Fp old = alg.bracket_basis(i, j).at(k);
        const Fp c = old + Fp(int(1 + rng() % 4));
        broken.set_structure_constant(i, j, k, c);
        Verifier v(broken);
        bool failed = false;
        try {
            for (const auto& r : v.run_all("structure"))
                if (r.status != "pass") failed = true;
        } catch (const std::exception&) {
            failed = true;
        }
        if (failed)
            ++caught;
        else
            missed += " [" + alg.element(i).name() + "," + alg.element(j).name() + "]_" + alg.element(k).name();
    }
    return {caught == trials,
            std::to_string(caught) + "/" + std::to_string(trials) + " perturbations detected" + missed};
}

}  // namespace

int main(int argc, char** argv)
{
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    if (argc > 1) threads = unsigned(std::max(1, std::atoi(argv[1])));

    const LieAlgebra alg = build_melikian();
    Verifier v(alg, {threads, std::nullopt});

    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "main theorem: H^2(M,M) = 5 in degrees -5,-10,-15, spanned by Sq classes",
         [&] { return claims(v, {"main-theorem", "sq-values", "sq-cocycles", "sq-independence"}); }},
        {2, "H^1(M,M) = 0", [&] { return claims(v, {"h1-vanishing"}); }},
        {3, "structure suite", [&] { return claims(v, {"dimension", "antisymmetry", "jacobi", "grading-additivity"}); }},
        {4, "weight spaces, centralizer of the torus, degree/weight congruence",
         [&] {
             Outcome o = claims(v, {"cartan-decomposition", "centralizer", "torus"});
             const Outcome c = degree_weight_congruence(alg);
             if (!c.ok) o = {false, o.detail + "; " + c.detail};
             return o;
         }},
        {5, "[M>=1, M>=1] = M>=3 + <x~1D1 + x~2D2>", [&] { return claims(v, {"commutator-lemma"}); }},
        {6, "cohomology of the negative part", [&] { return claims(v, {"hs-m3", "hs-m-le-2", "h1-negative"}); }},
        {7, "step chain", [&] { return claims(v, {"step1", "step2-bound", "step3-bound", "step4-invariants"}); }},
        {8, "H^r(M0, M-3) = 0 and invariant cochain scan",
         [&] { return claims(v, {"m0-coefficients-vanish", "inv-cochain-d17"}); }},
        {9, "property suite",
         [&] {
             Outcome o;
             for (const auto& r : props::run_suite(alg, threads)) {
                 o.ok = o.ok && r.ok;
                 char buf[64];
                 std::snprintf(buf, sizeof buf, " %.1fs", r.seconds);
                 o.detail += (o.detail.empty() ? "" : "; ") + r.name + (r.ok ? " ok (" : " FAILED (") + r.detail +
                             "," + buf + ")";
             }
             return o;
         }},
        {10, "fault injection", [&] { return fault_injection(alg, 20, 5); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.ok) ++failed;
        std::printf("criterion %2d %s  %s (%.1f s): %s\n", c.id, o.ok ? "PASS" : "FAIL", c.title, s, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria pass\n", int(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
