// Acceptance gate: one check per criterion, each printing a single
// pass/fail line.  Run with --criterion K for one criterion or with no
// arguments for the whole gate.  Exit code 0 iff everything requested passed.

#include "qfermion/qfermion.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace qfermion;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

AlgebraElement random_element(std::mt19937_64& rng, int n_modes, int max_terms = 4) {
    std::uniform_int_distribution<int> mask(0, (1 << n_modes) - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> expo(-2, 2);
    AlgebraElement x(n_modes);
    for (int t = 0; t < max_terms; ++t) {
        FermionMonomial m{static_cast<std::uint16_t>(mask(rng)),
                          static_cast<std::uint16_t>(mask(rng))};
        QISqrt2 c(coeff(rng), coeff(rng), Rational(coeff(rng), 2), Rational(coeff(rng), 3));
        x.add(m, ExactScalar::term(expo(rng), c));
    }
    return x;
}

Outcome criterion_1() {
    auto start = Clock::now();
    for (int n = 1; n <= 3; ++n) {
        Report rep = verify_q_clifford(n);
        if (!rep.passed())
            return {false, "q-Clifford relations failed at n=" + std::to_string(n) + "\n" +
                               rep.to_text()};
    }
    double elapsed = seconds_since(start);
    if (elapsed >= 5.0)
        return {false, "runtime " + std::to_string(elapsed) + "s exceeds the 5s target"};
    std::ostringstream os;
    os << "all diagonal-element relations exact for n=1..3 in " << elapsed << "s";
    return {true, os.str()};
}

Outcome criterion_2() {
    auto start = Clock::now();
    for (int n = 2; n <= 4; ++n) {
        QGroupGenerators g = build_generators(n);
        Report rep = verify_uq_relations(g);
        rep.append(verify_extra_relations(g));
        if (!rep.passed())
            return {false, "relation failure at n=" + std::to_string(n) + "\n" + rep.to_text()};
    }
    double elapsed = seconds_since(start);
    if (elapsed >= 30.0)
        return {false, "runtime " + std::to_string(elapsed) + "s exceeds the 30s target"};
    std::ostringstream os;
    os << "defining + extra relations exact for n=2..4 in " << elapsed << "s";
    return {true, os.str()};
}

Outcome criterion_3() {
    std::mt19937_64 rng(987654321);
    int pairs_per_n = 67;  // 3 × 67 ≈ 200 pairs across n = 1..3
    int total = 0;
    for (int n = 1; n <= 3; ++n) {
        for (int t = 0; t < pairs_per_n; ++t) {
            AlgebraElement x = random_element(rng, n), y = random_element(rng, n);
            if (to_matrix(x * y) != to_matrix(x) * to_matrix(y))
                return {false, "matrix image not multiplicative at n=" + std::to_string(n)};
            if (to_matrix(x.star()) != to_matrix(x).conjugate_transpose())
                return {false, "matrix image not star-compatible at n=" + std::to_string(n)};
            ++total;
        }
    }
    return {true, std::to_string(total) + " random pairs map exactly (product and adjoint)"};
}

Outcome criterion_4() {
    for (int n = 2; n <= 4; ++n) {
        Report rep = check_invariance(n);
        if (!rep.passed())
            return {false, "weight-sector failure at n=" + std::to_string(n) + "\n" +
                               rep.to_text()};
    }
    return {true, "all weight sectors invariant and irreducible at both q samples, n=2..4"};
}

Outcome criterion_5() {
    for (int n = 1; n <= 3; ++n) {
        for (const FermionHom& h : {FermionHom::delta1(), FermionHom::delta2()}) {
            Report rep = check_constraints(h.params());
            rep.append(verify_hom_axioms(h, n, /*full_pairs=*/true));
            rep.append(verify_m_condition(h, n));
            if (!rep.passed())
                return {false, h.name() + " failed at n=" + std::to_string(n) + "\n" +
                                   rep.to_text()};
        }
    }
    for (int n = 1; n <= 2; ++n) {
        for (const FermionHom& h : {FermionHom::trivial_left(), FermionHom::trivial_right()}) {
            Report rep = verify_m_condition(h, n);
            if (!rep.passed())
                return {false, h.name() + " failed the weakened condition\n" + rep.to_text()};
        }
        Report rep = verify_strict_coassociativity(n);
        if (!rep.passed())
            return {false, "strict-coassociativity split failed\n" + rep.to_text()};
    }
    return {true, "star-homomorphism axioms exact on all monomial pairs n=1..3; "
                  "constraints pass; weakened condition passes; "
                  "strict coassociativity fails only for the nontrivial solutions"};
}

Outcome criterion_6() {
    for (int n = 1; n <= 3; ++n) {
        for (const FermionHom& h : {FermionHom::delta1(), FermionHom::delta2()}) {
            Report rep = verify_pseudo_coassoc(h, n);
            if (!rep.passed())
                return {false, h.name() + " failed at n=" + std::to_string(n) + "\n" +
                                   rep.to_text()};
        }
    }
    return {true, "modified coassociativity exact on generators (n<=3) and all monomials "
                  "(n<=2); worked three-leg expansion reproduced term by term"};
}

Outcome criterion_7() {
    // The doubled-family relations exactly as printed: the off-mode cases and
    // the two single-family blocks hold; the same-mode mixed anticommutators
    // are nonzero (their closed forms are pinned by the unit tests), so this
    // criterion fails as stated.  The partner pairings below show the repaired
    // statement that does hold.
    std::string detail;
    bool pass = true;
    for (int n = 1; n <= 3; ++n) {
        Report rep = verify_big_fermions(n, /*as_printed=*/true);
        if (!rep.passed()) {
            pass = false;
            std::size_t failures = rep.failure_count();
            detail += "n=" + std::to_string(n) + ": " + std::to_string(failures) +
                      " of " + std::to_string(rep.checks.size()) +
                      " anticommutator identities fail (same-mode pairs across the two "
                      "families); ";
        }
    }
    if (pass) return {true, "doubled-family relations exact for n<=3"};
    // document the repaired statement alongside the failure
    bool partners_ok = true;
    for (int n = 1; n <= 3; ++n) {
        Report rep = verify_big_fermions(n, /*as_printed=*/false);
        partners_ok = partners_ok && rep.passed();
    }
    detail += partners_ok
                  ? "the partner pairings (first/first-partner, second-partner/second) do "
                    "satisfy the full doubled algebra exactly, and all off-mode printed "
                    "relations hold"
                  : "partner pairings unexpectedly failed too";
    return {false, detail};
}

Outcome criterion_8() {
    for (int n = 1; n <= 3; ++n) {
        Report rep = delta_omega_identities(n);
        if (!rep.passed())
            return {false, "omega-image identities failed at n=" + std::to_string(n) + "\n" +
                               rep.to_text()};
    }
    for (int n = 2; n <= 3; ++n) {
        Report rep = verify_coproduct_reconstruction(n);
        if (!rep.passed())
            return {false, "reconstruction failed at n=" + std::to_string(n) + "\n" +
                               rep.to_text()};
        QGroupGenerators g = build_generators(n);
        Report rel = verify_coproduct_relations(g);
        if (!rel.passed())
            return {false, "coproduct relation failure at n=" + std::to_string(n) + "\n" +
                               rel.to_text()};
    }
    return {true, "omega images, balanced-combination closed forms, both reconstruction "
                  "routes, coproduct relations and the non-vanishing square all exact"};
}

Outcome criterion_9() {
    auto start = Clock::now();
    // the explicit single-mode case first
    CouplingMatrix unit;
    unit.n = 1;
    unit.variant = 'A';
    unit.a = CMatrix::Zero(1, 1);
    unit.a(0, 0) = 1.0;
    SpectralSolution base = solve(unit);
    std::vector<double> energies;
    for (const auto& p : base.pairs) energies.push_back(p.energy);
    std::sort(energies.begin(), energies.end());
    std::vector<double> want{-1.0, 0.0, 0.0, 1.0};
    for (int k = 0; k < 4; ++k)
        if (std::abs(energies[static_cast<std::size_t>(k)] - want[static_cast<std::size_t>(k)]) > 1e-12)
            return {false, "unit coupling spectrum is not {-1, 0, 0, 1}"};

    std::mt19937_64 rng(1234321);
    std::normal_distribution<double> dist(0.0, 1.0);
    int runs = 0;
    double worst_res = 0.0, worst_gram = 0.0, worst_spec = 0.0;
    for (int n = 1; n <= 3; ++n) {
        for (int t = 0; t < 50; ++t) {
            CouplingMatrix c;
            c.n = n;
            c.variant = 'A';
            c.a = CMatrix::Zero(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    double v = dist(rng);
                    c.a(i, j) = v;
                    c.a(j, i) = v;
                }
            SpectralSolution sol = solve(c);
            worst_res = std::max(worst_res, sol.max_residual);
            worst_gram = std::max(worst_gram, sol.gram_deviation);
            worst_spec = std::max(worst_spec, sol.spectrum_deviation);
            ++runs;
        }
    }
    double elapsed = seconds_since(start);
    std::ostringstream os;
    os << runs << " random couplings: max residual " << worst_res << ", gram " << worst_gram
       << ", spectrum " << worst_spec << " in " << elapsed << "s";
    if (worst_res >= 1e-9 || worst_gram >= 1e-9 || worst_spec >= 1e-9)
        return {false, os.str()};
    if (elapsed >= 60.0) return {false, os.str() + " (exceeds the 60s target)"};
    return {true, os.str()};
}

Outcome criterion_10() {
#ifndef QFERMION_CLI_PATH
    return {false, "CLI path not configured"};
#else
    auto start = Clock::now();
    std::string out_path = "acceptance_cli_report.json";
    std::string cmd = std::string(QFERMION_CLI_PATH) +
                      " verify --suite all --n 3 --format json --out " + out_path;
    int status = std::system(cmd.c_str());
    double elapsed = seconds_since(start);
    if (status != 0)
        return {false, "verify --suite all --n 3 exited nonzero"};
    if (elapsed >= 120.0)
        return {false, "runtime " + std::to_string(elapsed) + "s exceeds the 2min target"};
    std::ifstream in(out_path);
    if (!in) return {false, "report file missing"};
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        return {false, std::string("report is not valid JSON: ") + e.what()};
    }
    for (const char* field : {"suite", "n", "backend", "total", "failures", "passed", "checks"})
        if (!j.contains(field)) return {false, std::string("report lacks field ") + field};
    for (const auto& c : j.at("checks"))
        for (const char* field : {"id", "status", "residual_terms", "residual_hash"})
            if (!c.contains(field))
                return {false, std::string("check entry lacks field ") + field};
    if (!j.at("passed").get<bool>()) return {false, "full suite reported failures"};
    std::ostringstream os;
    os << "verify --suite all --n 3 exit 0 in " << elapsed << "s; JSON schema complete";
    return {true, os.str()};
#endif
}

struct Criterion {
    int index;
    const char* title;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "exact q-Clifford recovery", criterion_1},
    {2, "quantum-group relations", criterion_2},
    {3, "representation oracle", criterion_3},
    {4, "weight decomposition", criterion_4},
    {5, "homomorphism suite", criterion_5},
    {6, "modified coassociativity", criterion_6},
    {7, "doubled fermion family as printed", criterion_7},
    {8, "coproduct reconstruction", criterion_8},
    {9, "spectra", criterion_9},
    {10, "command-line interface", criterion_10},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
    }
    bool all_pass = true;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.index != only) continue;
        Outcome out = c.run();
        std::printf("criterion-%d %-4s %s — %s\n", c.index, out.pass ? "PASS" : "FAIL",
                    c.title, out.detail.c_str());
        all_pass = all_pass && out.pass;
    }
    return all_pass ? 0 : 1;
}
