// Command-line surface: analyze one (n, t), scan a t-range, reproduce the
// minimal-t table, verify the (n-1)k^2+1 family, and poke the Pell solvers.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "hilbaut/classifier.hpp"
#include "hilbaut/pell.hpp"
#include "hilbaut/report.hpp"

namespace {

using namespace hilbaut;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitContract = 2;

int run_analyze(long n, long t, bool as_json, bool verify) {
    Params p(n, t);
    report::InstanceReport r = report::analyze(p, verify);
    if (as_json)
        std::cout << report::to_json(r).dump(2) << "\n";
    else
        std::cout << report::to_text(r);
    return kExitOk;
}

int run_scan(long n, long t_min, long t_max, bool as_json, unsigned workers, bool verify) {
    auto reports = report::scan(n, t_min, t_max, workers, verify);
    if (as_json) {
        report::json arr = report::json::array();
        for (const auto& r : reports) arr.push_back(report::to_json(r));
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& r : reports) std::cout << report::to_text(r) << "\n";
    }
    return kExitOk;
}

int run_table(long n_min, long n_max, long t_max, bool as_json) {
    auto rows = report::build_table(n_min, n_max, t_max);
    if (as_json)
        std::cout << report::table_json(rows).dump(2) << "\n";
    else
        std::cout << report::table_csv(rows);
    return kExitOk;
}

int run_family(long n, long k_min, long k_max, bool as_json) {
    auto rows = report::family_scan(n, k_min, k_max);
    if (as_json)
        std::cout << report::family_json(n, rows).dump(2) << "\n";
    else
        std::cout << report::family_text(n, rows);
    return kExitOk;
}

int run_pell(long d, long m, const std::vector<long>& congruence, std::size_t limit) {
    Int D(d), M(m);
    if (!congruence.empty()) {
        auto sol = pell::minimal_congruent_solution(D, M, Int(congruence[0]), Int(congruence[1]));
        if (sol)
            std::cout << "minimal solution with X = +-" << congruence[1] << " (mod " << congruence[0]
                      << "): (" << to_string(sol->x) << ", " << to_string(sol->y) << ")\n";
        else
            std::cout << "no solution with X = +-" << congruence[1] << " (mod " << congruence[0]
                      << ")\n";
        return kExitOk;
    }
    auto set = pell::fundamental_solutions(D, M);
    std::cout << "X^2 - " << d << " Y^2 = " << m << "\n";
    std::cout << "resolvent: (" << to_string(set.resolvent.x) << ", " << to_string(set.resolvent.y)
              << ")\n";
    if (set.fundamentals.empty()) {
        std::cout << "no integer solutions\n";
        return kExitOk;
    }
    std::cout << "fundamental solutions:";
    for (const auto& f : set.fundamentals)
        std::cout << " (" << to_string(f.x) << ", " << to_string(f.y) << ")";
    std::cout << "\n";
    auto sols = pell::generate_solutions(set, limit);
    std::cout << "first positive solutions:";
    for (const auto& s : sols) std::cout << " (" << to_string(s.x) << ", " << to_string(s.y) << ")";
    std::cout << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"automorphism groups of Hilbert schemes of points on generic K3 surfaces"};
    app.require_subcommand(1);

    long n = 2, t = 2, t_min = 2, t_max = 120, n_min = 2, n_max = 12;
    long k_min = 1, k_max = 1, d = 2, m = 1;
    bool as_json = false, verify = false;
    unsigned workers = 1;
    std::size_t limit = 5;
    std::vector<long> congruence;

    auto* analyze = app.add_subcommand("analyze", "classify Aut(S^[n]) for one (n, t)");
    analyze->add_option("--n", n, "number of points (>= 2)")->required()->check(CLI::Range(2L, 1000000L));
    analyze->add_option("--t", t, "half the polarization degree (>= 1)")->required()->check(CLI::PositiveNumber);
    analyze->add_flag("--json", as_json, "emit the JSON report");
    analyze->add_flag("--verify", verify, "re-derive every invariant");

    auto* scan = app.add_subcommand("scan", "classify a range of t for fixed n");
    scan->add_option("--n", n)->required()->check(CLI::Range(2L, 1000000L));
    scan->add_option("--t-min", t_min)->required()->check(CLI::PositiveNumber);
    scan->add_option("--t-max", t_max)->required()->check(CLI::PositiveNumber);
    scan->add_flag("--json", as_json);
    scan->add_flag("--verify", verify);
    scan->add_option("--parallel", workers, "worker threads")->check(CLI::Range(1u, 256u));

    auto* table = app.add_subcommand("table", "minimal t per invariant square, per n");
    bool as_csv = false;
    table->add_option("--n-min", n_min)->check(CLI::Range(2L, 1000000L));
    table->add_option("--n-max", n_max)->check(CLI::Range(2L, 1000000L));
    table->add_option("--t-max", t_max, "scan limit (default 120)")->check(CLI::PositiveNumber);
    table->add_flag("--json", as_json, "JSON instead of CSV");
    table->add_flag("--csv", as_csv, "CSV output (the default)")->excludes("--json");

    auto* family = app.add_subcommand("family", "verify the t = (n-1)k^2 + 1 family");
    family->add_option("--n", n)->required()->check(CLI::Range(2L, 1000000L));
    family->add_option("--k-min", k_min)->required()->check(CLI::PositiveNumber);
    family->add_option("--k-max", k_max)->required()->check(CLI::PositiveNumber);
    family->add_flag("--json", as_json);

    auto* pellcmd = app.add_subcommand("pell", "solve X^2 - d Y^2 = m");
    pellcmd->add_option("--d", d, "radicand (>= 2)")->required()->check(CLI::Range(2L, 1000000000L));
    pellcmd->add_option("--m", m, "right-hand side (nonzero)")->required();
    pellcmd->add_option("--congruence", congruence, "modulus and residue for X")->expected(2);
    pellcmd->add_option("--limit", limit, "number of positive solutions to list");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*analyze) return run_analyze(n, t, as_json, verify);
        if (*scan) return run_scan(n, t_min, t_max, as_json, workers, verify);
        if (*table) return run_table(n_min, n_max, t_max, as_json);
        if (*family) return run_family(n, k_min, k_max, as_json);
        if (*pellcmd) return run_pell(d, m, congruence, limit);
    } catch (const PerfectSquareError& e) {
        std::cerr << "perfect square: " << e.what() << "\n";
        return kExitContract;
    } catch (const ContractViolation& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return kExitContract;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
