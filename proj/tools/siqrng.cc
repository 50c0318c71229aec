// Command-line front end: certification of measured or simulated click data,
// figure data generation, parameter optimization and Toeplitz extraction.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "siqrng/cli/commands.h"

namespace sc = siqrng::cli;

namespace {

struct BudgetOptions {
    std::optional<double> all;
    double eps1 = 1e-10, eps2 = 1e-10, eps_x = 1e-10, eps_y = 1e-10, eps_z = 1e-10;

    void attach(CLI::App* app) {
        app->add_option("--eps", all, "Set all five failure probabilities");
        app->add_option("--eps1", eps1, "Smoothing failure probability");
        app->add_option("--eps2", eps2, "Extraction failure probability");
        app->add_option("--eps-x", eps_x, "X-basis estimation failure probability");
        app->add_option("--eps-y", eps_y, "Y-basis estimation failure probability");
        app->add_option("--eps-z", eps_z, "Z-basis estimation failure probability");
    }
    siqrng::EpsilonBudget resolve() const {
        if (all) return siqrng::EpsilonBudget::uniform(*all);
        return {eps1, eps2, eps_x, eps_y, eps_z};
    }
};

struct PolicyOption {
    std::string name = "discard";
    void attach(CLI::App* app) {
        app->add_option("--policy", name, "Z double-click handling")
            ->check(CLI::IsMember({"assign", "discard"}));
    }
    siqrng::DoubleClickPolicy resolve() const { return *siqrng::parse_policy(name); }
};

struct GridOptions {
    std::string mu = "0.05:0.05:5";
    std::string q = "0.005:0.005:0.495";
    int refine = 3;
    void attach(CLI::App* app) {
        app->add_option("--mu-grid", mu, "Coarse intensity grid start:step:stop");
        app->add_option("--q-grid", q, "Coarse basis-probability grid start:step:stop");
        app->add_option("--refine", refine, "Refinement levels");
    }
    siqrng::SearchGrid resolve() const {
        return {sc::parse_axis_grid(mu), sc::parse_axis_grid(q), refine};
    }
};

struct SimulationOptions {
    std::string pulses = "1e10";
    siqrng::ExperimentConfig experiment;
    bool mc = false;
    std::uint64_t seed = 1;
    unsigned partitions = 1;

    void attach(CLI::App* app) {
        app->add_option("--N", pulses, "Pulse count, e.g. 1e10 or 10^4.8");
        app->add_option("--q", experiment.q, "X and Y basis probability");
        app->add_option("--mu0", experiment.mu0, "Source intensity");
        app->add_option("--eta", experiment.eta, "Total transmittance");
        app->add_option("--p", experiment.p, "Depolarization");
        app->add_flag("--mc", mc, "Monte Carlo sampling instead of expected counts");
        app->add_option("--seed", seed, "Monte Carlo seed");
        app->add_option("--partitions", partitions, "Monte Carlo worker blocks");
    }
    sc::SimulationArgs resolve() const {
        sc::SimulationArgs s{experiment, mc, seed, partitions};
        s.experiment.pulses = sc::parse_pulse_count(pulses);
        return s;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Source-independent QRNG certification and extraction"};
    app.require_subcommand(1);

    // rate
    auto* rate = app.add_subcommand("rate", "Certify net random bits from click counts");
    std::optional<std::string> counts;
    std::optional<std::string> rate_n;
    std::optional<std::string> rate_csv;
    bool simulate_flag = false;
    SimulationOptions rate_sim;
    BudgetOptions rate_budget;
    PolicyOption rate_policy;
    rate->add_option("--counts", counts, "Measured counts file (basis,n0,n1,nd lines or JSON)");
    rate->add_flag("--simulate", simulate_flag, "Use the detector model as the count source");
    rate_sim.attach(rate);
    rate_budget.attach(rate);
    rate_policy.attach(rate);
    rate->add_option("--out", rate_csv, "Also write the report as a CSV row");

    // compare
    auto* compare = app.add_subcommand("compare", "Witness vs tomography rates over the Bloch disk");
    sc::CompareArgs compare_args;
    compare->add_option("--step", compare_args.step, "Grid step in x and y");
    compare->add_option("--out", compare_args.out, "CSV destination, - for stdout");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Click statistics of the detector model");
    SimulationOptions sim_opts;
    BudgetOptions sim_budget;
    std::optional<std::string> sim_out;
    sim_opts.attach(simulate);
    sim_budget.attach(simulate);
    simulate->add_option("--out", sim_out, "Write counts as basis,n0,n1,nd lines");

    // optimize
    auto* opt = app.add_subcommand("optimize", "Maximize the certified rate over mu and q");
    std::string opt_n = "1e10";
    sc::OptimizeArgs opt_args;
    BudgetOptions opt_budget;
    PolicyOption opt_policy;
    GridOptions opt_grid;
    opt->add_option("--N", opt_n, "Pulse count");
    opt->add_option("--p", opt_args.p, "Depolarization");
    opt->add_option("--eta", opt_args.eta, "Transmittance used to convert mu_opt to mu0");
    opt_budget.attach(opt);
    opt_policy.attach(opt);
    opt_grid.attach(opt);
    opt->add_option("--out", opt_args.trace_out, "Write the evaluation trace as CSV");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Optimal mu, q and rate versus N");
    std::string sweep_grid = "4:0.1:10";
    sc::SweepArgs sweep_args;
    BudgetOptions sweep_budget;
    PolicyOption sweep_policy;
    GridOptions sweep_search;
    sweep->add_option("--log10-N", sweep_grid, "log10 N grid start:step:stop");
    sweep->add_option("--p", sweep_args.p, "Depolarization");
    sweep_budget.attach(sweep);
    sweep_policy.attach(sweep);
    sweep_search.attach(sweep);
    sweep->add_option("--out", sweep_args.out, "CSV destination, - for stdout");

    // profile
    auto* profile = app.add_subcommand("profile", "Rate versus mu with q optimized");
    std::string profile_n = "1e10";
    sc::ProfileArgs profile_args;
    BudgetOptions profile_budget;
    PolicyOption profile_policy;
    GridOptions profile_grid;
    profile->add_option("--N", profile_n, "Pulse count");
    profile->add_option("--p", profile_args.p, "Depolarization");
    profile_budget.attach(profile);
    profile_policy.attach(profile);
    profile_grid.attach(profile);
    profile->add_option("--out", profile_args.out, "CSV destination, - for stdout");

    // extract
    auto* extract = app.add_subcommand("extract", "Toeplitz hashing of raw Z-basis bits");
    sc::ExtractArgs ext;
    extract->add_option("--raw", ext.raw_path, "Raw bits, packed MSB first");
    extract->add_option("--raw-bits", ext.raw_bits, "Raw bits as an ASCII 0/1 string");
    extract->add_option("--raw-length", ext.raw_length, "Number of bits to read from --raw");
    extract->add_option("--toeplitz-seed", ext.seed_path, "Seed bits, packed MSB first");
    extract->add_option("--toeplitz-seed-bits", ext.seed_bits, "Seed as an ASCII 0/1 string");
    extract->add_option("--m", ext.output_bits, "Output length in bits");
    extract->add_option("--net-bits", ext.net_bits, "Certified net bits; sets m after t_e");
    extract->add_option("--eps2", ext.eps2, "Extraction failure probability");
    extract->add_option("--out", ext.out_path, "Write output packed MSB first");

    // constants
    auto* constants = app.add_subcommand("constants", "Smoothing constant and finite-size floor");
    sc::ConstantsArgs const_args;
    constants->add_option("--eps1", const_args.eps1, "Smoothing failure probability");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*rate) {
            if (counts.has_value() == simulate_flag) {
                std::cerr << "error: give exactly one of --counts FILE or --simulate\n";
                return 2;
            }
            sc::RateArgs a;
            a.counts_path = counts;
            a.simulation = rate_sim.resolve();
            if (counts && rate->count("--N")) a.pulses = a.simulation.experiment.pulses;
            a.budget = rate_budget.resolve();
            a.policy = rate_policy.resolve();
            a.csv_path = rate_csv;
            return sc::cmd_rate(a, std::cout);
        }
        if (*compare) return sc::cmd_compare(compare_args, std::cout, std::cerr);
        if (*simulate) {
            sc::SimulateArgs a{sim_opts.resolve(), sim_budget.resolve(), sim_out};
            return sc::cmd_simulate(a, std::cout);
        }
        if (*opt) {
            opt_args.pulses = sc::parse_pulse_count(opt_n);
            opt_args.budget = opt_budget.resolve();
            opt_args.policy = opt_policy.resolve();
            opt_args.grid = opt_grid.resolve();
            return sc::cmd_optimize(opt_args, std::cout);
        }
        if (*sweep) {
            sweep_args.log10_pulses = sc::parse_axis_grid(sweep_grid);
            sweep_args.budget = sweep_budget.resolve();
            sweep_args.policy = sweep_policy.resolve();
            sweep_args.grid = sweep_search.resolve();
            return sc::cmd_sweep(sweep_args, std::cout, std::cerr);
        }
        if (*profile) {
            profile_args.pulses = sc::parse_pulse_count(profile_n);
            profile_args.budget = profile_budget.resolve();
            profile_args.policy = profile_policy.resolve();
            profile_args.grid = profile_grid.resolve();
            return sc::cmd_profile(profile_args, std::cout, std::cerr);
        }
        if (*extract) return sc::cmd_extract(ext, std::cout);
        if (*constants) return sc::cmd_constants(const_args, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
