#ifndef SIQRNG_CLI_COMMANDS_H
#define SIQRNG_CLI_COMMANDS_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "siqrng/acquisition.h"
#include "siqrng/certification.h"
#include "siqrng/detector_sim.h"
#include "siqrng/optimizer.h"

namespace siqrng::cli {

/// Parses a pulse count given as a real ("1e10") or a power of ten ("10^4.8").
double parse_pulse_count(std::string_view text);
/// Parses "start:step:stop".
AxisGrid parse_axis_grid(std::string_view text);

/// Shared simulation parameters.
struct SimulationArgs {
    ExperimentConfig experiment;
    bool monte_carlo = false;
    std::uint64_t seed = 1;
    unsigned partitions = 1;
};

struct RateArgs {
    /// Measured counts (text or JSON); when absent the detector model is used.
    std::optional<std::string> counts_path;
    SimulationArgs simulation;
    /// Pulses behind measured counts; defaults to the total click count.
    std::optional<double> pulses;
    EpsilonBudget budget;
    DoubleClickPolicy policy = DoubleClickPolicy::discard;
    std::optional<std::string> csv_path;
};

struct CompareArgs {
    double step = 0.05;
    std::string out = "-";
};

struct SimulateArgs {
    SimulationArgs simulation;
    EpsilonBudget budget;
    std::optional<std::string> counts_out;
};

struct OptimizeArgs {
    double pulses = 1e10;
    double p = 0.0;
    double eta = 1.0;
    EpsilonBudget budget;
    DoubleClickPolicy policy = DoubleClickPolicy::discard;
    SearchGrid grid;
    std::optional<std::string> trace_out;
};

struct SweepArgs {
    AxisGrid log10_pulses{4.0, 0.1, 10.0};
    double p = 0.1;
    EpsilonBudget budget;
    DoubleClickPolicy policy = DoubleClickPolicy::discard;
    SearchGrid grid;
    std::string out = "-";
};

struct ProfileArgs {
    double pulses = 1e10;
    double p = 0.0;
    EpsilonBudget budget;
    DoubleClickPolicy policy = DoubleClickPolicy::discard;
    SearchGrid grid;
    std::string out = "-";
};

struct ExtractArgs {
    std::optional<std::string> raw_path;   ///< packed binary
    std::optional<std::string> raw_bits;   ///< ASCII 0/1
    std::optional<std::size_t> raw_length; ///< bits to take from raw_path
    std::optional<std::string> seed_path;  ///< packed binary
    std::optional<std::string> seed_bits;  ///< ASCII 0/1
    std::optional<std::size_t> output_bits;
    std::optional<double> net_bits;
    double eps2 = 1e-10;
    std::optional<std::string> out_path;   ///< packed binary output
};

struct ConstantsArgs {
    double eps1 = 1e-10;
};

/// Each command writes its key-value document to `out`. Commands producing
/// CSV write it to the file named by their `out` field, or to `out` when that
/// is "-", in which case the document goes to `diag`. They return the exit
/// status; a run certifying no randomness still succeeds.
int cmd_rate(const RateArgs& args, std::ostream& out);
int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& diag);
int cmd_simulate(const SimulateArgs& args, std::ostream& out);
int cmd_optimize(const OptimizeArgs& args, std::ostream& out);
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& diag);
int cmd_profile(const ProfileArgs& args, std::ostream& out, std::ostream& diag);
int cmd_extract(const ExtractArgs& args, std::ostream& out);
int cmd_constants(const ConstantsArgs& args, std::ostream& out);

}  // namespace siqrng::cli

#endif
