#include "siqrng/cli/commands.h"

#include <algorithm>
#include <array>
#include <optional>
#include <cmath>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "siqrng/bit_io.h"
#include "siqrng/cli/kv_document.h"
#include "siqrng/click_io.h"
#include "siqrng/errors.h"
#include "siqrng/extractor.h"
#include "siqrng/qubit_core.h"
#include "siqrng/randomness_bounds.h"

namespace siqrng::cli {

namespace {

double parse_real(std::string_view text, const char* what) {
    std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw ConfigError(std::string("cannot parse ") + what + " '" + s + "'");
    }
    return v;
}

std::string prefix(std::string_view a, std::string_view b) {
    return std::string(a) + "." + std::string(b);
}

void echo_budget(KvDocument& doc, const EpsilonBudget& b) {
    doc.add("config.eps1", b.eps1);
    doc.add("config.eps2", b.eps2);
    doc.add("config.eps_x", b.eps_x);
    doc.add("config.eps_y", b.eps_y);
    doc.add("config.eps_z", b.eps_z);
    doc.add("config.eps_total", total_epsilon(b));
}

void echo_experiment(KvDocument& doc, const ExperimentConfig& c) {
    doc.add("config.N", c.pulses);
    doc.add("config.q", c.q);
    doc.add("config.mu0", c.mu0);
    doc.add("config.eta", c.eta);
    doc.add("config.mu", c.mu());
    doc.add("config.p", c.p);
}

void echo_simulation(KvDocument& doc, const SimulationArgs& s) {
    echo_experiment(doc, s.experiment);
    doc.add("config.sampler", s.monte_carlo ? "monte_carlo" : "analytic");
    if (s.monte_carlo) {
        doc.add("config.seed", s.seed);
        doc.add("config.partitions", static_cast<std::uint64_t>(s.partitions));
    }
}

void echo_axis(KvDocument& doc, const std::string& key, const AxisGrid& g) {
    doc.add(key, format_real(g.start) + ":" + format_real(g.step) + ":" + format_real(g.stop));
}

void echo_grid(KvDocument& doc, const SearchGrid& g) {
    echo_axis(doc, "config.mu_grid", g.mu);
    echo_axis(doc, "config.q_grid", g.q);
    doc.add("config.refine_levels", static_cast<std::int64_t>(g.refine_levels));
}

void add_counts(KvDocument& doc, std::string_view key, const ClickRecord& r) {
    for (Basis b : kAllBases) {
        auto k = prefix(key, basis_name(b));
        doc.add_count(k + ".n0", r[b].n0);
        doc.add_count(k + ".n1", r[b].n1);
        doc.add_count(k + ".nd", r[b].nd);
        doc.add_count(k + ".n", r[b].total());
    }
}

void add_finite_size_note(KvDocument& doc, double eps1) {
    doc.add("finite_size_floor", finite_size_floor(eps1));
    if (eps1 == 1e-10) {
        doc.add("finite_size_floor.note",
                "the formula (8/5)log2(2/eps1^2) gives 108 for eps1=1e-10; "
                "the figure 95 sometimes quoted for this eps1 does not satisfy it");
    }
}

void add_report(KvDocument& doc, const RateReport& r) {
    doc.add_count("report.n_z", r.n_z);
    doc.add_count("report.raw_bits", r.raw_bits);
    doc.add("report.coherence", r.coherence);
    doc.add("report.entropy_bound", r.entropy_bound);
    doc.add("report.finite_size_penalty", r.finite_size_penalty);
    doc.add("report.double_click_cost", r.double_click_cost);
    doc.add("report.unclamped_net_bits", r.unclamped_net_bits());
    doc.add("report.net_bits", r.net_bits);
    doc.add("report.pulses", r.pulses);
    doc.add("report.rate_per_pulse", r.rate_per_pulse);
    doc.add("status", r.positive() ? "positive rate" : "no positive rate");
}

void add_certification(KvDocument& doc, const CertificationResult& c, const EpsilonBudget& b) {
    for (Basis basis : kAllBases) {
        auto j = index(basis);
        auto k = std::string(basis_name(basis));
        doc.add("bounds." + k + ".lower", c.bounds[basis].lower);
        doc.add("bounds." + k + ".upper", c.bounds[basis].upper);
        doc.add("worst." + k + ".p_w", c.worst[j].p_w);
        doc.add("worst." + k + ".flipped", c.worst[j].flipped);
        doc.add("theta." + k, c.theta[j]);
        doc.add("p_bar." + k, c.p_bar[j]);
    }
    doc.add("purity_radius", PurityRadius(c.tomogram).checked());
    doc.add("policy.requested", std::string(policy_name(c.requested)));
    doc.add("policy.applied", std::string(policy_name(c.applied)));
    doc.add("policy.fell_back_to_discard", c.fell_back_to_discard);
    if (c.assignment_probability) doc.add("assignment_probability", *c.assignment_probability);
    add_report(doc, c.report);
    doc.add("smoothing_constant", smoothing_constant());
    doc.add("smoothing_constant.rounded", kSmoothingConstantRounded);
    add_finite_size_note(doc, b.eps1);
    doc.add("extraction_penalty", extraction_penalty(b.eps2));
    doc.add("extractable_bits",
            static_cast<std::uint64_t>(output_length(c.report.net_bits, b.eps2)));
}

ClickStatistics run_simulation(const SimulationArgs& s) {
    return s.monte_carlo ? mc_sample(s.experiment, s.seed, s.partitions)
                         : analytic_click_stats(s.experiment);
}

// Routes CSV to a file or to `out`; the document follows the other stream.
void emit_csv(const std::string& target, std::ostream& out, std::ostream& diag,
              KvDocument& doc, const std::function<void(std::ostream&)>& write_csv) {
    if (target == "-") {
        write_csv(out);
        doc.write(diag);
        return;
    }
    std::ofstream file(target);
    if (!file) throw ConfigError("cannot write " + target);
    write_csv(file);
    doc.add("csv", target);
    doc.write(out);
}

}  // namespace

double parse_pulse_count(std::string_view text) {
    double v = 0.0;
    if (auto caret = text.find('^'); caret != std::string_view::npos) {
        double base = parse_real(text.substr(0, caret), "pulse count base");
        double exponent = parse_real(text.substr(caret + 1), "pulse count exponent");
        v = std::pow(base, exponent);
    } else {
        v = parse_real(text, "pulse count");
    }
    if (!(v >= 1.0) || !std::isfinite(v)) throw ConfigError("pulse count must be at least 1");
    return v;
}

AxisGrid parse_axis_grid(std::string_view text) {
    auto first = text.find(':');
    auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos) {
        throw ConfigError("grid '" + std::string(text) + "' must be start:step:stop");
    }
    AxisGrid g{parse_real(text.substr(0, first), "grid start"),
               parse_real(text.substr(first + 1, second - first - 1), "grid step"),
               parse_real(text.substr(second + 1), "grid stop")};
    if (!(g.step > 0.0) || g.stop < g.start) {
        throw ConfigError("grid '" + std::string(text) + "' is empty");
    }
    return g;
}

int cmd_rate(const RateArgs& args, std::ostream& out) {
    KvDocument doc;
    doc.add("command", "rate");
    ClickRecord record;
    double pulses = 0.0;
    if (args.counts_path) {
        record = parse_click_record(read_text_file(*args.counts_path));
        pulses = args.pulses.value_or(record.total_clicks());
        doc.add("config.source", "counts");
        doc.add("config.counts", *args.counts_path);
        doc.add("config.N", pulses);
        doc.add("config.N_source", args.pulses ? "given" : "total_clicks");
    } else {
        args.simulation.experiment.validate();
        record = run_simulation(args.simulation).clicks;
        pulses = args.simulation.experiment.pulses;
        doc.add("config.source", "simulation");
        echo_simulation(doc, args.simulation);
    }
    echo_budget(doc, args.budget);
    doc.add("config.policy", std::string(policy_name(args.policy)));
    add_counts(doc, "counts", record);

    auto result = certify(record, args.budget, args.policy, pulses);
    add_certification(doc, result, args.budget);

    if (args.csv_path) {
        std::ofstream csv(*args.csv_path);
        if (!csv) throw ConfigError("cannot write " + *args.csv_path);
        const auto& r = result.report;
        csv << "pulses,n_z,raw_bits,coherence,entropy_bound,finite_size_penalty,"
               "double_click_cost,net_bits,rate_per_pulse\n";
        csv << format_real(r.pulses) << ',' << format_count(r.n_z) << ','
            << format_count(r.raw_bits) << ',' << format_real(r.coherence) << ','
            << format_real(r.entropy_bound) << ',' << format_real(r.finite_size_penalty) << ','
            << format_real(r.double_click_cost) << ',' << format_real(r.net_bits) << ','
            << format_real(r.rate_per_pulse) << '\n';
        doc.add("csv", *args.csv_path);
    }
    doc.write(out);
    return 0;
}

int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& diag) {
    if (!(args.step > 0.0 && args.step <= 1.0)) throw ConfigError("step must lie in (0, 1]");
    const long half = std::lround(1.0 / args.step);
    if (std::abs(static_cast<double>(half) * args.step - 1.0) > 1e-9) {
        throw ConfigError("step must divide 1");
    }
    KvDocument doc;
    doc.add("command", "compare");
    doc.add("config.step", args.step);
    doc.add("config.q_z", 1.0);
    doc.add("config.beta", 1.0);

    std::size_t rows = 0;
    double min_gap = INFINITY;
    double max_gap = -INFINITY;
    double max_abs_gap_y0 = 0.0;
    emit_csv(args.out, out, diag, doc, [&](std::ostream& csv) {
        csv << "x,y,r_u,r_t,gap\n";
        for (long i = -half; i <= half; ++i) {
            const double x = static_cast<double>(i) / static_cast<double>(half);
            for (long k = -half; k <= half; ++k) {
                const double y = static_cast<double>(k) / static_cast<double>(half);
                if (x * x + y * y > 1.0 + 1e-12) continue;
                auto t = QubitTomogram::from_bloch(x, y, 0.0);
                double r_u = witness_rate_asymptotic(t.p_x, 1.0, 1.0);
                double r_t = tomo_rate_asymptotic(t, 1.0, 1.0);
                double gap = r_t - r_u;
                csv << format_real(x) << ',' << format_real(y) << ',' << format_real(r_u) << ','
                    << format_real(r_t) << ',' << format_real(gap) << '\n';
                ++rows;
                min_gap = std::min(min_gap, gap);
                max_gap = std::max(max_gap, gap);
                if (k == 0) max_abs_gap_y0 = std::max(max_abs_gap_y0, std::abs(gap));
            }
        }
        doc.add("rows", static_cast<std::uint64_t>(rows));
        doc.add("min_gap", min_gap);
        doc.add("max_gap", max_gap);
        doc.add("max_abs_gap_y0", max_abs_gap_y0);
    });
    return 0;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
    const auto& c = args.simulation.experiment;
    c.validate();
    KvDocument doc;
    doc.add("command", "simulate");
    echo_simulation(doc, args.simulation);
    echo_budget(doc, args.budget);

    ClickStatistics stats = run_simulation(args.simulation);
    for (Basis b : kAllBases) {
        auto k = "stats." + std::string(basis_name(b));
        doc.add_count(k + ".pulses", stats.pulses_in(b));
        doc.add_count(k + ".no_click", stats.no_clicks_in(b));
        doc.add_count(k + ".n0", stats.clicks[b].n0);
        doc.add_count(k + ".n1", stats.clicks[b].n1);
        doc.add_count(k + ".nd", stats.clicks[b].nd);
        doc.add_count(k + ".n", stats.clicks[b].total());
    }
    doc.add("beta", stats.clicks.total_clicks() / c.pulses);

    bool has_data = true;
    for (Basis b : kAllBases) has_data = has_data && stats.clicks[b].total() >= 1.0;
    if (has_data) {
        std::array<double, 3> theta{};
        for (Basis b : kAllBases) {
            theta[index(b)] = hoeffding_theta(stats.clicks[b].total(), args.budget.for_basis(b));
        }
        auto est = worst_probs_from_stats(stats, theta);
        for (Basis b : kAllBases) {
            auto j = index(b);
            auto k = std::string(basis_name(b));
            doc.add("bounds." + k + ".lower", est.bounds[b].lower);
            doc.add("bounds." + k + ".upper", est.bounds[b].upper);
            doc.add("theta." + k, est.theta[j]);
            doc.add("raw_lower_minus_theta." + k, est.raw_lower[j]);
            doc.add("worst." + k + ".flipped", est.worst[j].flipped);
            doc.add("p_bar." + k, est.p_bar[j]);
        }
    } else {
        doc.add("worst_case", "unavailable: a basis recorded no clicks");
    }

    if (args.counts_out) {
        std::ofstream f(*args.counts_out);
        if (!f) throw ConfigError("cannot write " + *args.counts_out);
        f << format_click_record(stats.clicks);
        doc.add("counts_file", *args.counts_out);
    }
    doc.write(out);
    return 0;
}

int cmd_optimize(const OptimizeArgs& args, std::ostream& out) {
    if (!(args.eta > 0.0 && args.eta <= 1.0)) throw ConfigError("eta must lie in (0, 1]");
    KvDocument doc;
    doc.add("command", "optimize");
    doc.add("config.N", args.pulses);
    doc.add("config.p", args.p);
    doc.add("config.eta", args.eta);
    echo_budget(doc, args.budget);
    doc.add("config.policy", std::string(policy_name(args.policy)));
    echo_grid(doc, args.grid);

    auto result = optimize(args.pulses, args.p, args.budget, args.policy, args.grid);
    doc.add("evaluations", static_cast<std::uint64_t>(result.trace.size()));
    doc.add("mu_opt", result.mu_opt);
    doc.add("q_opt", result.q_opt);
    doc.add("q_z_opt", 1.0 - 2.0 * result.q_opt);
    doc.add("rate_opt", result.rate_opt);
    doc.add("mu0_opt", result.mu_opt / args.eta);
    doc.add("mu0_opt.note", "set the source intensity mu0 = mu_opt / eta after measuring eta");
    if (result.positive()) {
        ExperimentConfig best{args.pulses, result.q_opt, result.mu_opt, 1.0, args.p};
        auto cert = certify(analytic_click_stats(best).clicks, args.budget, args.policy,
                            args.pulses);
        add_report(doc, cert.report);
    } else {
        doc.add("status", "no positive rate");
    }

    if (args.trace_out) {
        std::ofstream f(*args.trace_out);
        if (!f) throw ConfigError("cannot write " + *args.trace_out);
        f << "mu,q,rate\n";
        for (const auto& t : result.trace) {
            f << format_real(t.mu) << ',' << format_real(t.q) << ',' << format_real(t.rate) << '\n';
        }
        doc.add("trace", *args.trace_out);
    }
    doc.write(out);
    return 0;
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& diag) {
    KvDocument doc;
    doc.add("command", "sweep");
    echo_axis(doc, "config.log10_N", args.log10_pulses);
    doc.add("config.p", args.p);
    echo_budget(doc, args.budget);
    doc.add("config.policy", std::string(policy_name(args.policy)));
    echo_grid(doc, args.grid);

    auto exponents = args.log10_pulses.points();
    if (exponents.empty()) throw ConfigError("empty log10 N grid");
    emit_csv(args.out, out, diag, doc, [&](std::ostream& csv) {
        csv << "log10_N,N,mu_opt,q_opt,rate\n";
        std::optional<double> threshold;
        for (double e : exponents) {
            double n = std::pow(10.0, e);
            auto r = optimize(n, args.p, args.budget, args.policy, args.grid);
            csv << format_real(e) << ',' << format_real(n) << ',' << format_real(r.mu_opt) << ','
                << format_real(r.q_opt) << ',' << format_real(r.rate_opt) << '\n';
            if (r.positive() && !threshold) {
                threshold = e;
                doc.add("threshold.log10_N", e);
                doc.add("threshold.q_opt", r.q_opt);
                doc.add("threshold.mu_opt", r.mu_opt);
            }
        }
        if (!threshold) doc.add("threshold", "none: no positive rate on the grid");
    });
    return 0;
}

int cmd_profile(const ProfileArgs& args, std::ostream& out, std::ostream& diag) {
    KvDocument doc;
    doc.add("command", "profile");
    doc.add("config.N", args.pulses);
    doc.add("config.p", args.p);
    echo_budget(doc, args.budget);
    doc.add("config.policy", std::string(policy_name(args.policy)));
    echo_grid(doc, args.grid);
    emit_csv(args.out, out, diag, doc, [&](std::ostream& csv) {
        csv << "mu,q_opt,rate\n";
        TracePoint best;
        for (const auto& t : mu_profile(args.pulses, args.p, args.budget, args.policy, args.grid)) {
            csv << format_real(t.mu) << ',' << format_real(t.q) << ',' << format_real(t.rate) << '\n';
            if (t.rate > best.rate) best = t;
        }
        doc.add("mu_best", best.mu);
        doc.add("rate_best", best.rate);
    });
    return 0;
}

int cmd_extract(const ExtractArgs& args, std::ostream& out) {
    if (args.raw_path.has_value() == args.raw_bits.has_value()) {
        throw ConfigError("give exactly one of a raw file or a raw bit string");
    }
    if (args.seed_path.has_value() == args.seed_bits.has_value()) {
        throw ConfigError("give exactly one of a seed file or a seed bit string");
    }
    BitString raw = args.raw_path
                        ? unpack_msb_first(read_binary_file(*args.raw_path), args.raw_length)
                        : parse_bit_string(*args.raw_bits);

    KvDocument doc;
    doc.add("command", "extract");
    doc.add("config.raw", args.raw_path ? *args.raw_path : std::string("ascii"));
    doc.add("config.seed", args.seed_path ? *args.seed_path : std::string("ascii"));
    doc.add("config.eps2", args.eps2);

    std::size_t m = 0;
    if (args.output_bits) {
        m = *args.output_bits;
        doc.add("config.m", static_cast<std::uint64_t>(m));
    } else if (args.net_bits) {
        m = std::min(output_length(*args.net_bits, args.eps2), raw.size());
        doc.add("config.net_bits", *args.net_bits);
        doc.add("extraction_penalty", extraction_penalty(args.eps2));
    } else {
        throw ConfigError("give the output length or the certified net bits");
    }
    doc.add("input_bits", static_cast<std::uint64_t>(raw.size()));
    doc.add("output_bits", static_cast<std::uint64_t>(m));

    BitString result;
    if (m > 0) {
        ToeplitzSpec spec{raw.size(), m, {}};
        const std::size_t seed_len = raw.size() + m - 1;
        if (args.seed_path) {
            spec.seed = unpack_msb_first(read_binary_file(*args.seed_path), std::nullopt);
            if (spec.seed.size() < seed_len) {
                throw LengthMismatchError("seed file holds " + std::to_string(spec.seed.size()) +
                                          " bits, need " + std::to_string(seed_len));
            }
            spec.seed.resize(seed_len);
        } else {
            spec.seed = parse_bit_string(*args.seed_bits);
        }
        result = toeplitz_extract(raw, spec);
    } else {
        doc.add("status", "no output: certified bits do not exceed the extraction penalty");
    }

    if (args.out_path) {
        write_binary_file(*args.out_path, pack_msb_first(result));
        doc.add("out", *args.out_path);
    } else {
        doc.add("output", to_bit_string(result));
    }
    doc.write(out);
    return 0;
}

int cmd_constants(const ConstantsArgs& args, std::ostream& out) {
    KvDocument doc;
    doc.add("command", "constants");
    doc.add("config.eps1", args.eps1);
    doc.add("smoothing_constant", smoothing_constant());
    doc.add("smoothing_constant.rounded", kSmoothingConstantRounded);
    add_finite_size_note(doc, args.eps1);
    doc.write(out);
    return 0;
}

}  // namespace siqrng::cli
