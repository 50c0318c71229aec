#include "siqrng/detector_sim.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "siqrng/errors.h"

namespace siqrng {

void ExperimentConfig::validate() const {
    if (!(pulses >= 1.0) || !std::isfinite(pulses)) {
        throw ConfigError("pulse count N must be at least 1");
    }
    if (!(q > 0.0 && q < 0.5)) throw ConfigError("q must lie in (0, 1/2), got " + std::to_string(q));
    if (!(mu0 > 0.0) || !std::isfinite(mu0)) throw ConfigError("mu0 must be positive");
    if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("eta must lie in [0, 1]");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
}

// With a = exp(-mu/2): no click a^2, single clicks of a split pulse a(1-a)
// each, double clicks (1-a)^2. Written through expm1 to stay accurate as
// mu -> 0.
ClickStatistics analytic_click_stats(const ExperimentConfig& config) {
    config.validate();
    const double mu = config.mu();
    const double a = std::exp(-mu / 2.0);
    const double one_minus_a = -std::expm1(-mu / 2.0);
    const double split_single = a * one_minus_a;
    const double split_double = one_minus_a * one_minus_a;

    ClickStatistics s;
    for (Basis b : kAllBases) {
        const double pref = config.pulses * config.basis_probability(b);
        s.basis_pulses[index(b)] = pref;
        s.no_clicks[index(b)] = pref * a * a;
        if (b == Basis::X) {
            // 1 - p - e^-mu + p e^-mu/2 = (1 - a)(1 + a - p)
            s.clicks[b] = {pref * one_minus_a * (1.0 + a - config.p),
                           pref * config.p * split_single, pref * config.p * split_double};
        } else {
            s.clicks[b] = {pref * split_single, pref * split_single, pref * split_double};
        }
    }
    return s;
}

double double_click_prob(std::uint64_t photons, double eta, Basis basis, double p) {
    const double m = static_cast<double>(photons);
    double both = 1.0 + std::pow(1.0 - eta, m) - 2.0 * std::pow(1.0 - eta / 2.0, m);
    both = std::max(both, 0.0);
    return basis == Basis::X ? p * both : both;
}

namespace {

struct BlockTally {
    std::array<std::uint64_t, 3> pulses{};
    std::array<std::uint64_t, 3> none{};
    std::array<std::uint64_t, 3> n0{};
    std::array<std::uint64_t, 3> n1{};
    std::array<std::uint64_t, 3> nd{};
};

BlockTally sample_block(const ExperimentConfig& c, std::uint64_t seed, std::uint64_t block,
                        std::uint64_t count) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    std::mt19937_64 gen(seq);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::poisson_distribution<std::uint64_t> photons(c.mu0);
    std::bernoulli_distribution mixed(c.p);

    BlockTally t;
    for (std::uint64_t i = 0; i < count; ++i) {
        double u = uniform(gen);
        Basis basis = u < c.q ? Basis::X : (u < 2.0 * c.q ? Basis::Y : Basis::Z);
        std::uint64_t m = photons(gen);
        bool is_mixed = mixed(gen);
        std::uint64_t survived =
            m == 0 ? 0 : std::binomial_distribution<std::uint64_t>(m, c.eta)(gen);
        std::uint64_t first = survived;
        if (!(basis == Basis::X && !is_mixed) && survived > 0) {
            first = std::binomial_distribution<std::uint64_t>(survived, 0.5)(gen);
        }
        bool click0 = first > 0;
        bool click1 = survived - first > 0;

        auto j = index(basis);
        ++t.pulses[j];
        if (click0 && click1) {
            ++t.nd[j];
        } else if (click0) {
            ++t.n0[j];
        } else if (click1) {
            ++t.n1[j];
        } else {
            ++t.none[j];
        }
    }
    return t;
}

}  // namespace

ClickStatistics mc_sample(const ExperimentConfig& config, std::uint64_t seed,
                          unsigned partitions) {
    config.validate();
    if (partitions == 0) throw ConfigError("partition count must be positive");
    const auto total = static_cast<std::uint64_t>(std::llround(config.pulses));

    std::vector<BlockTally> tallies(partitions);
    {
        std::vector<std::jthread> workers;
        workers.reserve(partitions);
        for (unsigned k = 0; k < partitions; ++k) {
            std::uint64_t begin = total * k / partitions;
            std::uint64_t end = total * (k + 1) / partitions;
            workers.emplace_back([&config, &tallies, seed, k, begin, end] {
                tallies[k] = sample_block(config, seed, k, end - begin);
            });
        }
    }

    ClickStatistics s;
    for (const auto& t : tallies) {
        for (Basis b : kAllBases) {
            auto j = index(b);
            s.basis_pulses[j] += static_cast<double>(t.pulses[j]);
            s.no_clicks[j] += static_cast<double>(t.none[j]);
            s.clicks[b].n0 += static_cast<double>(t.n0[j]);
            s.clicks[b].n1 += static_cast<double>(t.n1[j]);
            s.clicks[b].nd += static_cast<double>(t.nd[j]);
        }
    }
    return s;
}

SimulatedEstimates worst_probs_from_stats(const ClickStatistics& stats,
                                          const std::array<double, 3>& theta) {
    SimulatedEstimates e;
    e.stats = stats;
    e.bounds = squash_bounds(stats.clicks);
    e.theta = theta;
    for (Basis b : kAllBases) {
        auto j = index(b);
        e.raw_lower[j] = e.bounds[b].lower - theta[j];
        e.worst[j] = worst_case_prob(e.bounds, b);
        e.p_bar[j] = fluctuation_adjust(e.worst[j].p_w, theta[j]);
    }
    return e;
}

SimulatedEstimates simulated_worst_probs(const ExperimentConfig& config,
                                         const EpsilonBudget& budget) {
    total_epsilon(budget);
    ClickStatistics stats = analytic_click_stats(config);
    std::array<double, 3> theta{};
    for (Basis b : kAllBases) {
        theta[index(b)] = hoeffding_theta(stats.clicks[b].total(), budget.for_basis(b));
    }
    return worst_probs_from_stats(stats, theta);
}

}  // namespace siqrng
