#include "siqrng/detector_sim.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "siqrng/errors.h"

using namespace siqrng;

namespace {

ExperimentConfig reference_config() { return {1e6, 0.05, 1.0, 1.0, 0.1}; }

// The ten closed forms written exactly as e^{-mu} polynomials.
struct ClosedForms {
    double nx, n0x, n1x, ndx, n0y, ndy, n0z, ndz, ny, nz;
};

ClosedForms closed_forms(const ExperimentConfig& c) {
    const double e1 = std::exp(-c.mu()), eh = std::exp(-c.mu() / 2.0);
    const double nq = c.pulses * c.q, nzp = c.pulses * (1.0 - 2.0 * c.q), p = c.p;
    return {nq * (1 - e1),          nq * (1 - p - e1 + p * eh), nq * p * (eh - e1),
            nq * p * (1 + e1 - 2 * eh), nq * (eh - e1),         nq * (1 + e1 - 2 * eh),
            nzp * (eh - e1),        nzp * (1 + e1 - 2 * eh),    nq * (1 - e1),
            nzp * (1 - e1)};
}

// Exhaustive enumeration over which photons survive and where they are
// routed. `split` is the probability that a pulse's photons are routed
// independently 50/50; otherwise they all reach the first detector.
double brute_force_double_click(unsigned m, double eta, double split) {
    double total = 0.0;
    for (unsigned survive = 0; survive < (1u << m); ++survive) {
        double weight = 1.0;
        for (unsigned k = 0; k < m; ++k) weight *= (survive >> k & 1u) ? eta : 1.0 - eta;
        double split_double = 0.0;
        for (unsigned route = 0; route < (1u << m); ++route) {
            bool d0 = false, d1 = false;
            for (unsigned k = 0; k < m; ++k) {
                if (!(survive >> k & 1u)) continue;
                ((route >> k & 1u) ? d1 : d0) = true;
            }
            if (d0 && d1) split_double += std::ldexp(1.0, -static_cast<int>(m));
        }
        total += weight * split * split_double;
    }
    return total;
}

// Per-photon-number click probabilities in one basis, by enumeration.
struct PhotonOutcome {
    double none, first, second, both;
};

PhotonOutcome enumerate_outcomes(unsigned m, double eta, double split) {
    PhotonOutcome o{0, 0, 0, 0};
    for (unsigned survive = 0; survive < (1u << m); ++survive) {
        double weight = 1.0;
        for (unsigned k = 0; k < m; ++k) weight *= (survive >> k & 1u) ? eta : 1.0 - eta;
        auto add = [&](bool d0, bool d1, double w) {
            if (d0 && d1) o.both += w;
            else if (d0) o.first += w;
            else if (d1) o.second += w;
            else o.none += w;
        };
        bool any = survive != 0;
        add(any, false, weight * (1.0 - split));
        for (unsigned route = 0; route < (1u << m); ++route) {
            bool d0 = false, d1 = false;
            for (unsigned k = 0; k < m; ++k) {
                if (!(survive >> k & 1u)) continue;
                ((route >> k & 1u) ? d1 : d0) = true;
            }
            add(d0, d1, weight * split * std::ldexp(1.0, -static_cast<int>(m)));
        }
    }
    return o;
}

}  // namespace

TEST(analytic_click_stats, reference_values) {
    auto s = analytic_click_stats(reference_config());
    // 30-digit evaluation of the closed forms.
    EXPECT_NEAR(s.clicks[Basis::X].total(), 31606.0279414278839, 1e-8);
    EXPECT_NEAR(s.clicks[Basis::X].n0, 29638.6812399910510, 1e-8);
    EXPECT_NEAR(s.clicks[Basis::X].n1, 1193.25609270595551, 1e-8);
    EXPECT_NEAR(s.clicks[Basis::X].nd, 774.090608730877372, 1e-8);
}

TEST(analytic_click_stats, matches_closed_forms) {
    for (double mu : {0.01, 0.3, 1.0, 2.5, 5.0}) {
        for (double p : {0.0, 0.1, 0.3, 1.0}) {
            ExperimentConfig c{1e9, 0.1, mu, 1.0, p};
            auto s = analytic_click_stats(c);
            auto f = closed_forms(c);
            auto near = [](double a, double b) { EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, std::abs(b))); };
            near(s.clicks[Basis::X].n0, f.n0x);
            near(s.clicks[Basis::X].n1, f.n1x);
            near(s.clicks[Basis::X].nd, f.ndx);
            near(s.clicks[Basis::Y].n0, f.n0y);
            near(s.clicks[Basis::Y].n1, f.n0y);
            near(s.clicks[Basis::Y].nd, f.ndy);
            near(s.clicks[Basis::Z].n0, f.n0z);
            near(s.clicks[Basis::Z].n1, f.n0z);
            near(s.clicks[Basis::Z].nd, f.ndz);
            near(s.clicks[Basis::X].total(), f.nx);
            near(s.clicks[Basis::Y].total(), f.ny);
            near(s.clicks[Basis::Z].total(), f.nz);
        }
    }
}

TEST(analytic_click_stats, poisson_series_oracle) {
    // Sum the photon-number distribution against enumerated per-m outcomes.
    for (double mu0 : {0.4, 1.3}) {
        for (double eta : {0.5, 1.0}) {
            ExperimentConfig c{1.0, 0.2, mu0, eta, 0.3};
            auto s = analytic_click_stats(c);
            PhotonOutcome x{0, 0, 0, 0}, z{0, 0, 0, 0};
            double poisson = std::exp(-mu0);
            for (unsigned m = 0; m <= 12; ++m) {
                if (m > 0) poisson *= mu0 / m;
                auto px = enumerate_outcomes(m, eta, c.p);
                auto pz = enumerate_outcomes(m, eta, 1.0);
                x.none += poisson * px.none, x.first += poisson * px.first;
                x.second += poisson * px.second, x.both += poisson * px.both;
                z.none += poisson * pz.none, z.first += poisson * pz.first;
                z.second += poisson * pz.second, z.both += poisson * pz.both;
            }
            // Truncation at 12 photons leaves < 1e-6 of the mass.
            EXPECT_NEAR(s.clicks[Basis::X].n0, c.q * x.first, 1e-6);
            EXPECT_NEAR(s.clicks[Basis::X].n1, c.q * x.second, 1e-6);
            EXPECT_NEAR(s.clicks[Basis::X].nd, c.q * x.both, 1e-6);
            EXPECT_NEAR(s.no_clicks_in(Basis::X), c.q * x.none, 1e-6);
            EXPECT_NEAR(s.clicks[Basis::Z].n0, 0.6 * z.first, 1e-6);
            EXPECT_NEAR(s.clicks[Basis::Z].n1, 0.6 * z.second, 1e-6);
            EXPECT_NEAR(s.clicks[Basis::Z].nd, 0.6 * z.both, 1e-6);
        }
    }
}

TEST(analytic_click_stats, noiseless_has_no_x_errors) {
    for (double mu : {0.1, 1.0, 4.0}) {
        auto s = analytic_click_stats({1e8, 0.1, mu, 1.0, 0.0});
        EXPECT_EQ(s.clicks[Basis::X].n1, 0.0);
        EXPECT_EQ(s.clicks[Basis::X].nd, 0.0);
    }
}

TEST(analytic_click_stats, low_intensity_double_ratio_vanishes) {
    double previous = 1.0;
    for (double mu : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        auto s = analytic_click_stats({1e8, 0.1, mu, 1.0, 0.2});
        double ratio = s.clicks[Basis::Z].nd / s.clicks[Basis::Z].total();
        EXPECT_LT(ratio, previous);
        EXPECT_GT(ratio, 0.0);
        previous = ratio;
    }
    EXPECT_LT(previous, 1e-5);
}

TEST(analytic_click_stats, conservation_and_symmetry) {
    ExperimentConfig c{1e7, 0.15, 1.7, 0.6, 0.25};
    auto s = analytic_click_stats(c);
    for (Basis b : kAllBases) {
        EXPECT_NEAR(s.clicks[b].total() + s.no_clicks_in(b), s.pulses_in(b), 1e-6);
    }
    const double ratio = c.q / (1.0 - 2.0 * c.q);
    EXPECT_NEAR(s.clicks[Basis::Y].n0, ratio * s.clicks[Basis::Z].n0, 1e-8);
    EXPECT_NEAR(s.clicks[Basis::Y].n1, ratio * s.clicks[Basis::Z].n1, 1e-8);
    EXPECT_NEAR(s.clicks[Basis::Y].nd, ratio * s.clicks[Basis::Z].nd, 1e-8);
}

TEST(experiment_config, validation) {
    EXPECT_THROW(analytic_click_stats({0.5, 0.1, 1.0, 1.0, 0.1}), ConfigError);
    EXPECT_THROW(analytic_click_stats({1e6, 0.5, 1.0, 1.0, 0.1}), ConfigError);
    EXPECT_THROW(analytic_click_stats({1e6, 0.0, 1.0, 1.0, 0.1}), ConfigError);
    EXPECT_THROW(analytic_click_stats({1e6, 0.1, 0.0, 1.0, 0.1}), ConfigError);
    EXPECT_THROW(analytic_click_stats({1e6, 0.1, 1.0, 1.1, 0.1}), ConfigError);
    EXPECT_THROW(analytic_click_stats({1e6, 0.1, 1.0, 1.0, -0.1}), ConfigError);
}

TEST(double_click_prob, examples) {
    for (Basis b : kAllBases) {
        EXPECT_EQ(double_click_prob(0, 0.7, b, 0.4), 0.0);
        EXPECT_NEAR(double_click_prob(1, 0.7, b, 0.4), 0.0, 1e-16);
    }
    EXPECT_DOUBLE_EQ(double_click_prob(2, 1.0, Basis::X, 1.0), 0.5);
    EXPECT_DOUBLE_EQ(double_click_prob(2, 0.5, Basis::Y, 0.0), 0.125);
    EXPECT_DOUBLE_EQ(double_click_prob(2, 0.5, Basis::Z, 0.7), 0.125);
}

TEST(double_click_prob, matches_enumeration) {
    for (unsigned m = 0; m <= 4; ++m) {
        for (double eta : {0.0, 0.25, 0.5, 0.9, 1.0}) {
            for (double p : {0.0, 0.3, 1.0}) {
                EXPECT_NEAR(double_click_prob(m, eta, Basis::X, p),
                            brute_force_double_click(m, eta, p), 1e-14);
                EXPECT_NEAR(double_click_prob(m, eta, Basis::Y, p),
                            brute_force_double_click(m, eta, 1.0), 1e-14);
                EXPECT_NEAR(double_click_prob(m, eta, Basis::Z, p),
                            brute_force_double_click(m, eta, 1.0), 1e-14);
            }
        }
    }
}

TEST(mc_sample, no_transmission_no_clicks) {
    auto s = mc_sample({20000, 0.1, 2.0, 0.0, 0.5}, 3);
    for (Basis b : kAllBases) {
        EXPECT_EQ(s.clicks[b].total(), 0.0);
        EXPECT_EQ(s.no_clicks_in(b), s.pulses_in(b));
    }
    EXPECT_EQ(s.pulses_in(Basis::X) + s.pulses_in(Basis::Y) + s.pulses_in(Basis::Z), 20000.0);
}

TEST(mc_sample, noiseless_x_basis) {
    auto s = mc_sample({50000, 0.2, 2.0, 0.8, 0.0}, 4, 3);
    EXPECT_EQ(s.clicks[Basis::X].nd, 0.0);
    EXPECT_EQ(s.clicks[Basis::X].n1, 0.0);
    EXPECT_GT(s.clicks[Basis::X].n0, 0.0);
    EXPECT_GT(s.clicks[Basis::Z].nd, 0.0);
}

TEST(mc_sample, deterministic_per_seed_and_partitioning) {
    ExperimentConfig c{30000, 0.1, 1.0, 0.9, 0.2};
    for (unsigned parts : {1u, 4u}) {
        auto a = mc_sample(c, 42, parts);
        auto b = mc_sample(c, 42, parts);
        for (Basis basis : kAllBases) {
            EXPECT_EQ(a.clicks[basis].n0, b.clicks[basis].n0);
            EXPECT_EQ(a.clicks[basis].n1, b.clicks[basis].n1);
            EXPECT_EQ(a.clicks[basis].nd, b.clicks[basis].nd);
            EXPECT_EQ(a.no_clicks_in(basis), b.no_clicks_in(basis));
        }
    }
    auto other = mc_sample(c, 43, 1);
    auto first = mc_sample(c, 42, 1);
    EXPECT_NE(other.clicks[Basis::Z].n0, first.clicks[Basis::Z].n0);
}

TEST(mc_sample, agrees_with_analytic) {
    ExperimentConfig c{200000, 0.1, 1.2, 0.8, 0.2};
    auto expected = analytic_click_stats(c);
    for (std::uint64_t seed : {1u, 2u}) {
        auto s = mc_sample(c, seed, 2);
        for (Basis b : kAllBases) {
            const auto& e = expected.clicks[b];
            const auto& got = s.clicks[b];
            for (auto [want, have] : {std::pair{e.n0, got.n0}, std::pair{e.n1, got.n1},
                                      std::pair{e.nd, got.nd}}) {
                double frac = want / c.pulses;
                double sd = std::sqrt(c.pulses * frac * (1.0 - frac));
                EXPECT_LE(std::abs(have - want), 5.0 * sd);
            }
            EXPECT_EQ(got.total() + s.no_clicks_in(b), s.pulses_in(b));
        }
    }
}

TEST(simulated_worst_probs, examples_without_fluctuation) {
    std::array<double, 3> zero{0.0, 0.0, 0.0};
    auto noiseless = worst_probs_from_stats(analytic_click_stats({1e10, 0.05, 1.0, 1.0, 0.0}), zero);
    EXPECT_DOUBLE_EQ(noiseless.p_bar_in(Basis::X), 1.0);

    auto noisy = worst_probs_from_stats(analytic_click_stats({1e10, 0.05, 1.0, 1.0, 0.1}), zero);
    EXPECT_NEAR(noisy.p_bar_in(Basis::X), 0.937754066879814543536, 1e-14);
    EXPECT_NEAR(noisy.raw_lower[index(Basis::Y)], 0.377540668798145435361, 1e-14);
    EXPECT_NEAR(noisy.raw_lower[index(Basis::Z)], 0.377540668798145435361, 1e-14);
    // The Y and Z intervals always straddle 1/2, so the least coherent value
    // inside them is 1/2 itself.
    EXPECT_LT(noisy.bounds[Basis::Y].lower, 0.5);
    EXPECT_GT(noisy.bounds[Basis::Y].upper, 0.5);
    EXPECT_DOUBLE_EQ(noisy.p_bar_in(Basis::Y), 0.5);
    EXPECT_DOUBLE_EQ(noisy.p_bar_in(Basis::Z), 0.5);
    EXPECT_FALSE(noisy.worst[index(Basis::Y)].flipped);
}

TEST(simulated_worst_probs, uses_per_basis_theta) {
    ExperimentConfig c{1e10, 0.05, 1.0, 1.0, 0.1};
    auto est = simulated_worst_probs(c, EpsilonBudget::uniform(1e-10));
    auto s = analytic_click_stats(c);
    for (Basis b : kAllBases) {
        EXPECT_DOUBLE_EQ(est.theta[index(b)], hoeffding_theta(s.clicks[b].total(), 1e-10));
    }
    EXPECT_LT(est.theta[index(Basis::Z)], est.theta[index(Basis::X)]);
    EXPECT_NEAR(est.p_bar_in(Basis::X), 0.937754066879814543536 - est.theta[0], 1e-12);
}
