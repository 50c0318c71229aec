#include "siqrng/acquisition.h"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "siqrng/certification.h"
#include "siqrng/click_io.h"
#include "siqrng/errors.h"
#include "siqrng/qubit_core.h"
#include "test_util.h"

using namespace siqrng;

TEST(squash_bounds, examples) {
    auto b = squash_bounds(BasisCounts{900, 50, 50}, Basis::X);
    EXPECT_DOUBLE_EQ(b.lower, 0.90);
    EXPECT_DOUBLE_EQ(b.upper, 0.95);

    auto degenerate = squash_bounds(BasisCounts{300, 700, 0}, Basis::Y);
    EXPECT_DOUBLE_EQ(degenerate.lower, 0.3);
    EXPECT_DOUBLE_EQ(degenerate.upper, 0.3);

    auto uninformative = squash_bounds(BasisCounts{0, 0, 100}, Basis::Z);
    EXPECT_DOUBLE_EQ(uninformative.lower, 0.0);
    EXPECT_DOUBLE_EQ(uninformative.upper, 1.0);
}

TEST(squash_bounds, width_is_double_click_ratio) {
    std::mt19937_64 gen(1);
    std::uniform_int_distribution<int> count(0, 100000);
    for (int i = 0; i < 1000; ++i) {
        BasisCounts c{double(count(gen)), double(count(gen)), double(count(gen)) + 1};
        auto b = squash_bounds(c, Basis::X);
        EXPECT_LE(0.0, b.lower);
        EXPECT_LE(b.lower, b.upper);
        EXPECT_LE(b.upper, 1.0);
        EXPECT_NEAR(b.width(), c.nd / c.total(), 1e-15);
    }
}

TEST(squash_bounds, no_data) {
    ClickRecord r;
    r[Basis::X] = {1, 1, 0};
    r[Basis::Y] = {1, 1, 0};
    EXPECT_THROW(squash_bounds(r), NoDataError);
    EXPECT_THROW(squash_bounds(BasisCounts{-1, 2, 0}, Basis::X), DomainError);
}

TEST(worst_case_prob, examples) {
    auto a = worst_case_prob(ProbabilityInterval{0.90, 0.95});
    EXPECT_DOUBLE_EQ(a.p_w, 0.90);
    EXPECT_FALSE(a.flipped);

    auto b = worst_case_prob(ProbabilityInterval{0.40, 0.45});
    EXPECT_NEAR(b.p_w, 0.55, 1e-15);
    EXPECT_TRUE(b.flipped);

    auto c = worst_case_prob(ProbabilityInterval{0.45, 0.60});
    EXPECT_DOUBLE_EQ(c.p_w, 0.5);
    EXPECT_FALSE(c.flipped);
}

TEST(worst_case_prob, inside_interval_and_flip_idempotent) {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        double a = unit(gen), b = unit(gen);
        ProbabilityInterval iv{std::min(a, b), std::max(a, b)};
        auto w = worst_case_prob(iv);
        auto used = w.flipped ? iv.flipped() : iv;
        EXPECT_GE(w.p_w, 0.5);
        EXPECT_LE(w.p_w, 1.0);
        EXPECT_GE(w.p_w, used.lower);
        EXPECT_LE(w.p_w, std::max(used.upper, 0.5));
        auto twice = iv.flipped().flipped();
        EXPECT_DOUBLE_EQ(worst_case_prob(twice).p_w, w.p_w);

        BasisCounts c{std::floor(unit(gen) * 1000), std::floor(unit(gen) * 1000),
                      std::floor(unit(gen) * 100) + 1};
        auto direct = worst_case_prob(squash_bounds(c, Basis::Z));
        auto relabelled = worst_case_prob(squash_bounds(c.flipped().flipped(), Basis::Z));
        EXPECT_DOUBLE_EQ(direct.p_w, relabelled.p_w);
    }
}

TEST(hoeffding_theta, examples) {
    EXPECT_NEAR(hoeffding_theta(1e8, 1e-10), 3.39307021220755589894e-4, 1e-16);
    EXPECT_NEAR(hoeffding_theta(1.0, std::exp(-2.0)), 1.0, 1e-15);
    EXPECT_LT(hoeffding_theta(1e30, 1e-10), 1e-14);
    EXPECT_THROW(hoeffding_theta(0.5, 0.1), DomainError);
    EXPECT_THROW(hoeffding_theta(10.0, 0.0), DomainError);
    EXPECT_THROW(hoeffding_theta(10.0, 1.0), DomainError);
}

TEST(hoeffding_theta, inverts_tail_bound) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        double n = std::pow(10.0, 12.0 * unit(gen));
        double eps = std::pow(10.0, -20.0 * unit(gen) - 1e-3);
        double theta = hoeffding_theta(n, eps);
        EXPECT_NEAR(std::exp(-2.0 * theta * theta * n) / eps, 1.0, 1e-12);
    }
}

TEST(fluctuation_adjust, examples) {
    EXPECT_NEAR(fluctuation_adjust(0.90, 0.0003393), 0.8996607, 1e-15);
    EXPECT_DOUBLE_EQ(fluctuation_adjust(0.5001, 0.01), 0.5);
    EXPECT_DOUBLE_EQ(fluctuation_adjust(0.73, 0.0), 0.73);
}

TEST(assignment_prob, examples) {
    ZBasisCounts z(BasisCounts{450, 450, 100});
    EXPECT_DOUBLE_EQ(assignment_prob(0.5, z), 0.5);

    ZBasisCounts skew(BasisCounts{600, 300, 100});
    EXPECT_DOUBLE_EQ(assignment_prob(600.0 / 1000.0, skew), 0.0);
    EXPECT_DOUBLE_EQ(assignment_prob(700.0 / 1000.0, skew), 1.0);
}

TEST(assignment_prob, incompatible) {
    ZBasisCounts z(BasisCounts{600, 300, 100});
    EXPECT_THROW(assignment_prob(0.5, z), IncompatibleCountsError);
    EXPECT_THROW(assignment_prob(0.75, z), IncompatibleCountsError);
    ZBasisCounts no_doubles(BasisCounts{600, 400, 0});
    EXPECT_DOUBLE_EQ(assignment_prob(0.6, no_doubles), 0.0);
    EXPECT_THROW(assignment_prob(0.65, no_doubles), IncompatibleCountsError);
}

TEST(double_click_cost, examples) {
    ZBasisCounts z(BasisCounts{450, 450, 100});
    EXPECT_DOUBLE_EQ(double_click_cost_assignment(z, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(double_click_cost_assignment(z, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(double_click_cost_assignment(z, 0.5), 100.0);
    EXPECT_NEAR(double_click_cost_assignment(z, 0.8), 72.1928094887362347870, 1e-12);

    auto none = double_click_cost_discard(ZBasisCounts(BasisCounts{500, 500, 0}));
    EXPECT_EQ(none.cost, 0.0);
    EXPECT_EQ(none.n_z_effective, 1000.0);
    auto some = double_click_cost_discard(z);
    EXPECT_EQ(some.cost, 100.0);
    EXPECT_EQ(some.n_z_effective, 900.0);
}

TEST(total_epsilon, examples) {
    EXPECT_NEAR(total_epsilon(EpsilonBudget::uniform(1e-10)), 5e-10, 1e-24);
    EXPECT_THROW(total_epsilon({0.0, 1e-10, 1e-10, 1e-10, 1e-10}), ConfigError);
    EXPECT_THROW(total_epsilon({0.3, 0.3, 0.2, 0.1, 0.2}), ConfigError);
}

TEST(certify, discard_never_beats_assignment) {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto budget = EpsilonBudget::uniform(1e-10);
    for (int i = 0; i < 2000; ++i) {
        // Counts drawn around a physical state so that every squashed
        // interval stays inside the Bloch ball.
        auto t = oracle::random_tomogram(gen);
        const std::array<double, 3> p{t.p_x, t.p_y, t.p_z};
        ClickRecord r;
        for (Basis b : kAllBases) {
            double n = std::floor(1e3 + 2e6 * unit(gen));
            double nd = std::floor(0.1 * n * unit(gen)) + 1.0;
            double n0 = std::floor((n - nd) * p[index(b)]);
            r[b] = {n0, n - nd - n0, nd};
        }
        auto a = certify(r, budget, DoubleClickPolicy::assignment, 1e8);
        auto d = certify(r, budget, DoubleClickPolicy::discard, 1e8);
        ASSERT_FALSE(a.fell_back_to_discard);
        EXPECT_LE(d.report.unclamped_net_bits(), a.report.unclamped_net_bits() + 1e-9);
        EXPECT_LE(d.report.net_bits, a.report.net_bits + 1e-9);
    }
}

TEST(certify, ideal_plus_state_approaches_one_bit_per_click) {
    ClickRecord r;
    r[Basis::X] = {1e12, 0, 0};
    r[Basis::Y] = {5e11, 5e11, 0};
    r[Basis::Z] = {5e11, 5e11, 0};
    auto c = certify(r, EpsilonBudget::uniform(1e-10), DoubleClickPolicy::discard, 3e12);
    EXPECT_NEAR(c.report.net_bits / c.report.n_z, 1.0, 1e-3);
    EXPECT_EQ(c.report.raw_bits, 1e12);
}

TEST(certify, relabels_z_before_assignment) {
    // Z interval [0.3, 0.4] lies below 1/2; after relabelling it is [0.6, 0.7]
    // and every double click goes to the relabelled outcome 0 for free.
    ClickRecord r;
    r[Basis::X] = {9000, 500, 500};
    r[Basis::Y] = {5000, 5000, 0};
    r[Basis::Z] = {3000, 6000, 1000};
    auto c = certify(r, EpsilonBudget::uniform(1e-3), DoubleClickPolicy::assignment, 1e5);
    EXPECT_TRUE(c.worst[index(Basis::Z)].flipped);
    ASSERT_TRUE(c.assignment_probability.has_value());
    EXPECT_NEAR(*c.assignment_probability, 0.0, 1e-12);
    EXPECT_NEAR(c.report.double_click_cost, 0.0, 1e-6);
}

TEST(certify, names_failing_stage) {
    ClickRecord r;
    r[Basis::X] = {10, 0, 0};
    r[Basis::Y] = {5, 5, 0};
    try {
        certify(r, EpsilonBudget::uniform(1e-10), DoubleClickPolicy::discard, 100);
        FAIL() << "expected StageError";
    } catch (const StageError& e) {
        EXPECT_EQ(e.stage(), "squash_bounds");
    }
    r[Basis::Z] = {5, 5, 0};
    try {
        certify(r, EpsilonBudget::uniform(1e-10), DoubleClickPolicy::discard, 100);
        FAIL() << "expected StageError";
    } catch (const StageError& e) {
        EXPECT_EQ(e.stage(), "min_entropy_bound");
    }
}

TEST(click_io, parses_text) {
    auto r = parse_click_record_text("# run 7\nX,900,50,50\n\nY, 480,470,50\nz,450,450,100\n");
    EXPECT_EQ(r[Basis::X].n0, 900);
    EXPECT_EQ(r[Basis::Y].n1, 470);
    EXPECT_EQ(r[Basis::Z].nd, 100);
}

TEST(click_io, rejects_malformed_text) {
    EXPECT_THROW(parse_click_record_text("X,1,2,3\nY,1,2,3\n"), ParseError);
    EXPECT_THROW(parse_click_record_text("X,1,2,3\nY,1,2,3\nZ,1,2\n"), ParseError);
    EXPECT_THROW(parse_click_record_text("X,1,2,3\nY,1,-2,3\nZ,1,2,3\n"), ParseError);
    EXPECT_THROW(parse_click_record_text("X,1,2,3\nY,1,2.5,3\nZ,1,2,3\n"), ParseError);
    EXPECT_THROW(parse_click_record_text("X,1,2,3\nX,1,2,3\nZ,1,2,3\n"), ParseError);
    EXPECT_THROW(parse_click_record_text("W,1,2,3\nY,1,2,3\nZ,1,2,3\n"), ParseError);
}

TEST(click_io, parses_json) {
    auto r = parse_click_record(R"({"counts": {"X": {"n0": 900, "n1": 50, "nd": 50},
                                              "Y": {"n0": 1, "n1": 2, "nd": 3},
                                              "Z": {"n0": 4, "n1": 5, "nd": 6}}})");
    EXPECT_EQ(r[Basis::X].n0, 900);
    EXPECT_EQ(r[Basis::Z].nd, 6);
    EXPECT_THROW(parse_click_record(R"({"X": {"n0": 1, "n1": 2, "nd": 3}})"), ParseError);
    EXPECT_THROW(parse_click_record(R"({"X": {"n0": -1, "n1": 2, "nd": 3},
                                       "Y": {"n0": 1, "n1": 2, "nd": 3},
                                       "Z": {"n0": 1, "n1": 2, "nd": 3}})"),
                 ParseError);
}

TEST(click_io, format_then_parse_is_identity) {
    std::mt19937_64 gen(9);
    std::uniform_int_distribution<std::uint64_t> count(0, 1ull << 40);
    for (int i = 0; i < 200; ++i) {
        ClickRecord r;
        for (Basis b : kAllBases) r[b] = {double(count(gen)), double(count(gen)), double(count(gen))};
        auto back = parse_click_record(format_click_record(r));
        for (Basis b : kAllBases) {
            EXPECT_EQ(back[b].n0, r[b].n0);
            EXPECT_EQ(back[b].n1, r[b].n1);
            EXPECT_EQ(back[b].nd, r[b].nd);
        }
    }
}

TEST(assignment_prob, tolerates_rounding_at_large_counts) {
    // After relabelling, p_w n equals n0 only up to rounding here.
    ZBasisCounts z(BasisCounts{840113.0, 924129.0, 91.0});
    auto flipped = z.flipped();
    ProbabilityBounds bounds;
    bounds[Basis::Z] = squash_bounds(z.counts(), Basis::Z);
    auto w = worst_case_prob(bounds, Basis::Z);
    ASSERT_TRUE(w.flipped);
    EXPECT_NEAR(assignment_prob(w.p_w, flipped), 0.0, 1e-9);
}
