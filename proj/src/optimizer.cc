#include "siqrng/optimizer.h"

#include <cmath>
#include <string>

#include "siqrng/errors.h"
#include "siqrng/randomness_bounds.h"

namespace siqrng {

namespace {

constexpr double kMuMax = 5.0;
constexpr int kRefineHalfWidth = 10;

bool better(const TracePoint& a, const TracePoint& b) {
    if (a.rate != b.rate) return a.rate > b.rate;
    if (a.mu != b.mu) return a.mu < b.mu;
    return a.q < b.q;
}

bool mu_in_domain(double mu) { return mu > 0.0 && mu <= kMuMax + 1e-12; }
bool q_in_domain(double q) { return q > 0.0 && q < 0.5; }

class Search {
   public:
    Search(double pulses, double p, const EpsilonBudget& budget, DoubleClickPolicy policy)
        : pulses_(pulses), p_(p), budget_(budget), policy_(policy) {}

    TracePoint evaluate(double mu, double q) {
        ExperimentConfig c{pulses_, q, mu, 1.0, p_};
        TracePoint t{mu, q, rate_objective(c, budget_, policy_)};
        trace.push_back(t);
        if (!has_best || better(t, best)) {
            best = t;
            has_best = true;
        }
        return t;
    }

    // Nested 10x refinement of `levels` rounds around the incumbent. A zero
    // step freezes that axis.
    void refine(double mu_step, double q_step, int levels) {
        for (int level = 0; level < levels; ++level) {
            mu_step /= 10.0;
            q_step /= 10.0;
            const TracePoint centre = best;
            const int mu_width = mu_step > 0.0 ? kRefineHalfWidth : 0;
            const int q_width = q_step > 0.0 ? kRefineHalfWidth : 0;
            for (int i = -mu_width; i <= mu_width; ++i) {
                double mu = centre.mu + i * mu_step;
                if (!mu_in_domain(mu)) continue;
                for (int k = -q_width; k <= q_width; ++k) {
                    double q = centre.q + k * q_step;
                    if (!q_in_domain(q) || (i == 0 && k == 0)) continue;
                    evaluate(mu, q);
                }
            }
        }
    }

    std::vector<TracePoint> trace;
    TracePoint best;
    bool has_best = false;

   private:
    double pulses_;
    double p_;
    EpsilonBudget budget_;
    DoubleClickPolicy policy_;
};

}  // namespace

double rate_objective(const ExperimentConfig& config, const EpsilonBudget& budget,
                      DoubleClickPolicy policy) {
    total_epsilon(budget);
    ClickStatistics stats = analytic_click_stats(config);
    for (Basis b : kAllBases) {
        if (stats.clicks[b].total() < 1.0) return 0.0;
    }
    double n_z = stats.clicks[Basis::Z].total();
    if (n_z < static_cast<double>(finite_size_floor(budget.eps1))) return 0.0;
    return certify(stats.clicks, budget, policy, config.pulses).report.rate_per_pulse;
}

std::vector<double> AxisGrid::points() const {
    std::vector<double> out;
    if (!(step > 0.0) || stop < start) return out;
    auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

void SearchGrid::validate() const {
    auto mus = mu.points();
    auto qs = q.points();
    if (mus.empty() || qs.empty()) throw ConfigError("search grids must be nonempty");
    if (!mu_in_domain(mus.front()) || !mu_in_domain(mus.back())) {
        throw ConfigError("mu grid must lie in (0, 5]");
    }
    if (!q_in_domain(qs.front()) || !q_in_domain(qs.back())) {
        throw ConfigError("q grid must lie in (0, 1/2)");
    }
    if (refine_levels < 0) throw ConfigError("refine levels must be nonnegative");
}

OptimizationResult optimize(double pulses, double p, const EpsilonBudget& budget,
                            DoubleClickPolicy policy, const SearchGrid& grid) {
    grid.validate();
    total_epsilon(budget);
    Search search(pulses, p, budget, policy);
    for (double mu : grid.mu.points()) {
        for (double q : grid.q.points()) search.evaluate(mu, q);
    }
    // A flat zero surface has nothing to refine toward.
    if (search.best.rate > 0.0) search.refine(grid.mu.step, grid.q.step, grid.refine_levels);

    OptimizationResult r;
    r.mu_opt = search.best.mu;
    r.q_opt = search.best.q;
    r.rate_opt = search.best.rate;
    r.trace = std::move(search.trace);
    return r;
}

std::vector<TracePoint> mu_profile(double pulses, double p, const EpsilonBudget& budget,
                                   DoubleClickPolicy policy, const SearchGrid& grid) {
    grid.validate();
    total_epsilon(budget);
    std::vector<TracePoint> out;
    for (double mu : grid.mu.points()) {
        Search search(pulses, p, budget, policy);
        for (double q : grid.q.points()) search.evaluate(mu, q);
        if (search.best.rate > 0.0) search.refine(0.0, grid.q.step, grid.refine_levels);
        out.push_back(search.best);
    }
    return out;
}

}  // namespace siqrng
