#include "siqrng/certification.h"

#include <exception>
#include <string>
#include <utility>

#include "siqrng/errors.h"

namespace siqrng {

namespace {

template <typename F>
auto run_stage(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

}  // namespace

std::string_view policy_name(DoubleClickPolicy policy) {
    return policy == DoubleClickPolicy::assignment ? "assign" : "discard";
}

std::optional<DoubleClickPolicy> parse_policy(std::string_view name) {
    if (name == "assign" || name == "assignment") return DoubleClickPolicy::assignment;
    if (name == "discard") return DoubleClickPolicy::discard;
    return std::nullopt;
}

CertificationResult certify(const ClickRecord& record, const EpsilonBudget& budget,
                            DoubleClickPolicy policy, double pulses) {
    CertificationResult r;
    r.requested = policy;
    run_stage("epsilon_budget", [&] { return total_epsilon(budget); });
    r.bounds = run_stage("squash_bounds", [&] { return squash_bounds(record); });

    run_stage("fluctuation_adjust", [&] {
        for (Basis b : kAllBases) {
            auto j = index(b);
            r.worst[j] = worst_case_prob(r.bounds, b);
            r.theta[j] = hoeffding_theta(record[b].total(), budget.for_basis(b));
            r.p_bar[j] = fluctuation_adjust(r.worst[j].p_w, r.theta[j]);
        }
        return 0;
    });
    r.tomogram = {r.p_bar[0], r.p_bar[1], r.p_bar[2]};
    double coherence =
        run_stage("coherence", [&] { return coherence_rel_entropy(r.tomogram); });

    const double n_z = record[Basis::Z].total();
    ZBasisCounts z = record.z();
    if (r.worst[index(Basis::Z)].flipped) z = z.flipped();

    double cost = 0.0;
    double raw_bits = n_z;
    r.applied = policy;
    if (policy == DoubleClickPolicy::assignment) {
        try {
            double p_a = assignment_prob(r.worst[index(Basis::Z)].p_w, z);
            r.assignment_probability = p_a;
            cost = double_click_cost_assignment(z, p_a);
        } catch (const IncompatibleCountsError&) {
            r.fell_back_to_discard = true;
            r.applied = DoubleClickPolicy::discard;
        }
    }
    if (r.applied == DoubleClickPolicy::discard) {
        auto d = double_click_cost_discard(z);
        cost = d.cost;
        raw_bits = d.n_z_effective;
    }

    r.report = run_stage("min_entropy_bound", [&] {
        return assemble_rate_report(n_z, coherence, budget.eps1, cost, pulses);
    });
    r.report.raw_bits = raw_bits;
    return r;
}

}  // namespace siqrng
