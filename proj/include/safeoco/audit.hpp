#ifndef SAFEOCO_AUDIT_HPP
#define SAFEOCO_AUDIT_HPP

#include <string>
#include <vector>

#include "safeoco/algo.hpp"

namespace safeoco {

/// Outcome of one trace-level check. `margin` is the worst-case slack left
/// before the inequality would fail (negative on failure). Informational
/// checks are reported but excluded from the overall verdict (used when a
/// check's hypothesis is not met by the run's schedule).
struct CheckResult {
    std::string name;
    bool pass = false;
    bool informational = false;
    double margin = 0.0;
    long failing_round = -1;  // 1-based round index, -1 when none
    double tolerance = 0.0;
};

struct AuditReport {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.informational && !c.pass) return false;
        return true;
    }
};

/// Every played point satisfies g <= 1e-9 and lies in X.
CheckResult check_safety(const RunResult& trace, const ProblemInstance& instance);

/// gamma_t >= 1/kappa - 1e-9 at every round.
CheckResult check_gamma(const RunResult& trace, double kappa);

/// ||x_t - x~_t|| <= rho with rho = 2 (kappa - 1) d G eta. The hypothesis
/// only holds for the theorem schedule; pass `informational` otherwise.
CheckResult check_distance(const RunResult& trace, const AlgoParams& params,
                           bool informational = false);

/// Per-step linearized-regret inequality with v = x_*:
/// est_grad^T (x~_t - x_*) <= (1/2eta)(||x~_t - x_*||^2 - ||x~_{t+1} - x_*||^2)
///                            + eta d^2 G^2 / 2.
CheckResult check_step_inequality(const RunResult& trace, const Vec& x_star, const AlgoParams& params);

/// x_t is in its own pessimistic set at every round.
CheckResult check_validity(const RunResult& trace);

/// R_T <= 2 D G sqrt(d (d/4 + kappa - 1) T) + 1, relative tolerance 1e-6;
/// informational unless the run used the theorem schedule.
CheckResult check_regret_bound(const RunResult& result, const AlgoParams& params,
                               bool theorem_schedule);

/// Set sandwich Y_t^p subset Y subset Y_t^o, per round. Ball-shaped true
/// feasible sets are checked with the two analytic ball containments;
/// centered-diagonal constraints through exact quadratic maximization on
/// the ball/ellipsoid boundary.
CheckResult check_sandwich(const RunResult& trace, const ProblemInstance& instance);

/// All applicable checks for one trace. x_star may be null (skips the
/// per-step linearized-regret check).
AuditReport run_full_audit(const RunResult& trace, const ProblemInstance& instance,
                           const AlgoParams& params, const Vec* x_star,
                           bool theorem_schedule);

}  // namespace safeoco

#endif
