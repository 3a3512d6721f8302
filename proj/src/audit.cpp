#include "safeoco/audit.hpp"

#include <cmath>

namespace safeoco {

namespace {
constexpr double kTol = 1e-9;
}

CheckResult check_safety(const RunResult& trace, const ProblemInstance& instance) {
    CheckResult res;
    res.name = "safety";
    res.tolerance = kTol;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& round : trace.rounds) {
        for (const Vec& p : round.played) {
            const double gv = instance.constraint.value(p);
            const double x_excess = (p - instance.action_set.center).norm() -
                                    instance.action_set.radius;
            const double violation = std::max(gv, x_excess);
            if (violation > worst) worst = violation;
            if (violation > kTol && res.failing_round < 0) res.failing_round = round.t;
        }
    }
    res.margin = kTol - worst;
    res.pass = worst <= kTol;
    return res;
}

CheckResult check_gamma(const RunResult& trace, double kappa) {
    CheckResult res;
    res.name = "gamma_floor";
    res.tolerance = kTol;
    const double floor = 1.0 / kappa;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& round : trace.rounds) {
        if (round.gamma < worst) worst = round.gamma;
        if (round.gamma < floor - kTol && res.failing_round < 0) res.failing_round = round.t;
    }
    res.margin = worst - (floor - kTol);
    res.pass = res.failing_round < 0;
    return res;
}

CheckResult check_distance(const RunResult& trace, const AlgoParams& params,
                           bool informational) {
    CheckResult res;
    res.name = "iterate_distance";
    res.tolerance = kTol;
    res.informational = informational;
    const double rho = 2.0 * (params.told.kappa() - 1.0) * params.dim * params.told.G *
                       params.eta;
    double worst = 0.0;
    for (const auto& round : trace.rounds) {
        const double gap = (round.played.at(0) - round.opt_iterate).norm();
        if (gap > worst) worst = gap;
        if (gap > rho + kTol && res.failing_round < 0) res.failing_round = round.t;
    }
    res.margin = rho + kTol - worst;
    res.pass = res.failing_round < 0;
    return res;
}

CheckResult check_step_inequality(const RunResult& trace, const Vec& x_star,
                         const AlgoParams& params) {
    CheckResult res;
    res.name = "linearized_regret_step";
    res.tolerance = kTol;
    const double d = params.dim;
    const double slack_term = 0.5 * params.eta * d * d * params.told.G * params.told.G;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& round : trace.rounds) {
        const double lhs = round.cost_grad_est.dot(round.opt_iterate - x_star);
        const double rhs = ((round.opt_iterate - x_star).squaredNorm() -
                            (round.opt_iterate_next - x_star).squaredNorm()) /
                               (2.0 * params.eta) +
                           slack_term;
        const double violation = lhs - rhs;
        if (violation > worst) worst = violation;
        if (violation > kTol && res.failing_round < 0) res.failing_round = round.t;
    }
    res.margin = kTol - worst;
    res.pass = res.failing_round < 0;
    return res;
}

CheckResult check_validity(const RunResult& trace) {
    CheckResult res;
    res.name = "base_point_in_pessimistic";
    res.tolerance = kTol;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& round : trace.rounds) {
        const Vec& x = round.played.at(0);
        const double ball_excess = (x - round.pessimistic.center).squaredNorm() -
                                   round.pessimistic.radius_sq;
        const double ambient_excess = (x - round.pessimistic.ambient.center).norm() -
                                      round.pessimistic.ambient.radius;
        const double violation = std::max(ball_excess, ambient_excess);
        if (violation > worst) worst = violation;
        if (violation > kTol && res.failing_round < 0) res.failing_round = round.t;
    }
    res.margin = kTol - worst;
    res.pass = res.failing_round < 0;
    return res;
}

CheckResult check_regret_bound(const RunResult& result, const AlgoParams& params,
                               bool theorem_schedule) {
    CheckResult res;
    res.name = "regret_bound";
    res.tolerance = 1e-6;
    res.informational = !theorem_schedule;
    const Constants& c = params.told;
    const double d = params.dim;
    const double bound =
        2.0 * c.D * c.G *
            std::sqrt(d * (d / 4.0 + c.kappa() - 1.0) * static_cast<double>(params.horizon)) +
        1.0;
    res.margin = bound * (1.0 + 1e-6) - result.final_regret;
    res.pass = result.final_regret <= bound * (1.0 + 1e-6);
    if (!res.pass) res.failing_round = params.horizon;
    return res;
}

CheckResult check_sandwich(const RunResult& trace, const ProblemInstance& instance) {
    CheckResult res;
    res.name = "set_sandwich";
    res.tolerance = kTol;
    double worst = -std::numeric_limits<double>::infinity();

    const auto note = [&](double violation, long t) {
        if (violation > worst) worst = violation;
        if (violation > kTol && res.failing_round < 0) res.failing_round = t;
    };

    if (const auto ball = instance.constraint.sublevel_ball()) {
        for (const auto& round : trace.rounds) {
            const auto& pess = round.pessimistic;
            const auto& opt = round.optimistic;
            if (!pess.empty())
                note((pess.center - ball->center).norm() + pess.radius() - ball->radius,
                     round.t);
            note((opt.center - ball->center).norm() + ball->radius - opt.radius(), round.t);
        }
    } else {
        const Vec weights = instance.constraint.matrix().diagonal();
        const double level = -instance.constraint.offset();
        for (const auto& round : trace.rounds) {
            const auto& pess = round.pessimistic;
            const auto& opt = round.optimistic;
            if (!pess.empty()) {
                // max of g over the pessimistic ball, exact via the boundary
                // secular equation.
                const double g_center = instance.constraint.value(pess.center);
                const double g_max =
                    g_center + max_quadratic_on_ball(
                                   weights, weights.cwiseProduct(pess.center), pess.radius());
                note(g_max, round.t);
            }
            // farthest point of the constraint ellipsoid from the optimistic
            // center must stay inside the optimistic ball.
            const Vec inv_w = weights.cwiseInverse();
            const Vec v = -opt.center.cwiseQuotient(weights.cwiseSqrt());
            const double dist_sq = opt.center.squaredNorm() +
                                   max_quadratic_on_ball(inv_w, v, std::sqrt(level));
            note(std::sqrt(std::max(0.0, dist_sq)) - opt.radius(), round.t);
        }
    }
    res.margin = kTol - worst;
    res.pass = res.failing_round < 0;
    return res;
}

AuditReport run_full_audit(const RunResult& trace, const ProblemInstance& instance,
                           const AlgoParams& params, const Vec* x_star,
                           bool theorem_schedule) {
    AuditReport report;
    report.checks.push_back(check_safety(trace, instance));
    report.checks.push_back(check_gamma(trace, params.told.kappa()));
    report.checks.push_back(check_distance(trace, params, !theorem_schedule));
    if (x_star) report.checks.push_back(check_step_inequality(trace, *x_star, params));
    report.checks.push_back(check_validity(trace));
    if (!std::isnan(trace.final_regret))
        report.checks.push_back(check_regret_bound(trace, params, theorem_schedule));
    report.checks.push_back(check_sandwich(trace, instance));
    return report;
}

}  // namespace safeoco
