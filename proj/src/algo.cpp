#include "safeoco/algo.hpp"

#include <chrono>
#include <cmath>

namespace safeoco {

void AlgoParams::assert_safe() const {
    const double sd = std::sqrt(static_cast<double>(dim));
    const double tol = 1e-15;
    if (delta > 2.0 * alpha * told.eps / (sd * told.L * told.D) + tol)
        throw PreconditionViolation("AlgoParams: delta breaks the validity condition");
    if (delta > alpha * told.r + tol)
        throw PreconditionViolation("AlgoParams: delta breaks the safety condition");
}

namespace {

void check_constants(const Constants& c, long horizon) {
    if (!(c.G > 0.0 && c.D > 0.0 && c.L > 0.0 && c.M > 0.0 && c.eps > 0.0 && c.r > 0.0))
        throw PreconditionViolation("schedule: constants must be positive");
    if (!(c.L > c.M)) throw PreconditionViolation("schedule: requires kappa = L/M > 1");
    if (horizon < 1) throw PreconditionViolation("schedule: horizon must be >= 1");
}

}  // namespace

AlgoParams theorem_schedule(const Constants& c, long horizon, int dim) {
    check_constants(c, horizon);
    const double d = dim;
    const double T = static_cast<double>(horizon);
    const double kappa = c.kappa();
    const double sd = std::sqrt(d);

    AlgoParams p;
    p.told = c;
    p.horizon = horizon;
    p.dim = dim;
    p.points_per_round = dim + 1;
    p.eta = c.D / (2.0 * std::sqrt((d / 4.0 + kappa - 1.0) * d * c.G * c.G * T));
    p.alpha = std::min(0.5, (d * c.G / c.D) * (1.0 - 1.0 / kappa) * p.eta);
    p.delta = std::min({1.0 / ((0.5 * sd * c.L * c.D + c.G) * T),
                        2.0 * (kappa - 1.0) * p.alpha * c.eps / ((kappa + 1.0) * sd * c.L * c.D),
                        p.alpha * c.r});
    return p;
}

AlgoParams experiment_schedule(const Constants& c, long horizon, int dim) {
    check_constants(c, horizon);
    const double d = dim;
    const double T = static_cast<double>(horizon);
    const double kappa = c.kappa();
    const double sd = std::sqrt(d);

    AlgoParams p;
    p.told = c;
    p.horizon = horizon;
    p.dim = dim;
    p.points_per_round = dim + 1;
    p.eta = c.D / (d * c.G * std::sqrt(T));
    p.alpha = d * c.G * c.M * (1.0 - 1.0 / kappa) * p.eta / c.D;
    p.delta = std::min({1.0 / T,
                        (kappa - 1.0) * p.alpha * c.eps / ((kappa + 1.0) * sd * c.L * c.D),
                        p.alpha * c.r});
    return p;
}

std::vector<std::vector<Vec>> RunResult::played_per_round() const {
    std::vector<std::vector<Vec>> out;
    out.reserve(rounds.size());
    for (const auto& r : rounds) out.push_back(r.played);
    return out;
}

ValueOracles make_value_oracles(const ProblemInstance& instance,
                                const std::vector<CostOracle>& cost_draws) {
    ValueOracles out;
    out.cost = [draws = cost_draws](long t, const Vec& x) {
        return draws.at(static_cast<std::size_t>(t - 1)).value(x);
    };
    out.constraint = [g = instance.constraint](const Vec& x) { return g.value(x); };
    return out;
}

FirstOrderOracles make_first_order_oracles(const ProblemInstance& instance,
                                           const std::vector<CostOracle>& cost_draws) {
    FirstOrderOracles out;
    out.cost_value = [draws = cost_draws](long t, const Vec& x) {
        return draws.at(static_cast<std::size_t>(t - 1)).value(x);
    };
    out.cost_gradient = [draws = cost_draws](long t, const Vec& x) {
        return draws.at(static_cast<std::size_t>(t - 1)).gradient(x);
    };
    out.constraint_value = [g = instance.constraint](const Vec& x) { return g.value(x); };
    out.constraint_gradient = [g = instance.constraint](const Vec& x) { return g.gradient(x); };
    return out;
}

RoundRecord mp_rogd_step(MpRogdState& state, long t, const ValueOracles& oracles,
                         const BallRegion& X, const AlgoParams& params) {
    const Constants& c = params.told;
    RoundRecord rec;
    rec.t = t;
    rec.opt_iterate = state.x_tilde;

    // Probe -> estimate. The same d+1 queries serve gradient estimation and
    // cost accounting.
    const GradientEstimate fest =
        forward_diff([&](const Vec& p) { return oracles.cost(t, p); }, state.x, params.delta);
    const GradientEstimate gest = forward_diff(oracles.constraint, state.x, params.delta);
    rec.played.push_back(state.x);
    rec.cost_values.push_back(fest.base_value);
    rec.constraint_values.push_back(gest.base_value);
    for (int i = 0; i < params.dim; ++i) {
        Vec p = state.x;
        p[i] += params.delta;
        rec.played.push_back(std::move(p));
        rec.cost_values.push_back(fest.probe_values[i]);
        rec.constraint_values.push_back(gest.probe_values[i]);
    }
    rec.cost_grad_est = fest.estimate;
    rec.constraint_grad_est = gest.estimate;

    const double slack = forward_diff_error_bound(c.L, params.delta, params.dim) * c.D;
    rec.optimistic = build_optimistic(gest.base_value, gest.estimate, state.x, c.M, slack, X);
    rec.pessimistic = build_pessimistic(gest.base_value, gest.estimate, state.x, c.L, slack, X);
    if (rec.pessimistic.empty())
        throw PreconditionViolation("mp_rogd_step: empty pessimistic set (delta too large)");

    rec.opt_iterate_next =
        project_intersection(X, rec.optimistic, state.x_tilde - params.eta * fest.estimate);
    rec.gamma = max_feasible_mu(state.x, rec.opt_iterate_next, rec.pessimistic);

    state.x_tilde = rec.opt_iterate_next;
    state.x = (1.0 - params.alpha) *
              (state.x + rec.gamma * (rec.opt_iterate_next - state.x));
    return rec;
}

RunResult run_mp_rogd(const ValueOracles& oracles, const BallRegion& X,
                      const AlgoParams& params) {
    const auto start = std::chrono::steady_clock::now();
    RunResult result;
    result.algorithm = "mp-rogd";
    result.rounds.reserve(static_cast<std::size_t>(params.horizon));
    MpRogdState state{Vec::Zero(params.dim), Vec::Zero(params.dim)};
    for (long t = 1; t <= params.horizon; ++t)
        result.rounds.push_back(mp_rogd_step(state, t, oracles, X, params));
    result.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

RunResult run_mp_ogd(const ValueOracles& oracles, const BallRegion& X,
                     const BallRegion& constraint_ball, const AlgoParams& params) {
    const auto start = std::chrono::steady_clock::now();
    RunResult result;
    result.algorithm = "mp-ogd";
    result.rounds.reserve(static_cast<std::size_t>(params.horizon));

    const double shrink = 1.0 - params.alpha;
    const BallRegion X_shrunk(shrink * X.center, shrink * X.radius);
    const BallRegion ball_shrunk(shrink * constraint_ball.center,
                                 shrink * constraint_ball.radius);
    const std::vector<const Region*> target{&X_shrunk, &ball_shrunk};

    Vec x = Vec::Zero(params.dim);
    for (long t = 1; t <= params.horizon; ++t) {
        RoundRecord rec;
        rec.t = t;
        rec.opt_iterate = x;
        const GradientEstimate fest =
            forward_diff([&](const Vec& p) { return oracles.cost(t, p); }, x, params.delta);
        rec.played.push_back(x);
        rec.cost_values.push_back(fest.base_value);
        rec.constraint_values.push_back(oracles.constraint(x));
        for (int i = 0; i < params.dim; ++i) {
            Vec p = x;
            p[i] += params.delta;
            rec.cost_values.push_back(fest.probe_values[i]);
            rec.constraint_values.push_back(oracles.constraint(p));
            rec.played.push_back(std::move(p));
        }
        rec.cost_grad_est = fest.estimate;
        rec.gamma = 1.0;
        x = dykstra_project(target, x - params.eta * fest.estimate);
        rec.opt_iterate_next = x;
        result.rounds.push_back(std::move(rec));
    }
    result.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

RunResult run_rogd(const FirstOrderOracles& oracles, const BallRegion& X,
                   const AlgoParams& params) {
    const auto start = std::chrono::steady_clock::now();
    RunResult result;
    result.algorithm = "rogd";
    result.rounds.reserve(static_cast<std::size_t>(params.horizon));
    const Constants& c = params.told;

    Vec x = Vec::Zero(params.dim);
    Vec x_tilde = Vec::Zero(params.dim);
    for (long t = 1; t <= params.horizon; ++t) {
        RoundRecord rec;
        rec.t = t;
        rec.opt_iterate = x_tilde;
        rec.played.push_back(x);
        rec.cost_values.push_back(oracles.cost_value(t, x));
        rec.constraint_values.push_back(oracles.constraint_value(x));
        rec.cost_grad_est = oracles.cost_gradient(t, x);
        rec.constraint_grad_est = oracles.constraint_gradient(x);

        // Exact gradients: zero estimation slack, no shrinkage, no probes.
        rec.optimistic =
            build_optimistic(rec.constraint_values[0], rec.constraint_grad_est, x, c.M, 0.0, X);
        rec.pessimistic =
            build_pessimistic(rec.constraint_values[0], rec.constraint_grad_est, x, c.L, 0.0, X);
        if (rec.pessimistic.empty())
            throw PreconditionViolation("run_rogd: empty pessimistic set");

        rec.opt_iterate_next =
            project_intersection(X, rec.optimistic, x_tilde - params.eta * rec.cost_grad_est);
        rec.gamma = max_feasible_mu(x, rec.opt_iterate_next, rec.pessimistic);

        x_tilde = rec.opt_iterate_next;
        x = x + rec.gamma * (rec.opt_iterate_next - x);
        result.rounds.push_back(std::move(rec));
    }
    result.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

}  // namespace safeoco
