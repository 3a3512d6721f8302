#ifndef SAFEOCO_ALGO_HPP
#define SAFEOCO_ALGO_HPP

#include <vector>

#include "safeoco/gradest.hpp"
#include "safeoco/problem.hpp"
#include "safeoco/sets.hpp"

namespace safeoco {

/// Tunables plus the constants the player is told.
struct AlgoParams {
    double eta = 0.0;
    double alpha = 0.0;
    double delta = 0.0;
    long horizon = 0;
    int dim = 0;
    int points_per_round = 0;
    Constants told;

    /// Validity (delta <= 2*alpha*eps/(sqrt(d) L D)) and safety
    /// (delta <= alpha*r) preconditions; throws on breach.
    void assert_safe() const;
};

/// eta = D / (2 sqrt((d/4 + kappa - 1) d G^2 T)),
/// alpha = min(0.5, (dG/D)(1 - 1/kappa) eta),
/// delta = min(1/((sqrt(d)LD/2 + G)T), 2(kappa-1)alpha eps/((kappa+1)sqrt(d)LD), alpha r).
AlgoParams theorem_schedule(const Constants& c, long horizon, int dim);

/// The experiment-section schedule, reproduced verbatim (extra M factor in
/// alpha, no factor 2 in delta's middle branch):
/// eta = D/(dG sqrt(T)), alpha = dGM(1 - 1/kappa) eta / D,
/// delta = min(1/T, (kappa-1)alpha eps/((kappa+1)sqrt(d)LD), alpha r).
AlgoParams experiment_schedule(const Constants& c, long horizon, int dim);

/// Everything one round produced.
struct RoundRecord {
    long t = 0;
    std::vector<Vec> played;
    std::vector<double> cost_values;
    std::vector<double> constraint_values;
    Vec cost_grad_est;
    Vec constraint_grad_est;
    Vec opt_iterate;       // x~_t
    Vec opt_iterate_next;  // x~_{t+1}
    double gamma = 0.0;
    BallSet optimistic;
    BallSet pessimistic;
};

struct RunResult {
    std::vector<RoundRecord> rounds;
    double final_regret = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::pair<long, double>> regret_checkpoints;
    double wall_ms = 0.0;
    std::string algorithm;

    std::vector<std::vector<Vec>> played_per_round() const;
};

/// Zero-order value queries, the only feedback channel the player gets.
struct ValueOracles {
    std::function<double(long t, const Vec&)> cost;
    std::function<double(const Vec&)> constraint;
};

/// First-order feedback at the single played point (ROGD baseline mode).
struct FirstOrderOracles {
    std::function<double(long t, const Vec&)> cost_value;
    std::function<Vec(long t, const Vec&)> cost_gradient;
    std::function<double(const Vec&)> constraint_value;
    std::function<Vec(const Vec&)> constraint_gradient;
};

ValueOracles make_value_oracles(const ProblemInstance& instance,
                                const std::vector<CostOracle>& cost_draws);
FirstOrderOracles make_first_order_oracles(const ProblemInstance& instance,
                                           const std::vector<CostOracle>& cost_draws);

struct MpRogdState {
    Vec x;        // played iterate x_t
    Vec x_tilde;  // optimistic iterate x~_t
};

/// One round of the main loop: probe, estimate, build sets, optimistic
/// update, safe line search, shrink. Mutates state to round t+1.
RoundRecord mp_rogd_step(MpRogdState& state, long t, const ValueOracles& oracles,
                         const BallRegion& X, const AlgoParams& params);

RunResult run_mp_rogd(const ValueOracles& oracles, const BallRegion& X,
                      const AlgoParams& params);

/// Baseline with full constraint information: projected gradient step onto
/// (1-alpha)Y with a forward-difference cost gradient, Y = X intersect the
/// constraint ball.
RunResult run_mp_ogd(const ValueOracles& oracles, const BallRegion& X,
                     const BallRegion& constraint_ball, const AlgoParams& params);

/// First-order baseline reconstruction: same set machinery with exact
/// gradients, zero estimation slack, one played point, no shrinkage.
RunResult run_rogd(const FirstOrderOracles& oracles, const BallRegion& X,
                   const AlgoParams& params);

}  // namespace safeoco

#endif
