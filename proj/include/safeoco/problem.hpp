#ifndef SAFEOCO_PROBLEM_HPP
#define SAFEOCO_PROBLEM_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "safeoco/geometry.hpp"

namespace safeoco {

/// Problem constants announced to the player: cost gradient bound G,
/// action-set diameter D, constraint smoothness L and strong convexity M,
/// initial slack eps (g(0) <= -eps), and inner-ball radius r.
struct Constants {
    double G = 0.0;
    double D = 0.0;
    double L = 0.0;
    double M = 0.0;
    double eps = 0.0;
    double r = 0.0;

    double kappa() const { return L / M; }
};

/// Quadratic constraint g(x) = (x - shift)^T A (x - shift) + offset with A
/// symmetric PSD. Covers both generator shapes: the isotropic a*I case and
/// the diagonal case (shift = 0).
class QuadraticForm {
public:
    QuadraticForm() = default;
    QuadraticForm(Mat A, Vec shift, double offset);

    double value(const Vec& x) const;
    Vec gradient(const Vec& x) const;

    const Mat& matrix() const { return matrix_; }
    const Vec& shift() const { return shift_; }
    double offset() const { return offset_; }

    /// Ball form of {g <= 0} when A = a*I with a > 0 and offset < 0.
    std::optional<BallRegion> sublevel_ball() const;

    /// Region view of {g <= 0}; ball or axis-aligned ellipsoid.
    std::unique_ptr<Region> sublevel_region() const;

private:
    Mat matrix_;
    Vec shift_;
    double offset_ = 0.0;
};

/// One round's cost function: value query available to the player, exact
/// gradient reserved for baselines and harness-side audits.
struct CostOracle {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
};

/// Seeded per-round cost draws. at(t) is a pure function of (seed, t), so
/// horizon sweeps share prefixes.
class CostStream {
public:
    virtual ~CostStream() = default;
    virtual CostOracle at(long t) const = 0;
};

enum class Setting { Linear, Quadratic };

struct ProblemInstance {
    int dim = 0;
    BallRegion action_set;
    QuadraticForm constraint;
    std::shared_ptr<const CostStream> cost_stream;
    Constants constants;
    std::uint64_t seed = 0;
    Setting setting = Setting::Linear;

    /// Feasible set Y = X intersect {g <= 0} as projectable regions.
    std::vector<std::unique_ptr<Region>> feasible_regions() const;
};

/// Linear-cost setting: X the unit ball, g(x) = a||x - b||^2 + c with
/// a ~ U[1,10], b uniform on the radius-0.2 sphere, c = -xi^2 a,
/// xi ~ U[0.3,0.8]; costs f_t(x) = theta_t^T x, theta_t ~ U[0,1]^d.
ProblemInstance gen_linear_setting(std::uint64_t seed, int dim);

/// Quadratic-cost setting: costs f_t(x) = (x - b_t)^T A_t (x - b_t) with
/// A_t built by symmetrizing a uniform draw, normalizing its spectrum and
/// shifting/scaling into [1,10]; b_t ~ U[1,2]^d. Constraint
/// g(x) = x^T diag(a~) x - min_i a~_i (set positive_offset_sign to keep the
/// positive printed offset instead, which makes the origin infeasible).
ProblemInstance gen_quadratic_setting(std::uint64_t seed, int dim,
                                      bool positive_offset_sign = false);

/// Cost oracles for rounds 1..horizon, built once up front.
std::vector<CostOracle> materialize_costs(const ProblemInstance& instance, long horizon);

/// Minimizer of the summed cost over Y, by projected gradient descent with
/// Dykstra projections; stops at 1e-10 iterate movement or 1e6 iterations.
Vec offline_optimum(const ProblemInstance& instance, const std::vector<CostOracle>& cost_draws);
Vec offline_optimum(const ProblemInstance& instance, long horizon);

/// R_T = (1/k) sum_t sum_i f_t(x_{t,i}) - sum_t f_t(x_*) with k the number
/// of points played in the round.
double regret(const std::vector<std::vector<Vec>>& played_per_round, const Vec& x_star,
              const std::vector<CostOracle>& cost_draws);

}  // namespace safeoco

#endif
