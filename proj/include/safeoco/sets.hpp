#ifndef SAFEOCO_SETS_HPP
#define SAFEOCO_SETS_HPP

#include "safeoco/geometry.hpp"

namespace safeoco {

/// Canonical ball form of the optimistic/pessimistic action sets: a
/// Euclidean ball intersected with the ambient action set X. Both quadratic
/// sublevel sets reduce to this form by completing the square.
struct BallSet {
    enum class Kind { Optimistic, Pessimistic };

    Vec center;
    double radius_sq = 0.0;  // kept exact; may be negative for the empty set
    BallRegion ambient;
    Kind kind = Kind::Optimistic;

    bool empty() const { return radius_sq < 0.0; }
    double radius() const { return radius_sq > 0.0 ? std::sqrt(radius_sq) : 0.0; }

    /// Membership in both the ball and X; closed-set convention throughout.
    bool contains(const Vec& x, double tol = 0.0) const {
        if (empty()) return false;
        return (x - center).squaredNorm() <= radius_sq + tol && ambient.contains(x, tol);
    }
};

/// Ball form of the optimistic set: all x in X with
///   g(x_t) - slack + g_est^T (x - x_t) + (M/2) ||x - x_t||^2 <= 0.
/// slack is the gradient-estimation margin (1/2) sqrt(d) L delta D.
BallSet build_optimistic(double g_val, const Vec& g_grad_est, const Vec& x_t,
                         double M, double slack, const BallRegion& X);

/// Ball form of the pessimistic set (curvature L, slack sign flipped):
///   g(x_t) + slack + g_est^T (x - x_t) + (L/2) ||x - x_t||^2 <= 0.
BallSet build_pessimistic(double g_val, const Vec& g_grad_est, const Vec& x_t,
                          double L, double slack, const BallRegion& X);

inline bool contains(const BallSet& set, const Vec& x) { return set.contains(x); }

/// Euclidean projection of y onto X intersect the set's ball, via Dykstra.
/// Feasible to within 1e-10 in both constraints on return.
Vec project_intersection(const BallRegion& X, const BallSet& ball, const Vec& y);

/// Largest mu in [0,1] with x_t + mu*(target - x_t) in the pessimistic set,
/// by the closed-form quadratic root per ball. Throws PreconditionViolation
/// if x_t itself is outside the set (a validity breach upstream).
double max_feasible_mu(const Vec& x_t, const Vec& target, const BallSet& pess);

/// Fallback for ambient sets that only offer membership queries: bisection
/// on mu (64 iterations), returning the lower end of the final bracket.
double max_feasible_mu_bisect(const Vec& x_t, const Vec& target, const BallSet& pess,
                              const Region& ambient);

}  // namespace safeoco

#endif
