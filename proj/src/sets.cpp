#include "safeoco/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace safeoco {

BallSet build_optimistic(double g_val, const Vec& g_grad_est, const Vec& x_t,
                         double M, double slack, const BallRegion& X) {
    if (!(M > 0.0)) throw PreconditionViolation("build_optimistic: M must be positive");
    BallSet out;
    out.kind = BallSet::Kind::Optimistic;
    out.ambient = X;
    out.center = x_t - g_grad_est / M;
    out.radius_sq = g_grad_est.squaredNorm() / (M * M) + (2.0 / M) * (slack - g_val);
    return out;
}

BallSet build_pessimistic(double g_val, const Vec& g_grad_est, const Vec& x_t,
                          double L, double slack, const BallRegion& X) {
    if (!(L > 0.0)) throw PreconditionViolation("build_pessimistic: L must be positive");
    BallSet out;
    out.kind = BallSet::Kind::Pessimistic;
    out.ambient = X;
    out.center = x_t - g_grad_est / L;
    out.radius_sq = g_grad_est.squaredNorm() / (L * L) - (2.0 / L) * (g_val + slack);
    return out;
}

Vec project_intersection(const BallRegion& X, const BallSet& ball, const Vec& y) {
    if (ball.empty())
        throw PreconditionViolation("project_intersection: empty ball set");
    const BallRegion inner(ball.center, ball.radius());
    return dykstra_project({&X, &inner}, y, 1e-12, 10000);
}

namespace {

// Largest mu in [0,1] keeping x_t + mu*y inside the ball B(c, sqrt(r_sq)).
double segment_exit(const Vec& x_t, const Vec& y, const Vec& c, double r_sq) {
    const double a = y.squaredNorm();
    if (a == 0.0) return 1.0;
    const double b = 2.0 * y.dot(x_t - c);
    const double q = (x_t - c).squaredNorm() - r_sq;
    const double disc = b * b - 4.0 * a * q;
    if (disc < 0.0) return 0.0;
    const double root = (-b + std::sqrt(disc)) / (2.0 * a);
    return std::clamp(root, 0.0, 1.0);
}

}  // namespace

double max_feasible_mu(const Vec& x_t, const Vec& target, const BallSet& pess) {
    if (pess.empty() || !pess.contains(x_t, 1e-12))
        throw PreconditionViolation(
            "max_feasible_mu: base point outside the pessimistic set (validity breach)");
    const Vec y = target - x_t;
    double mu = std::min(segment_exit(x_t, y, pess.center, pess.radius_sq),
                         segment_exit(x_t, y, pess.ambient.center,
                                      pess.ambient.radius * pess.ambient.radius));
    // Round the closed-form root down until membership holds under exact
    // floating comparison.
    for (int i = 0; i < 64 && mu > 0.0 && !pess.contains(x_t + mu * y); ++i)
        mu = std::nextafter(mu * (1.0 - 4.0 * std::numeric_limits<double>::epsilon()), 0.0);
    return mu;
}

double max_feasible_mu_bisect(const Vec& x_t, const Vec& target, const BallSet& pess,
                              const Region& ambient) {
    const auto feasible = [&](double mu) {
        const Vec p = x_t + mu * (target - x_t);
        return (p - pess.center).squaredNorm() <= pess.radius_sq && ambient.contains(p);
    };
    if (!feasible(0.0))
        throw PreconditionViolation(
            "max_feasible_mu_bisect: base point outside the pessimistic set");
    if (feasible(1.0)) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 64; ++i) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace safeoco
