#include "safeoco/geometry.hpp"

#include <cmath>
#include <limits>

namespace safeoco {

Vec EllipsoidRegion::project(const Vec& y) const {
    if (contains(y)) return y;
    // x_i = y_i / (1 + nu * w_i) with nu > 0 solving the boundary equation.
    const auto boundary_gap = [&](double nu) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double xi = y[i] / (1.0 + nu * weights[i]);
            s += weights[i] * xi * xi;
        }
        return s - level;
    };
    double lo = 0.0, hi = 1.0;
    while (boundary_gap(hi) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (boundary_gap(mid) > 0.0 ? lo : hi) = mid;
    }
    const double nu = 0.5 * (lo + hi);
    Vec x(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) x[i] = y[i] / (1.0 + nu * weights[i]);
    return x;
}

Vec dykstra_project(const std::vector<const Region*>& regions, const Vec& y,
                    double tol, int max_sweeps) {
    Vec x = y;
    std::vector<Vec> increments(regions.size(), Vec::Zero(y.size()));
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        const Vec prev = x;
        for (std::size_t i = 0; i < regions.size(); ++i) {
            const Vec z = x + increments[i];
            x = regions[i]->project(z);
            increments[i] = z - x;
        }
        if ((x - prev).norm() < tol) return x;
    }
    throw NonConvergence("dykstra_project: sweep cap reached before fixed point");
}

double max_quadratic_on_ball(const Vec& w, const Vec& v, double radius) {
    const Eigen::Index n = w.size();
    if (radius <= 0.0) return 0.0;
    if (w.isZero(0.0) && v.isZero(0.0)) return 0.0;

    const double w_max = w.maxCoeff();
    // z(lambda)_i = v_i / (lambda - w_i); the boundary multiplier solves
    // ||z(lambda)|| = radius on (w_max, inf).
    const auto norm_sq = [&](double lambda) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double denom = lambda - w[i];
            if (denom <= 0.0) return std::numeric_limits<double>::infinity();
            const double zi = v[i] / denom;
            s += zi * zi;
        }
        return s;
    };
    const auto value_at = [&](const Vec& z) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) s += w[i] * z[i] * z[i] + 2.0 * v[i] * z[i];
        return s;
    };
    const double r2 = radius * radius;
    const double eps = 1e-15 * std::max(1.0, std::abs(w_max));

    // Hard case: no linear pull on the top-curvature coordinates; the
    // remaining norm budget goes onto one of them.
    bool top_has_linear = false;
    for (Eigen::Index i = 0; i < n; ++i)
        if (w[i] >= w_max - eps && v[i] != 0.0) top_has_linear = true;
    if (!top_has_linear) {
        double s_at_top = 0.0;
        Vec z = Vec::Zero(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (w[i] >= w_max - eps) continue;
            z[i] = v[i] / (w_max - w[i]);
            s_at_top += z[i] * z[i];
        }
        if (s_at_top <= r2) {
            const double tau_sq = r2 - s_at_top;
            return value_at(z) + w_max * tau_sq;
        }
    }

    double lo = w_max + eps;
    double hi = w_max + std::max(1e-12, v.norm() / radius);
    while (norm_sq(hi) > r2) hi = w_max + 2.0 * (hi - w_max);
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        (norm_sq(mid) > r2 ? lo : hi) = mid;
    }
    const double lambda = 0.5 * (lo + hi);
    Vec z(n);
    for (Eigen::Index i = 0; i < n; ++i) z[i] = v[i] / (lambda - w[i]);
    // Rescale onto the boundary to absorb bisection residue.
    const double zn = z.norm();
    if (zn > 0.0) z *= radius / zn;
    return value_at(z);
}

}  // namespace safeoco
