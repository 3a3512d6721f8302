#ifndef SAFEOCO_GEOMETRY_HPP
#define SAFEOCO_GEOMETRY_HPP

#include <memory>
#include <vector>

#include "safeoco/common.hpp"

namespace safeoco {

/// A closed convex region offering membership and Euclidean projection.
class Region {
public:
    virtual ~Region() = default;
    virtual bool contains(const Vec& x, double tol = 0.0) const = 0;
    virtual Vec project(const Vec& y) const = 0;
};

/// Euclidean ball { x : ||x - center|| <= radius }.
struct BallRegion final : Region {
    Vec center;
    double radius = 0.0;

    BallRegion() = default;
    BallRegion(Vec c, double r) : center(std::move(c)), radius(r) {}

    bool contains(const Vec& x, double tol = 0.0) const override {
        return (x - center).norm() <= radius + tol;
    }

    Vec project(const Vec& y) const override {
        const Vec diff = y - center;
        const double n = diff.norm();
        if (n <= radius) return y;
        return center + diff * (radius / n);
    }

    double diameter() const { return 2.0 * radius; }
};

/// Axis-aligned ellipsoid sublevel set { x : sum_i w_i x_i^2 <= level },
/// w_i > 0. Projection solves the usual secular equation in the multiplier.
struct EllipsoidRegion final : Region {
    Vec weights;
    double level = 0.0;

    EllipsoidRegion() = default;
    EllipsoidRegion(Vec w, double lv) : weights(std::move(w)), level(lv) {}

    bool contains(const Vec& x, double tol = 0.0) const override {
        return weights.dot(x.cwiseProduct(x)) <= level + tol;
    }

    Vec project(const Vec& y) const override;
};

/// Exact Euclidean projection onto the intersection of closed convex regions
/// via Dykstra's alternating projections (plain alternation would only find a
/// feasible point, not the nearest one). Stops when the per-sweep iterate
/// movement drops below `tol`; throws NonConvergence at the sweep cap.
Vec dykstra_project(const std::vector<const Region*>& regions, const Vec& y,
                    double tol = 1e-12, int max_sweeps = 10000);

/// Maximum of the convex quadratic sum_i (w_i z_i^2 + 2 v_i z_i) over the
/// ball ||z|| <= radius, with all w_i >= 0. Solved through the boundary
/// KKT/secular equation, including the hard case where the top-curvature
/// coordinates carry no linear term.
double max_quadratic_on_ball(const Vec& w, const Vec& v, double radius);

}  // namespace safeoco

#endif
