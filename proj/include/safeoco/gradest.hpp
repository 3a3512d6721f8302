#ifndef SAFEOCO_GRADEST_HPP
#define SAFEOCO_GRADEST_HPP

#include <cmath>
#include <functional>
#include <utility>

#include "safeoco/common.hpp"

namespace safeoco {

using ValueQuery = std::function<double(const Vec&)>;

/// Forward-difference gradient estimate from d + 1 value queries, together
/// with the raw observations so callers can reuse the same queries for cost
/// accounting (exactly one oracle call per played point).
struct GradientEstimate {
    Vec estimate;
    double probe_radius = 0.0;
    Vec base_point;
    double base_value = 0.0;
    Vec probe_values;
};

/// Probes x and x + delta*e_i for each coordinate axis in fixed index order
/// and forms estimate_i = (f(x + delta e_i) - f(x)) / delta.
GradientEstimate forward_diff(const ValueQuery& oracle, const Vec& x, double delta);

/// Worst-case estimation error (1/2) sqrt(d) L delta for an L-smooth convex
/// oracle; attained with equality by the isotropic quadratic.
inline double forward_diff_error_bound(double L, double delta, int dim) {
    return 0.5 * std::sqrt(static_cast<double>(dim)) * L * delta;
}

}  // namespace safeoco

#endif
