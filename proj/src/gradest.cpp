#include "safeoco/gradest.hpp"

#include <cmath>

namespace safeoco {

GradientEstimate forward_diff(const ValueQuery& oracle, const Vec& x, double delta) {
    if (!(delta > 0.0)) throw PreconditionViolation("forward_diff: delta must be positive");
    const Eigen::Index d = x.size();
    GradientEstimate out;
    out.probe_radius = delta;
    out.base_point = x;
    out.base_value = oracle(x);
    if (!std::isfinite(out.base_value))
        throw EvaluationFault("forward_diff: non-finite value at base point");
    out.probe_values.resize(d);
    out.estimate.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        Vec p = x;
        p[i] += delta;
        const double fv = oracle(p);
        if (!std::isfinite(fv))
            throw EvaluationFault("forward_diff: non-finite value at probe point");
        out.probe_values[i] = fv;
        out.estimate[i] = (fv - out.base_value) / delta;
    }
    return out;
}

}  // namespace safeoco
