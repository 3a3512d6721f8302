#include "safeoco/problem.hpp"

#include <cmath>
#include <random>

namespace safeoco {

QuadraticForm::QuadraticForm(Mat A, Vec shift, double offset)
    : matrix_(std::move(A)), shift_(std::move(shift)), offset_(offset) {}

double QuadraticForm::value(const Vec& x) const {
    const Vec z = x - shift_;
    return z.dot(matrix_ * z) + offset_;
}

Vec QuadraticForm::gradient(const Vec& x) const {
    return 2.0 * (matrix_ * (x - shift_));
}

std::optional<BallRegion> QuadraticForm::sublevel_ball() const {
    const double a = matrix_(0, 0);
    if (a <= 0.0 || offset_ >= 0.0) return std::nullopt;
    const Mat iso = a * Mat::Identity(matrix_.rows(), matrix_.cols());
    if ((matrix_ - iso).cwiseAbs().maxCoeff() > 1e-12 * a) return std::nullopt;
    return BallRegion(shift_, std::sqrt(-offset_ / a));
}

std::unique_ptr<Region> QuadraticForm::sublevel_region() const {
    if (auto ball = sublevel_ball()) return std::make_unique<BallRegion>(*ball);
    if (shift_.isZero(0.0) && matrix_.isDiagonal(0.0))
        return std::make_unique<EllipsoidRegion>(matrix_.diagonal(), -offset_);
    throw PreconditionViolation(
        "QuadraticForm::sublevel_region: only isotropic or centered-diagonal forms");
}

std::vector<std::unique_ptr<Region>> ProblemInstance::feasible_regions() const {
    std::vector<std::unique_ptr<Region>> out;
    out.push_back(std::make_unique<BallRegion>(action_set));
    out.push_back(constraint.sublevel_region());
    return out;
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

class LinearCostStream final : public CostStream {
public:
    LinearCostStream(std::uint64_t seed, int dim) : seed_(seed), dim_(dim) {}

    CostOracle at(long t) const override {
        std::mt19937_64 rng(substream_seed(seed_, static_cast<std::uint64_t>(t)));
        Vec theta(dim_);
        for (int i = 0; i < dim_; ++i) theta[i] = uniform(rng, 0.0, 1.0);
        CostOracle oracle;
        oracle.value = [theta](const Vec& x) { return theta.dot(x); };
        oracle.gradient = [theta](const Vec&) { return theta; };
        return oracle;
    }

private:
    std::uint64_t seed_;
    int dim_;
};

class QuadraticCostStream final : public CostStream {
public:
    QuadraticCostStream(std::uint64_t seed, int dim) : seed_(seed), dim_(dim) {}

    CostOracle at(long t) const override {
        std::mt19937_64 rng(substream_seed(seed_, static_cast<std::uint64_t>(t)));
        Mat raw(dim_, dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) raw(i, j) = uniform(rng, 0.0, 1.0);
        const Mat sym = 0.5 * (raw + raw.transpose());
        const Mat norm =
            (sym - 0.5 * Mat::Identity(dim_, dim_)) / (static_cast<double>(dim_) - 0.5);
        const Mat A = 5.0 * (norm + Mat::Identity(dim_, dim_));
        Vec b(dim_);
        for (int i = 0; i < dim_; ++i) b[i] = uniform(rng, 1.0, 2.0);
        CostOracle oracle;
        oracle.value = [A, b](const Vec& x) {
            const Vec z = x - b;
            return z.dot(A * z);
        };
        oracle.gradient = [A, b](const Vec& x) { return Vec(2.0 * (A * (x - b))); };
        return oracle;
    }

private:
    std::uint64_t seed_;
    int dim_;
};

}  // namespace

ProblemInstance gen_linear_setting(std::uint64_t seed, int dim) {
    if (dim < 1) throw PreconditionViolation("gen_linear_setting: dim must be >= 1");
    std::mt19937_64 rng(substream_seed(seed, 0));
    const double a = uniform(rng, 1.0, 10.0);
    // Uniform on the radius-0.2 sphere: normalized Gaussian direction.
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec b(dim);
    do {
        for (int i = 0; i < dim; ++i) b[i] = gauss(rng);
    } while (b.norm() == 0.0);
    b *= 0.2 / b.norm();
    const double xi = uniform(rng, 0.3, 0.8);
    const double c = -xi * xi * a;

    ProblemInstance inst;
    inst.dim = dim;
    inst.seed = seed;
    inst.setting = Setting::Linear;
    inst.action_set = BallRegion(Vec::Zero(dim), 1.0);
    inst.constraint = QuadraticForm(a * Mat::Identity(dim, dim), b, c);
    inst.cost_stream = std::make_shared<LinearCostStream>(seed, dim);
    inst.constants = {std::sqrt(static_cast<double>(dim)), 2.0, 20.0, 2.0, -c, 0.1};
    return inst;
}

ProblemInstance gen_quadratic_setting(std::uint64_t seed, int dim, bool positive_offset_sign) {
    if (dim < 2) throw PreconditionViolation("gen_quadratic_setting: dim must be >= 2");
    std::mt19937_64 rng(substream_seed(seed, 0));
    Vec diag(dim);
    for (int i = 0; i < dim; ++i) diag[i] = uniform(rng, 1.0, 10.0);
    const double offset_mag = diag.minCoeff();

    ProblemInstance inst;
    inst.dim = dim;
    inst.seed = seed;
    inst.setting = Setting::Quadratic;
    inst.action_set = BallRegion(Vec::Zero(dim), 1.0);
    inst.constraint = QuadraticForm(Mat(diag.asDiagonal()), Vec::Zero(dim),
                                    positive_offset_sign ? offset_mag : -offset_mag);
    inst.cost_stream = std::make_shared<QuadraticCostStream>(seed, dim);
    inst.constants = {60.0, 2.0, 20.0, 2.0, 1.0, 1.0 / std::sqrt(10.0)};
    return inst;
}

std::vector<CostOracle> materialize_costs(const ProblemInstance& instance, long horizon) {
    std::vector<CostOracle> draws;
    draws.reserve(static_cast<std::size_t>(horizon));
    for (long t = 1; t <= horizon; ++t) draws.push_back(instance.cost_stream->at(t));
    return draws;
}

Vec offline_optimum(const ProblemInstance& instance,
                    const std::vector<CostOracle>& cost_draws) {
    const auto regions = instance.feasible_regions();
    std::vector<const Region*> region_ptrs;
    for (const auto& r : regions) region_ptrs.push_back(r.get());

    const auto total_gradient = [&](const Vec& x) {
        Vec g = Vec::Zero(instance.dim);
        for (const auto& c : cost_draws) g += c.gradient(x);
        return g;
    };

    // Step size from a crude curvature probe; linear objectives fall back to
    // a diameter-scale step.
    const Vec g0 = total_gradient(Vec::Zero(instance.dim));
    double lipschitz = 0.0;
    for (int i = 0; i < instance.dim; ++i) {
        Vec p = Vec::Zero(instance.dim);
        p[i] = 0.5;
        lipschitz = std::max(lipschitz, (total_gradient(p) - total_gradient(-p)).norm());
    }
    const double D = instance.constants.D > 0.0 ? instance.constants.D : 2.0;
    const double scale = std::max({lipschitz, g0.norm() / D, 1e-12});
    const double step = 1.0 / scale;

    Vec x = Vec::Zero(instance.dim);
    for (long it = 0; it < 1000000; ++it) {
        const Vec next = dykstra_project(region_ptrs, x - step * total_gradient(x));
        const double move = (next - x).norm();
        x = next;
        if (move < 1e-10) return x;
    }
    throw NonConvergence("offline_optimum: iteration cap reached");
}

Vec offline_optimum(const ProblemInstance& instance, long horizon) {
    return offline_optimum(instance, materialize_costs(instance, horizon));
}

double regret(const std::vector<std::vector<Vec>>& played_per_round, const Vec& x_star,
              const std::vector<CostOracle>& cost_draws) {
    if (played_per_round.size() > cost_draws.size())
        throw PreconditionViolation("regret: trace longer than cost stream");
    double total = 0.0;
    for (std::size_t t = 0; t < played_per_round.size(); ++t) {
        const auto& points = played_per_round[t];
        if (points.empty()) throw PreconditionViolation("regret: round with no plays");
        double round_cost = 0.0;
        for (const Vec& p : points) round_cost += cost_draws[t].value(p);
        total += round_cost / static_cast<double>(points.size());
        total -= cost_draws[t].value(x_star);
    }
    return total;
}

}  // namespace safeoco
