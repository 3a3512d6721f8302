#include <doctest.h>

#include <random>

#include "safeoco/gradest.hpp"

using namespace safeoco;

namespace {

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("forward difference is exact on affine oracles") {
    const auto f = [](const Vec& x) { return 1.0 * x[0] + 2.0 * x[1] + 0.7; };
    const auto est = forward_diff(f, v2(0, 0), 0.5);
    CHECK(est.estimate[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(est.estimate[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(est.base_value == doctest::Approx(0.7));
    CHECK(est.probe_values.size() == 2);

    const auto constant = [](const Vec&) { return 3.0; };
    CHECK(forward_diff(constant, v2(0.3, -0.1), 0.2).estimate.norm() == 0.0);
}

TEST_CASE("isotropic quadratic attains the error bound with equality") {
    const auto f = [](const Vec& x) { return x.squaredNorm(); };
    const auto est = forward_diff(f, v2(0, 0), 0.1);
    CHECK(est.estimate[0] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(est.estimate[1] == doctest::Approx(0.1).epsilon(1e-12));
    // exact gradient at 0 is 0, so the error norm is 0.1*sqrt(2)
    const double bound = forward_diff_error_bound(2.0, 0.1, 2);
    CHECK(est.estimate.norm() == doctest::Approx(bound).epsilon(1e-12));
    CHECK(bound == doctest::Approx(0.14142135623730953).epsilon(1e-14));
}

TEST_CASE("error bound values") {
    CHECK(forward_diff_error_bound(20.0, 1e-4, 2) ==
          doctest::Approx(0.0014142135623730952).epsilon(1e-14));
    CHECK(forward_diff_error_bound(7.0, 0.0, 2) == 0.0);
}

TEST_CASE("estimate_i equals (probe - base)/delta exactly") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto f = [](const Vec& x) { return std::sin(x[0]) + x[1] * x[1] * 0.5; };
    for (int i = 0; i < 50; ++i) {
        const Vec x = v2(u(rng), u(rng));
        const double delta = 0.01 + 0.1 * std::abs(u(rng));
        const auto est = forward_diff(f, x, delta);
        for (int k = 0; k < 2; ++k)
            CHECK(est.estimate[k] == (est.probe_values[k] - est.base_value) / delta);
    }
}

TEST_CASE("random smooth quadratic corpus satisfies both estimator bounds") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> ucurv(0.0, 1.0);
    const int dim = 3;
    const double L = 8.0;
    const double delta = 0.05;
    for (int trial = 0; trial < 1000; ++trial) {
        // Hessian spectrum in [0, L] via a random diagonal in a rotated frame
        Mat B(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) B(i, j) = u(rng);
        const Eigen::HouseholderQR<Mat> qr(B);
        const Mat Q = qr.householderQ();
        Vec eigs(dim);
        for (int i = 0; i < dim; ++i) eigs[i] = L * ucurv(rng);
        const Mat H = Q * eigs.asDiagonal() * Q.transpose();
        Vec lin(dim), base(dim);
        for (int i = 0; i < dim; ++i) {
            lin[i] = u(rng);
            base[i] = 0.5 * u(rng);
        }
        const auto f = [&](const Vec& x) { return 0.5 * x.dot(H * x) + lin.dot(x); };
        const auto est = forward_diff(f, base, delta);
        const Vec exact = H * base + lin;
        CHECK((est.estimate - exact).norm() <=
              forward_diff_error_bound(L, delta, dim) + 1e-12);
        // gradient norms along the probe segments bound the estimate by d*G
        double G = exact.norm();
        for (int i = 0; i < dim; ++i) {
            Vec p = base;
            p[i] += delta;
            G = std::max(G, (H * p + lin).norm());
        }
        CHECK(est.estimate.norm() <= dim * G + 1e-12);
    }
}

TEST_CASE("faults") {
    const auto f = [](const Vec&) { return std::numeric_limits<double>::quiet_NaN(); };
    CHECK_THROWS_AS(forward_diff(f, Vec::Zero(2), 0.1), EvaluationFault);
    const auto ok = [](const Vec&) { return 0.0; };
    CHECK_THROWS_AS(forward_diff(ok, Vec::Zero(2), 0.0), PreconditionViolation);
}
