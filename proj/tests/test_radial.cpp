#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "srff/radial.hpp"
#include "srff/rng.hpp"
#include "test_util.hpp"

using namespace srff;

TEST_CASE("one-point rule sits at the gamma mean") {
    const RadialRule rule = gauss_laguerre(4, 1);
    CHECK(rule.xi[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(rule.a[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rule.alpha == doctest::Approx(1.0));
}

TEST_CASE("two-point rule for d=2 matches the hand-solved Jacobi eigenproblem") {
    // roots of L_2^0: 2 -/+ sqrt(2); weights (2 +/- sqrt(2))/4
    const RadialRule rule = gauss_laguerre(2, 2);
    const double s2 = std::sqrt(2.0);
    CHECK(rule.xi[0] == doctest::Approx(2.0 - s2).epsilon(1e-14));
    CHECK(rule.xi[1] == doctest::Approx(2.0 + s2).epsilon(1e-14));
    CHECK(rule.a[0] == doctest::Approx((2.0 + s2) / 4.0).epsilon(1e-14));
    CHECK(rule.a[1] == doctest::Approx((2.0 - s2) / 4.0).epsilon(1e-14));
}

TEST_CASE("polynomial exactness, first moment, node bound over the full grid") {
    for (int d : {2, 4, 8, 16, 32, 784})
        for (int M = 1; M <= 10; ++M) {
            const RadialRule rule = gauss_laguerre(d, M);
            double wsum = 0.0, first = 0.0;
            for (int i = 0; i < M; ++i) {
                wsum += rule.a[i];
                first += rule.a[i] * rule.xi[i];
                CHECK(rule.xi[i] > 0.0);
                if (i > 0) CHECK(rule.xi[i] > rule.xi[i - 1]);
                CHECK(rule.a[i] > 0.0);
            }
            CHECK(std::abs(wsum - 1.0) <= 1e-12);
            CHECK(first == doctest::Approx(d / 2.0).epsilon(1e-12));
            CHECK(rule.xi[M - 1] <= 4.0 * M + d);
            const double lg = std::lgamma(d / 2.0);
            for (int p = 0; p <= 2 * M - 1; ++p) {
                double q = 0.0;
                for (int i = 0; i < M; ++i) q += rule.a[i] * std::pow(rule.xi[i], p);
                const double moment = std::exp(std::lgamma(d / 2.0 + p) - lg);
                CHECK(std::abs(q - moment) / moment <= 1e-10);
            }
        }
}

TEST_CASE("radii transform") {
    RadialRule rule = gauss_laguerre(4, 1);
    CHECK(radii(rule, {4, 1.0})[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(radii(rule, {4, 2.0})[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(radii(rule, {4, std::sqrt(2.0)})[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(radii(rule, {5, 1.0}), std::invalid_argument);
}

TEST_CASE("f_bar trivial values") {
    for (double xi : {0.0, 0.5, 7.0}) CHECK(f_bar(3, 0.0, xi) == 1.0);
    for (double c2 : {0.0, 0.5, 7.0}) CHECK(f_bar(3, c2, 0.0) == 1.0);
}

TEST_CASE("f_bar for d=3 is sin(beta)/beta") {
    // beta = 2 sqrt(c2 xi); pick c2 = 0.25, xi = 1 so beta = 1
    CHECK(f_bar(3, 0.25, 1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-12));
    // Monte Carlo oracle on S^2
    RngStream rng(RngSeed{99, 7});
    const int n = 1000000;
    std::vector<double> vals(n);
    for (int s = 0; s < n; ++s) {
        double g[3];
        double norm2 = 0.0;
        for (double& gc : g) {
            gc = rng.normal();
            norm2 += gc * gc;
        }
        vals[s] = std::cos(g[0] / std::sqrt(norm2));
    }
    const auto [mean, se] = testutil::mean_se(vals);
    CHECK(std::abs(f_bar(3, 0.25, 1.0) - mean) <= 4.0 * se);
}

TEST_CASE("f_bar agrees with the direct projection integral in higher d") {
    for (int d : {2, 4, 8})
        for (double c2 : {0.1, 0.5, 2.0})
            for (double xi : {0.5, 2.0, 10.0}) {
                const double beta = 2.0 * std::sqrt(c2 * xi);
                const double pi = std::acos(-1.0);
                double want;
                if (d == 2) {
                    want = testutil::integrate_oracle(
                               [&](double phi) { return std::cos(beta * std::cos(phi)); }, 0.0,
                               pi, 1e-12) /
                           pi;
                } else {
                    const double coeff = std::exp(std::lgamma(d / 2.0) -
                                                  std::lgamma((d - 1.0) / 2.0)) /
                                         std::sqrt(pi);
                    want = coeff * testutil::integrate_oracle(
                                       [&](double t) {
                                           return std::cos(beta * t) *
                                                  std::pow(1.0 - t * t, (d - 3.0) / 2.0);
                                       },
                                       -1.0, 1.0, 1e-12);
                }
                CHECK(std::abs(f_bar(d, c2, xi) - want) <= 1e-9);
            }
}

TEST_CASE("radial quadrature error: reference identity and convergence") {
    const KernelSpec spec{4, 1.0};
    CHECK(radial_quadrature_error(gauss_laguerre(4, 3), spec, 0.0) == 0.0);

    // the analytic reference equals the brute-force integral of f_bar p_Xi
    const double c2 = 0.5;
    const double alpha = 1.0;
    const double brute = testutil::integrate_oracle_panels(
        [&](double xi) {
            return f_bar(4, c2, xi, 1e-15) *
                   std::exp(alpha * std::log(std::max(xi, 1e-300)) - xi - std::lgamma(alpha + 1.0));
        },
        0.0, 120.0, 24, 1e-13);
    CHECK(std::abs(brute - std::exp(-c2)) <= 1e-11);

    CHECK(std::abs(radial_quadrature_error(gauss_laguerre(4, 30), spec, 1.0)) < 1e-12);
    const double e1 = std::abs(radial_quadrature_error(gauss_laguerre(4, 1), spec, 1.0));
    const double e2 = std::abs(radial_quadrature_error(gauss_laguerre(4, 2), spec, 1.0));
    CHECK(e2 < e1);
}

TEST_CASE("radial error is dominated by the proposition envelope with L = 1") {
    // |error(M)| <= (c^2/sqrt(Gamma(d/2))) (c^2/(2M-1))^(2M-1), strictly
    // decreasing in M over the tested range.
    const KernelSpec spec{4, 1.0};
    const double c2 = 0.5;
    double prev = 1e300;
    for (int M = 1; M <= 6; ++M) {
        const double err = std::abs(radial_quadrature_error(gauss_laguerre(4, M), spec, 1.0));
        const double envelope =
            c2 / std::sqrt(std::tgamma(2.0)) * std::pow(c2 / (2.0 * M - 1.0), 2.0 * M - 1.0);
        CHECK(err <= envelope);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("kernel consistency of the radial stage") {
    // with the spherical average taken exactly, sum a_i f_bar(xi_i) -> exp(-c^2)
    const KernelSpec spec{8, 1.5};
    const double dist = 1.2;
    const double c2 = dist * dist / (2.0 * spec.sigma * spec.sigma);
    double prev = 1e300;
    for (int M : {1, 2, 4, 8}) {
        const double err = std::abs(radial_quadrature_error(gauss_laguerre(8, M), spec, dist));
        CHECK(err < prev);
        prev = err;
    }
    CHECK(std::abs(radial_quadrature_error(gauss_laguerre(8, 20), spec, dist)) < 1e-14);
    CHECK(c2 < 1.0);  // desk-scale configuration sanity
}
