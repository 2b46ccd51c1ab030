#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "srff/integrate.hpp"
#include "srff/orthopoly.hpp"
#include "srff/radial.hpp"
#include "srff/rng.hpp"
#include "srff/spherical.hpp"
#include "test_util.hpp"

using namespace srff;

TEST_CASE("normalized Laguerre basics") {
    CHECK(laguerre_normalized(0, 1.0, 0.7) == 1.0);
    CHECK(laguerre_normalized(0, 0.5, 3.0) == 1.0);
    for (double alpha : {0.0, 0.5, 1.0, 3.0})
        for (double x : {0.0, 0.3, 2.0, 9.0})
            CHECK(laguerre_normalized(1, alpha, x) ==
                  doctest::Approx((1.0 + alpha - x) / std::sqrt(1.0 + alpha)).epsilon(1e-14));
    CHECK_THROWS_AS(laguerre_normalized(2, -1.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(laguerre_normalized(2, 0.5, -1.0), std::domain_error);
    // the recurrence stays finite where the factorial normalization would
    // overflow (alpha = d/2 - 1 at d = 784)
    CHECK(std::isfinite(laguerre_normalized(200, 391.0, 400.0)));
    CHECK(std::isfinite(laguerre_normalized(50, 391.0, 0.0)));
}

TEST_CASE("poly params tie alpha to the dimension") {
    CHECK(PolyParams::for_dimension(4).alpha == 1.0);
    CHECK(PolyParams::for_dimension(3).alpha == 0.5);
    CHECK(PolyParams::for_dimension(784).alpha == 391.0);
    CHECK_THROWS_AS(PolyParams::for_dimension(1), std::domain_error);
}

TEST_CASE("normalized Laguerre orthonormality under the gamma density") {
    const double alpha = 1.0;
    const double lg = std::lgamma(alpha + 1.0);
    for (int m = 0; m <= 8; ++m)
        for (int n = m; n <= 8; ++n) {
            const double got = testutil::integrate_oracle_panels(
                [&](double x) {
                    const double w = std::exp(alpha * std::log(std::max(x, 1e-300)) - x - lg);
                    return laguerre_normalized(m, alpha, x) * laguerre_normalized(n, alpha, x) * w;
                },
                0.0, 250.0, 25, 1e-12);
            CHECK(std::abs(got - (m == n ? 1.0 : 0.0)) <= 1e-8);
        }
}

TEST_CASE("Laguerre moment identity") {
    // integral of x^(a'-1) e^-x L_n^a(x) equals binom(a-a'+n, n) Gamma(a')
    // with the falling-factorial binomial.
    const auto falling_binom = [](int top, int n) {
        double prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= static_cast<double>(top - i);
        for (int i = 1; i <= n; ++i) prod /= static_cast<double>(i);
        return prod;
    };
    for (int a = 0; a <= 6; a += 2)
        for (int ap = 1; ap <= 6; ap += 2)
            for (int n = 0; n <= 6; n += 3) {
                const double alpha = a;
                // unnormalize: L_n^a = ell_n^a * sqrt(Gamma(n+a+1)/(n! Gamma(a+1)))
                const double scale = std::exp(
                    0.5 * (std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0) -
                           std::lgamma(alpha + 1.0)));
                const double got = testutil::integrate_oracle_panels(
                    [&](double x) {
                        return std::pow(x, ap - 1.0) * std::exp(-x) * scale *
                               laguerre_normalized(n, alpha, x);
                    },
                    1e-12, 300.0, 30, 1e-10);
                const double expected = falling_binom(a - ap + n, n) * std::tgamma(ap);
                CHECK(std::abs(got - expected) <= 1e-7);
            }
}

TEST_CASE("Gegenbauer examples and recurrence endpoints") {
    for (int d : {2, 3, 5, 8, 64}) {
        CHECK(gegenbauer(1, d, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
        for (double t : {-1.0, -0.4, 0.0, 0.7, 1.0})
            CHECK(gegenbauer(2, d, t) ==
                  doctest::Approx((d * t * t - 1.0) / (d - 1.0)).epsilon(1e-14));
    }
    for (int d : {2, 3, 8})
        for (int k = 0; k <= 20; ++k)
            CHECK(gegenbauer(k, d, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(gegenbauer(3, 4, 1.1), std::domain_error);
}

TEST_CASE("Gegenbauer bounded by 1 on a grid") {
    for (int d : {2, 3, 4, 16, 64})
        for (int k = 0; k <= 30; ++k)
            for (int i = 0; i <= 200; ++i) {
                const double t = -1.0 + 2.0 * i / 200.0;
                CHECK(std::abs(gegenbauer(k, d, t)) <= 1.0 + 1e-12);
            }
}

TEST_CASE("spherical harmonic dimensions") {
    CHECK(harmonic_dim(3, 2) == 5);
    CHECK(harmonic_dim(7, 0) == 1);
    CHECK(harmonic_dim(2, 0) == 1);
    CHECK(harmonic_dim(4, 1) == 4);
    for (int k = 1; k <= 20; ++k) {
        CHECK(harmonic_dim(3, k) == 2 * k + 1);
        CHECK(harmonic_dim(2, k) == 2);
    }
    CHECK(harmonic_dim(8, 3) == 112);  // (2k+d-2)/k * C(k+d-3, d-2) = 4 * C(8,6)
    CHECK_THROWS_AS(harmonic_dim(784, 40), std::overflow_error);
}

TEST_CASE("beta coefficients") {
    const SeriesCoeffs b0 = beta_coeffs(5, 0.0, 6);
    CHECK(b0.values[0] == 1.0);
    for (int n = 1; n <= 6; ++n) CHECK(b0.values[n] == 0.0);
    CHECK(b0.tail_bound == 0.0);

    for (int d : {2, 3, 8})
        for (double c2 : {0.2, 1.0, 4.0}) {
            const SeriesCoeffs b = beta_coeffs(d, c2, 10);
            CHECK(b.values[0] == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(b.tail_bound >= 0.0);
            // direct formula with plain gamma for small n
            for (int n = 0; n <= 6; ++n) {
                const double direct = std::pow(-c2, n) * std::tgamma(d / 2.0) /
                                      (std::tgamma(n + 1.0) * std::tgamma(d / 2.0 + n));
                CHECK(b.values[n] == doctest::Approx(direct).epsilon(1e-12));
            }
        }
    CHECK(beta_coeffs(2, 1.0, 3).values[1] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("lambda coefficients: trivial cases and parity") {
    const SeriesCoeffs l0 = lambda_coeffs(4, 0.0, 8, 1e-12);
    CHECK(l0.values[0] == 1.0);
    for (int k = 1; k <= 8; ++k) CHECK(l0.values[k] == 0.0);

    const SeriesCoeffs l = lambda_coeffs(3, 1.0, 9, 1e-12);
    for (int k = 1; k <= 9; k += 2) CHECK(l.values[k] == 0.0);
    CHECK(l.values[0] == doctest::Approx(std::sin(1.0)).epsilon(1e-10));
}

TEST_CASE("lambda coefficients against the independent Simpson oracle") {
    for (int d : {2, 3, 4, 8})
        for (double beta : {0.5, 1.0, 2.0})
            for (int k : {0, 2, 4}) {
                const double got = lambda_k(d, beta, k, 1e-12);
                double want;
                if (d == 2) {
                    const double pi = std::acos(-1.0);
                    want = testutil::integrate_oracle(
                               [&](double phi) {
                                   return std::cos(beta * std::cos(phi)) *
                                          gegenbauer(k, d, std::cos(phi));
                               },
                               0.0, pi, 1e-12) /
                           pi;
                } else {
                    want = sphere_projection_coeff(d) *
                           testutil::integrate_oracle(
                               [&](double t) {
                                   return std::cos(beta * t) * gegenbauer(k, d, t) *
                                          std::pow(1.0 - t * t, (d - 3.0) / 2.0);
                               },
                               -1.0, 1.0, 1e-12);
                }
                CHECK(std::abs(got - want) <= 1e-9);
            }
    // d=2, k=0 is the Bessel J_0 integral
    CHECK(lambda_k(2, 1.0, 0, 1e-13) == doctest::Approx(0.76519768655796655).epsilon(1e-11));
}

TEST_CASE("lambda decay envelope holds for every computed coefficient") {
    for (int d : {2, 3, 4, 8, 16})
        for (double beta : {0.5, 1.0, 2.0, 4.0}) {
            const SeriesCoeffs l = lambda_coeffs(d, beta, 12, 1e-13);
            for (int k = 0; k <= 12; ++k) {
                const double bound = std::exp(lambda_bound_log(d, beta, k));
                CHECK(std::abs(l.values[k]) <= bound * (1.0 + 1e-9) + 1e-12);
            }
        }
}

TEST_CASE("sphere-average consistency: lambda_0 equals the radial series") {
    // beta = sqrt(2 xi) ||x-y|| / sigma = 2 sqrt(c2 xi)
    for (int d : {2, 3, 8})
        for (double xi : {0.3, 1.0, 4.0})
            for (double c2 : {0.1, 0.5, 2.0}) {
                const double beta = 2.0 * std::sqrt(c2 * xi);
                CHECK(std::abs(lambda_k(d, beta, 0, 1e-12) - f_bar(d, c2, xi, 1e-14)) <= 1e-8);
            }
}

TEST_CASE("addition-formula second moment via Monte Carlo") {
    // integral of P_k(<v,theta>)^2 over the sphere = 1/N(d,k)
    for (int d : {3, 8})
        for (int k : {2, 4}) {
            RngStream rng(RngSeed{2024, static_cast<std::uint64_t>(100 * d + k)});
            const int n = 1000000;
            std::vector<double> vals(n);
            std::vector<double> g(d);
            for (int s = 0; s < n; ++s) {
                double norm2 = 0.0;
                for (int c = 0; c < d; ++c) {
                    g[c] = rng.normal();
                    norm2 += g[c] * g[c];
                }
                const double p = gegenbauer(k, d, g[0] / std::sqrt(norm2));
                vals[s] = p * p;
            }
            const auto [mean, se] = testutil::mean_se(vals);
            const double target = 1.0 / static_cast<double>(harmonic_dim(d, k));
            CHECK(std::abs(mean - target) <= 4.0 * se);
        }
}

TEST_CASE("integrator reports failure when the tolerance is unreachable") {
    CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / (x + 1e-8)); }, 0.0, 1.0,
                              1e-30, 64),
                    convergence_error);
}
