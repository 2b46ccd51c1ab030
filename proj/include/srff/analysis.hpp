#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "srff/features.hpp"
#include "srff/matrix.hpp"

namespace srff {

// One row of an error-analysis run.
struct ErrorReport {
    std::string method;
    int d = 0;
    double sigma = 0.0;
    int M_R = 0;
    int M_S = 0;
    int M_total = 0;
    double rel_frobenius = 0.0;
    std::optional<double> spectral_dev;
    std::optional<double> pointwise_mse;
    int seeds_used = 0;
    std::optional<double> bound_mc;
    std::optional<double> bound_omc;
    double ridge = 0.0;
    double wall_time = 0.0;  // reported on stderr, never part of the CSV
};

// ||K - K_hat||_F / ||K||_F.
double rel_frobenius(const Matrix& K, const Matrix& K_hat);

// ||(K + ridge I)^{-1/2} K_hat (K + ridge I)^{-1/2} - I||_2 via a symmetric
// eigendecomposition. Throws if K + ridge I is not positive definite.
double spectral_deviation(const Matrix& K, const Matrix& K_hat, double ridge);

double default_ridge(const Matrix& K);  // 1e-8 * trace(K) / n

struct BoundParts {
    double radial = 0.0;
    double spherical = 0.0;
    double total = 0.0;  // 2 * (radial + spherical); +inf on overflow
};

// Right-hand sides of the two expected-squared-error bounds for the
// spherical-radial map (MC and OMC spherical stages), evaluated in log
// space. c = ||x-y|| / (sqrt(2) sigma); L is the free radial constant.
BoundParts error_bound_mc_parts(int d, int M_R, int M_S, double c, double L);
BoundParts error_bound_omc_parts(int d, int M_R, int M_S, double c, double L);
double error_bound_mc(int d, int M_R, int M_S, double c, double L);
double error_bound_omc(int d, int M_R, int M_S, double c, double L);

// (factor / M_S) * sum_{k >= k_min} N(d,k) lambda_k(beta)^2, truncated once
// the lambda decay envelope certifies the remaining mass below 1e-12 of the
// partial sum. k_min = 2 with factor 1 (MC) or k_min = 4 with factor 3 (OMC).
double mc_error_series(int d, double beta, int M_S, int k_min, double factor);

struct MseResult {
    double mean_sq_error = 0.0;
    double standard_error = 0.0;
};

// Empirical E|kappa - kappa_hat|^2 over freshly built maps, one stream id
// per replication; reduction order is fixed so results are independent of
// the parallel schedule.
MseResult replicate_mse(const std::function<ProductFeatureMap(RngSeed)>& map_builder,
                        std::span<const double> x, std::span<const double> y,
                        int replications, RngSeed seed);

// Spherical stage in isolation: error of the spherical rule on the plane
// wave of frequency beta against the exact sphere average.
MseResult spherical_stage_mse(int d, double beta, int M_S, SphereKind kind,
                              int replications, RngSeed seed);

// Deterministic pairwise sum (used for schedule-independent reductions).
double pairwise_sum(std::span<const double> xs);

}  // namespace srff
