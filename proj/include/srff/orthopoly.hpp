#pragma once

#include <cstdint>
#include <vector>

namespace srff {

// Laguerre order and ambient dimension, tied by alpha = d/2 - 1.
struct PolyParams {
    double alpha;
    int d;

    static PolyParams for_dimension(int d);
};

// Coefficients of a series expansion (beta_n or lambda_k), with a certified
// bound on the part that was dropped.
struct SeriesCoeffs {
    std::vector<double> values;  // index 0..truncation_index
    int truncation_index = 0;
    double tail_bound = 0.0;
};

// Normalized generalized Laguerre polynomial ell_m^alpha(x): the family
// orthonormal under the Gamma(alpha+1,1) density, evaluated by the
// three-term recurrence. ell_0 = 1.
double laguerre_normalized(int m, double alpha, double x);

// Gegenbauer polynomial P_k(t) normalized so P_k(1) = 1, for the sphere
// S^{d-1}. |P_k(t)| <= 1 on [-1,1].
double gegenbauer(int k, int d, double t);

// Dimension N(d,k) of the space of degree-k spherical harmonics on S^{d-1}.
// Exact integer; throws std::overflow_error when it exceeds int64 range.
std::int64_t harmonic_dim(int d, int k);

// log N(d,k), for series work where N itself overflows.
double harmonic_dim_log(int d, int k);

// Gamma(d/2) / (sqrt(pi) Gamma((d-1)/2)): the ratio that turns the
// one-dimensional projection integral into a sphere average.
double sphere_projection_coeff(int d);

// Taylor coefficients beta_n of the sphere average of the cosine wave, as a
// function of xi. c2 = ||x-y||^2 / (2 sigma^2).
SeriesCoeffs beta_coeffs(int d, double c2, int n_max);

// Gegenbauer coefficients lambda_k of t -> cos(beta t) on S^{d-1}, computed
// by adaptive quadrature of the one-dimensional projection integral to
// absolute tolerance tol. Odd-k entries are exactly 0 by parity.
SeriesCoeffs lambda_coeffs(int d, double beta, int k_max, double tol);

// Single lambda_k (same definition as lambda_coeffs).
double lambda_k(int d, double beta, int k, double tol);

// log of the decay envelope for |lambda_k|:
// Gamma((d-1)/2)/Gamma(k+(d-1)/2) * (beta/2)^k, evaluated in log space.
double lambda_bound_log(int d, double beta, int k);

}  // namespace srff
