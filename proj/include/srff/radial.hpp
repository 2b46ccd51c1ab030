#pragma once

#include <vector>

namespace srff {

// Gaussian kernel exp(-||x-y||^2 / (2 sigma^2)) on R^d.
struct KernelSpec {
    int d;
    double sigma;
};

// Generalized Gauss-Laguerre rule for the Gamma(d/2,1) radial density:
// nodes xi ascending, weights a summing to 1.
struct RadialRule {
    int order = 0;
    std::vector<double> xi;
    std::vector<double> a;
    double alpha = 0.0;
    int d = 0;
};

// Build the M_R-point rule by eigendecomposition of the Jacobi matrix
// (Golub-Welsch); the tridiagonal solver is implemented in-module.
RadialRule gauss_laguerre(int d, int M_R);

// Transformed radii r_i = sqrt(2 xi_i) / sigma.
std::vector<double> radii(const RadialRule& rule, const KernelSpec& spec);

// Sphere average of the cosine wave as a function of the radial variable:
// sum of beta_n xi^n with certified truncation. c2 = ||x-y||^2/(2 sigma^2).
double f_bar(int d, double c2, double xi, double tol = 1e-15);

// Signed radial quadrature error: exp(-c^2) - sum_i a_i f_bar(xi_i), where
// the reference integral is the kernel value itself.
double radial_quadrature_error(const RadialRule& rule, const KernelSpec& spec, double dist);

namespace detail {

// Implicit-shift QL for a symmetric tridiagonal matrix, accumulating only
// the first row of the eigenvector matrix (all Golub-Welsch needs).
// diag/off are destroyed; on return diag holds eigenvalues (unsorted) and
// first_row the matching first components.
void tridiag_ql(std::vector<double>& diag, std::vector<double>& off,
                std::vector<double>& first_row);

}  // namespace detail

}  // namespace srff
