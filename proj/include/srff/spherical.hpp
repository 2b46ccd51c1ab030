#pragma once

#include <string>
#include <vector>

#include "srff/matrix.hpp"
#include "srff/rng.hpp"

namespace srff {

enum class SphereKind { MC, OMC, SOMC, OKQ };

// Quadrature rule on S^{d-1}: unit nodes (rows of theta) with weights b.
// MC/OMC/SOMC carry uniform weights 1/M_S; OKQ reweighting may produce
// signed weights and records the base kind and sphere-kernel bandwidth.
struct SphericalRule {
    int d = 0;
    int M_S = 0;
    Matrix theta;            // M_S x d
    std::vector<double> b;   // M_S
    SphereKind kind = SphereKind::MC;
    SphereKind okq_base = SphereKind::MC;
    double okq_bandwidth = 0.0;
};

std::string to_string(SphereKind k);

// i.i.d. uniform nodes (normalized Gaussians), weights 1/M_S.
SphericalRule sample_sphere_mc(int d, int M_S, RngSeed seed);

// One Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
// R-diagonal sign correction. Returned d x d, columns orthonormal.
Matrix sample_haar_orthogonal(int d, RngStream& rng);
Matrix sample_haar_orthogonal(int d, RngSeed seed);

// Columns of M_S/d concatenated independent Haar matrices (M_S must be a
// multiple of d); SOMC interleaves each block with its negation (multiple
// of 2d).
SphericalRule sample_sphere_omc(int d, int M_S, RngSeed seed);
SphericalRule sample_sphere_somc(int d, int M_S, RngSeed seed);

// Constant value of the embedding mu(theta) = integral of the sphere
// Gaussian kernel against the uniform measure (Hecke-Funk k=0 route).
double okq_embedding_constant(int d, double sphere_bandwidth);

// Reweight an existing rule with the worst-case-optimal weights
// w = (K_S + jitter I)^{-1} mu 1 for the Gaussian kernel on the sphere.
// jitter < 0 selects the default 1e-10 * M_S.
SphericalRule okq_weights(const SphericalRule& rule, double sphere_bandwidth,
                          double jitter = -1.0);

}  // namespace srff
