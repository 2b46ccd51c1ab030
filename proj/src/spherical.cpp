#include "srff/spherical.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "srff/integrate.hpp"

namespace srff {

std::string to_string(SphereKind k) {
    switch (k) {
        case SphereKind::MC: return "mc";
        case SphereKind::OMC: return "omc";
        case SphereKind::SOMC: return "somc";
        case SphereKind::OKQ: return "okq";
    }
    return "?";
}

SphericalRule sample_sphere_mc(int d, int M_S, RngSeed seed) {
    if (d < 2) throw std::invalid_argument("sample_sphere_mc: d must be >= 2");
    if (M_S < 1) throw std::invalid_argument("sample_sphere_mc: M_S must be >= 1");
    SphericalRule rule;
    rule.d = d;
    rule.M_S = M_S;
    rule.kind = SphereKind::MC;
    rule.theta = Matrix(M_S, d);
    rule.b.assign(M_S, 1.0 / M_S);
    RngStream rng(seed);
    for (int j = 0; j < M_S; ++j) {
        double norm2;
        do {
            norm2 = 0.0;
            for (int i = 0; i < d; ++i) {
                const double g = rng.normal();
                rule.theta(j, i) = g;
                norm2 += g * g;
            }
        } while (norm2 < 1e-280);
        const double inv = 1.0 / std::sqrt(norm2);
        for (int i = 0; i < d; ++i) rule.theta(j, i) *= inv;
    }
    return rule;
}

Matrix sample_haar_orthogonal(int d, RngStream& rng) {
    if (d < 2) throw std::invalid_argument("sample_haar_orthogonal: d must be >= 2");
    Eigen::MatrixXd G(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) G(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
    // Plain QR of a Gaussian matrix is not Haar; flipping columns by the
    // signs of R's diagonal fixes the distribution.
    const Eigen::MatrixXd& QR = qr.matrixQR();
    for (int j = 0; j < d; ++j)
        if (QR(j, j) < 0.0) Q.col(j) = -Q.col(j);
    Matrix out(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out(i, j) = Q(i, j);
    return out;
}

Matrix sample_haar_orthogonal(int d, RngSeed seed) {
    RngStream rng(seed);
    return sample_haar_orthogonal(d, rng);
}

SphericalRule sample_sphere_omc(int d, int M_S, RngSeed seed) {
    if (d < 2) throw std::invalid_argument("sample_sphere_omc: d must be >= 2");
    if (M_S < 1 || M_S % d != 0)
        throw std::invalid_argument("sample_sphere_omc: M_S must be a positive multiple of d = " +
                                    std::to_string(d));
    SphericalRule rule;
    rule.d = d;
    rule.M_S = M_S;
    rule.kind = SphereKind::OMC;
    rule.theta = Matrix(M_S, d);
    rule.b.assign(M_S, 1.0 / M_S);
    RngStream rng(seed);
    for (int blk = 0; blk < M_S / d; ++blk) {
        const Matrix B = sample_haar_orthogonal(d, rng);
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < d; ++i) rule.theta(blk * d + j, i) = B(i, j);
    }
    return rule;
}

SphericalRule sample_sphere_somc(int d, int M_S, RngSeed seed) {
    if (d < 2) throw std::invalid_argument("sample_sphere_somc: d must be >= 2");
    if (M_S < 1 || M_S % (2 * d) != 0)
        throw std::invalid_argument(
            "sample_sphere_somc: M_S must be a positive multiple of 2d = " +
            std::to_string(2 * d));
    SphericalRule rule;
    rule.d = d;
    rule.M_S = M_S;
    rule.kind = SphereKind::SOMC;
    rule.theta = Matrix(M_S, d);
    rule.b.assign(M_S, 1.0 / M_S);
    RngStream rng(seed);
    for (int blk = 0; blk < M_S / (2 * d); ++blk) {
        const Matrix B = sample_haar_orthogonal(d, rng);
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < d; ++i) {
                const double v = B(i, j);
                rule.theta(blk * 2 * d + j, i) = v;
                rule.theta(blk * 2 * d + d + j, i) = -v;
            }
    }
    return rule;
}

double okq_embedding_constant(int d, double sphere_bandwidth) {
    if (!(sphere_bandwidth > 0.0))
        throw std::invalid_argument("okq_embedding_constant: bandwidth must be > 0");
    // mu is constant by rotation invariance; its value is the k=0 projection
    // integral of exp(-(1-t)/bw^2), under the same cos substitution used for
    // the lambda coefficients.
    const double bw2 = sphere_bandwidth * sphere_bandwidth;
    const double coeff = std::exp(std::lgamma(d / 2.0) - std::lgamma((d - 1.0) / 2.0)) /
                         std::sqrt(std::acos(-1.0));
    const double pi = std::acos(-1.0);
    const auto f = [&](double phi) {
        return std::exp(-(1.0 - std::cos(phi)) / bw2) * std::pow(std::sin(phi), d - 2.0);
    };
    return coeff * integrate(f, 0.0, pi, 1e-12 / std::max(coeff, 1.0));
}

SphericalRule okq_weights(const SphericalRule& rule, double sphere_bandwidth, double jitter) {
    if (!(sphere_bandwidth > 0.0))
        throw std::invalid_argument("okq_weights: bandwidth must be > 0");
    const int M = rule.M_S;
    if (jitter < 0.0) jitter = 1e-10 * M;
    const double mu = okq_embedding_constant(rule.d, sphere_bandwidth);
    const double inv2bw2 = 1.0 / (2.0 * sphere_bandwidth * sphere_bandwidth);

    Eigen::MatrixXd K(M, M);
    for (int i = 0; i < M; ++i) {
        K(i, i) = 1.0 + jitter;
        for (int j = i + 1; j < M; ++j) {
            double sq = 0.0;
            for (int c = 0; c < rule.d; ++c) {
                const double diff = rule.theta(i, c) - rule.theta(j, c);
                sq += diff * diff;
            }
            K(i, j) = K(j, i) = std::exp(-sq * inv2bw2);
        }
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(K);
    Eigen::VectorXd w;
    if (ldlt.info() == Eigen::Success) w = ldlt.solve(Eigen::VectorXd::Constant(M, mu));
    if (ldlt.info() != Eigen::Success || !w.allFinite())
        throw std::runtime_error(
            "okq_weights: sphere Gram solve failed; increase jitter or use distinct nodes");

    SphericalRule out = rule;
    out.kind = SphereKind::OKQ;
    out.okq_base = rule.kind;
    out.okq_bandwidth = sphere_bandwidth;
    for (int i = 0; i < M; ++i) out.b[i] = w(i);
    return out;
}

}  // namespace srff
