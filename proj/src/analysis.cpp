#include "srff/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "srff/orthopoly.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace srff {

double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double rel_frobenius(const Matrix& K, const Matrix& K_hat) {
    require_same_shape(K, K_hat, "rel_frobenius");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < K.data.size(); ++i) {
        const double diff = K.data[i] - K_hat.data[i];
        num += diff * diff;
        den += K.data[i] * K.data[i];
    }
    if (den == 0.0) throw std::invalid_argument("rel_frobenius: ||K||_F is zero");
    return std::sqrt(num / den);
}

double default_ridge(const Matrix& K) {
    if (K.rows == 0) return 0.0;
    double tr = 0.0;
    for (std::size_t i = 0; i < K.rows; ++i) tr += K(i, i);
    return 1e-8 * tr / static_cast<double>(K.rows);
}

double spectral_deviation(const Matrix& K, const Matrix& K_hat, double ridge) {
    require_same_shape(K, K_hat, "spectral_deviation");
    if (K.rows != K.cols) throw std::invalid_argument("spectral_deviation: K must be square");
    if (ridge < 0.0) throw std::invalid_argument("spectral_deviation: ridge must be >= 0");
    const auto n = static_cast<Eigen::Index>(K.rows);
    Eigen::MatrixXd A(n, n), B(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            A(i, j) = K(i, j);
            B(i, j) = K_hat(i, j);
        }
    A.diagonal().array() += ridge;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spectral_deviation: eigendecomposition failed");
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig <= 0.0)
        throw std::runtime_error(
            "spectral_deviation: K + ridge*I is not positive definite; increase ridge");
    Eigen::MatrixXd W =
        es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
        es.eigenvectors().transpose();
    Eigen::MatrixXd D = W * B * W;
    D.diagonal().array() -= 1.0;
    D = 0.5 * (D + D.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(D);
    if (es2.info() != Eigen::Success)
        throw std::runtime_error("spectral_deviation: eigendecomposition failed");
    return es2.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

double exp_or_inf(double logv) {
    if (logv > 709.0) return std::numeric_limits<double>::infinity();
    return std::exp(logv);
}

BoundParts bound_parts(int d, int M_R, int M_S, double c, double L, bool omc) {
    if (M_R < 1 || M_S < 1) throw std::invalid_argument("bound: M_R, M_S must be >= 1");
    if (c < 0.0 || !(L > 0.0)) throw std::invalid_argument("bound: need c >= 0 and L > 0");
    BoundParts parts;
    if (c == 0.0) return parts;
    const double log_c2 = 2.0 * std::log(c);
    const double m = 2.0 * M_R - 1.0;
    const double log_radial = std::log(2.0 * L) + log_c2 - 0.5 * std::lgamma(d / 2.0) +
                              m * (log_c2 - std::log(m));
    const double log_ratio = std::log(4.0 * M_R + d) - std::log(d - 1.0);
    const double exponent = 4.0 * (4.0 * M_R + d) * c * c / (d - 1.0);
    double log_sph;
    if (omc) {
        log_sph = std::log(4.0 / M_S) + 4.0 * log_ratio + 8.0 * std::log(c) + exponent;
    } else {
        log_sph = std::log(16.0 / M_S) + 2.0 * log_ratio + 4.0 * std::log(c) + exponent;
    }
    parts.radial = exp_or_inf(log_radial);
    parts.spherical = exp_or_inf(log_sph);
    parts.total = parts.radial + parts.spherical;
    return parts;
}

}  // namespace

BoundParts error_bound_mc_parts(int d, int M_R, int M_S, double c, double L) {
    return bound_parts(d, M_R, M_S, c, L, false);
}
BoundParts error_bound_omc_parts(int d, int M_R, int M_S, double c, double L) {
    return bound_parts(d, M_R, M_S, c, L, true);
}
double error_bound_mc(int d, int M_R, int M_S, double c, double L) {
    return error_bound_mc_parts(d, M_R, M_S, c, L).total;
}
double error_bound_omc(int d, int M_R, int M_S, double c, double L) {
    return error_bound_omc_parts(d, M_R, M_S, c, L).total;
}

double mc_error_series(int d, double beta, int M_S, int k_min, double factor) {
    if (d < 2) throw std::invalid_argument("mc_error_series: d must be >= 2");
    if (beta < 0.0) throw std::invalid_argument("mc_error_series: beta must be >= 0");
    if (M_S < 1) throw std::invalid_argument("mc_error_series: M_S must be >= 1");
    if (k_min < 2) throw std::invalid_argument("mc_error_series: k_min must be >= 2");
    if (beta == 0.0) return 0.0;
    const double x = beta * beta / (d - 1.0);
    double sum = 0.0;
    int k = k_min % 2 == 0 ? k_min : k_min + 1;  // odd terms vanish
    for (; k <= 600; k += 2) {
        const double lk = lambda_k(d, beta, k, 1e-14);
        sum += std::exp(harmonic_dim_log(d, k)) * lk * lk;
        // N(d,j) lambda_j^2 <= x^j / j! for j >= 2; the exponential tail
        // bound then certifies the dropped mass.
        const double log_tail = (k + 1.0) * std::log(x) - std::lgamma(k + 2.0) + x;
        if (sum > 0.0 && log_tail < std::log(sum) + std::log(1e-12)) break;
    }
    return factor / M_S * sum;
}

namespace {

MseResult reduce_mse(std::vector<double>& sq) {
    const int n = static_cast<int>(sq.size());
    const bool all_equal = std::all_of(sq.begin(), sq.end(), [&](double v) { return v == sq[0]; });
    if (all_equal) return MseResult{sq[0], 0.0};
    const double mean = pairwise_sum(sq) / n;
    std::vector<double> dev(sq.size());
    for (int i = 0; i < n; ++i) {
        const double d = sq[i] - mean;
        dev[i] = d * d;
    }
    const double var = pairwise_sum(dev) / (n - 1.0);
    return MseResult{mean, std::sqrt(var / n)};
}

}  // namespace

MseResult replicate_mse(const std::function<ProductFeatureMap(RngSeed)>& map_builder,
                        std::span<const double> x, std::span<const double> y, int replications,
                        RngSeed seed) {
    if (replications < 100)
        throw std::invalid_argument("replicate_mse: need at least 100 replications");
    std::vector<double> sq(replications);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (int r = 0; r < replications; ++r) {
        const ProductFeatureMap map = map_builder(seed.with_stream(seed.stream_id + r));
        const double exact = gaussian_kernel(map.spec, x, y);
        const double err = exact - kappa_hat(map, x, y);
        sq[r] = err * err;
    }
    return reduce_mse(sq);
}

MseResult spherical_stage_mse(int d, double beta, int M_S, SphereKind kind, int replications,
                              RngSeed seed) {
    if (replications < 100)
        throw std::invalid_argument("spherical_stage_mse: need at least 100 replications");
    // The sphere-average reference; by rotation invariance the direction can
    // be pinned to e_1.
    const double exact = lambda_k(d, beta, 0, 1e-14);
    std::vector<double> sq(replications);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (int r = 0; r < replications; ++r) {
        const RngSeed s = seed.with_stream(seed.stream_id + r);
        SphericalRule rule;
        switch (kind) {
            case SphereKind::MC: rule = sample_sphere_mc(d, M_S, s); break;
            case SphereKind::OMC: rule = sample_sphere_omc(d, M_S, s); break;
            case SphereKind::SOMC: rule = sample_sphere_somc(d, M_S, s); break;
            case SphereKind::OKQ:
                throw std::invalid_argument("spherical_stage_mse: build OKQ rules explicitly");
        }
        double est = 0.0;
        for (int j = 0; j < M_S; ++j) est += rule.b[j] * std::cos(beta * rule.theta(j, 0));
        const double err = exact - est;
        sq[r] = err * err;
    }
    return reduce_mse(sq);
}

}  // namespace srff
