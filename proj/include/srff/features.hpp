#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srff/matrix.hpp"
#include "srff/radial.hpp"
#include "srff/rng.hpp"
#include "srff/spherical.hpp"

namespace srff {

enum class Method {
    SR_MC,
    SR_OMC,
    SR_SOMC,
    SR_OKQ_MC,
    SR_OKQ_OMC,
    SR_OKQ_SOMC,
    RFF,
    ORF,
    QMC_HALTON,
};

std::string to_string(Method m);
Method method_from_string(const std::string& s);
bool method_is_sr(Method m);
bool method_is_okq(Method m);

struct Dataset {
    Matrix X;
    std::vector<double> labels;  // optional, ignored by the core

    std::size_t n() const { return X.rows; }
    std::size_t d() const { return X.cols; }
};

// Frequency/weight pairs realizing the approximate kernel
// kappa_hat(x,y) = sum_m w_m cos(<n_m, x-y>).
struct ProductFeatureMap {
    KernelSpec spec{0, 1.0};
    Matrix freqs;            // M x d
    std::vector<double> w;   // M
    Method method = Method::RFF;
    int M_R = 0;             // 0 for baselines
    int M_S = 0;

    std::size_t M() const { return freqs.rows; }
    double weight_sum() const;
    bool has_negative_weight() const;
};

struct OkqParams {
    double bandwidth = 1.0;
    double jitter = -1.0;  // <0: default 1e-10*M_S
};

// Tensor product of the Gauss-Laguerre radial rule with the requested
// spherical rule: frequency (i,j) = r_i theta_j, weight a_i b_j.
ProductFeatureMap build_sr(const KernelSpec& spec, int M_R, int M_S, SphereKind kind,
                           const std::optional<OkqParams>& okq, RngSeed seed);

// Baselines. RFF: i.i.d. N(0, I/sigma^2). ORF: concatenated Haar blocks with
// per-column chi_d radii (M multiple of d). QMC: Halton points through the
// inverse normal CDF, deterministic.
ProductFeatureMap build_rff(const KernelSpec& spec, int M, RngSeed seed);
ProductFeatureMap build_orf(const KernelSpec& spec, int M, RngSeed seed);
ProductFeatureMap build_qmc_halton(const KernelSpec& spec, int M);

// Dispatch on method; okq/seed ignored where not applicable.
ProductFeatureMap build_map(Method method, const KernelSpec& spec, int M_R, int M_S,
                            int M_total, const std::optional<OkqParams>& okq, RngSeed seed);

double kappa_hat(const ProductFeatureMap& map, std::span<const double> x,
                 std::span<const double> y);

double gaussian_kernel(const KernelSpec& spec, std::span<const double> x,
                       std::span<const double> y);

// n x 2M expansion [sqrt(w_m) cos<n_m,x>, sqrt(w_m) sin<n_m,x>]_m, so that
// Phi Phi^T reproduces gram_hat entrywise. Rejects signed-weight maps.
Matrix feature_matrix(const ProductFeatureMap& map, const Dataset& data);
Matrix feature_matrix_serial(const ProductFeatureMap& map, const Dataset& data);

Matrix gram_exact(const KernelSpec& spec, const Dataset& data);
Matrix gram_exact_serial(const KernelSpec& spec, const Dataset& data);

Matrix gram_hat(const ProductFeatureMap& map, const Dataset& data);
Matrix gram_hat_serial(const ProductFeatureMap& map, const Dataset& data);

// Inverse standard normal CDF (Halton -> Gaussian transform).
double inverse_normal_cdf(double p);

// Halton radical inverse in the given base, index >= 1.
double halton_radical_inverse(std::uint64_t index, std::uint64_t base);

}  // namespace srff
