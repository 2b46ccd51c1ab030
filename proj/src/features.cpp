#include "srff/features.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace srff {

namespace {

constexpr std::uint64_t kPrimes[64] = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,
    59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109, 113, 127, 131,
    137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223,
    227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311};

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::SR_MC: return "sr-mc";
        case Method::SR_OMC: return "sr-omc";
        case Method::SR_SOMC: return "sr-somc";
        case Method::SR_OKQ_MC: return "sr-okq-mc";
        case Method::SR_OKQ_OMC: return "sr-okq-omc";
        case Method::SR_OKQ_SOMC: return "sr-okq-somc";
        case Method::RFF: return "rff";
        case Method::ORF: return "orf";
        case Method::QMC_HALTON: return "qmc-halton";
    }
    return "?";
}

Method method_from_string(const std::string& s) {
    if (s == "sr-mc") return Method::SR_MC;
    if (s == "sr-omc") return Method::SR_OMC;
    if (s == "sr-somc") return Method::SR_SOMC;
    if (s == "sr-okq-mc") return Method::SR_OKQ_MC;
    if (s == "sr-okq-omc") return Method::SR_OKQ_OMC;
    if (s == "sr-okq-somc") return Method::SR_OKQ_SOMC;
    if (s == "rff") return Method::RFF;
    if (s == "orf") return Method::ORF;
    if (s == "qmc" || s == "qmc-halton") return Method::QMC_HALTON;
    throw std::invalid_argument("unknown method '" + s + "'");
}

bool method_is_sr(Method m) {
    switch (m) {
        case Method::SR_MC:
        case Method::SR_OMC:
        case Method::SR_SOMC:
        case Method::SR_OKQ_MC:
        case Method::SR_OKQ_OMC:
        case Method::SR_OKQ_SOMC: return true;
        default: return false;
    }
}

bool method_is_okq(Method m) {
    return m == Method::SR_OKQ_MC || m == Method::SR_OKQ_OMC || m == Method::SR_OKQ_SOMC;
}

double ProductFeatureMap::weight_sum() const {
    double s = 0.0;
    for (double v : w) s += v;
    return s;
}

bool ProductFeatureMap::has_negative_weight() const {
    for (double v : w)
        if (v < 0.0) return true;
    return false;
}

ProductFeatureMap build_sr(const KernelSpec& spec, int M_R, int M_S, SphereKind kind,
                           const std::optional<OkqParams>& okq, RngSeed seed) {
    const RadialRule rr = gauss_laguerre(spec.d, M_R);
    const std::vector<double> r = radii(rr, spec);
    SphericalRule sr;
    switch (kind) {
        case SphereKind::MC: sr = sample_sphere_mc(spec.d, M_S, seed); break;
        case SphereKind::OMC: sr = sample_sphere_omc(spec.d, M_S, seed); break;
        case SphereKind::SOMC: sr = sample_sphere_somc(spec.d, M_S, seed); break;
        case SphereKind::OKQ:
            throw std::invalid_argument("build_sr: pass the base kind plus OkqParams");
    }
    if (okq) sr = okq_weights(sr, okq->bandwidth, okq->jitter);

    ProductFeatureMap map;
    map.spec = spec;
    map.M_R = M_R;
    map.M_S = M_S;
    map.freqs = Matrix(static_cast<std::size_t>(M_R) * M_S, spec.d);
    map.w.resize(static_cast<std::size_t>(M_R) * M_S);
    for (int i = 0; i < M_R; ++i)
        for (int j = 0; j < M_S; ++j) {
            const std::size_t row = static_cast<std::size_t>(i) * M_S + j;
            for (int c = 0; c < spec.d; ++c) map.freqs(row, c) = r[i] * sr.theta(j, c);
            map.w[row] = rr.a[i] * sr.b[j];
        }

    double bsum = 0.0;
    for (double b : sr.b) bsum += b;
    if (std::abs(map.weight_sum() - bsum) > 1e-12 * std::max(1.0, std::abs(bsum)))
        throw std::logic_error("build_sr: tensor weights do not renormalize to the spherical mass");

    if (okq) {
        map.method = kind == SphereKind::MC    ? Method::SR_OKQ_MC
                     : kind == SphereKind::OMC ? Method::SR_OKQ_OMC
                                               : Method::SR_OKQ_SOMC;
    } else {
        map.method = kind == SphereKind::MC    ? Method::SR_MC
                     : kind == SphereKind::OMC ? Method::SR_OMC
                                               : Method::SR_SOMC;
    }
    return map;
}

ProductFeatureMap build_rff(const KernelSpec& spec, int M, RngSeed seed) {
    if (M < 1) throw std::invalid_argument("build_rff: M must be >= 1");
    ProductFeatureMap map;
    map.spec = spec;
    map.method = Method::RFF;
    map.freqs = Matrix(M, spec.d);
    map.w.assign(M, 1.0 / M);
    RngStream rng(seed);
    const double inv_sigma = 1.0 / spec.sigma;
    for (int m = 0; m < M; ++m)
        for (int c = 0; c < spec.d; ++c) map.freqs(m, c) = rng.normal() * inv_sigma;
    return map;
}

ProductFeatureMap build_orf(const KernelSpec& spec, int M, RngSeed seed) {
    if (M < 1 || M % spec.d != 0)
        throw std::invalid_argument("build_orf: M must be a positive multiple of d = " +
                                    std::to_string(spec.d));
    ProductFeatureMap map;
    map.spec = spec;
    map.method = Method::ORF;
    map.freqs = Matrix(M, spec.d);
    map.w.assign(M, 1.0 / M);
    RngStream rng(seed);
    const int d = spec.d;
    for (int blk = 0; blk < M / d; ++blk) {
        const Matrix B = sample_haar_orthogonal(d, rng);
        for (int j = 0; j < d; ++j) {
            // Independent chi_d radius per column keeps every frequency
            // marginally Gaussian.
            double s = 0.0;
            for (int c = 0; c < d; ++c) {
                const double g = rng.normal();
                s += g * g;
            }
            const double scale = std::sqrt(s) / spec.sigma;
            for (int c = 0; c < d; ++c) map.freqs(blk * d + j, c) = scale * B(c, j);
        }
    }
    return map;
}

double halton_radical_inverse(std::uint64_t index, std::uint64_t base) {
    double result = 0.0;
    double inv = 1.0 / static_cast<double>(base);
    double scale = inv;
    while (index > 0) {
        result += static_cast<double>(index % base) * scale;
        index /= base;
        scale *= inv;
    }
    return result;
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inverse_normal_cdf: p must be in (0,1)");
    // Acklam's rational approximation, then one Halley step against erfc to
    // reach full double precision.
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double dd[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
    }
    const double sqrt2pi = 2.5066282746310002;
    for (int it = 0; it < 2; ++it) {
        const double e = 0.5 * std::erfc(-x / 1.4142135623730951) - p;
        const double u = e * sqrt2pi * std::exp(0.5 * x * x);
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

ProductFeatureMap build_qmc_halton(const KernelSpec& spec, int M) {
    if (M < 1) throw std::invalid_argument("build_qmc_halton: M must be >= 1");
    if (spec.d > 64)
        throw std::invalid_argument("build_qmc_halton: d exceeds the 64-prime table");
    ProductFeatureMap map;
    map.spec = spec;
    map.method = Method::QMC_HALTON;
    map.freqs = Matrix(M, spec.d);
    map.w.assign(M, 1.0 / M);
    const double inv_sigma = 1.0 / spec.sigma;
    for (int m = 0; m < M; ++m)
        for (int c = 0; c < spec.d; ++c) {
            // Index starts at 1 so the all-zero point is skipped.
            const double v = halton_radical_inverse(static_cast<std::uint64_t>(m) + 1, kPrimes[c]);
            map.freqs(m, c) = inverse_normal_cdf(v) * inv_sigma;
        }
    return map;
}

ProductFeatureMap build_map(Method method, const KernelSpec& spec, int M_R, int M_S, int M_total,
                            const std::optional<OkqParams>& okq, RngSeed seed) {
    const std::optional<OkqParams> effective_okq =
        method_is_okq(method) ? std::optional<OkqParams>(okq.value_or(OkqParams{})) : std::nullopt;
    switch (method) {
        case Method::SR_MC: return build_sr(spec, M_R, M_S, SphereKind::MC, std::nullopt, seed);
        case Method::SR_OMC: return build_sr(spec, M_R, M_S, SphereKind::OMC, std::nullopt, seed);
        case Method::SR_SOMC: return build_sr(spec, M_R, M_S, SphereKind::SOMC, std::nullopt, seed);
        case Method::SR_OKQ_MC: return build_sr(spec, M_R, M_S, SphereKind::MC, effective_okq, seed);
        case Method::SR_OKQ_OMC:
            return build_sr(spec, M_R, M_S, SphereKind::OMC, effective_okq, seed);
        case Method::SR_OKQ_SOMC:
            return build_sr(spec, M_R, M_S, SphereKind::SOMC, effective_okq, seed);
        case Method::RFF: return build_rff(spec, M_total, seed);
        case Method::ORF: return build_orf(spec, M_total, seed);
        case Method::QMC_HALTON: return build_qmc_halton(spec, M_total);
    }
    throw std::invalid_argument("build_map: unknown method");
}

double kappa_hat(const ProductFeatureMap& map, std::span<const double> x,
                 std::span<const double> y) {
    const std::size_t d = map.freqs.cols;
    if (x.size() != d || y.size() != d)
        throw std::invalid_argument("kappa_hat: dimension mismatch");
    double sum = 0.0;
    for (std::size_t m = 0; m < map.M(); ++m) {
        const double* f = map.freqs.row(m);
        double dot = 0.0;
        for (std::size_t c = 0; c < d; ++c) dot += f[c] * (x[c] - y[c]);
        sum += map.w[m] * std::cos(dot);
    }
    return sum;
}

double gaussian_kernel(const KernelSpec& spec, std::span<const double> x,
                       std::span<const double> y) {
    if (x.size() != y.size() || x.size() != static_cast<std::size_t>(spec.d))
        throw std::invalid_argument("gaussian_kernel: dimension mismatch");
    double sq = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) {
        const double diff = x[c] - y[c];
        sq += diff * diff;
    }
    return std::exp(-sq / (2.0 * spec.sigma * spec.sigma));
}

namespace {

// Projections P = X freqs^T; every downstream kernel reads this instead of
// touching the raw frequencies again.
Matrix projections(const ProductFeatureMap& map, const Dataset& data, bool parallel) {
    const std::size_t n = data.n(), d = data.d(), M = map.M();
    Matrix P(n, M);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const double* xi = data.X.row(i);
        for (std::size_t m = 0; m < M; ++m) {
            const double* f = map.freqs.row(m);
            double dot = 0.0;
            for (std::size_t c = 0; c < d; ++c) dot += f[c] * xi[c];
            P(i, m) = dot;
        }
    }
    return P;
}

Matrix gram_exact_impl(const KernelSpec& spec, const Dataset& data, bool parallel) {
    if (data.d() != static_cast<std::size_t>(spec.d))
        throw std::invalid_argument("gram_exact: dataset dimension mismatch");
    const std::size_t n = data.n();
    const double inv = 1.0 / (2.0 * spec.sigma * spec.sigma);
    Matrix K(n, n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        K(i, i) = 1.0;
        const double* xi = data.X.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* xj = data.X.row(j);
            double sq = 0.0;
            for (std::size_t c = 0; c < data.d(); ++c) {
                const double diff = xi[c] - xj[c];
                sq += diff * diff;
            }
            K(i, j) = std::exp(-sq * inv);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) K(j, i) = K(i, j);
    return K;
}

Matrix gram_hat_impl(const ProductFeatureMap& map, const Dataset& data, bool parallel) {
    if (data.d() != map.freqs.cols)
        throw std::invalid_argument("gram_hat: dataset dimension mismatch");
    const std::size_t n = data.n(), M = map.M();
    const Matrix P = projections(map, data, parallel);
    // kappa_hat(x_i,x_j) = sum_m w_m (cos P_im cos P_jm + sin P_im sin P_jm);
    // folding w into one factor turns every entry into two dot products.
    Matrix CW(n, M), C(n, M), SW(n, M), S(n, M);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        for (std::size_t m = 0; m < M; ++m) {
            const double cc = std::cos(P(i, m));
            const double ss = std::sin(P(i, m));
            C(i, m) = cc;
            S(i, m) = ss;
            CW(i, m) = map.w[m] * cc;
            SW(i, m) = map.w[m] * ss;
        }
    const double wsum = map.weight_sum();
    Matrix K(n, n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        K(i, i) = wsum;  // cos(0) path, exact
        const double* cwi = CW.row(i);
        const double* swi = SW.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* cj = C.row(j);
            const double* sj = S.row(j);
            double acc = 0.0;
            for (std::size_t m = 0; m < M; ++m) acc += cwi[m] * cj[m] + swi[m] * sj[m];
            K(i, j) = acc;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) K(j, i) = K(i, j);
    return K;
}

Matrix feature_matrix_impl(const ProductFeatureMap& map, const Dataset& data, bool parallel) {
    if (data.d() != map.freqs.cols)
        throw std::invalid_argument("feature_matrix: dataset dimension mismatch");
    if (map.has_negative_weight())
        throw std::invalid_argument(
            "feature_matrix: map has signed weights (no real square root); use gram_hat");
    const std::size_t n = data.n(), M = map.M();
    std::vector<double> sqw(M);
    for (std::size_t m = 0; m < M; ++m) sqw[m] = std::sqrt(map.w[m]);
    const Matrix P = projections(map, data, parallel);
    Matrix Phi(n, 2 * M);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        for (std::size_t m = 0; m < M; ++m) {
            Phi(i, 2 * m) = sqw[m] * std::cos(P(i, m));
            Phi(i, 2 * m + 1) = sqw[m] * std::sin(P(i, m));
        }
    return Phi;
}

}  // namespace

Matrix gram_exact(const KernelSpec& spec, const Dataset& data) {
    return gram_exact_impl(spec, data, true);
}
Matrix gram_exact_serial(const KernelSpec& spec, const Dataset& data) {
    return gram_exact_impl(spec, data, false);
}
Matrix gram_hat(const ProductFeatureMap& map, const Dataset& data) {
    return gram_hat_impl(map, data, true);
}
Matrix gram_hat_serial(const ProductFeatureMap& map, const Dataset& data) {
    return gram_hat_impl(map, data, false);
}
Matrix feature_matrix(const ProductFeatureMap& map, const Dataset& data) {
    return feature_matrix_impl(map, data, true);
}
Matrix feature_matrix_serial(const ProductFeatureMap& map, const Dataset& data) {
    return feature_matrix_impl(map, data, false);
}

}  // namespace srff
