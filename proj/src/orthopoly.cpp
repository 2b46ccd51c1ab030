#include "srff/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "srff/integrate.hpp"

namespace srff {

PolyParams PolyParams::for_dimension(int d) {
    if (d < 2) throw std::domain_error("PolyParams: d must be >= 2");
    return PolyParams{d / 2.0 - 1.0, d};
}

double laguerre_normalized(int m, double alpha, double x) {
    if (m < 0) throw std::domain_error("laguerre_normalized: m must be >= 0");
    if (alpha <= -1.0) throw std::domain_error("laguerre_normalized: alpha must be > -1");
    if (x < 0.0) throw std::domain_error("laguerre_normalized: x must be >= 0");
    double p0 = 1.0;
    if (m == 0) return p0;
    double p1 = (1.0 + alpha - x) / std::sqrt(1.0 + alpha);
    for (int n = 1; n < m; ++n) {
        const double p2 = ((2.0 * n + 1.0 + alpha - x) * p1 - std::sqrt(n * (n + alpha)) * p0) /
                          std::sqrt((n + 1.0) * (n + 1.0 + alpha));
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double gegenbauer(int k, int d, double t) {
    if (k < 0) throw std::domain_error("gegenbauer: k must be >= 0");
    if (d < 2) throw std::domain_error("gegenbauer: d must be >= 2");
    if (std::abs(t) > 1.0 + 1e-12) throw std::domain_error("gegenbauer: |t| > 1");
    t = std::clamp(t, -1.0, 1.0);
    if (k == 0) return 1.0;
    double p0 = 1.0, p1 = t;
    for (int n = 1; n < k; ++n) {
        const double p2 = ((2.0 * n + d - 2.0) * t * p1 - n * p0) / (n + d - 2.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double harmonic_dim_log(int d, int k) {
    if (d < 2) throw std::domain_error("harmonic_dim: d must be >= 2");
    if (k < 0) throw std::domain_error("harmonic_dim: k must be >= 0");
    if (k == 0) return 0.0;
    // N(d,k) = (2k+d-2)/k * C(k+d-3, d-2), binomial in log-gamma form.
    return std::log((2.0 * k + d - 2.0) / k) + std::lgamma(k + d - 2.0) -
           std::lgamma(d - 1.0) - std::lgamma(static_cast<double>(k));
}

std::int64_t harmonic_dim(int d, int k) {
    const double lg = harmonic_dim_log(d, k);
    if (lg > 62.0 * 0.6931471805599453)
        throw std::overflow_error("harmonic_dim: N(d,k) exceeds int64 range");
    return std::llround(std::exp(lg));
}

double sphere_projection_coeff(int d) {
    if (d < 2) throw std::domain_error("sphere_projection_coeff: d must be >= 2");
    return std::exp(std::lgamma(d / 2.0) - std::lgamma((d - 1.0) / 2.0)) /
           std::sqrt(std::acos(-1.0));
}

SeriesCoeffs beta_coeffs(int d, double c2, int n_max) {
    if (d < 2) throw std::domain_error("beta_coeffs: d must be >= 2");
    if (c2 < 0.0) throw std::domain_error("beta_coeffs: c2 must be >= 0");
    if (n_max < 0) throw std::invalid_argument("beta_coeffs: n_max must be >= 0");
    const double hd = d / 2.0;
    SeriesCoeffs out;
    out.values.resize(static_cast<std::size_t>(n_max) + 1);
    out.truncation_index = n_max;
    if (c2 == 0.0) {
        out.values[0] = 1.0;
        out.tail_bound = 0.0;
        return out;
    }
    const double lgh = std::lgamma(hd);
    for (int n = 0; n <= n_max; ++n) {
        const double lv = n * std::log(c2) + lgh - std::lgamma(n + 1.0) - std::lgamma(hd + n);
        out.values[n] = (n % 2 == 0 ? 1.0 : -1.0) * std::exp(lv);
    }
    // Successive coefficient ratios decrease, so once below 1 the geometric
    // majorant certifies the dropped tail.
    const double r = c2 / ((n_max + 1.0) * (hd + n_max));
    out.tail_bound = r < 1.0 ? std::abs(out.values[n_max]) * r / (1.0 - r)
                             : std::numeric_limits<double>::infinity();
    return out;
}

double lambda_k(int d, double beta, int k, double tol) {
    if (d < 2) throw std::domain_error("lambda_k: d must be >= 2");
    if (beta < 0.0) throw std::domain_error("lambda_k: beta must be >= 0");
    if (k < 0) throw std::domain_error("lambda_k: k must be >= 0");
    if (k % 2 == 1) return 0.0;  // parity is exact
    if (beta == 0.0) return k == 0 ? 1.0 : 0.0;
    // t = cos(phi) turns the weight (1-t^2)^((d-3)/2) into sin(phi)^(d-2),
    // removing the d=2 endpoint singularity (and endpoint derivative kinks
    // for all even d).
    const double coeff = sphere_projection_coeff(d);
    const double pi = std::acos(-1.0);
    const auto f = [&](double phi) {
        const double t = std::cos(phi);
        return std::cos(beta * t) * gegenbauer(k, d, t) * std::pow(std::sin(phi), d - 2.0);
    };
    return coeff * integrate(f, 0.0, pi, tol / std::max(coeff, 1.0));
}

SeriesCoeffs lambda_coeffs(int d, double beta, int k_max, double tol) {
    if (k_max < 0) throw std::invalid_argument("lambda_coeffs: k_max must be >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("lambda_coeffs: tol must be > 0");
    SeriesCoeffs out;
    out.values.resize(static_cast<std::size_t>(k_max) + 1, 0.0);
    out.truncation_index = k_max;
    for (int k = 0; k <= k_max; k += 2) out.values[k] = lambda_k(d, beta, k, tol);
    // Dropped mass, from the decay envelope: sum_{k > k_max} of the bound.
    double tail = 0.0;
    for (int k = k_max + 1; k < k_max + 200; ++k) {
        const double lb = lambda_bound_log(d, beta, k);
        const double term = std::exp(lb);
        tail += term;
        if (term < 1e-18 * std::max(tail, 1e-300)) break;
    }
    out.tail_bound = tail;
    return out;
}

double lambda_bound_log(int d, double beta, int k) {
    if (k == 0) return std::lgamma((d - 1.0) / 2.0) - std::lgamma((d - 1.0) / 2.0);
    if (beta == 0.0) return -std::numeric_limits<double>::infinity();
    return std::lgamma((d - 1.0) / 2.0) - std::lgamma(k + (d - 1.0) / 2.0) +
           k * std::log(beta / 2.0);
}

}  // namespace srff
