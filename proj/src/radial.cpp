#include "srff/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "srff/integrate.hpp"

namespace srff {
namespace detail {

void tridiag_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    e.resize(n, 0.0);
    e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw convergence_error("tridiag_ql: QL iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    // Rotations act on columns; the first row evolves on its own.
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace detail

RadialRule gauss_laguerre(int d, int M_R) {
    if (d < 2) throw std::invalid_argument("gauss_laguerre: d must be >= 2");
    if (M_R < 1) throw std::invalid_argument("gauss_laguerre: M_R must be >= 1");
    const double alpha = d / 2.0 - 1.0;
    std::vector<double> diag(M_R), off(M_R, 0.0), z(M_R, 0.0);
    for (int i = 1; i <= M_R; ++i) diag[i - 1] = 2.0 * i - 1.0 + alpha;
    for (int i = 1; i < M_R; ++i) off[i - 1] = std::sqrt(i * (i + alpha));
    z[0] = 1.0;
    detail::tridiag_ql(diag, off, z);

    std::vector<int> order(M_R);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return diag[a] < diag[b]; });

    RadialRule rule;
    rule.order = M_R;
    rule.alpha = alpha;
    rule.d = d;
    rule.xi.resize(M_R);
    rule.a.resize(M_R);
    double wsum = 0.0;
    for (int i = 0; i < M_R; ++i) {
        rule.xi[i] = diag[order[i]];
        rule.a[i] = z[order[i]] * z[order[i]];
        wsum += rule.a[i];
    }
    // The zeroth moment of the density is 1; renormalizing absorbs rounding.
    for (double& w : rule.a) w /= wsum;
    return rule;
}

std::vector<double> radii(const RadialRule& rule, const KernelSpec& spec) {
    if (rule.d != spec.d) throw std::invalid_argument("radii: rule and spec dimension mismatch");
    if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma))
        throw std::invalid_argument("radii: sigma must be positive and finite");
    std::vector<double> r(rule.xi.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::sqrt(2.0 * rule.xi[i]) / spec.sigma;
    return r;
}

double f_bar(int d, double c2, double xi, double tol) {
    if (d < 2) throw std::domain_error("f_bar: d must be >= 2");
    if (c2 < 0.0 || xi < 0.0) throw std::domain_error("f_bar: c2 and xi must be >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("f_bar: tol must be > 0");
    const double x = c2 * xi;
    if (x == 0.0) return 1.0;
    const double hd = d / 2.0;
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 100000; ++n) {
        term *= -x / ((n + 1.0) * (hd + n));
        sum += term;
        // Ratios decrease monotonically; once below 1 the geometric majorant
        // certifies the remaining tail.
        const double ratio = x / ((n + 2.0) * (hd + n + 1.0));
        if (ratio < 1.0 && std::abs(term) * ratio / (1.0 - ratio) < tol) break;
    }
    return std::clamp(sum, -1.0, 1.0);
}

double radial_quadrature_error(const RadialRule& rule, const KernelSpec& spec, double dist) {
    if (!(dist >= 0.0) || !std::isfinite(dist))
        throw std::domain_error("radial_quadrature_error: dist must be finite and >= 0");
    if (dist == 0.0) return 0.0;  // f_bar == 1 and the weights sum to 1
    const double c2 = dist * dist / (2.0 * spec.sigma * spec.sigma);
    const double reference = std::exp(-c2);  // the kernel value itself
    double quad = 0.0;
    for (std::size_t i = 0; i < rule.xi.size(); ++i)
        quad += rule.a[i] * f_bar(rule.d, c2, rule.xi[i], 1e-16);
    return reference - quad;
}

}  // namespace srff
