#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace srff {

struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Gauss-Kronrod 15(7) nodes and weights (positive half; node 0 first).
inline constexpr double gk_x[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
inline constexpr double gk_wk[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
// Gauss weights attach to nodes 0, 2, 4, 6 of the table above.
inline constexpr double gk_wg[4] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870};

template <class F>
void gk15(const F& f, double a, double b, double& value, double& err) {
    const double mid = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(mid);
    double k = gk_wk[0] * f0;
    double g = gk_wg[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * gk_x[i];
        const double fi = f(mid + dx) + f(mid - dx);
        k += gk_wk[i] * fi;
        if (i % 2 == 0) g += gk_wg[i / 2] * fi;
    }
    value = k * h;
    err = std::abs((k - g) * h);
}

}  // namespace detail

// Adaptive 1-D quadrature to an absolute tolerance. Bisects the worst
// interval first via a simple stack; throws convergence_error if the
// interval budget is exhausted before the local error test is met.
template <class F>
double integrate(const F& f, double a, double b, double abs_tol, int max_intervals = 4000) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate: abs_tol must be > 0");
    struct Seg {
        double a, b;
    };
    std::vector<Seg> stack{{a, b}};
    const double span = std::abs(b - a);
    double total = 0.0;
    int used = 1;
    while (!stack.empty()) {
        const Seg s = stack.back();
        stack.pop_back();
        double v, e;
        detail::gk15(f, s.a, s.b, v, e);
        // The second clause is the roundoff floor: once the estimate is at
        // the rounding level of the segment value, refinement cannot help.
        if (e <= abs_tol * std::abs(s.b - s.a) / span || e <= 100.0 * 2.220446049250313e-16 * std::abs(v) ||
            e <= 1e-300) {
            total += v;
            continue;
        }
        if (used + 2 > max_intervals)
            throw convergence_error("integrate: interval budget exhausted before reaching tolerance");
        const double m = 0.5 * (s.a + s.b);
        stack.push_back({s.a, m});
        stack.push_back({m, s.b});
        used += 2;
    }
    return total;
}

}  // namespace srff
