#include "srff/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "srff/analysis.hpp"
#include "srff/commands.hpp"
#include "srff/dataset_io.hpp"
#include "srff/features.hpp"
#include "srff/orthopoly.hpp"
#include "srff/radial.hpp"

namespace srff::acceptance {

namespace {

// Reference series values fixed beforehand by an independent high-precision
// integration of the projection coefficients (sum_{k>=k_min} N(d,k) lambda_k^2
// at beta = 1).
constexpr double kSeriesD3K2 = 0.01925093843284923;
constexpr double kSeriesD4K4 = 6.2383347575954457e-6;
constexpr double kSeriesD8K4 = 1.528914015916789e-6;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

CheckResult check_1_quadrature_exactness() {
    CheckResult res{1, "quadrature exactness, node bound, weight normalization", true, 5.0, 0.0, {}};
    std::ostringstream det;
    for (int d : {2, 4, 8, 16, 32, 784}) {
        for (int M = 1; M <= 10; ++M) {
            const RadialRule rule = gauss_laguerre(d, M);
            double wsum = 0.0;
            for (double a : rule.a) wsum += a;
            if (std::abs(wsum - 1.0) > 1e-12) {
                res.passed = false;
                det << "d=" << d << " M=" << M << ": weight sum off by " << fmt(wsum - 1.0)
                    << "\n";
            }
            for (int i = 0; i < M; ++i) {
                if (!(rule.xi[i] > 0.0) || (i > 0 && !(rule.xi[i] > rule.xi[i - 1]))) {
                    res.passed = false;
                    det << "d=" << d << " M=" << M << ": nodes not positive ascending\n";
                }
            }
            if (rule.xi[M - 1] > 4.0 * M + d) {
                res.passed = false;
                det << "d=" << d << " M=" << M << ": node bound violated, xi_max="
                    << fmt(rule.xi[M - 1]) << " > " << 4 * M + d << "\n";
            }
            const double lg = std::lgamma(d / 2.0);
            for (int p = 0; p <= 2 * M - 1; ++p) {
                double q = 0.0;
                for (int i = 0; i < M; ++i) q += rule.a[i] * std::pow(rule.xi[i], p);
                const double moment = std::exp(std::lgamma(d / 2.0 + p) - lg);
                const double rel = std::abs(q - moment) / moment;
                if (rel > 1e-10) {
                    res.passed = false;
                    det << "d=" << d << " M=" << M << " p=" << p << ": rel err " << fmt(rel)
                        << "\n";
                }
            }
        }
    }
    if (res.passed) det << "grid {2,4,8,16,32,784} x {1..10}: all moments within 1e-10\n";
    res.detail = det.str();
    return res;
}

CheckResult check_2_haar_orthogonality() {
    CheckResult res{2, "Haar sample orthogonality", true, 10.0, 0.0, {}};
    std::ostringstream det;
    for (int d : {4, 16, 64}) {
        double worst = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : worst) schedule(dynamic)
#endif
        for (int s = 0; s < 1000; ++s) {
            const Matrix B = sample_haar_orthogonal(d, RngSeed{20240, 1000u * d + s});
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    double dot = 0.0;
                    for (int r = 0; r < d; ++r) dot += B(r, i) * B(r, j);
                    const double target = i == j ? 1.0 : 0.0;
                    worst = std::max(worst, std::abs(dot - target));
                }
        }
        det << "d=" << d << ": max |B^T B - I| over 1000 samples = " << fmt(worst) << "\n";
        if (worst > 1e-12) res.passed = false;
    }
    res.detail = det.str();
    return res;
}

CheckResult check_3_mc_identity() {
    CheckResult res{3, "spherical MC expected-error identity (d=3, beta=1)", true, 60.0, 0.0, {}};
    std::ostringstream det;
    // Guard the implementation's series value against the frozen oracle.
    const double series = mc_error_series(3, 1.0, 1, 2, 1.0);
    if (std::abs(series - kSeriesD3K2) > 1e-9) {
        res.passed = false;
        det << "series value " << fmt(series) << " drifted from oracle " << fmt(kSeriesD3K2)
            << "\n";
    }
    for (int MS : {4, 16}) {
        const MseResult mse =
            spherical_stage_mse(3, 1.0, MS, SphereKind::MC, 100000, RngSeed{7321, 50000u * MS});
        const double predicted = kSeriesD3K2 / MS;
        const double gap = std::abs(mse.mean_sq_error - predicted);
        det << "M_S=" << MS << ": empirical " << fmt(mse.mean_sq_error) << " predicted "
            << fmt(predicted) << " |gap| = " << fmt(gap) << " vs 4 SE = "
            << fmt(4.0 * mse.standard_error) << "\n";
        if (gap > 4.0 * mse.standard_error) res.passed = false;
    }
    res.detail = det.str();
    return res;
}

CheckResult check_4_omc_bound_and_ordering() {
    CheckResult res{4, "OMC expected-error bound and MC-vs-OMC ordering", true, 120.0, 0.0, {}};
    std::ostringstream det;
    const struct {
        int d;
        double oracle;
    } cases[] = {{4, kSeriesD4K4}, {8, kSeriesD8K4}};
    for (const auto& cs : cases) {
        const int d = cs.d;
        const double series = mc_error_series(d, 1.0, d, 4, 3.0);
        if (std::abs(series - 3.0 / d * cs.oracle) > 1e-9 * std::max(1.0, series)) {
            res.passed = false;
            det << "d=" << d << ": omc series drifted from oracle\n";
        }
        const MseResult omc =
            spherical_stage_mse(d, 1.0, d, SphereKind::OMC, 100000, RngSeed{99, 1000u * d});
        const MseResult mc =
            spherical_stage_mse(d, 1.0, d, SphereKind::MC, 100000, RngSeed{101, 2000u * d});
        const double bound = 3.0 / d * cs.oracle;
        det << "d=" << d << ": OMC mse " << fmt(omc.mean_sq_error) << " <= bound " << fmt(bound)
            << " + 4 SE " << fmt(4.0 * omc.standard_error) << "; MC mse "
            << fmt(mc.mean_sq_error) << "\n";
        if (omc.mean_sq_error > bound + 4.0 * omc.standard_error) res.passed = false;
        const double sep = std::hypot(mc.standard_error, omc.standard_error);
        if (!(mc.mean_sq_error - omc.mean_sq_error > 2.0 * sep)) {
            res.passed = false;
            det << "d=" << d << ": MC/OMC separation below 2 SE\n";
        }
    }
    res.detail = det.str();
    return res;
}

CheckResult check_5_radial_decay() {
    CheckResult res{5, "radial decay exponent vs envelope", true, 5.0, 0.0, {}};
    std::ostringstream det;
    const KernelSpec spec{4, 1.0};
    const double c2 = 0.5;
    std::vector<double> log_err, log_env;
    det << " M_R   |radial error|   envelope\n";
    for (int M = 1; M <= 6; ++M) {
        const RadialRule rule = gauss_laguerre(4, M);
        const double err = std::abs(radial_quadrature_error(rule, spec, 1.0));
        const double env = std::pow(c2 / (2.0 * M - 1.0), 2.0 * M - 1.0);
        log_err.push_back(std::log(err));
        log_env.push_back(std::log(env));
        det << "  " << M << "    " << fmt(err) << "       " << fmt(env) << "\n";
    }
    for (std::size_t i = 0; i + 1 < log_err.size(); ++i) {
        if (!(log_err[i + 1] < log_err[i])) {
            res.passed = false;
            det << "log error not decreasing at step " << i + 1 << "->" << i + 2 << "\n";
        }
        const double derr = log_err[i] - log_err[i + 1];
        const double denv = log_env[i] - log_env[i + 1];
        if (!(derr >= denv)) {
            res.passed = false;
            det << "step " << i + 1 << "->" << i + 2 << ": dlog|err| = " << fmt(derr)
                << " shallower than envelope " << fmt(denv) << "\n";
        }
    }
    res.detail = det.str();
    return res;
}

CheckResult check_6_kernel_consistency() {
    CheckResult res{6, "SR-OMC kernel consistency (d=2, M_R=8, M_S=256)", true, 10.0, 0.0, {}};
    std::ostringstream det;
    const KernelSpec spec{2, 1.0};
    const std::vector<double> x{1.0, 0.0}, y{0.0, 0.0};
    // Exact kernel value exp(-||x-y||^2/(2 sigma^2)) at distance 1.
    const double exact = std::exp(-0.5);
    std::vector<double> vals(100);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int s = 0; s < 100; ++s) {
        const ProductFeatureMap map =
            build_sr(spec, 8, 256, SphereKind::OMC, std::nullopt, RngSeed{555, 77000u + s});
        vals[s] = kappa_hat(map, x, y);
    }
    const double mean = pairwise_sum(vals) / 100.0;
    det << "mean kappa_hat = " << fmt(mean) << ", exact kernel = " << fmt(exact)
        << ", |diff| = " << fmt(std::abs(mean - exact)) << " (tolerance 0.01)\n";
    if (std::abs(mean - exact) > 0.01) res.passed = false;
    res.detail = det.str();
    return res;
}

CheckResult check_7_frobenius_trend() {
    CheckResult res{7, "SR-OMC vs RFF relative Frobenius trend (synthetic data)", true, 300.0, 0.0, {}};
    std::ostringstream det;
    for (int d : {4, 16}) {
        const Dataset data = synth_gaussian(1000, d, RngSeed{42, 9000u + d});
        const double sigma = median_heuristic(data, 10000, RngSeed{42, 9100u + d});
        const KernelSpec spec{d, sigma};
        const Matrix K = gram_exact(spec, data);
        const int mr_pref = d == 4 ? 2 : 1;
        det << "d=" << d << " sigma=" << fmt(sigma) << "\n";
        std::vector<double> means;
        bool wins_ok = true;
        for (int M : {d, 2 * d, 4 * d, 8 * d}) {
            const int mr = std::min(mr_pref, M / d);
            const int ms = M / mr;
            int wins = 0;
            std::vector<double> e_sr(20), e_rff(20);
            for (int s = 0; s < 20; ++s) {
                const ProductFeatureMap sr = build_sr(spec, mr, ms, SphereKind::OMC, std::nullopt,
                                                      RngSeed{1000u * d + s, 1});
                const ProductFeatureMap rff =
                    build_rff(spec, M, RngSeed{1000u * d + s, 2});
                e_sr[s] = rel_frobenius(K, gram_hat(sr, data));
                e_rff[s] = rel_frobenius(K, gram_hat(rff, data));
                if (e_sr[s] <= e_rff[s]) ++wins;
            }
            means.push_back(pairwise_sum(e_sr) / 20.0);
            det << "  M=" << M << " (M_R=" << mr << ", M_S=" << ms << "): SR-OMC mean "
                << fmt(means.back()) << ", RFF mean " << fmt(pairwise_sum(e_rff) / 20.0)
                << ", wins " << wins << "/20\n";
            if (wins < 16) wins_ok = false;
        }
        bool decreasing = true;
        for (std::size_t i = 0; i + 1 < means.size(); ++i)
            if (!(means[i + 1] < means[i])) decreasing = false;
        if (!wins_ok || !decreasing) {
            res.passed = false;
            if (!wins_ok) det << "  win rate below 80%\n";
            if (!decreasing) det << "  mean rel_frobenius not strictly decreasing\n";
        }
    }
    res.detail = det.str();
    return res;
}

CheckResult check_8_parseval() {
    CheckResult res{8, "Parseval closure of the harmonic series", true, 5.0, 0.0, {}};
    std::ostringstream det;
    for (int d : {3, 8}) {
        for (double beta : {0.5, 1.0, 2.0}) {
            const double l0 = lambda_k(d, beta, 0, 1e-14);
            const double lhs = l0 * l0 + mc_error_series(d, beta, 1, 2, 1.0);
            // Doubled-argument sphere average: c2*xi = beta^2 makes the
            // effective frequency 2*beta.
            const double rhs = 0.5 * (1.0 + f_bar(d, beta * beta, 1.0, 1e-15));
            det << "d=" << d << " beta=" << fmt(beta) << ": lhs " << fmt(lhs) << " rhs "
                << fmt(rhs) << " |diff| = " << fmt(std::abs(lhs - rhs)) << "\n";
            if (std::abs(lhs - rhs) > 1e-8) res.passed = false;
        }
    }
    res.detail = det.str();
    return res;
}

CheckResult check_9_okq() {
    CheckResult res{9, "OKQ reweighting vs uniform weights (d=4, OMC nodes)", true, 30.0, 0.0, {}};
    std::ostringstream det;
    const int d = 4;
    const double bw = 1.0;
    double prev_const_err = -1.0;
    bool const_decreasing = true;
    for (int MS : {8, 16, 32}) {
        const SphericalRule base = sample_sphere_omc(d, MS, RngSeed{31337, 10u + MS});
        const SphericalRule okq = okq_weights(base, bw);
        double wsum = 0.0;
        for (double w : okq.b) wsum += w;
        const double const_err = std::abs(wsum - 1.0);
        if (prev_const_err >= 0.0 && !(const_err < prev_const_err)) const_decreasing = false;
        prev_const_err = const_err;

        RngStream rng(RngSeed{2718, 5});
        int wins = 0;
        std::ostringstream fn;
        for (int t = 0; t < 5; ++t) {
            const double r = 0.5 + 1.5 * rng.uniform01();
            std::vector<double> v(d);
            double norm2 = 0.0;
            for (int c = 0; c < d; ++c) {
                v[c] = rng.normal();
                norm2 += v[c] * v[c];
            }
            for (int c = 0; c < d; ++c) v[c] /= std::sqrt(norm2);
            const double exact = lambda_k(d, r, 0, 1e-13);
            double okq_est = 0.0, uni_est = 0.0;
            for (int j = 0; j < MS; ++j) {
                double dot = 0.0;
                for (int c = 0; c < d; ++c) dot += v[c] * base.theta(j, c);
                const double fv = std::cos(r * dot);
                okq_est += okq.b[j] * fv;
                uni_est += base.b[j] * fv;
            }
            const double e_okq = std::abs(okq_est - exact);
            const double e_uni = std::abs(uni_est - exact);
            if (e_okq <= e_uni) ++wins;
            fn << "    r=" << fmt(r) << ": okq err " << fmt(e_okq) << ", uniform err "
               << fmt(e_uni) << "\n";
        }
        det << "M_S=" << MS << ": |sum w - 1| = " << fmt(const_err) << ", wins " << wins
            << "/5\n"
            << fn.str();
        if (wins < 4) res.passed = false;
    }
    if (!const_decreasing) {
        res.passed = false;
        det << "constant-function error not decreasing in M_S\n";
    }
    res.detail = det.str();
    return res;
}

CheckResult check_10_determinism() {
    CheckResult res{10, "byte-identical CSV across thread counts", true, 60.0, 0.0, {}};
    std::ostringstream det;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "srff-acceptance";
    fs::create_directories(dir);

    cli::ApproxOptions opt;
    opt.methods = {"sr-omc", "rff"};
    opt.d = 4;
    opt.sigma = "median";
    opt.mr = {1, 2};
    opt.ms = {4, 8};
    opt.synthetic = "gaussian";
    opt.synthetic_n = 200;
    opt.seeds = {11, 12};

    const auto run_with_threads = [&](int threads, const std::string& name) {
        opt.out = (dir / name).string();
#ifdef _OPENMP
        const int prev = omp_get_max_threads();
        omp_set_num_threads(threads);
#endif
        std::ostringstream sink;
        cli::cmd_approx(opt, sink);
#ifdef _OPENMP
        omp_set_num_threads(prev);
#endif
        std::ifstream in(opt.out, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };

    const std::string csv1 = run_with_threads(1, "run1.csv");
    const std::string csv2 = run_with_threads(2, "run2.csv");
    const std::string csv3 = run_with_threads(1, "run3.csv");
    det << "1 thread vs 2 threads: " << (csv1 == csv2 ? "identical" : "DIFFER") << "; repeat run: "
        << (csv1 == csv3 ? "identical" : "DIFFER") << " (" << csv1.size() << " bytes)\n";
    if (csv1 != csv2 || csv1 != csv3 || csv1.empty()) res.passed = false;
    res.detail = det.str();
    return res;
}

}  // namespace

std::vector<CheckResult> run_all(std::ostream& out) {
    using Check = CheckResult (*)();
    const Check checks[] = {
        check_1_quadrature_exactness, check_2_haar_orthogonality, check_3_mc_identity,
        check_4_omc_bound_and_ordering, check_5_radial_decay, check_6_kernel_consistency,
        check_7_frobenius_trend, check_8_parseval, check_9_okq, check_10_determinism};
    std::vector<CheckResult> results;
    for (const Check& check : checks) {
        Timer timer;
        CheckResult res = check();
        res.elapsed_seconds = timer.seconds();
        if (res.elapsed_seconds > res.budget_seconds) {
            res.passed = false;
            res.detail += "runtime budget exceeded\n";
        }
        out << "[" << (res.id < 10 ? " " : "") << res.id << "/10] "
            << (res.passed ? "PASS" : "FAIL") << "  " << res.name << "  ("
            << fmt(res.elapsed_seconds) << "s / budget " << fmt(res.budget_seconds) << "s)\n";
        std::istringstream lines(res.detail);
        std::string line;
        while (std::getline(lines, line)) out << "        " << line << "\n";
        results.push_back(std::move(res));
    }
    out << (all_passed(results) ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (!r.passed) return false;
    return true;
}

}  // namespace srff::acceptance
