// Timing comparison of the OpenMP kernels against their serial reference
// implementations. Not part of the test suite; run by hand.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "srff/analysis.hpp"
#include "srff/dataset_io.hpp"
#include "srff/features.hpp"

namespace {

double time_once(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) best = std::min(best, time_once(fn));
    return best;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-24s serial %8.3f s   parallel %8.3f s   speedup %.2fx\n", name, serial,
                parallel, serial / parallel);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serial code\n");
#endif
    const int n = 1200, d = 8, M = 64;
    const srff::Dataset data = srff::synth_gaussian(n, d, srff::RngSeed{7, 0});
    const srff::KernelSpec spec{d, 2.0};
    const srff::ProductFeatureMap map =
        srff::build_sr(spec, 2, M / 2, srff::SphereKind::OMC, std::nullopt, srff::RngSeed{7, 1});

    report("gram_exact (n=1200)",
           best_of(3, [&] { (void)srff::gram_exact_serial(spec, data); }),
           best_of(3, [&] { (void)srff::gram_exact(spec, data); }));
    report("gram_hat (n=1200,M=64)",
           best_of(3, [&] { (void)srff::gram_hat_serial(map, data); }),
           best_of(3, [&] { (void)srff::gram_hat(map, data); }));
    report("feature_matrix",
           best_of(3, [&] { (void)srff::feature_matrix_serial(map, data); }),
           best_of(3, [&] { (void)srff::feature_matrix(map, data); }));

    const std::vector<double> x{1, 0, 0, 0, 0, 0, 0, 0}, y(8, 0.0);
    const auto builder = [&](srff::RngSeed s) {
        return srff::build_sr(spec, 2, 8, srff::SphereKind::OMC, std::nullopt, s);
    };
#ifdef _OPENMP
    const int prev = omp_get_max_threads();
    omp_set_num_threads(1);
    const double rep_serial =
        best_of(2, [&] { (void)srff::replicate_mse(builder, x, y, 4000, srff::RngSeed{9, 0}); });
    omp_set_num_threads(prev);
    const double rep_parallel =
        best_of(2, [&] { (void)srff::replicate_mse(builder, x, y, 4000, srff::RngSeed{9, 0}); });
#else
    const double rep_serial =
        best_of(2, [&] { (void)srff::replicate_mse(builder, x, y, 4000, srff::RngSeed{9, 0}); });
    const double rep_parallel = rep_serial;
#endif
    report("replicate_mse (4000)", rep_serial, rep_parallel);
    return 0;
}
