#include <CLI11.hpp>
#include <iostream>

#include "srff/commands.hpp"
#include "srff/dataset_io.hpp"

namespace {

template <class Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const srff::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return srff::cli::kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return srff::cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return srff::cli::kExitData;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spherical-radial Fourier features for the Gaussian kernel"};
    app.require_subcommand(1);

    srff::cli::QuadOptions quad;
    CLI::App* quad_cmd = app.add_subcommand("quad", "build a radial or spherical quadrature rule");
    quad_cmd->add_flag("--radial", quad.radial, "generalized Gauss-Laguerre radial rule");
    quad_cmd->add_flag("--spherical", quad.spherical, "spherical rule on S^{d-1}");
    quad_cmd->add_option("--d", quad.d, "ambient dimension")->required();
    quad_cmd->add_option("--mr", quad.mr, "number of radial nodes");
    quad_cmd->add_option("--ms", quad.ms, "number of spherical nodes");
    quad_cmd->add_option("--kind", quad.kind, "spherical kind: mc|omc|somc");
    quad_cmd->add_flag("--okq", quad.okq, "reweight with optimal kernel quadrature");
    quad_cmd->add_option("--okq-bandwidth", quad.okq_bandwidth, "sphere kernel bandwidth");
    quad_cmd->add_option("--okq-jitter", quad.okq_jitter, "diagonal jitter for the Gram solve");
    quad_cmd->add_option("--seed", quad.seed, "rng seed");
    quad_cmd->add_option("--out", quad.out, "output rule file")->required();

    srff::cli::ApproxOptions approx;
    CLI::App* approx_cmd =
        app.add_subcommand("approx", "kernel matrix approximation error sweep (CSV out)");
    approx_cmd->add_option("--method", approx.methods,
                           "methods: sr-mc sr-omc sr-somc sr-okq-* rff orf qmc-halton exact")
        ->required();
    approx_cmd->add_option("--d", approx.d, "ambient dimension")->required();
    approx_cmd->add_option("--sigma", approx.sigma, "kernel bandwidth or 'median'");
    approx_cmd->add_option("--mr", approx.mr, "radial node counts");
    approx_cmd->add_option("--ms", approx.ms, "spherical node counts")->required();
    approx_cmd->add_option("--n", approx.n, "subsample the dataset to n rows");
    approx_cmd->add_option("--data", approx.data_path, "input CSV (default: synthetic)");
    approx_cmd->add_flag("--header", approx.header, "input CSV has a header row");
    approx_cmd->add_option("--synthetic", approx.synthetic, "gaussian|sphere");
    approx_cmd->add_option("--synthetic-n", approx.synthetic_n, "synthetic dataset size");
    approx_cmd->add_option("--sphere-radius", approx.sphere_radius, "synthetic sphere radius");
    approx_cmd->add_option("--seed", approx.seeds, "seed list");
    approx_cmd->add_option("--okq-bandwidth", approx.okq_bandwidth, "sphere kernel bandwidth");
    approx_cmd->add_option("--ridge", approx.ridge, "ridge for spectral deviation");
    approx_cmd->add_flag("--spectral", approx.spectral, "also compute spectral deviation");
    approx_cmd->add_flag("--pointwise", approx.pointwise, "also compute pointwise MSE");
    approx_cmd->add_flag("--bounds", approx.bounds, "tabulate analytic error bounds per SR row");
    approx_cmd->add_option("--bound-L", approx.bound_L, "radial bound constant L");
    approx_cmd->add_option("--median-max-pairs", approx.median_max_pairs,
                           "pair budget for the median heuristic");
    approx_cmd->add_option("--out", approx.out, "output CSV")->required();

    srff::cli::BoundsOptions bounds;
    CLI::App* bounds_cmd = app.add_subcommand("bounds", "tabulate error bounds and series (CSV)");
    bounds_cmd->add_option("--d", bounds.d, "ambient dimension")->required();
    bounds_cmd->add_option("--mr", bounds.mr, "radial node counts");
    bounds_cmd->add_option("--ms", bounds.ms, "spherical node counts");
    bounds_cmd->add_option("--c", bounds.c, "c = ||x-y||/(sqrt(2) sigma)");
    bounds_cmd->add_option("--L", bounds.L, "radial bound constant");
    bounds_cmd->add_option("--beta", bounds.beta, "frequency for the error series");
    bounds_cmd->add_option("--out", bounds.out, "output CSV")->required();

    srff::cli::VerifyOptions verify;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the built-in verification checks");
    verify_cmd->add_option("--rule", verify.rule_path, "validate a rule file first");

    srff::cli::DatasetGenOptions gen;
    CLI::App* dataset_cmd = app.add_subcommand("dataset", "dataset utilities");
    CLI::App* gen_cmd = dataset_cmd->add_subcommand("gen", "generate a synthetic dataset CSV");
    gen_cmd->add_option("--kind", gen.kind, "gaussian|sphere");
    gen_cmd->add_option("--n", gen.n, "rows")->required();
    gen_cmd->add_option("--d", gen.d, "columns")->required();
    gen_cmd->add_option("--radius", gen.radius, "sphere radius");
    gen_cmd->add_option("--seed", gen.seed, "rng seed");
    gen_cmd->add_option("--out", gen.out, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : srff::cli::kExitUsage;
    }

    if (quad_cmd->parsed())
        return guarded([&] { return srff::cli::cmd_quad(quad, std::cerr); });
    if (approx_cmd->parsed())
        return guarded([&] { return srff::cli::cmd_approx(approx, std::cerr); });
    if (bounds_cmd->parsed())
        return guarded([&] { return srff::cli::cmd_bounds(bounds, std::cerr); });
    if (verify_cmd->parsed())
        return guarded([&] { return srff::cli::cmd_verify(verify, std::cout); });
    if (dataset_cmd->parsed() && gen_cmd->parsed())
        return guarded([&] { return srff::cli::cmd_dataset_gen(gen, std::cerr); });
    std::cerr << "no subcommand\n";
    return srff::cli::kExitUsage;
}
