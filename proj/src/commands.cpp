#include "srff/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "srff/acceptance.hpp"
#include "srff/analysis.hpp"
#include "srff/dataset_io.hpp"
#include "srff/features.hpp"
#include "srff/rulefile.hpp"

namespace srff::cli {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string opt_cell(const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); }

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

}  // namespace

int cmd_quad(const QuadOptions& opt, std::ostream& log) {
    if (opt.radial == opt.spherical)
        throw std::invalid_argument("quad: pass exactly one of --radial / --spherical");
    RuleFile rf;
    if (opt.radial) {
        if (opt.mr < 1) throw std::invalid_argument("quad: --mr must be >= 1");
        rf = to_rule_file(gauss_laguerre(opt.d, opt.mr));
    } else {
        SphericalRule rule;
        const RngSeed seed{opt.seed, 0};
        if (opt.kind == "mc") rule = sample_sphere_mc(opt.d, opt.ms, seed);
        else if (opt.kind == "omc") rule = sample_sphere_omc(opt.d, opt.ms, seed);
        else if (opt.kind == "somc") rule = sample_sphere_somc(opt.d, opt.ms, seed);
        else throw std::invalid_argument("quad: unknown --kind '" + opt.kind + "'");
        if (opt.okq) rule = okq_weights(rule, opt.okq_bandwidth, opt.okq_jitter);
        rf = to_rule_file(rule);
    }
    if (opt.out.empty()) throw std::invalid_argument("quad: --out is required");
    write_rule_file(opt.out, rf);
    log << "wrote " << rf.nodes.rows << " nodes to " << opt.out << "\n";
    return kExitOk;
}

namespace {

struct RowConfig {
    std::string method;
    int mr = 0;
    int ms = 0;
    int m_total = 0;
};

Dataset prepare_dataset(const ApproxOptions& opt) {
    const std::uint64_t seed0 = opt.seeds.empty() ? 0 : opt.seeds.front();
    Dataset data;
    if (!opt.data_path.empty()) {
        data = load_csv(opt.data_path, opt.header);
    } else if (opt.synthetic == "gaussian") {
        data = synth_gaussian(opt.synthetic_n, opt.d, RngSeed{seed0, fnv1a("synthetic")});
    } else if (opt.synthetic == "sphere") {
        data = synth_sphere(opt.synthetic_n, opt.d, opt.sphere_radius,
                            RngSeed{seed0, fnv1a("synthetic")});
    } else {
        throw std::invalid_argument("approx: unknown synthetic kind '" + opt.synthetic + "'");
    }
    if (static_cast<int>(data.d()) != opt.d)
        throw data_error("approx: dataset has d=" + std::to_string(data.d()) +
                         " but --d is " + std::to_string(opt.d));
    if (opt.n > 0 && static_cast<std::size_t>(opt.n) < data.n())
        data = subsample(data, opt.n, RngSeed{seed0, fnv1a("subsample")});
    return data;
}

}  // namespace

int cmd_approx(const ApproxOptions& opt, std::ostream& log) {
    if (opt.methods.empty()) throw std::invalid_argument("approx: at least one --method");
    if (opt.ms.empty()) throw std::invalid_argument("approx: --ms list must be non-empty");
    if (opt.mr.empty()) throw std::invalid_argument("approx: --mr list must be non-empty");
    if (opt.seeds.empty()) throw std::invalid_argument("approx: --seed list must be non-empty");
    for (std::size_t i = 0; i < opt.seeds.size(); ++i)
        for (std::size_t j = i + 1; j < opt.seeds.size(); ++j)
            if (opt.seeds[i] == opt.seeds[j])
                throw std::invalid_argument("approx: seed list must be distinct");
    if (opt.out.empty()) throw std::invalid_argument("approx: --out is required");

    const double t0 = now_seconds();
    const Dataset data = prepare_dataset(opt);
    const std::uint64_t seed0 = opt.seeds.front();

    double sigma;
    if (opt.sigma == "median" || opt.sigma == "median-heuristic") {
        sigma = median_heuristic(data, opt.median_max_pairs, RngSeed{seed0, fnv1a("median")});
    } else {
        char* end = nullptr;
        sigma = std::strtod(opt.sigma.c_str(), &end);
        if (end == opt.sigma.c_str() || *end != '\0' || !(sigma > 0.0))
            throw std::invalid_argument("approx: --sigma must be a positive number or 'median'");
    }
    const KernelSpec spec{opt.d, sigma};
    const Matrix K = gram_exact(spec, data);

    // c for the bound columns: the typical-pair scale of this dataset.
    const double med =
        median_heuristic(data, opt.median_max_pairs, RngSeed{seed0, fnv1a("median")});
    const double c_typical = med / (std::sqrt(2.0) * sigma);

    std::vector<RowConfig> rows;
    for (const std::string& method : opt.methods) {
        if (method == "exact") {
            rows.push_back({method, 0, 0, 0});
            continue;
        }
        const Method m = method_from_string(method);
        if (method_is_sr(m)) {
            for (int mr : opt.mr)
                for (int ms : opt.ms) rows.push_back({method, mr, ms, mr * ms});
        } else {
            std::vector<int> totals;
            for (int mr : opt.mr)
                for (int ms : opt.ms) {
                    const int t = mr * ms;
                    if (std::find(totals.begin(), totals.end(), t) == totals.end())
                        totals.push_back(t);
                }
            for (int t : totals) rows.push_back({method, 0, 0, t});
        }
    }

    std::ostringstream csv;
    csv << "# srff-approx-csv v1\n";
    csv << "method,d,sigma,M_R,M_S,M_total,seed,rel_frobenius,spectral_dev,pointwise_mse,"
           "seeds_used,ridge,bound_mc,bound_omc\n";

    for (const RowConfig& rc : rows) {
        for (std::uint64_t seed : opt.seeds) {
            ErrorReport rep;
            rep.method = rc.method;
            rep.d = opt.d;
            rep.sigma = sigma;
            rep.M_R = rc.mr;
            rep.M_S = rc.ms;
            rep.seeds_used = 1;
            const double trow = now_seconds();

            Matrix K_hat;
            if (rc.method == "exact") {
                K_hat = K;
                rep.M_total = 0;
            } else {
                const Method m = method_from_string(rc.method);
                const std::uint64_t stream = fnv1a(rc.method + "|" + std::to_string(rc.mr) + "|" +
                                                   std::to_string(rc.ms) + "|" +
                                                   std::to_string(rc.m_total));
                std::optional<OkqParams> okq;
                if (method_is_okq(m)) okq = OkqParams{opt.okq_bandwidth, -1.0};
                const ProductFeatureMap map =
                    build_map(m, spec, rc.mr, rc.ms, rc.m_total, okq, RngSeed{seed, stream});
                rep.M_total = static_cast<int>(map.M());
                K_hat = gram_hat(map, data);
                if (opt.bounds && method_is_sr(m)) {
                    rep.bound_mc = error_bound_mc(opt.d, rc.mr, rc.ms, c_typical, opt.bound_L);
                    rep.bound_omc = error_bound_omc(opt.d, rc.mr, rc.ms, c_typical, opt.bound_L);
                }
            }
            rep.rel_frobenius = rel_frobenius(K, K_hat);
            if (opt.spectral) {
                rep.ridge = opt.ridge >= 0.0 ? opt.ridge : default_ridge(K);
                rep.spectral_dev = spectral_deviation(K, K_hat, rep.ridge);
            }
            if (opt.pointwise) {
                double acc = 0.0;
                for (std::size_t i = 0; i < K.data.size(); ++i) {
                    const double diff = K.data[i] - K_hat.data[i];
                    acc += diff * diff;
                }
                rep.pointwise_mse = acc / static_cast<double>(K.data.size());
            }
            rep.wall_time = now_seconds() - trow;

            csv << rep.method << ',' << rep.d << ',' << fmt17(rep.sigma) << ',' << rep.M_R << ','
                << rep.M_S << ',' << rep.M_total << ',' << seed << ','
                << fmt17(rep.rel_frobenius) << ',' << opt_cell(rep.spectral_dev) << ','
                << opt_cell(rep.pointwise_mse) << ',' << rep.seeds_used << ','
                << fmt17(rep.ridge) << ',' << opt_cell(rep.bound_mc) << ','
                << opt_cell(rep.bound_omc) << '\n';
            log << rc.method << " M_R=" << rc.mr << " M_S=" << rc.ms << " M=" << rep.M_total
                << " seed=" << seed << " rel_frobenius=" << rep.rel_frobenius
                << " wall_time=" << rep.wall_time << "s\n";
        }
    }

    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw data_error("cannot write '" + opt.out + "'");
    out << csv.str();
    log << "wrote " << opt.out << " in " << now_seconds() - t0 << "s\n";
    return kExitOk;
}

int cmd_bounds(const BoundsOptions& opt, std::ostream& log) {
    if (opt.out.empty()) throw std::invalid_argument("bounds: --out is required");
    std::ostringstream csv;
    csv << "# srff-bounds-csv v1\n";
    csv << "d,M_R,M_S,c,L,beta,mc_radial,mc_spherical,mc_total,omc_radial,"
           "omc_spherical,omc_total,sph_ratio_omc_over_mc,mc_series_k2,omc_series_k4\n";
    for (int mr : opt.mr)
        for (int ms : opt.ms) {
            const BoundParts b1 = error_bound_mc_parts(opt.d, mr, ms, opt.c, opt.L);
            const BoundParts b2 = error_bound_omc_parts(opt.d, mr, ms, opt.c, opt.L);
            const double ratio =
                b1.spherical > 0.0 ? b2.spherical / b1.spherical
                                   : std::numeric_limits<double>::quiet_NaN();
            const double mc = mc_error_series(opt.d, opt.beta, ms, 2, 1.0);
            const double omc = mc_error_series(opt.d, opt.beta, ms, 4, 3.0);
            csv << opt.d << ',' << mr << ',' << ms << ',' << fmt17(opt.c) << ',' << fmt17(opt.L)
                << ',' << fmt17(opt.beta) << ',' << fmt17(b1.radial) << ','
                << fmt17(b1.spherical) << ',' << fmt17(b1.total) << ',' << fmt17(b2.radial)
                << ',' << fmt17(b2.spherical) << ',' << fmt17(b2.total) << ',' << fmt17(ratio)
                << ',' << fmt17(mc) << ',' << fmt17(omc) << '\n';
        }
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw data_error("cannot write '" + opt.out + "'");
    out << csv.str();
    log << "wrote " << opt.out << "\n";
    return kExitOk;
}

int cmd_dataset_gen(const DatasetGenOptions& opt, std::ostream& log) {
    if (opt.out.empty()) throw std::invalid_argument("dataset gen: --out is required");
    Dataset data;
    if (opt.kind == "gaussian") {
        data = synth_gaussian(opt.n, opt.d, RngSeed{opt.seed, fnv1a("synthetic")});
    } else if (opt.kind == "sphere") {
        data = synth_sphere(opt.n, opt.d, opt.radius, RngSeed{opt.seed, fnv1a("synthetic")});
    } else {
        throw std::invalid_argument("dataset gen: unknown kind '" + opt.kind + "'");
    }
    save_csv(opt.out, data.X);
    log << "wrote " << data.n() << "x" << data.d() << " dataset to " << opt.out << "\n";
    return kExitOk;
}

int cmd_verify(const VerifyOptions& opt, std::ostream& log) {
    if (!opt.rule_path.empty()) {
        try {
            validate_rule(read_rule_file(opt.rule_path));
            log << "rule file " << opt.rule_path << ": ok\n";
        } catch (const data_error& e) {
            log << "rule file check FAILED: " << e.what() << "\n";
            return kExitVerify;
        }
    }
    const auto results = acceptance::run_all(log);
    return acceptance::all_passed(results) ? kExitOk : kExitVerify;
}

}  // namespace srff::cli
