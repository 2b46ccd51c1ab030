#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace srff::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitVerify = 3;

struct QuadOptions {
    bool radial = false;
    bool spherical = false;
    int d = 0;
    int mr = 0;
    int ms = 0;
    std::string kind = "mc";  // mc | omc | somc
    bool okq = false;
    double okq_bandwidth = 1.0;
    double okq_jitter = -1.0;
    std::uint64_t seed = 0;
    std::string out;
};
int cmd_quad(const QuadOptions& opt, std::ostream& log);

struct ApproxOptions {
    std::vector<std::string> methods;  // sr-*, rff, orf, qmc-halton, exact
    int d = 0;
    std::string sigma = "median";  // number or "median" / "median-heuristic"
    std::vector<int> mr{1};
    std::vector<int> ms;
    int n = 0;                    // 0: use the whole dataset
    std::string data_path;        // csv input, or empty for synthetic
    std::string synthetic = "gaussian";  // gaussian | sphere
    int synthetic_n = 1000;
    double sphere_radius = 1.0;
    bool header = false;
    std::vector<std::uint64_t> seeds{1};
    double okq_bandwidth = 1.0;
    double ridge = -1.0;          // <0: default 1e-8 trace/n (when spectral on)
    bool spectral = false;
    bool pointwise = false;
    bool bounds = false;          // also tabulate the two analytic error bounds
    double bound_L = 1.0;
    long median_max_pairs = 10000;
    std::string out;
};
int cmd_approx(const ApproxOptions& opt, std::ostream& log);

struct BoundsOptions {
    int d = 4;
    std::vector<int> mr{1};
    std::vector<int> ms{4};
    double c = 0.5;
    double L = 1.0;
    double beta = 1.0;
    std::string out;
};
int cmd_bounds(const BoundsOptions& opt, std::ostream& log);

struct DatasetGenOptions {
    std::string kind = "gaussian";  // gaussian | sphere
    int n = 1000;
    int d = 4;
    double radius = 1.0;
    std::uint64_t seed = 0;
    std::string out;
};
int cmd_dataset_gen(const DatasetGenOptions& opt, std::ostream& log);

struct VerifyOptions {
    std::string rule_path;  // optional rule file to validate first
};
int cmd_verify(const VerifyOptions& opt, std::ostream& log);

}  // namespace srff::cli
