#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace srff {

// Identifies one reproducible random stream. Replications and parallel
// workers get distinct stream_ids under a common seed, so results never
// depend on scheduling order.
struct RngSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    RngSeed with_stream(std::uint64_t s) const { return RngSeed{seed, s}; }
};

// mt19937_64 is fully specified by the standard; the uniform and normal
// transforms below are hand-coded so sampled artifacts are bit-identical
// across standard library implementations (std::normal_distribution is not
// portable).
class RngStream {
  public:
    explicit RngStream(RngSeed s) {
        std::seed_seq seq{
            static_cast<std::uint32_t>(s.seed & 0xffffffffu),
            static_cast<std::uint32_t>(s.seed >> 32),
            static_cast<std::uint32_t>(s.stream_id & 0xffffffffu),
            static_cast<std::uint32_t>(s.stream_id >> 32),
        };
        engine_.seed(seq);
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Standard normal via the Marsaglia polar method.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    void normal_fill(std::span<double> out) {
        for (double& x : out) x = normal();
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace srff
