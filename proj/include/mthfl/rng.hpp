#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace mthfl {

// Seeded random stream. The engine is std::mt19937_64; the draw functions
// are implemented here on top of the raw 64-bit output so that results are
// identical across standard libraries (std::*_distribution is
// implementation-defined, which would break frozen test values and
// byte-identical CSV reruns).
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
    std::uint64_t uniform_int(std::uint64_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    // Standard normal via Box-Muller, one spare cached per stream.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    // Gamma(shape, 1) via Marsaglia-Tsang; shape < 1 handled with the
    // usual power-of-uniform boost.
    double gamma(double shape) {
        if (shape < 1.0) {
            double u;
            do {
                u = uniform01();
            } while (u <= 0.0);
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[static_cast<std::size_t>(uniform_int(i))]);
        }
    }

   private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Purposes for deriving independent substreams from one experiment seed.
// Keeping each consumer on its own stream makes per-client work safe to run
// in parallel and keeps unrelated config changes from perturbing each other.
enum class Stream : std::uint64_t {
    Topology = 1,
    DataGen = 2,
    Partition = 3,
    InitParams = 4,
    Selection = 5,
    ClientTrain = 6,
    ClientTx = 7,
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace detail

// Substream for (seed, purpose, a, b). Mixed through splitmix64 so distinct
// tags never collide the way a plain xor of small integers would.
inline Rng substream(std::uint64_t seed, Stream purpose, std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t s = detail::splitmix64(seed ^ 0x6d746866756c0000ULL);
    s = detail::splitmix64(s ^ static_cast<std::uint64_t>(purpose));
    s = detail::splitmix64(s ^ a);
    s = detail::splitmix64(s ^ b);
    return Rng(s);
}

}  // namespace mthfl
