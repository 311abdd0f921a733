#pragma once

#include <cstdint>
#include <random>

namespace btsfpp {

/// Deterministic random stream owned by the caller. Every draw is a pure
/// function of the seed, so simulations are reproducible; parallel code must
/// use one stream per worker (see RngStream::child).
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Stream for worker `index`, derived from a master seed by splitmix64
    /// mixing; the fixed mapping keeps parallel runs bitwise-reproducible.
    static RngStream child(std::uint64_t master_seed, std::uint64_t index) {
        return RngStream(splitmix64(master_seed + 0x9e3779b97f4a7c15ULL * (index + 1)));
    }

    /// Uniform on the open interval (0, 1).
    double uniform() {
        double u;
        do {
            u = std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
        } while (u <= 0.0 || u >= 1.0);
        return u;
    }

    /// Standard exponential.
    double exponential() { return -std::log(uniform()); }

    std::mt19937_64& engine() { return engine_; }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace btsfpp
