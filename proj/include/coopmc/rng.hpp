#pragma once

// Deterministic random number generation for the particle simulator and the
// Monte Carlo history sampler.
//
// Stream discipline: every independent stream (trial, molecule cohort, bit
// source) is seeded as splitmix64 over (base_seed, tag words). Draws within a
// stream come from xoshiro256++. Standard normals use a 256-layer ziggurat.

#include <array>
#include <cmath>
#include <cstdint>

namespace coopmc {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Collapses (base, a, b, c, d) into one well-mixed 64-bit stream seed.
inline std::uint64_t stream_seed(std::uint64_t base, std::uint64_t a = 0,
                                 std::uint64_t b = 0, std::uint64_t c = 0,
                                 std::uint64_t d = 0) {
    std::uint64_t s = base;
    std::uint64_t h = splitmix64_next(s);
    for (std::uint64_t w : {a, b, c, d}) {
        s ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        h = splitmix64_next(s);
    }
    return h;
}

class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed = 1) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log() argument.
    double unit_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }
    std::array<std::uint64_t, 4> state_;
};

namespace detail {

// Marsaglia-Tsang ziggurat tables for the standard normal, built once at
// startup. R is found by bisection so the layer recursion closes at f(0)=1.
struct ZigguratTables {
    static constexpr int kLayers = 256;
    std::array<double, kLayers + 1> x{};  // layer right edges, x[0]=R*f(R)/v trick slot unused
    std::array<double, kLayers + 1> f{};  // f(x[i])
    double r = 0.0;
    double v = 0.0;

    static double density(double z) { return std::exp(-0.5 * z * z); }
    static double tail_area(double z) {
        return std::sqrt(3.14159265358979323846 / 2.0) * std::erfc(z / std::sqrt(2.0));
    }

    // Builds layer edges downward from candidate R; returns f-value reached at
    // the top layer (want exactly 1).
    double closure(double rr, bool commit) {
        const double vv = rr * density(rr) + tail_area(rr);
        double xi = rr;
        if (commit) {
            v = vv;
            r = rr;
            x[kLayers] = rr;
            f[kLayers] = density(rr);
        }
        double fi = density(rr);
        for (int i = kLayers - 1; i >= 1; --i) {
            fi = fi + vv / xi;
            if (fi >= 1.0) {
                if (i > 1) return 2.0;  // collapsed too early
                xi = 0.0;
            } else {
                xi = std::sqrt(-2.0 * std::log(fi));
            }
            if (commit) {
                x[i] = xi;
                f[i] = std::min(fi, 1.0);
            }
        }
        if (commit) {
            x[0] = 0.0;
            f[0] = 1.0;
        }
        return fi;
    }

    ZigguratTables() {
        double lo = 3.0, hi = 4.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            // Larger R -> smaller v -> recursion reaches f=1 too late (fi < 1).
            (closure(mid, false) < 1.0 ? hi : lo) = mid;
        }
        closure(0.5 * (lo + hi), true);
    }
};

inline const ZigguratTables& ziggurat_tables() {
    static const ZigguratTables tables;
    return tables;
}

}  // namespace detail

// Standard normal sampler. Stateless apart from the shared tables.
class NormalSampler {
  public:
    NormalSampler() : t_(detail::ziggurat_tables()) {}

    double operator()(Xoshiro256pp& rng) const {
        for (;;) {
            const std::uint64_t u = rng.next();
            const int layer = static_cast<int>(u & 0xFF) + 1;  // 1..256
            const bool negative = (u & 0x100) != 0;
            const double u01 = static_cast<double>(u >> 11) * 0x1.0p-53;
            if (layer < detail::ZigguratTables::kLayers + 1 && layer >= 2) {
                const double z = u01 * t_.x[layer];
                if (z < t_.x[layer - 1]) return negative ? -z : z;
                const double y = t_.f[layer] + rng.unit() * (t_.f[layer - 1] - t_.f[layer]);
                if (y < detail::ZigguratTables::density(z)) return negative ? -z : z;
                continue;
            }
            // Base layer: rectangle [0, v/f(R)] plus the exact tail.
            const double z = u01 * (t_.v / t_.f[detail::ZigguratTables::kLayers]);
            if (z < t_.r) return negative ? -z : z;
            for (;;) {
                const double ex = -std::log(rng.unit_pos()) / t_.r;
                const double ey = -std::log(rng.unit_pos());
                if (2.0 * ey > ex * ex) {
                    const double tail = t_.r + ex;
                    return negative ? -tail : tail;
                }
            }
        }
    }

  private:
    const detail::ZigguratTables& t_;
};

}  // namespace coopmc
