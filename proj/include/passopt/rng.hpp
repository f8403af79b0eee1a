#pragma once

#include <cstdint>
#include <limits>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace passopt {

// splitmix64 step; used only to expand one user seed into stream seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed of the child stream `tag` of a generator seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (tag + 0x632be59bd9b4e019ULL));
    std::uint64_t a = splitmix64_next(s);
    std::uint64_t b = splitmix64_next(s);
    return a ^ (b >> 1);
}

// Deterministic random source built on mt19937_64. The distribution code is
// pinned here instead of delegating to <random> distributions, whose output
// is implementation defined; every draw replays identically for a given seed
// on any platform. Child streams obtained through stream(tag) are
// statistically independent of the parent and of each other, so the sampling
// order of one quantity never disturbs another.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // Independent child stream; drawing from the child leaves this stream untouched.
    Rng stream(std::uint64_t tag) const { return Rng(derive_seed(seed_, tag)); }

    std::uint64_t next_u64() { return engine_(); }

    // uniform on the integers {lo, ..., hi}
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("Rng::uniform_int: empty range");
        std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1ULL;
        if (range == 0) return static_cast<std::int64_t>(next_u64());
        const std::uint64_t limit =
            (std::numeric_limits<std::uint64_t>::max() / range) * range;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % range);
    }

    // uniform on [lo, hi); returns lo when the interval is degenerate
    double uniform_real(double lo, double hi) {
        if (!(lo <= hi)) throw std::invalid_argument("Rng::uniform_real: empty range");
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    double normal(double mean, double sd) {
        if (sd < 0.0) throw std::invalid_argument("Rng::normal: negative sd");
        if (have_spare_) {
            have_spare_ = false;
            return mean + sd * spare_;
        }
        double u, v, s;
        do {
            u = uniform_real(-1.0, 1.0);
            v = uniform_real(-1.0, 1.0);
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return mean + sd * u * m;
    }

    // Fisher-Yates shuffle
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(
                uniform_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(values[i - 1], values[j]);
        }
    }

    // k draws without replacement, uniform over subsets, order random
    template <typename T>
    std::vector<T> sample(const std::vector<T>& pool, std::size_t k) {
        if (k > pool.size()) throw std::invalid_argument("Rng::sample: k exceeds pool size");
        std::vector<std::size_t> idx(pool.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::vector<T> out;
        out.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            const auto j = static_cast<std::size_t>(
                uniform_int(static_cast<std::int64_t>(i),
                            static_cast<std::int64_t>(idx.size()) - 1));
            std::swap(idx[i], idx[j]);
            out.push_back(pool[idx[i]]);
        }
        return out;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace passopt
