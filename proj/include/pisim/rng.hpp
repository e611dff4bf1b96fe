#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace pisim {

// Deterministic random stream. All draws go through explicit helpers so the
// same (seed, call sequence) yields the same values on every platform;
// std::uniform_*_distribution is implementation-defined and not used.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    int uniform_int(int n) { return static_cast<int>(uniform() * n); }

    // Sample an index from a probability vector (assumed to sum to ~1).
    int categorical(std::span<const double> probs) {
        double u = uniform();
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
            acc += probs[k];
            if (u < acc) return static_cast<int>(k);
        }
        return static_cast<int>(probs.size()) - 1;
    }

    // In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::span<T> items) {
        for (int i = static_cast<int>(items.size()) - 1; i > 0; --i) {
            int j = uniform_int(i + 1);
            std::swap(items[i], items[j]);
        }
    }

    static std::uint64_t hash_tag(std::string_view name, std::uint64_t index = 0) {
        std::uint64_t h = 1469598103934665603ULL;
        for (char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
        return mix(h ^ index);
    }

private:
    friend class RngFactory;
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
};

// Derives the per-run streams from one master seed.
class RngFactory {
public:
    explicit RngFactory(std::uint64_t master_seed) : master_(master_seed) {}

    Rng stream(std::string_view name, std::uint64_t index = 0) const {
        return Rng(Rng::mix(master_ ^ Rng::hash_tag(name, index)));
    }

private:
    std::uint64_t master_;
};

}  // namespace pisim
