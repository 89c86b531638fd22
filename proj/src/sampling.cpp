#include "feynrules/sampling.hpp"

#include <array>

namespace feynrules {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 task_stream(std::uint64_t master_seed, std::string_view task) {
    // FNV-1a over the task label, folded into the master seed.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : task) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::uint64_t state = master_seed ^ h;
    std::array<std::uint32_t, 8> words{};
    for (std::size_t i = 0; i < words.size(); i += 2) {
        const std::uint64_t z = splitmix64(state);
        words[i] = static_cast<std::uint32_t>(z);
        words[i + 1] = static_cast<std::uint32_t>(z >> 32);
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double signed_magnitude(std::mt19937_64& rng, double lo, double hi) {
    const double m = uniform(rng, lo, hi);
    return (rng() & 1U) ? m : -m;
}

}  // namespace feynrules
