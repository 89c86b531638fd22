#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace feynrules {

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// Independent stream for a named task, derived from the master seed.
// The same (seed, task) always yields the same sequence regardless of the
// order in which tasks run.
std::mt19937_64 task_stream(std::uint64_t master_seed, std::string_view task);

double uniform(std::mt19937_64& rng, double lo, double hi);

// |x| uniform in [lo, hi], random sign.
double signed_magnitude(std::mt19937_64& rng, double lo, double hi);

}  // namespace feynrules
