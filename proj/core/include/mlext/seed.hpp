#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mlext {

/// One SplitMix64 step.
std::uint64_t splitmix64(std::uint64_t& state);

/// Independent stream seed for (seed, stream name, index). Same inputs give
/// the same seed on every platform.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index);

inline std::mt19937_64 make_generator(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  return std::mt19937_64(derive_seed(seed, stream, index));
}

}  // namespace mlext
