#include "mlext/seed.hpp"

namespace mlext {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  // FNV-1a over the stream name, mixed with the seed and index.
  std::uint64_t name_hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream) {
    name_hash ^= c;
    name_hash *= 0x100000001b3ULL;
  }
  std::uint64_t state = seed;
  std::uint64_t out = splitmix64(state) ^ name_hash;
  state = out;
  out = splitmix64(state) ^ index;
  state = out;
  return splitmix64(state);
}

}  // namespace mlext
