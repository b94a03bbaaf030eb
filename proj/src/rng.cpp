#include "gouest/rng.hpp"

namespace gouest {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix_finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::result_type CounterRng::operator()() noexcept {
  ++counter_;
  return splitmix_finalize(key_ + counter_ * kGolden);
}

double CounterRng::uniform_open() noexcept {
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix_finalize(splitmix_finalize(seed ^ 0x6A09E667F3BCC909ULL) + index * kGolden);
}

}  // namespace gouest
