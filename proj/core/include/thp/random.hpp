#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>

namespace thp {

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t value);

// Order-sensitive combination of a base seed with a list of integers.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts);
std::uint64_t derive_seed(std::uint64_t base, std::span<const int> parts);

} // namespace thp
