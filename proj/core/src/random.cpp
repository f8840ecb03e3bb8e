#include "thp/random.hpp"

namespace thp {

std::uint64_t mix_seed(std::uint64_t value) {
    value += 0x9e3779b97f4a7c15ULL;
    value = (value ^ (value >> 30)) * 0xbf58476d1ce4e5b9ULL;
    value = (value ^ (value >> 27)) * 0x94d049bb133111ebULL;
    return value ^ (value >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = mix_seed(base);
    for (auto p : parts) h = mix_seed(h ^ mix_seed(p));
    return h;
}

std::uint64_t derive_seed(std::uint64_t base, std::span<const int> parts) {
    std::uint64_t h = mix_seed(base);
    for (int p : parts) h = mix_seed(h ^ mix_seed(static_cast<std::uint64_t>(p) + 1));
    return h;
}

} // namespace thp
