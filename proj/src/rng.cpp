#include "clude/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "clude/errors.hpp"

namespace clude {

std::uint64_t RngStream::uniform_int(std::uint64_t bound) {
    if (bound == 0)
        throw ConfigError("uniform_int: bound must be positive");
    // Accept only draws below the largest multiple of bound, so the
    // reduction is unbiased.
    constexpr std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t excess = (max % bound + 1) % bound; // 2^64 mod bound
    const std::uint64_t last_ok = max - excess;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x > last_ok);
    return x % bound;
}

double RngStream::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    // log1p(-u1) = log(1 - u1), defined since u1 < 1.
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<std::size_t> RngStream::distinct_indices(std::size_t k, std::size_t n,
                                                     std::size_t exclude) {
    const std::size_t available = n - (exclude < n ? 1 : 0);
    if (k > available)
        throw ConfigError("distinct_indices: requested " + std::to_string(k) +
                          " distinct indices from a pool of " + std::to_string(available));
    std::vector<std::size_t> picked;
    picked.reserve(k);
    while (picked.size() < k) {
        const std::size_t v = index(n);
        if (v == exclude)
            continue;
        if (std::find(picked.begin(), picked.end(), v) != picked.end())
            continue;
        picked.push_back(v);
    }
    return picked;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(seed ^ splitmix64(salt));
}

std::uint64_t mix_seed(std::uint64_t seed, std::string_view salt) {
    return mix_seed(seed, fnv1a(salt));
}

} // namespace clude
