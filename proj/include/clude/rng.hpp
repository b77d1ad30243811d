#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>
#include <vector>

namespace clude {

/// Deterministic random stream used for every stochastic decision in a run.
///
/// The generator is std::mt19937_64, whose output sequence is fully specified
/// by the C++ standard, so a given seed produces the same 64-bit stream on
/// every platform. The mappings on top of it are fixed here rather than left
/// to the (implementation-defined) standard distributions:
///
///   - uniform():        take the top 53 bits of one draw, scale by 2^-53.
///   - uniform_int(n):   draw 64-bit words, reject the biased tail, reduce
///                       modulo n.
///   - normal():         Box-Muller on two uniform() draws.
///   - distinct_indices: per-slot rejection against the exclusion and the
///                       already-picked set, in slot order.
///
/// Replaying a run therefore only requires the seed and this header.
class RngStream {
  public:
    static constexpr std::size_t kNoExclude = std::numeric_limits<std::size_t>::max();

    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t uniform_int(std::uint64_t bound);

    /// Uniform index in [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform_int(n)); }

    /// Standard normal deviate. Consumes exactly two uniform() draws.
    double normal();

    /// k distinct indices in [0, n), each also distinct from `exclude`
    /// (pass kNoExclude to disable). Order of the result is the draw order.
    std::vector<std::size_t> distinct_indices(std::size_t k, std::size_t n,
                                              std::size_t exclude = kNoExclude);

  private:
    std::mt19937_64 engine_;
};

/// Mixes a salt value into a seed (splitmix64 finalizer). Pure function;
/// chains of mix_seed calls define all derived seeds in the harness.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// Mixes a string salt (FNV-1a hash of the bytes, then mix_seed).
std::uint64_t mix_seed(std::uint64_t seed, std::string_view salt);

} // namespace clude
