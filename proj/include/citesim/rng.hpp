#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace citesim {

// Purpose tags for stream derivation. A stream is identified by
// (master seed, tag, key); draws never depend on the order in which
// streams are created, so results are independent of thread count.
enum class StreamTag : std::uint64_t {
    SeedFitness = 1,
    AgentInit = 2,
    Cite = 3,
    SameYear = 4,
    ErGraph = 5,
    ErYears = 6,
    Test = 99,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Keyed derivation: folds each key through splitmix64.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) noexcept;

class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed) : engine_(seed) {}
    RngStream(std::uint64_t master, StreamTag tag, std::uint64_t key)
        : engine_(derive_seed(master, {static_cast<std::uint64_t>(tag), key})) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on the open interval (0, 1).
    double uniform_open01() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    // Uniform integer on [0, n). n must be positive. Lemire's method
    // with rejection, so the result is exactly uniform.
    std::uint64_t below(std::uint64_t n);

    // Standard normal via Box-Muller. Implemented here rather than with
    // std::normal_distribution so draws are identical across standard
    // library implementations.
    double standard_normal();

private:
    std::mt19937_64 engine_;
};

}  // namespace citesim
