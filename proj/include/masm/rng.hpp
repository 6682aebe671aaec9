#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace masm {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Independent engine for (seed, stream). Streams do not depend on the order
// in which they are created, so parallel trials reproduce serial ones.
std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream);

// Uniform integer in [0, n) by 128-bit multiply-high.
std::size_t uniform_index(std::mt19937_64& engine, std::size_t n);

// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(std::mt19937_64& engine);

}  // namespace masm
