#pragma once

#include "shmww/gf2.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace shmww {

// Seedable deterministic generator. All scheme and attack randomness flows
// through one of these; bounded draws avoid std::uniform_int_distribution so
// streams are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    explicit Rng(std::string_view seed);

    std::uint64_t word() { return gen_(); }

    // Uniform draw in [0, bound) by rejection on the top multiple of bound.
    std::uint64_t below(std::uint64_t bound);

    // Independent child stream, for per-worker generators.
    Rng fork() { return Rng(word() ^ 0x9e3779b97f4a7c15ull); }

    std::vector<std::uint32_t> permutation(std::size_t n);

    // First w positions of a Fisher-Yates shuffle of [0, n): w distinct
    // uniform indices.
    std::vector<std::uint32_t> sample_distinct(std::size_t w, std::size_t n);

    gf2::BitVector random_vector(std::size_t len);
    gf2::BitVector fixed_weight_vector(std::size_t len, std::size_t w);
    gf2::BitMatrix random_matrix(std::size_t rows, std::size_t cols);

private:
    std::mt19937_64 gen_;
};

} // namespace shmww
