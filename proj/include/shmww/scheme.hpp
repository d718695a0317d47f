#pragma once

#include "shmww/gf2.hpp"
#include "shmww/params.hpp"
#include "shmww/rng.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace shmww {

struct PublicKey {
    ParameterSet ps;
    gf2::BitMatrix h; // (n-k) x n
    gf2::BitMatrix s; // (n-k) x k',  s = h * e^T
};

// Generation trace kept for testing and experiment ground truth; not part of
// the serialized secret key.
struct KeyTrace {
    std::vector<std::uint32_t> p1; // row permutation, final row i = original row p1[i]
    std::vector<std::uint32_t> p2; // column j of the unpermuted secret lands at p2[j]
    std::vector<std::uint32_t> random_columns; // I_R, sorted
};

struct PrivateKey {
    ParameterSet ps;
    gf2::BitMatrix e; // k' x n
    KeyTrace trace;
};

struct KeyPair {
    PublicKey pk;
    PrivateKey sk;
};

struct Signature {
    gf2::BitVector z; // length n
    gf2::BitVector c; // length k', weight w1
};

KeyPair keygen(const ParameterSet &ps, Rng &rng);
KeyPair keygen(const ParameterSet &ps, std::string_view seed);

// Keygen with the permutations pinned, for reproducing worked examples.
KeyPair keygen_with_permutations(const ParameterSet &ps, Rng &rng,
                                 std::vector<std::uint32_t> p1,
                                 std::vector<std::uint32_t> p2);

// Deterministic digest of length k_prime and weight exactly w1: a SHAKE256
// stream of 32-bit integers reduced mod k_prime, keeping the first w1
// distinct positions.
gf2::BitVector weight_restricted_hash(std::span<const std::uint8_t> input,
                                      std::size_t k_prime, std::size_t w1);

Signature sign(const PrivateKey &sk, const PublicKey &pk,
               std::span<const std::uint8_t> msg, Rng &rng);

// Compatibility mode for experiments that skip the hash: the challenge is
// sampled directly as a uniform weight-w1 vector. The result is not
// verifiable against any message; its z has the same distribution.
Signature sign_raw_challenge(const PrivateKey &sk, Rng &rng);

bool verify(const PublicKey &pk, std::span<const std::uint8_t> msg, const Signature &sig);

inline std::span<const std::uint8_t> as_bytes(std::string_view s)
{
    return {reinterpret_cast<const std::uint8_t *>(s.data()), s.size()};
}

} // namespace shmww
