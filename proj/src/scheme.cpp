#include "shmww/scheme.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace shmww {

namespace {

// LSB-first within each octet, matching the container format.
std::vector<std::uint8_t> pack_bits(const gf2::BitVector &v)
{
    std::vector<std::uint8_t> out((v.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i))
            out[i / 8] |= std::uint8_t(1u << (i % 8));
    return out;
}

// Canonical byte encoding of msg || s: 64-bit little-endian message length,
// the message, then s bit-packed.
std::vector<std::uint8_t> encode_hash_input(std::span<const std::uint8_t> msg,
                                            const gf2::BitVector &s)
{
    std::vector<std::uint8_t> buf;
    buf.reserve(8 + msg.size() + (s.size() + 7) / 8);
    std::uint64_t len = msg.size();
    for (int i = 0; i < 8; ++i)
        buf.push_back(std::uint8_t(len >> (8 * i)));
    buf.insert(buf.end(), msg.begin(), msg.end());
    auto sb = pack_bits(s);
    buf.insert(buf.end(), sb.begin(), sb.end());
    return buf;
}

std::vector<std::uint8_t> shake256(std::span<const std::uint8_t> input, std::size_t outlen)
{
    std::vector<std::uint8_t> out(outlen);
    EVP_MD_CTX *ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_shake256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, input.data(), input.size()) != 1 ||
        EVP_DigestFinalXOF(ctx, out.data(), out.size()) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("shake256 failed");
    }
    EVP_MD_CTX_free(ctx);
    return out;
}

} // namespace

gf2::BitVector weight_restricted_hash(std::span<const std::uint8_t> input,
                                      std::size_t k_prime, std::size_t w1)
{
    if (w1 > k_prime)
        throw std::invalid_argument("weight_restricted_hash: w1 > k'");
    std::size_t outlen = 4 * (2 * w1 + 16);
    for (;;) {
        auto stream = shake256(input, outlen);
        gf2::BitVector digest(k_prime);
        std::size_t found = 0;
        for (std::size_t off = 0; off + 4 <= stream.size() && found < w1; off += 4) {
            std::uint32_t x = std::uint32_t(stream[off]) | std::uint32_t(stream[off + 1]) << 8 |
                              std::uint32_t(stream[off + 2]) << 16 |
                              std::uint32_t(stream[off + 3]) << 24;
            std::size_t pos = x % k_prime;
            if (!digest.get(pos)) {
                digest.set(pos);
                ++found;
            }
        }
        if (found == w1)
            return digest;
        outlen *= 2; // ran out of stream before w1 distinct positions
    }
}

KeyPair keygen_with_permutations(const ParameterSet &ps, Rng &rng,
                                 std::vector<std::uint32_t> p1,
                                 std::vector<std::uint32_t> p2)
{
    validate_params(ps);
    if (p1.size() != ps.k_prime || p2.size() != ps.n)
        throw std::invalid_argument("keygen: permutation size mismatch");

    gf2::BitMatrix h = rng.random_matrix(ps.redundancy(), ps.n);

    // Unpermuted secret [E_1 | ... | E_ell] with E_i = (I | R_i).
    gf2::BitMatrix u(ps.k_prime, ps.n);
    for (std::size_t b = 0; b < ps.ell; ++b) {
        std::size_t base = b * ps.n_prime;
        for (std::size_t r = 0; r < ps.k_prime; ++r)
            u.set(r, base + r);
        gf2::BitMatrix rb = rng.random_matrix(ps.k_prime, ps.n_prime - ps.k_prime);
        for (std::size_t r = 0; r < ps.k_prime; ++r)
            for (std::size_t c = 0; c < rb.cols(); ++c)
                if (rb.get(r, c))
                    u.set(r, base + ps.k_prime + c);
    }

    gf2::BitMatrix e(ps.k_prime, ps.n);
    for (std::size_t r = 0; r < ps.k_prime; ++r)
        for (std::size_t c = 0; c < ps.n; ++c)
            if (u.get(p1[r], c))
                e.set(r, p2[c]);

    KeyTrace trace;
    trace.p1 = std::move(p1);
    trace.p2 = std::move(p2);
    for (std::size_t b = 0; b < ps.ell; ++b)
        for (std::size_t c = b * ps.n_prime + ps.k_prime; c < (b + 1) * ps.n_prime; ++c)
            trace.random_columns.push_back(trace.p2[c]);
    std::sort(trace.random_columns.begin(), trace.random_columns.end());

    gf2::BitMatrix s = gf2::mat_mul(h, gf2::transpose(e));

    KeyPair kp;
    kp.pk = PublicKey{ps, std::move(h), std::move(s)};
    kp.sk = PrivateKey{ps, std::move(e), std::move(trace)};
    return kp;
}

KeyPair keygen(const ParameterSet &ps, Rng &rng)
{
    validate_params(ps);
    // Sampling order is part of the deterministic contract: H, R_1..R_ell,
    // P1, P2. keygen_with_permutations redraws H and the R_i from a replayed
    // copy of the stream so both paths agree.
    Rng replay = rng;
    (void)rng.random_matrix(ps.redundancy(), ps.n);
    for (std::size_t b = 0; b < ps.ell; ++b)
        (void)rng.random_matrix(ps.k_prime, ps.n_prime - ps.k_prime);
    auto p1 = rng.permutation(ps.k_prime);
    auto p2 = rng.permutation(ps.n);
    return keygen_with_permutations(ps, replay, std::move(p1), std::move(p2));
}

KeyPair keygen(const ParameterSet &ps, std::string_view seed)
{
    Rng rng(seed);
    return keygen(ps, rng);
}

Signature sign(const PrivateKey &sk, const PublicKey &pk,
               std::span<const std::uint8_t> msg, Rng &rng)
{
    const ParameterSet &ps = sk.ps;
    gf2::BitVector e = rng.fixed_weight_vector(ps.n, ps.w2);
    gf2::BitVector s = gf2::mat_vec_mul(pk.h, e);
    gf2::BitVector c = weight_restricted_hash(encode_hash_input(msg, s), ps.k_prime, ps.w1);
    gf2::BitVector z = gf2::vec_mat_mul(c, sk.e);
    z ^= e;
    return Signature{std::move(z), std::move(c)};
}

Signature sign_raw_challenge(const PrivateKey &sk, Rng &rng)
{
    const ParameterSet &ps = sk.ps;
    gf2::BitVector e = rng.fixed_weight_vector(ps.n, ps.w2);
    gf2::BitVector c = rng.fixed_weight_vector(ps.k_prime, ps.w1);
    gf2::BitVector z = gf2::vec_mat_mul(c, sk.e);
    z ^= e;
    return Signature{std::move(z), std::move(c)};
}

bool verify(const PublicKey &pk, std::span<const std::uint8_t> msg, const Signature &sig)
{
    const ParameterSet &ps = pk.ps;
    if (sig.z.size() != ps.n || sig.c.size() != ps.k_prime)
        return false;
    if (sig.z.weight() > ps.signature_weight_bound())
        return false;
    gf2::BitVector s_hat = gf2::mat_vec_mul(pk.h, sig.z);
    s_hat ^= gf2::mat_vec_mul(pk.s, sig.c);
    gf2::BitVector c = weight_restricted_hash(encode_hash_input(msg, s_hat), ps.k_prime, ps.w1);
    return c == sig.c;
}

} // namespace shmww
