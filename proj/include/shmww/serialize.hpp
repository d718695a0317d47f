#pragma once

#include "shmww/scheme.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace shmww {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &what, std::size_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset)
    {
    }
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Container format: magic "SHMWW1", object tag (0 = pk, 1 = sk, 2 = sig),
// parameter-set id, two 32-bit little-endian dimensions, then row-major
// bit-packed payload, LSB-first within each octet, rows padded to octet
// boundaries.
inline constexpr std::uint8_t tag_public_key = 0;
inline constexpr std::uint8_t tag_private_key = 1;
inline constexpr std::uint8_t tag_signature = 2;

std::vector<std::uint8_t> serialize(const PublicKey &pk);
std::vector<std::uint8_t> serialize(const PrivateKey &sk);
std::vector<std::uint8_t> serialize(const Signature &sig, const ParameterSet &ps);

PublicKey deserialize_public_key(std::span<const std::uint8_t> bytes);
// The generation trace is test-only state and is not part of the format; the
// returned key carries an empty trace.
PrivateKey deserialize_private_key(std::span<const std::uint8_t> bytes);
Signature deserialize_signature(std::span<const std::uint8_t> bytes);
const ParameterSet &deserialized_params(std::span<const std::uint8_t> bytes);

void write_file(const std::string &path, std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> read_file(const std::string &path);

} // namespace shmww
