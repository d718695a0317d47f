#include "shmww/serialize.hpp"

#include <cstring>
#include <fstream>

namespace shmww {

namespace {

constexpr char magic[6] = {'S', 'H', 'M', 'W', 'W', '1'};

void put_u32(std::vector<std::uint8_t> &out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(std::uint8_t(v >> (8 * i)));
}

void put_row(std::vector<std::uint8_t> &out, const gf2::BitMatrix &m, std::size_t r)
{
    std::size_t bytes = (m.cols() + 7) / 8;
    std::size_t base = out.size();
    out.resize(base + bytes, 0);
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (m.get(r, c))
            out[base + c / 8] |= std::uint8_t(1u << (c % 8));
}

void put_vector(std::vector<std::uint8_t> &out, const gf2::BitVector &v)
{
    std::size_t bytes = (v.size() + 7) / 8;
    std::size_t base = out.size();
    out.resize(base + bytes, 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i))
            out[base + i / 8] |= std::uint8_t(1u << (i % 8));
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t offset() const { return off_; }

    void expect_header(std::uint8_t expected_tag)
    {
        if (bytes_.size() < 8 || std::memcmp(bytes_.data(), magic, 6) != 0)
            throw ParseError("bad magic", 0);
        if (bytes_[6] != expected_tag)
            throw ParseError("unexpected object tag " + std::to_string(bytes_[6]), 6);
        off_ = 8;
    }

    std::uint8_t param_id() const
    {
        if (bytes_.size() < 8)
            throw ParseError("truncated header", bytes_.size());
        return bytes_[7];
    }

    std::uint32_t u32()
    {
        if (off_ + 4 > bytes_.size())
            throw ParseError("truncated dimension field", off_);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= std::uint32_t(bytes_[off_ + i]) << (8 * i);
        off_ += 4;
        return v;
    }

    void read_row(gf2::BitMatrix &m, std::size_t r)
    {
        std::size_t bytes = (m.cols() + 7) / 8;
        if (off_ + bytes > bytes_.size())
            throw ParseError("truncated payload", off_);
        for (std::size_t c = 0; c < m.cols(); ++c)
            if ((bytes_[off_ + c / 8] >> (c % 8)) & 1u)
                m.set(r, c);
        off_ += bytes;
    }

    gf2::BitVector read_vector(std::size_t len)
    {
        std::size_t bytes = (len + 7) / 8;
        if (off_ + bytes > bytes_.size())
            throw ParseError("truncated payload", off_);
        gf2::BitVector v(len);
        for (std::size_t i = 0; i < len; ++i)
            if ((bytes_[off_ + i / 8] >> (i % 8)) & 1u)
                v.set(i);
        off_ += bytes;
        return v;
    }

    void expect_end() const
    {
        if (off_ != bytes_.size())
            throw ParseError("trailing bytes after payload", off_);
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t off_ = 0;
};

std::vector<std::uint8_t> header(std::uint8_t tag, std::uint8_t param_id)
{
    std::vector<std::uint8_t> out(magic, magic + 6);
    out.push_back(tag);
    out.push_back(param_id);
    return out;
}

} // namespace

std::vector<std::uint8_t> serialize(const PublicKey &pk)
{
    auto out = header(tag_public_key, pk.ps.id);
    put_u32(out, std::uint32_t(pk.h.rows()));
    put_u32(out, std::uint32_t(pk.h.cols()));
    for (std::size_t r = 0; r < pk.h.rows(); ++r)
        put_row(out, pk.h, r);
    for (std::size_t r = 0; r < pk.s.rows(); ++r)
        put_row(out, pk.s, r);
    return out;
}

std::vector<std::uint8_t> serialize(const PrivateKey &sk)
{
    auto out = header(tag_private_key, sk.ps.id);
    put_u32(out, std::uint32_t(sk.e.rows()));
    put_u32(out, std::uint32_t(sk.e.cols()));
    for (std::size_t r = 0; r < sk.e.rows(); ++r)
        put_row(out, sk.e, r);
    return out;
}

std::vector<std::uint8_t> serialize(const Signature &sig, const ParameterSet &ps)
{
    auto out = header(tag_signature, ps.id);
    put_u32(out, std::uint32_t(sig.z.size()));
    put_u32(out, std::uint32_t(sig.c.size()));
    put_vector(out, sig.z);
    put_vector(out, sig.c);
    return out;
}

const ParameterSet &deserialized_params(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 8 || std::memcmp(bytes.data(), magic, 6) != 0)
        throw ParseError("bad magic", 0);
    try {
        return params_by_id(bytes[7]);
    } catch (const ParameterError &e) {
        throw ParseError(e.what(), 7);
    }
}

PublicKey deserialize_public_key(std::span<const std::uint8_t> bytes)
{
    const ParameterSet &ps = deserialized_params(bytes);
    Reader rd(bytes);
    rd.expect_header(tag_public_key);
    std::uint32_t rows = rd.u32(), cols = rd.u32();
    if (rows != ps.redundancy() || cols != ps.n)
        throw ParseError("public key dimensions disagree with parameter set", 8);
    PublicKey pk{ps, gf2::BitMatrix(rows, cols),
                 gf2::BitMatrix(ps.redundancy(), ps.k_prime)};
    for (std::size_t r = 0; r < pk.h.rows(); ++r)
        rd.read_row(pk.h, r);
    for (std::size_t r = 0; r < pk.s.rows(); ++r)
        rd.read_row(pk.s, r);
    rd.expect_end();
    return pk;
}

PrivateKey deserialize_private_key(std::span<const std::uint8_t> bytes)
{
    const ParameterSet &ps = deserialized_params(bytes);
    Reader rd(bytes);
    rd.expect_header(tag_private_key);
    std::uint32_t rows = rd.u32(), cols = rd.u32();
    if (rows != ps.k_prime || cols != ps.n)
        throw ParseError("private key dimensions disagree with parameter set", 8);
    PrivateKey sk{ps, gf2::BitMatrix(rows, cols), {}};
    for (std::size_t r = 0; r < sk.e.rows(); ++r)
        rd.read_row(sk.e, r);
    rd.expect_end();
    return sk;
}

Signature deserialize_signature(std::span<const std::uint8_t> bytes)
{
    const ParameterSet &ps = deserialized_params(bytes);
    Reader rd(bytes);
    rd.expect_header(tag_signature);
    std::uint32_t zlen = rd.u32(), clen = rd.u32();
    if (zlen != ps.n || clen != ps.k_prime)
        throw ParseError("signature dimensions disagree with parameter set", 8);
    Signature sig;
    sig.z = rd.read_vector(zlen);
    sig.c = rd.read_vector(clen);
    rd.expect_end();
    return sig;
}

void write_file(const std::string &path, std::span<const std::uint8_t> bytes)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char *>(bytes.data()), std::streamsize(bytes.size()));
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

std::vector<std::uint8_t> read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    std::vector<std::uint8_t> bytes(std::size_t(in.tellg()));
    in.seekg(0);
    in.read(reinterpret_cast<char *>(bytes.data()), std::streamsize(bytes.size()));
    if (!in)
        throw std::runtime_error("read failed: " + path);
    return bytes;
}

} // namespace shmww
