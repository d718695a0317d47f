#include "shmww/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace shmww {

Rng::Rng(std::string_view seed) : gen_(0)
{
    if (seed.empty())
        throw std::invalid_argument("Rng: empty seed");
    // FNV-1a folded into the 64-bit seed word.
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : seed) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    gen_.seed(h);
}

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound == 0)
        throw std::invalid_argument("Rng::below: zero bound");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do
        x = gen_();
    while (x >= limit);
    return x % bound;
}

std::vector<std::uint32_t> Rng::permutation(std::size_t n)
{
    std::vector<std::uint32_t> p(n);
    std::iota(p.begin(), p.end(), 0u);
    for (std::size_t i = n; i > 1; --i)
        std::swap(p[i - 1], p[below(i)]);
    return p;
}

std::vector<std::uint32_t> Rng::sample_distinct(std::size_t w, std::size_t n)
{
    if (w > n)
        throw std::invalid_argument("sample_distinct: w > n");
    std::vector<std::uint32_t> p(n);
    std::iota(p.begin(), p.end(), 0u);
    for (std::size_t i = 0; i < w; ++i)
        std::swap(p[i], p[i + below(n - i)]);
    p.resize(w);
    return p;
}

gf2::BitVector Rng::random_vector(std::size_t len)
{
    gf2::BitVector v(len);
    for (std::size_t i = 0; i < v.word_count(); ++i)
        v.data()[i] = gen_();
    v.clear_padding();
    return v;
}

gf2::BitVector Rng::fixed_weight_vector(std::size_t len, std::size_t w)
{
    gf2::BitVector v(len);
    for (std::uint32_t pos : sample_distinct(w, len))
        v.set(pos);
    return v;
}

gf2::BitMatrix Rng::random_matrix(std::size_t rows, std::size_t cols)
{
    gf2::BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        m.set_row(r, random_vector(cols));
    return m;
}

} // namespace shmww
