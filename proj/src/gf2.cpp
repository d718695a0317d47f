#include "shmww/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace shmww::gf2 {

BitVector BitVector::from_bits(std::initializer_list<int> bits)
{
    BitVector v(bits.size());
    std::size_t i = 0;
    for (int b : bits)
        v.set(i++, b != 0);
    return v;
}

std::size_t BitVector::weight() const
{
    std::size_t w = 0;
    for (Word x : words_)
        w += std::size_t(std::popcount(x));
    return w;
}

BitVector &BitVector::operator^=(const BitVector &other)
{
    if (len_ != other.len_)
        throw std::invalid_argument("BitVector xor: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] ^= other.words_[i];
    return *this;
}

BitVector operator&(const BitVector &a, const BitVector &b)
{
    if (a.len_ != b.len_)
        throw std::invalid_argument("BitVector and: length mismatch");
    BitVector r(a.len_);
    for (std::size_t i = 0; i < r.words_.size(); ++i)
        r.words_[i] = a.words_[i] & b.words_[i];
    return r;
}

void BitVector::clear_padding()
{
    if (len_ % word_bits != 0 && !words_.empty())
        words_.back() &= (Word(1) << (len_ % word_bits)) - 1;
}

BitMatrix BitMatrix::identity(std::size_t m)
{
    BitMatrix a(m, m);
    for (std::size_t i = 0; i < m; ++i)
        a.set(i, i);
    return a;
}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows)
{
    std::size_t nr = rows.size();
    std::size_t nc = nr ? rows.begin()->size() : 0;
    BitMatrix a(nr, nc);
    std::size_t r = 0;
    for (const auto &row : rows) {
        if (row.size() != nc)
            throw std::invalid_argument("BitMatrix: ragged rows");
        std::size_t c = 0;
        for (int b : row)
            a.set(r, c++, b != 0);
        ++r;
    }
    return a;
}

BitVector BitMatrix::row_vector(std::size_t r) const
{
    BitVector v(cols_);
    std::copy(row(r), row(r) + stride_, v.data());
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector &v)
{
    if (v.size() != cols_)
        throw std::invalid_argument("set_row: length mismatch");
    std::copy(v.data(), v.data() + stride_, row(r));
}

void BitMatrix::xor_row_into(std::size_t r, BitVector &acc) const
{
    if (acc.size() != cols_)
        throw std::invalid_argument("xor_row_into: length mismatch");
    const Word *src = row(r);
    Word *dst = acc.data();
    for (std::size_t i = 0; i < stride_; ++i)
        dst[i] ^= src[i];
}

BitVector mat_vec_mul(const BitMatrix &m, const BitVector &v)
{
    if (v.size() != m.cols())
        throw std::invalid_argument("mat_vec_mul: dimension mismatch");
    BitVector out(m.rows());
    const Word *vw = v.data();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const Word *rw = m.row(r);
        Word acc = 0;
        for (std::size_t i = 0; i < m.stride(); ++i)
            acc ^= rw[i] & vw[i];
        out.set(r, std::popcount(acc) & 1);
    }
    return out;
}

BitVector vec_mat_mul(const BitVector &v, const BitMatrix &m)
{
    if (v.size() != m.rows())
        throw std::invalid_argument("vec_mat_mul: dimension mismatch");
    BitVector out(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (v.get(r))
            m.xor_row_into(r, out);
    return out;
}

BitMatrix mat_mul(const BitMatrix &a, const BitMatrix &b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("mat_mul: dimension mismatch");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        Word *dst = out.row(r);
        const Word *ar = a.row(r);
        for (std::size_t j = 0; j < a.cols(); ++j)
            if ((ar[j / word_bits] >> (j % word_bits)) & 1u) {
                const Word *src = b.row(j);
                for (std::size_t i = 0; i < b.stride(); ++i)
                    dst[i] ^= src[i];
            }
    }
    return out;
}

BitMatrix transpose(const BitMatrix &m)
{
    BitMatrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const Word *rw = m.row(r);
        for (std::size_t i = 0; i < m.stride(); ++i) {
            Word w = rw[i];
            while (w) {
                std::size_t c = i * word_bits + std::size_t(std::countr_zero(w));
                out.set(c, r);
                w &= w - 1;
            }
        }
    }
    return out;
}

namespace {

// Forward elimination on a working copy; returns the number of pivots.
std::size_t echelonize(BitMatrix &m)
{
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && !m.get(piv, c))
            ++piv;
        if (piv == m.rows())
            continue;
        if (piv != r)
            for (std::size_t i = c / word_bits; i < m.stride(); ++i)
                std::swap(m.row(r)[i], m.row(piv)[i]);
        const Word *pr = m.row(r);
        std::size_t wstart = c / word_bits;
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            Word *ir = m.row(i);
            if ((ir[c / word_bits] >> (c % word_bits)) & 1u)
                for (std::size_t w = wstart; w < m.stride(); ++w)
                    ir[w] ^= pr[w];
        }
        ++r;
    }
    return r;
}

// Gauss-Jordan on the augmented matrix [a | rhs]; on success the rhs part of
// row i holds the i-th solution coordinates. False when a is singular.
bool reduce_augmented(BitMatrix &aug, std::size_t m)
{
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t piv = c;
        while (piv < m && !aug.get(piv, c))
            ++piv;
        if (piv == m)
            return false;
        if (piv != c)
            for (std::size_t i = c / word_bits; i < aug.stride(); ++i)
                std::swap(aug.row(c)[i], aug.row(piv)[i]);
        const Word *pr = aug.row(c);
        std::size_t wstart = c / word_bits;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == c)
                continue;
            Word *ir = aug.row(i);
            if ((ir[c / word_bits] >> (c % word_bits)) & 1u)
                for (std::size_t w = wstart; w < aug.stride(); ++w)
                    ir[w] ^= pr[w];
        }
    }
    return true;
}

} // namespace

std::size_t rank(BitMatrix m)
{
    return echelonize(m);
}

bool is_invertible(const BitMatrix &a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("is_invertible: matrix not square");
    return rank(a) == a.rows();
}

std::optional<BitVector> solve_square(const BitMatrix &a, const BitVector &b)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("solve_square: matrix not square");
    if (b.size() != a.rows())
        throw std::invalid_argument("solve_square: dimension mismatch");
    std::size_t m = a.rows();
    BitMatrix aug(m, m + 1);
    for (std::size_t r = 0; r < m; ++r) {
        std::copy(a.row(r), a.row(r) + a.stride(), aug.row(r));
        aug.set(r, m, b.get(r));
    }
    if (!reduce_augmented(aug, m))
        return std::nullopt;
    BitVector x(m);
    for (std::size_t r = 0; r < m; ++r)
        x.set(r, aug.get(r, m));
    return x;
}

std::optional<BitMatrix> solve_square_multi(const BitMatrix &a, const BitMatrix &b)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("solve_square_multi: matrix not square");
    if (b.rows() != a.rows())
        throw std::invalid_argument("solve_square_multi: dimension mismatch");
    std::size_t m = a.rows();
    std::size_t r = b.cols();
    BitMatrix aug(m, m + r);
    for (std::size_t i = 0; i < m; ++i) {
        std::copy(a.row(i), a.row(i) + a.stride(), aug.row(i));
        const Word *br = b.row(i);
        for (std::size_t j = 0; j < r; ++j)
            if ((br[j / word_bits] >> (j % word_bits)) & 1u)
                aug.set(i, m + j);
    }
    if (!reduce_augmented(aug, m))
        return std::nullopt;
    BitMatrix x(m, r);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (aug.get(i, m + j))
                x.set(i, j);
    return x;
}

} // namespace shmww::gf2
