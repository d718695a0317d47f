#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

namespace shmww::gf2 {

using Word = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

inline std::size_t words_for(std::size_t bits) { return (bits + word_bits - 1) / word_bits; }

// Bit-packed binary vector. Padding bits in the last word are kept zero, so
// word-level equality equals logical equality.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t length) : len_(length), words_(words_for(length), 0) {}
    static BitVector from_bits(std::initializer_list<int> bits);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (words_[i / word_bits] >> (i % word_bits)) & 1u; }
    void set(std::size_t i, bool v = true)
    {
        Word mask = Word(1) << (i % word_bits);
        if (v)
            words_[i / word_bits] |= mask;
        else
            words_[i / word_bits] &= ~mask;
    }

    std::size_t weight() const;

    BitVector &operator^=(const BitVector &other);
    friend BitVector operator^(BitVector a, const BitVector &b) { return a ^= b; }
    friend BitVector operator&(const BitVector &a, const BitVector &b);
    bool operator==(const BitVector &other) const = default;

    const Word *data() const { return words_.data(); }
    Word *data() { return words_.data(); }
    std::size_t word_count() const { return words_.size(); }

    void clear_padding();

private:
    std::size_t len_ = 0;
    std::vector<Word> words_;
};

// Row-major bit-packed binary matrix with a fixed per-row word stride.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_(words_for(cols)), words_(rows * stride_, 0)
    {
    }
    static BitMatrix identity(std::size_t m);
    static BitMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return stride_; }

    bool get(std::size_t r, std::size_t c) const
    {
        return (row(r)[c / word_bits] >> (c % word_bits)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v = true)
    {
        Word mask = Word(1) << (c % word_bits);
        if (v)
            row(r)[c / word_bits] |= mask;
        else
            row(r)[c / word_bits] &= ~mask;
    }

    const Word *row(std::size_t r) const { return words_.data() + r * stride_; }
    Word *row(std::size_t r) { return words_.data() + r * stride_; }

    BitVector row_vector(std::size_t r) const;
    void set_row(std::size_t r, const BitVector &v);
    void xor_row_into(std::size_t r, BitVector &acc) const;

    bool operator==(const BitMatrix &other) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<Word> words_;
};

// result[i] = <row_i(m), v> over GF(2)
BitVector mat_vec_mul(const BitMatrix &m, const BitVector &v);

// XOR of rows of m selected by the set bits of v.
BitVector vec_mat_mul(const BitVector &v, const BitMatrix &m);

BitMatrix mat_mul(const BitMatrix &a, const BitMatrix &b);
BitMatrix transpose(const BitMatrix &m);

std::size_t rank(BitMatrix m);
bool is_invertible(const BitMatrix &a);

// Unique solution of a*x = b for square a; nullopt when a is singular.
// Inputs are never mutated.
std::optional<BitVector> solve_square(const BitMatrix &a, const BitVector &b);

// Solves a*X = B column-wise for square a; columns of B are independent
// right-hand sides, column j of the result solves the j-th one.
std::optional<BitMatrix> solve_square_multi(const BitMatrix &a, const BitMatrix &b);

} // namespace shmww::gf2
