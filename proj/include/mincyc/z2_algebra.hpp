#ifndef MINCYC_Z2_ALGEBRA_HPP
#define MINCYC_Z2_ALGEBRA_HPP

/**
 * Dense linear algebra over GF(2).
 *
 * Vectors are packed 64 bits per word; bit i of the vector lives in word
 * i / 64 at position i % 64. Matrices are stored as rows of equal length and
 * chains are treated as column vectors, so the boundary matrix of dimension k
 * has one row per (k-1)-simplex and one column per k-simplex.
 */

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mincyc/error.hpp"

namespace mincyc {

class BitVector {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

    static BitVector unit(std::size_t size, std::size_t index)
    {
        BitVector v(size);
        v.set(index);
        return v;
    }

    /// Parses a string of '0'/'1' characters, coordinate 0 first.
    static BitVector from_bits(std::string_view bits)
    {
        BitVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1')
                v.set(i);
            else if (bits[i] != '0')
                throw Error(ErrorCode::ParseError, "bad bit character in '" + std::string(bits) + "'");
        }
        return v;
    }

    std::size_t size() const noexcept { return size_; }
    std::size_t word_count() const noexcept { return words_.size(); }
    const std::vector<Word>& words() const noexcept { return words_; }

    bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    bool operator[](std::size_t i) const noexcept { return test(i); }
    void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
    void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
    void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }
    void assign(std::size_t i, bool value) noexcept { value ? set(i) : reset(i); }

    bool any() const noexcept
    {
        return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
    }
    bool none() const noexcept { return !any(); }

    std::size_t count() const noexcept
    {
        std::size_t c = 0;
        for (Word w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// Index of the lowest set bit, or size() when the vector is zero.
    std::size_t first_set() const noexcept { return next_set(0); }

    /// Index of the lowest set bit at position >= from, or size() if none.
    std::size_t next_set(std::size_t from) const noexcept
    {
        if (from >= size_)
            return size_;
        std::size_t wi = from / kWordBits;
        Word w = words_[wi] & (~Word{0} << (from % kWordBits));
        while (true) {
            if (w != 0)
                return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi == words_.size())
                return size_;
            w = words_[wi];
        }
    }

    template <typename F>
    void for_each_set(F&& f) const
    {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            Word w = words_[wi];
            while (w != 0) {
                f(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> set_indices() const
    {
        std::vector<std::size_t> out;
        for_each_set([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    BitVector& operator^=(const BitVector& other)
    {
        check_same_size(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] ^= other.words_[i];
        return *this;
    }

    BitVector& operator&=(const BitVector& other)
    {
        check_same_size(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= other.words_[i];
        return *this;
    }

    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

    /// Parity of the inner product.
    bool dot(const BitVector& other) const
    {
        check_same_size(other);
        Word acc = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            acc ^= words_[i] & other.words_[i];
        return (std::popcount(acc) & 1) != 0;
    }

    friend bool operator==(const BitVector& a, const BitVector& b) = default;

    /// Lexicographic order on the coordinate sequence (coordinate 0 first, 0 < 1);
    /// shorter vectors order first.
    friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) noexcept
    {
        if (a.size_ != b.size_)
            return a.size_ <=> b.size_;
        for (std::size_t i = 0; i < a.words_.size(); ++i) {
            const Word d = a.words_[i] ^ b.words_[i];
            if (d != 0) {
                const Word low = d & (~d + 1);
                return (a.words_[i] & low) == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
            }
        }
        return std::strong_ordering::equal;
    }

    /// '0'/'1' string, coordinate 0 first.
    std::string to_bits() const
    {
        std::string s(size_, '0');
        for_each_set([&](std::size_t i) { s[i] = '1'; });
        return s;
    }

    /// Hex of the integer whose bit k is coordinate k, most significant digit
    /// first, ceil(size/4) digits (empty for a zero-length vector).
    std::string to_hex() const
    {
        static constexpr char kDigits[] = "0123456789abcdef";
        const std::size_t digits = (size_ + 3) / 4;
        std::string s(digits, '0');
        for (std::size_t d = 0; d < digits; ++d) {
            unsigned nibble = 0;
            for (std::size_t b = 0; b < 4; ++b) {
                const std::size_t i = d * 4 + b;
                if (i < size_ && test(i))
                    nibble |= 1U << b;
            }
            s[digits - 1 - d] = kDigits[nibble];
        }
        return s;
    }

    std::size_t hash() const noexcept
    {
        std::size_t h = size_ * 0x9e3779b97f4a7c15ULL;
        for (Word w : words_)
            h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

private:
    void check_same_size(const BitVector& other) const
    {
        if (other.size_ != size_)
            throw Error(ErrorCode::DimensionMismatch,
                        "bit-vector lengths differ: " + std::to_string(size_) + " vs " + std::to_string(other.size_));
    }

    std::size_t size_ = 0;
    std::vector<Word> words_;
};

struct BitVectorHash {
    std::size_t operator()(const BitVector& v) const noexcept { return v.hash(); }
};

class Z2Matrix {
public:
    Z2Matrix() = default;
    Z2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    static Z2Matrix identity(std::size_t n)
    {
        Z2Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.rows_[i].set(i);
        return m;
    }

    static Z2Matrix from_rows(std::vector<BitVector> rows, std::size_t cols)
    {
        for (const auto& r : rows)
            if (r.size() != cols)
                throw Error(ErrorCode::DimensionMismatch, "matrix rows must all have the column count as length");
        Z2Matrix m;
        m.cols_ = cols;
        m.rows_ = std::move(rows);
        return m;
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    static Z2Matrix from_columns(const std::vector<BitVector>& columns, std::size_t rows)
    {
        Z2Matrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows)
                throw Error(ErrorCode::DimensionMismatch, "column length differs from row count");
            columns[j].for_each_set([&](std::size_t i) { m.rows_[i].set(j); });
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t r, std::size_t c) const noexcept { return rows_[r].test(c); }
    void set(std::size_t r, std::size_t c, bool value = true) noexcept { rows_[r].assign(c, value); }
    void flip(std::size_t r, std::size_t c) noexcept { rows_[r].flip(c); }

    const BitVector& row(std::size_t r) const noexcept { return rows_[r]; }
    BitVector& row(std::size_t r) noexcept { return rows_[r]; }
    const std::vector<BitVector>& row_list() const noexcept { return rows_; }

    BitVector column(std::size_t c) const
    {
        BitVector v(rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (rows_[r].test(c))
                v.set(r);
        return v;
    }

    Z2Matrix transpose() const
    {
        Z2Matrix t(cols_, rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r)
            rows_[r].for_each_set([&](std::size_t c) { t.rows_[c].set(r); });
        return t;
    }

    BitVector multiply(const BitVector& x) const
    {
        if (x.size() != cols_)
            throw Error(ErrorCode::DimensionMismatch, "vector length differs from column count");
        BitVector y(rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (rows_[r].dot(x))
                y.set(r);
        return y;
    }

    friend bool operator==(const Z2Matrix&, const Z2Matrix&) = default;

private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

struct RrefResult {
    Z2Matrix reduced;
    std::vector<std::size_t> pivots; ///< pivot column of row i, for i < rank
    std::size_t rank = 0;
};

/// Reduced row echelon form. Pivots are taken leftmost-first, from the lowest
/// available row, so the result is a pure function of the input.
inline RrefResult rref(Z2Matrix m)
{
    RrefResult out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && !m.get(p, c))
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            std::swap(m.row(p), m.row(r));
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c))
                m.row(i) ^= m.row(r);
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.reduced = std::move(m);
    return out;
}

inline std::size_t rank(const Z2Matrix& m) { return rref(m).rank; }

/// Some w with m*w = b, free variables set to zero; nullopt when inconsistent.
inline std::optional<BitVector> solve(const Z2Matrix& m, const BitVector& b)
{
    if (b.size() != m.rows())
        throw Error(ErrorCode::DimensionMismatch,
                    "right-hand side has length " + std::to_string(b.size()) + ", matrix has " +
                        std::to_string(m.rows()) + " rows");
    // Augment with b as an extra trailing column.
    const std::size_t n = m.cols();
    Z2Matrix aug(m.rows(), n + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        m.row(r).for_each_set([&](std::size_t c) { aug.set(r, c); });
        if (b.test(r))
            aug.set(r, n);
    }
    const RrefResult red = rref(std::move(aug));
    if (red.rank > 0 && red.pivots[red.rank - 1] == n)
        return std::nullopt;
    BitVector w(n);
    for (std::size_t i = 0; i < red.rank; ++i)
        if (red.reduced.get(i, n))
            w.set(red.pivots[i]);
    return w;
}

/// Null-space basis, one vector per free column in ascending order.
inline std::vector<BitVector> kernel_basis(const Z2Matrix& m)
{
    const RrefResult red = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : red.pivots)
        is_pivot[p] = true;
    std::vector<BitVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        BitVector v(m.cols());
        v.set(f);
        for (std::size_t i = 0; i < red.rank; ++i)
            if (red.reduced.get(i, f))
                v.set(red.pivots[i]);
        basis.push_back(std::move(v));
    }
    return basis;
}

/**
 * Incrementally maintained echelon basis of a subspace of GF(2)^n.
 *
 * Each stored vector has a distinct leading (lowest) set bit, so membership
 * tests and reductions run in O(rank * n / 64).
 */
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t dim) : dim_(dim), by_lead_(dim, kNone) {}

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return vectors_.size(); }

    BitVector reduce(BitVector v) const
    {
        std::size_t lead = v.first_set();
        while (lead < dim_) {
            const std::size_t idx = by_lead_[lead];
            if (idx == kNone) {
                lead = v.next_set(lead + 1);
                continue;
            }
            v ^= vectors_[idx];
            lead = v.next_set(lead + 1);
        }
        return v;
    }

    bool contains(const BitVector& v) const { return reduce(v).none(); }

    /// Adds v to the span; returns false if v was already in it.
    bool insert(const BitVector& v)
    {
        BitVector r = reduce(v);
        const std::size_t lead = r.first_set();
        if (lead >= dim_)
            return false;
        by_lead_[lead] = vectors_.size();
        vectors_.push_back(std::move(r));
        return true;
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    std::size_t dim_;
    std::vector<std::size_t> by_lead_;
    std::vector<BitVector> vectors_;
};

} // namespace mincyc

#endif
