/*------------------------------------------------------------------------
Bit-packed GF(2) matrices and elementary linear algebra

Copyright 2026 The polarwin authors

Licensed under the Apache License,
Version 2.0(the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
--------------------------------------------------------------------------*/
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polarwin {

struct SingularMatrixError : std::runtime_error {
    SingularMatrixError() : std::runtime_error("matrix is singular over GF(2)") {}
};

struct UnsupportedSizeError : std::runtime_error {
    explicit UnsupportedSizeError(const std::string& what) : std::runtime_error(what) {}
};

/// Dense GF(2) matrix, rows packed into 64-bit words.
class BitMatrix {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + kWordBits - 1) / kWordBits) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("BitMatrix: dimensions must be positive");
        data_.assign(rows_ * stride_, 0);
    }

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    /// Build from rows of '0'/'1' characters, e.g. {"10","11"}.
    static BitMatrix from_rows(const std::vector<std::string>& rows) {
        if (rows.empty()) throw std::invalid_argument("from_rows: no rows");
        BitMatrix m(rows.size(), rows[0].size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != m.cols_)
                throw std::invalid_argument("from_rows: ragged rows");
            for (std::size_t c = 0; c < m.cols_; ++c) {
                char ch = rows[r][c];
                if (ch != '0' && ch != '1')
                    throw std::invalid_argument("from_rows: invalid character");
                if (ch == '1') m.set(r, c, 1);
            }
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return stride_; }

    int get(std::size_t r, std::size_t c) const {
        return static_cast<int>((word(r, c / kWordBits) >> (c % kWordBits)) & 1u);
    }

    void set(std::size_t r, std::size_t c, int v) {
        Word mask = Word(1) << (c % kWordBits);
        Word& w = data_[r * stride_ + c / kWordBits];
        if (v) w |= mask; else w &= ~mask;
    }

    const Word* row_ptr(std::size_t r) const { return data_.data() + r * stride_; }
    Word* row_ptr(std::size_t r) { return data_.data() + r * stride_; }

    /// Low word of a row; the whole row when cols <= 64.
    Word row_bits(std::size_t r) const { return data_[r * stride_]; }

    void xor_rows(std::size_t dst, std::size_t src) {
        Word* d = row_ptr(dst);
        const Word* s = row_ptr(src);
        for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
    }

    /// dst row ^= row src_r of other (same column count required).
    void xor_row_from(std::size_t dst, const BitMatrix& other, std::size_t src_r) {
        Word* d = row_ptr(dst);
        const Word* s = other.row_ptr(src_r);
        for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        Word* pa = row_ptr(a);
        Word* pb = row_ptr(b);
        for (std::size_t w = 0; w < stride_; ++w) std::swap(pa[w], pb[w]);
    }

    std::size_t row_weight(std::size_t r) const {
        std::size_t n = 0;
        const Word* p = row_ptr(r);
        for (std::size_t w = 0; w < stride_; ++w) n += std::popcount(p[w]);
        return n;
    }

    /// Column of the first set bit in row r, or -1 if the row is zero.
    int row_first_one(std::size_t r) const {
        const Word* p = row_ptr(r);
        for (std::size_t w = 0; w < stride_; ++w)
            if (p[w]) return static_cast<int>(w * kWordBits + std::countr_zero(p[w]));
        return -1;
    }

    /// Column of the last set bit in row r, or -1 if the row is zero.
    int row_last_one(std::size_t r) const {
        const Word* p = row_ptr(r);
        for (std::size_t w = stride_; w-- > 0;)
            if (p[w]) return static_cast<int>(w * kWordBits + (kWordBits - 1 - std::countl_zero(p[w])));
        return -1;
    }

    BitMatrix transposed() const {
        BitMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (get(r, c)) t.set(c, r, 1);
        return t;
    }

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const BitMatrix& o) const { return !(*this == o); }

private:
    Word word(std::size_t r, std::size_t w) const { return data_[r * stride_ + w]; }

    std::size_t rows_;
    std::size_t cols_;
    std::size_t stride_;
    std::vector<Word> data_;
};

inline BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("multiply: dimension mismatch");
    BitMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (a.get(i, k)) r.xor_row_from(i, b, k);
    return r;
}

/// Gauss-Jordan inverse; throws SingularMatrixError when rank < n.
inline BitMatrix invert(const BitMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("invert: matrix must be square");
    const std::size_t n = a.rows();
    BitMatrix m = a;
    BitMatrix inv = BitMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && !m.get(pivot, col)) ++pivot;
        if (pivot == n) throw SingularMatrixError();
        m.swap_rows(col, pivot);
        inv.swap_rows(col, pivot);
        for (std::size_t r = 0; r < n; ++r) {
            if (r != col && m.get(r, col)) {
                m.xor_rows(r, col);
                inv.xor_rows(r, col);
            }
        }
    }
    return inv;
}

inline std::size_t rank(const BitMatrix& a) {
    BitMatrix m = a;
    std::size_t rk = 0;
    for (std::size_t col = 0; col < m.cols() && rk < m.rows(); ++col) {
        std::size_t pivot = rk;
        while (pivot < m.rows() && !m.get(pivot, col)) ++pivot;
        if (pivot == m.rows()) continue;
        m.swap_rows(rk, pivot);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != rk && m.get(r, col)) m.xor_rows(r, rk);
        ++rk;
    }
    return rk;
}

inline BitMatrix kronecker(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            if (!a.get(ia, ja)) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    if (b.get(ib, jb))
                        r.set(ia * b.rows() + ib, ja * b.cols() + jb, 1);
        }
    return r;
}

/// n-fold Kronecker power. Guarded so a runaway n cannot exhaust memory.
inline BitMatrix kronecker_power(const BitMatrix& a, std::size_t n,
                                 std::size_t max_dim = 1u << 13) {
    if (n < 1) throw std::invalid_argument("kronecker_power: n must be >= 1");
    if (a.rows() != a.cols())
        throw std::invalid_argument("kronecker_power: matrix must be square");
    std::size_t dim = 1;
    for (std::size_t i = 0; i < n; ++i) {
        dim *= a.rows();
        if (dim > max_dim)
            throw UnsupportedSizeError("kronecker_power: result dimension exceeds limit");
    }
    BitMatrix r = a;
    for (std::size_t i = 1; i < n; ++i) r = kronecker(r, a);
    return r;
}

/// The Arikan kernel F_2.
inline BitMatrix arikan_f2() {
    return BitMatrix::from_rows({"10", "11"});
}

/// K_A = F_2^{(x) t}, the 2^t x 2^t Arikan kernel.
inline BitMatrix arikan_kernel(std::size_t t) {
    return kronecker_power(arikan_f2(), t);
}

}  // namespace polarwin
