/*------------------------------------------------------------------------
Polarization kernels: validation, column permutations, partial distances

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

#include "bit_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace polarwin {

/// An l x l invertible GF(2) polarization kernel, l = 2^t.
struct Kernel {
    BitMatrix matrix{1, 1};
    std::size_t l = 0;
    std::size_t t = 0;
    std::string name;

    static Kernel create(BitMatrix m, std::string name = {}) {
        if (m.rows() != m.cols())
            throw std::invalid_argument("kernel must be square");
        std::size_t l = m.rows();
        if (l < 2 || (l & (l - 1)) != 0)
            throw std::invalid_argument("kernel dimension must be a power of two >= 2");
        invert(m);  // throws SingularMatrixError when not invertible
        Kernel k;
        k.l = l;
        k.t = static_cast<std::size_t>(std::countr_zero(l));
        k.matrix = std::move(m);
        k.name = std::move(name);
        return k;
    }
};

/// True iff no column permutation of k is upper triangular. Checked by
/// bottom-up peeling: for an upper triangular arrangement the last row must
/// have weight 1 within the remaining columns; remove it with its column and
/// repeat. The kernel is triangularizable iff peeling consumes every row.
inline bool is_polarizing(const Kernel& k) {
    const std::size_t l = k.l;
    std::vector<std::uint64_t> rows(l);
    for (std::size_t r = 0; r < l; ++r) rows[r] = k.matrix.row_bits(r);
    std::uint64_t live_cols = (l == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << l) - 1);
    for (std::size_t r = l; r-- > 0;) {
        std::uint64_t support = rows[r] & live_cols;
        if (std::popcount(support) != 1) return true;  // peeling stuck
        live_cols &= ~support;
    }
    return false;
}

/// Output column c takes input column pi[c]; pi is 0-based here.
inline Kernel permute_columns(const Kernel& k, const std::vector<std::size_t>& pi) {
    const std::size_t l = k.l;
    if (pi.size() != l)
        throw std::invalid_argument("permutation length does not match kernel size");
    std::vector<bool> seen(l, false);
    for (std::size_t v : pi) {
        if (v >= l || seen[v])
            throw std::invalid_argument("column permutation is not a bijection");
        seen[v] = true;
    }
    BitMatrix m(l, l);
    for (std::size_t r = 0; r < l; ++r)
        for (std::size_t c = 0; c < l; ++c)
            if (k.matrix.get(r, pi[c])) m.set(r, c, 1);
    Kernel out = k;
    out.matrix = std::move(m);
    return out;
}

inline std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& pi) {
    std::vector<std::size_t> inv(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) inv[pi[i]] = i;
    return inv;
}

/// Row Hamming weights as a sorted multiset.
inline std::vector<std::size_t> hamming_weight_multiset(const BitMatrix& m) {
    std::vector<std::size_t> w(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) w[r] = m.row_weight(r);
    std::sort(w.begin(), w.end());
    return w;
}

/// D_i = minimum Hamming distance from row i to the span of rows i+1..l-1.
/// Brute force over the 2^(l-1-i) coset representatives; limited to l <= 16.
inline std::vector<std::size_t> partial_distances(const Kernel& k) {
    const std::size_t l = k.l;
    if (l > 16)
        throw UnsupportedSizeError("partial_distances: brute force limited to l <= 16");
    std::vector<std::uint32_t> rows(l);
    for (std::size_t r = 0; r < l; ++r) rows[r] = static_cast<std::uint32_t>(k.matrix.row_bits(r));
    std::vector<std::size_t> d(l);
    for (std::size_t i = 0; i < l; ++i) {
        const std::size_t m = l - 1 - i;
        std::uint32_t acc = rows[i];
        std::size_t best = std::popcount(acc);
        // Gray-code walk over all combinations of the rows below row i.
        for (std::uint32_t g = 1; g < (std::uint32_t(1) << m); ++g) {
            acc ^= rows[i + 1 + std::countr_zero(g)];
            best = std::min<std::size_t>(best, std::popcount(acc));
        }
        d[i] = best;
    }
    return d;
}

/// Rate of polarization (1/l) * sum_i log_l(D_i).
inline double error_exponent(const Kernel& k) {
    std::vector<std::size_t> d = partial_distances(k);
    double s = 0.0;
    for (std::size_t di : d) s += std::log(static_cast<double>(di));
    return s / (static_cast<double>(k.l) * std::log(static_cast<double>(k.l)));
}

}  // namespace polarwin
