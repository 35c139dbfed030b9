/*------------------------------------------------------------------------
Kernel decomposition K = T * K_A and window-decoding profiles

The decoding window machinery follows the minimum-span form of the
constraint matrix theta' = (S|I) relating the kernel input u to the
Arikan input v = u * T:

    theta' * (u_{l-1}, ..., u_0, v_0, ..., v_{l-1})^T = 0.

Row i of the reduced form theta starts in column i and ends in a distinct
column z_i >= l; phase data j_i = z_{l-1-i} - l, h_i = max_{i'<=i} j_{i'}
and the windows D_i = {0..h_i} \ {j_0..j_i} drive the decoder and the
complexity model.

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
#include "kernel.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace polarwin {

/// T with K = T * K_A (K_A is self-inverse over GF(2)).
inline BitMatrix decompose(const Kernel& k) {
    return multiply(k.matrix, arikan_kernel(k.t));
}

/// theta' = (S|I) where S is T transposed with its columns reversed.
inline BitMatrix theta_prime(const BitMatrix& t_mat) {
    if (t_mat.rows() != t_mat.cols())
        throw std::invalid_argument("theta_prime: T must be square");
    const std::size_t l = t_mat.rows();
    BitMatrix th(l, 2 * l);
    for (std::size_t r = 0; r < l; ++r) {
        for (std::size_t c = 0; c < l; ++c)
            if (t_mat.get(l - 1 - c, r)) th.set(r, c, 1);
        th.set(r, l + r, 1);
    }
    return th;
}

struct MinSpanForm {
    BitMatrix theta;          // l x 2l, row i starts in column i
    std::vector<int> starts;  // = 0..l-1 by construction
    std::vector<int> ends;    // pairwise distinct, all >= l
};

/// Row-reduce (S|I) so that row i starts in column i and all end columns are
/// distinct. Step 1 left-multiplies by S^{-1}; step 2 repeatedly XORs the
/// later-starting of two rows sharing an end column into the earlier one,
/// which strictly shrinks the total span and therefore terminates.
inline MinSpanForm min_span_form(const BitMatrix& theta_p) {
    const std::size_t l = theta_p.rows();
    if (theta_p.cols() != 2 * l)
        throw std::invalid_argument("min_span_form: expected an l x 2l matrix");
    BitMatrix s(l, l);
    for (std::size_t r = 0; r < l; ++r)
        for (std::size_t c = 0; c < l; ++c)
            if (theta_p.get(r, c)) s.set(r, c, 1);
    BitMatrix s_inv = invert(s);

    MinSpanForm out{BitMatrix(l, 2 * l), {}, {}};
    for (std::size_t r = 0; r < l; ++r) {
        out.theta.set(r, r, 1);
        for (std::size_t c = 0; c < l; ++c)
            if (s_inv.get(r, c)) out.theta.set(r, l + c, 1);
    }

    std::vector<int> end(l);
    for (std::size_t r = 0; r < l; ++r) end[r] = out.theta.row_last_one(r);
    bool again = true;
    while (again) {
        again = false;
        for (std::size_t a = 0; a < l && !again; ++a)
            for (std::size_t b = a + 1; b < l && !again; ++b)
                if (end[a] == end[b]) {
                    out.theta.xor_rows(a, b);
                    end[a] = out.theta.row_last_one(a);
                    again = true;
                }
    }

    out.starts.resize(l);
    out.ends.resize(l);
    for (std::size_t r = 0; r < l; ++r) {
        out.starts[r] = out.theta.row_first_one(r);
        out.ends[r] = end[r];
    }
    return out;
}

struct WindowProfile {
    std::size_t l = 0;
    std::size_t t = 0;
    BitMatrix t_matrix{1, 1};  // T of K = T * K_A
    BitMatrix theta{1, 1};     // minimum-span form, l x 2l
    std::vector<int> z;        // end column of row i of theta
    std::vector<int> j;        // j_i = z_{l-1-i} - l
    std::vector<int> h;        // running maximum of j
    std::vector<std::vector<int>> windows;  // D_i
    std::vector<int> tau;      // last nonzero position in row i of T^{-1}

    // Masks over Eq.-(4)-style coefficients from theta row l-1-i:
    // u_i = parity(u_mask[i] & decided u bits) ^ parity(v_mask[i] & v bits).
    std::vector<std::uint64_t> u_mask;
    std::vector<std::uint64_t> v_mask;

    std::size_t window_size(std::size_t i) const { return windows[i].size(); }
};

inline WindowProfile window_profile(const Kernel& k) {
    const std::size_t l = k.l;
    if (l > 64)
        throw UnsupportedSizeError("window_profile: kernels larger than 64 are not supported");
    WindowProfile p;
    p.l = l;
    p.t = k.t;
    p.t_matrix = decompose(k);
    MinSpanForm msf = min_span_form(theta_prime(p.t_matrix));
    p.theta = std::move(msf.theta);
    p.z = msf.ends;

    p.j.resize(l);
    p.h.resize(l);
    for (std::size_t i = 0; i < l; ++i) {
        p.j[i] = p.z[l - 1 - i] - static_cast<int>(l);
        p.h[i] = (i == 0) ? p.j[0] : std::max(p.h[i - 1], p.j[i]);
    }

    p.windows.resize(l);
    std::vector<bool> pinned(l, false);
    for (std::size_t i = 0; i < l; ++i) {
        pinned[static_cast<std::size_t>(p.j[i])] = true;
        std::vector<int>& d = p.windows[i];
        for (int v = 0; v <= p.h[i]; ++v)
            if (!pinned[static_cast<std::size_t>(v)]) d.push_back(v);
    }

    BitMatrix t_inv = invert(p.t_matrix);
    p.tau.resize(l);
    for (std::size_t r = 0; r < l; ++r) p.tau[r] = t_inv.row_last_one(r);

    p.u_mask.assign(l, 0);
    p.v_mask.assign(l, 0);
    for (std::size_t i = 0; i < l; ++i) {
        const std::size_t row = l - 1 - i;
        for (std::size_t s = 0; s < i; ++s)
            if (p.theta.get(row, l - 1 - s)) p.u_mask[i] |= std::uint64_t(1) << s;
        for (int t = 0; t <= p.j[i]; ++t)
            if (p.theta.get(row, l + static_cast<std::size_t>(t)))
                p.v_mask[i] |= std::uint64_t(1) << t;
    }
    return p;
}

/// Eq.-(4)-style reconstruction of u_i from earlier u bits and v_0..v_{j_i}.
inline int reconstruct_u(const WindowProfile& p, std::span<const std::uint8_t> u_prefix,
                         std::span<const std::uint8_t> v_prefix, std::size_t i) {
    if (u_prefix.size() != i)
        throw std::invalid_argument("reconstruct_u: u prefix must have length i");
    if (v_prefix.size() < static_cast<std::size_t>(p.j[i]) + 1)
        throw std::invalid_argument("reconstruct_u: v prefix too short");
    int acc = 0;
    for (std::size_t s = 0; s < i; ++s)
        if ((p.u_mask[i] >> s) & 1u) acc ^= u_prefix[s] & 1;
    for (int t = 0; t <= p.j[i]; ++t)
        if ((p.v_mask[i] >> t) & 1u) acc ^= v_prefix[static_cast<std::size_t>(t)] & 1;
    return acc;
}

/// Mask-based variant used by the decoder hot path.
inline int reconstruct_u_bits(const WindowProfile& p, std::uint64_t u_bits,
                              std::uint64_t v_bits, std::size_t i) {
    return static_cast<int>((std::popcount(p.u_mask[i] & u_bits) +
                             std::popcount(p.v_mask[i] & v_bits)) & 1);
}

}  // namespace polarwin
