/*------------------------------------------------------------------------
Min-sum Arikan LLR engine with per-phase child caching

One engine evaluates the top-level LLRs S_t^(p) of a single K_A = F_2^{(x)t}
layer, phase by phase, for one candidate input prefix. Children (a, b) of
an even phase are cached per tree node and reused by the following odd
phase, so the operation count of phase p is exactly the channel cost C_p.

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

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

namespace polarwin {

struct OpCounter {
    std::uint64_t ops = 0;
    void add(std::uint64_t n = 1) { ops += n; }
};

/// Q(a,b) = sgn(a) sgn(b) min(|a|,|b|), with sgn(0) = +1.
inline double q_fun(double a, double b) {
    double m = std::min(std::fabs(a), std::fabs(b));
    return ((a < 0) != (b < 0)) ? -m : m;
}

/// P(a,b,c) = (-1)^c a + b.
inline double p_fun(double a, double b, int c) {
    return c ? b - a : a + b;
}

/// Penalty tau(S, v): 0 when the hard decision of S equals v, else -|S|.
inline double penalty(double s, int v) {
    bool agree = (s >= 0.0) == (v == 0);
    return agree ? 0.0 : -std::fabs(s);
}

/// Path score recursion: R' = R + tau(S, v).
inline double score_update(double score, double llr, int bit) {
    return score + penalty(llr, bit);
}

class ArikanEngine {
public:
    ArikanEngine() = default;

    ArikanEngine(std::shared_ptr<const std::vector<double>> channel_llrs, std::size_t t)
        : y_(std::move(channel_llrs)),
          t_(t),
          a_(std::size_t(1) << t, 0.0),
          b_(std::size_t(1) << t, 0.0),
          stash_(std::size_t(1) << t, 0) {}

    /// S_t^(phase) given the committed bits v_0..v_{phase-1}. Phases must be
    /// evaluated in increasing order, interleaved with commit().
    double llr(std::size_t phase, OpCounter& ops) {
        return rec_llr(1, t_, phase, 0, 1, ops);
    }

    void commit(std::size_t phase, int bit) { rec_commit(1, t_, phase, bit); }

private:
    double rec_llr(std::size_t node, std::size_t lambda, std::size_t i,
                   std::size_t off, std::size_t stride, OpCounter& ops) {
        if (lambda == 0) return (*y_)[off];
        if ((i & 1u) == 0) {
            a_[node] = rec_llr(2 * node, lambda - 1, i >> 1, off, 2 * stride, ops);
            b_[node] = rec_llr(2 * node + 1, lambda - 1, i >> 1, off + stride, 2 * stride, ops);
            ops.add();
            return q_fun(a_[node], b_[node]);
        }
        ops.add();
        return p_fun(a_[node], b_[node], stash_[node]);
    }

    void rec_commit(std::size_t node, std::size_t lambda, std::size_t i, int bit) {
        if (lambda == 0) return;
        if ((i & 1u) == 0) {
            stash_[node] = static_cast<std::uint8_t>(bit);
            return;
        }
        rec_commit(2 * node, lambda - 1, i >> 1, stash_[node] ^ bit);
        rec_commit(2 * node + 1, lambda - 1, i >> 1, bit);
    }

    std::shared_ptr<const std::vector<double>> y_;
    std::size_t t_ = 0;
    std::vector<double> a_;
    std::vector<double> b_;
    std::vector<std::uint8_t> stash_;
};

/// Replay helper: min-sum LLR of Arikan phase i at level `t` for a given
/// prefix, evaluated from scratch.
inline double arikan_llr(std::size_t t, std::size_t i,
                         const std::vector<std::uint8_t>& v_prefix,
                         const std::vector<double>& llrs) {
    if (llrs.size() != (std::size_t(1) << t))
        throw std::invalid_argument("arikan_llr: llr count must be 2^t");
    if (v_prefix.size() < i)
        throw std::invalid_argument("arikan_llr: prefix too short");
    ArikanEngine eng(std::make_shared<const std::vector<double>>(llrs), t);
    OpCounter ops;
    for (std::size_t p = 0; p < i; ++p) {
        eng.llr(p, ops);
        eng.commit(p, v_prefix[p]);
    }
    return eng.llr(i, ops);
}

/// In-place x -> x * F_2^{(x)m} over GF(2).
template <class Bit>
inline void arikan_transform(Bit* data, std::size_t log_len) {
    std::size_t n = std::size_t(1) << log_len;
    std::size_t blocks = 1;
    while (n > 1) {
        n >>= 1;
        for (std::size_t k = 0; k < blocks; ++k)
            for (std::size_t j = 2 * k * n; j < (2 * k + 1) * n; ++j)
                data[j] ^= data[j + n];
        blocks <<= 1;
    }
}

}  // namespace polarwin
