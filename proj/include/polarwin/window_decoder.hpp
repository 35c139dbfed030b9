/*------------------------------------------------------------------------
Window processing of one kernel layer, plus a brute-force oracle

The processor keeps every Arikan input prefix v_0^{h_i} that is consistent
with the committed kernel bits u_0^{i-1}, together with its path score R.
Phase i extends the paths to depth h_i (free window bits fork, the pinned
bit carries the u_i hypothesis), and the phase LLR is

    max_{paths with u_i=0} R  -  max_{paths with u_i=1} R.

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

#include "arikan.hpp"
#include "kernel.hpp"
#include "window_profile.hpp"

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

namespace polarwin {

class KernelProcessor {
public:
    KernelProcessor() = default;

    KernelProcessor(const WindowProfile* profile, std::vector<double> llrs, OpCounter* ops)
        : prof_(profile), ops_(ops) {
        if (llrs.size() != prof_->l)
            throw std::invalid_argument("KernelProcessor: llr count must equal l");
        y_ = std::make_shared<const std::vector<double>>(std::move(llrs));
        Path p0;
        p0.engine = ArikanEngine(y_, prof_->t);
        paths_.push_back(std::move(p0));
    }

    /// Phase LLR of kernel phase i; phases must be processed in order and
    /// every call must be followed by commit(i, ...).
    double phase_llr(std::size_t i) {
        if (prof_ == nullptr || i != phase_ || pending_valid_)
            throw std::logic_error("KernelProcessor: phase mismatch");
        const int h_prev = (i == 0) ? -1 : prof_->h[i - 1];
        const int h_i = prof_->h[i];

        if (h_i > h_prev) {
            std::vector<Path> frontier = std::move(paths_);
            paths_.clear();
            std::vector<Path> next;
            for (int p = h_prev + 1; p <= h_i; ++p) {
                const bool pinned = (p == prof_->j[i]);
                next.clear();
                next.reserve(2 * frontier.size());
                for (Path& par : frontier) {
                    double s = par.engine.llr(static_cast<std::size_t>(p), *ops_);
                    ops_->add();  // score accumulation
                    int base = 0;
                    if (pinned) base = reconstruct_u_bits(*prof_, u_bits_, par.v_bits, i);
                    for (int bit = 0; bit < 2; ++bit) {
                        Path child;
                        if (bit == 0) child = par;
                        else child = std::move(par);
                        child.score = score_update(child.score, s, bit);
                        child.engine.commit(static_cast<std::size_t>(p), bit);
                        if (bit) child.v_bits |= std::uint64_t(1) << p;
                        if (pinned) child.label = base ^ bit;
                        next.push_back(std::move(child));
                    }
                }
                frontier.swap(next);
            }
            pending_ = std::move(frontier);
        } else {
            pending_ = std::move(paths_);
            paths_.clear();
            for (Path& p : pending_)
                p.label = reconstruct_u_bits(*prof_, u_bits_, p.v_bits, i);
        }
        pending_valid_ = true;

        constexpr double kNone = -std::numeric_limits<double>::infinity();
        double m0 = kNone, m1 = kNone;
        bool seen0 = false, seen1 = false;
        for (const Path& p : pending_) {
            double& m = (p.label == 0) ? m0 : m1;
            bool& seen = (p.label == 0) ? seen0 : seen1;
            if (!seen) {
                m = p.score;
                seen = true;
            } else {
                ops_->add();  // comparison inside the running maximum
                if (p.score > m) m = p.score;
            }
        }
        ops_->add();  // the final subtraction
        if (!seen0 || !seen1) {
            // cannot happen for a consistent profile; keep the sign meaningful
            return seen0 ? std::numeric_limits<double>::max()
                         : -std::numeric_limits<double>::max();
        }
        return m0 - m1;
    }

    /// Keep only the paths consistent with u_i and advance the phase.
    void commit(std::size_t i, int u_bit) {
        if (i != phase_ || !pending_valid_)
            throw std::logic_error("KernelProcessor: commit without phase_llr");
        paths_.clear();
        for (Path& p : pending_)
            if (p.label == (u_bit & 1)) {
                p.label = -1;
                paths_.push_back(std::move(p));
            }
        pending_.clear();
        pending_valid_ = false;
        if (paths_.empty())
            throw std::runtime_error("KernelProcessor: no surviving path");
        if (u_bit & 1) u_bits_ |= std::uint64_t(1) << i;
        ++phase_;
    }

    std::size_t phase() const { return phase_; }
    std::size_t path_count() const { return paths_.size(); }
    std::uint64_t decided_bits() const { return u_bits_; }

    /// Codeword u * K = v * K_A of the single surviving path (all phases done).
    std::vector<std::uint8_t> codeword() const {
        if (prof_ == nullptr || phase_ != prof_->l || paths_.size() != 1)
            throw std::logic_error("KernelProcessor: codeword requires a finished layer");
        std::vector<std::uint8_t> c(prof_->l);
        for (std::size_t jj = 0; jj < prof_->l; ++jj)
            c[jj] = static_cast<std::uint8_t>((paths_[0].v_bits >> jj) & 1u);
        arikan_transform(c.data(), prof_->t);
        return c;
    }

private:
    struct Path {
        ArikanEngine engine;
        double score = 0.0;
        std::uint64_t v_bits = 0;
        int label = -1;
    };

    const WindowProfile* prof_ = nullptr;
    OpCounter* ops_ = nullptr;
    std::shared_ptr<const std::vector<double>> y_;
    std::size_t phase_ = 0;
    std::uint64_t u_bits_ = 0;
    std::vector<Path> paths_;
    std::vector<Path> pending_;
    bool pending_valid_ = false;
};

/// Brute-force phase LLR by full enumeration of the kernel input. The score
/// of a codeword c is sum_j tau(y_j, c_j); the result is the difference of
/// the best completion with u_i = 0 and the best with u_i = 1.
inline double brute_force_phase_llr(const Kernel& k,
                                    const std::vector<std::uint8_t>& u_prefix,
                                    const std::vector<double>& llrs) {
    const std::size_t l = k.l;
    if (l > 16)
        throw UnsupportedSizeError("brute_force_phase_llr: limited to l <= 16");
    if (u_prefix.size() >= l)
        throw std::invalid_argument("brute_force_phase_llr: prefix too long");
    if (llrs.size() != l)
        throw std::invalid_argument("brute_force_phase_llr: llr count must equal l");
    const std::size_t i = u_prefix.size();

    std::vector<std::uint32_t> rows(l);
    for (std::size_t r = 0; r < l; ++r)
        rows[r] = static_cast<std::uint32_t>(k.matrix.row_bits(r));

    std::uint32_t base = 0;
    for (std::size_t r = 0; r < i; ++r)
        if (u_prefix[r]) base ^= rows[r];

    std::uint32_t hard = 0;
    std::vector<double> mag(l);
    for (std::size_t jj = 0; jj < l; ++jj) {
        mag[jj] = std::fabs(llrs[jj]);
        if (llrs[jj] < 0) hard |= std::uint32_t(1) << jj;
    }

    const std::size_t free_bits = l - i;
    double best0 = -std::numeric_limits<double>::infinity();
    double best1 = best0;
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << free_bits); ++m) {
        std::uint32_t c = base;
        for (std::size_t fb = 0; fb < free_bits; ++fb)
            if ((m >> fb) & 1u) c ^= rows[i + fb];
        std::uint32_t diff = c ^ hard;
        double score = 0.0;
        while (diff) {
            unsigned jj = static_cast<unsigned>(std::countr_zero(diff));
            score -= mag[jj];
            diff &= diff - 1;
        }
        double& best = (m & 1u) ? best1 : best0;  // bit 0 of m is u_i
        if (score > best) best = score;
    }
    return best0 - best1;
}

}  // namespace polarwin
