/*------------------------------------------------------------------------
Threshold-guided beam search for low-cost kernel column permutations

Column by column, every partial permutation whose restricted rows match at
least `threshold` rows of the equally-restricted Arikan kernel K_A is kept.
If a column admits no candidate the whole search restarts with the
threshold lowered by one. Full-length survivors are then ranked by the
window-decoding cost model.

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

#include "cost.hpp"
#include "kernel.hpp"

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

namespace polarwin {

struct BeamOverflowError : std::runtime_error {
    explicit BeamOverflowError(std::size_t cap)
        : std::runtime_error("permutation search exceeded the beam cap of " +
                             std::to_string(cap)),
          cap(cap) {}
    std::size_t cap;
};

/// Candidate lists of the search: partial column selections, the row indices
/// still matching K_A under each selection, and their metrics.
struct SearchState {
    std::vector<std::vector<std::uint8_t>> columns;
    std::vector<std::vector<std::uint8_t>> row_sets;
    std::vector<std::size_t> metrics;

    std::size_t size() const { return columns.size(); }
    void clear() {
        columns.clear();
        row_sets.clear();
        metrics.clear();
    }
};

struct PermutationCandidate {
    std::vector<std::size_t> permutation;  // 0-based column order
    std::size_t metric = 0;
    std::uint64_t cost = 0;  // filled by select_best / annotate_costs
};

struct SearchResult {
    std::vector<PermutationCandidate> candidates;
    std::size_t threshold_used = 0;
};

/// Maximum useful threshold: multiset intersection of the row weights of K
/// and of K_A.
inline std::size_t initial_threshold(const Kernel& k) {
    std::vector<std::size_t> wk = hamming_weight_multiset(k.matrix);
    std::vector<std::size_t> wa = hamming_weight_multiset(arikan_kernel(k.t));
    std::size_t n = 0;
    std::size_t a = 0, b = 0;
    while (a < wk.size() && b < wa.size()) {
        if (wk[a] == wa[b]) { ++n; ++a; ++b; }
        else if (wk[a] < wa[b]) ++a;
        else ++b;
    }
    return n;
}

namespace detail {

/// Distinct rows of K_A restricted to its first `i` columns, as i-bit masks.
inline std::unordered_set<std::uint64_t> ka_prefix_rows(const BitMatrix& ka, std::size_t i) {
    std::unordered_set<std::uint64_t> set;
    for (std::size_t r = 0; r < ka.rows(); ++r) {
        std::uint64_t m = 0;
        for (std::size_t c = 0; c < i; ++c)
            if (ka.get(r, c)) m |= std::uint64_t(1) << c;
        set.insert(m);
    }
    return set;
}

}  // namespace detail

struct MetricResult {
    std::vector<std::uint8_t> cel;  // kappa extended by the candidate column
    std::vector<std::uint8_t> rel;  // rows whose restriction matched
    std::size_t metric = 0;
};

/// Count the rows (restricted to `rho`) of the partially permuted kernel
/// whose first |cel| columns appear among the rows of K_A restricted to its
/// first |cel| columns. `ka_rows` must come from ka_prefix_rows for |cel|.
inline MetricResult calculate_metric(const Kernel& k,
                                     const std::vector<std::uint8_t>& kappa,
                                     std::size_t next_col,
                                     const std::vector<std::uint8_t>& rho,
                                     const std::unordered_set<std::uint64_t>& ka_rows) {
    for (std::uint8_t c : kappa)
        if (c == next_col)
            throw std::invalid_argument("calculate_metric: duplicate column");
    MetricResult res;
    res.cel = kappa;
    res.cel.push_back(static_cast<std::uint8_t>(next_col));
    const std::size_t i = res.cel.size();
    for (std::uint8_t r : rho) {
        std::uint64_t m = 0;
        for (std::size_t c = 0; c < i; ++c)
            if (k.matrix.get(r, res.cel[c])) m |= std::uint64_t(1) << c;
        if (ka_rows.contains(m)) {
            res.rel.push_back(r);
            ++res.metric;
        }
    }
    return res;
}

/// Convenience overload matching the subroutine contract directly.
inline MetricResult calculate_metric(const Kernel& k,
                                     const std::vector<std::uint8_t>& kappa,
                                     std::size_t next_col,
                                     const std::vector<std::uint8_t>& rho) {
    return calculate_metric(k, kappa, next_col, rho,
                            detail::ka_prefix_rows(arikan_kernel(k.t), kappa.size() + 1));
}

inline SearchResult find_good_permutations(const Kernel& k, std::size_t m_t,
                                           std::size_t beam_cap = 1'000'000) {
    const std::size_t l = k.l;
    const BitMatrix ka = arikan_kernel(k.t);
    std::size_t threshold = m_t;

    while (true) {
        SearchState state;
        state.columns.push_back({});
        std::vector<std::uint8_t> all_rows(l);
        for (std::size_t r = 0; r < l; ++r) all_rows[r] = static_cast<std::uint8_t>(r);
        state.row_sets.push_back(all_rows);
        state.metrics.push_back(l);

        bool dead_end = false;
        for (std::size_t i = 1; i <= l && !dead_end; ++i) {
            std::unordered_set<std::uint64_t> ka_rows = detail::ka_prefix_rows(ka, i);
            SearchState next;
            for (std::size_t c = 0; c < state.size(); ++c) {
                std::uint64_t used = 0;
                for (std::uint8_t col : state.columns[c]) used |= std::uint64_t(1) << col;
                for (std::size_t col = 0; col < l; ++col) {
                    if ((used >> col) & 1u) continue;
                    MetricResult res =
                        calculate_metric(k, state.columns[c], col, state.row_sets[c], ka_rows);
                    if (res.metric >= threshold) {
                        next.columns.push_back(std::move(res.cel));
                        next.row_sets.push_back(std::move(res.rel));
                        next.metrics.push_back(res.metric);
                        if (next.size() > beam_cap) throw BeamOverflowError(beam_cap);
                    }
                }
            }
            if (next.size() == 0) {
                dead_end = true;  // restart with a lower threshold
            } else {
                state = std::move(next);
            }
        }

        if (!dead_end) {
            SearchResult out;
            out.threshold_used = threshold;
            out.candidates.reserve(state.size());
            for (std::size_t c = 0; c < state.size(); ++c) {
                PermutationCandidate pc;
                pc.permutation.assign(state.columns[c].begin(), state.columns[c].end());
                pc.metric = state.metrics[c];
                out.candidates.push_back(std::move(pc));
            }
            return out;
        }
        if (threshold == 0)
            throw std::logic_error("find_good_permutations: dead end at threshold 0");
        --threshold;
    }
}

struct BestPermutation {
    std::vector<std::size_t> permutation;
    Kernel kernel;                              // the permuted kernel
    std::uint64_t cost = 0;
    std::vector<PermutationCandidate> ranked;   // all candidates with costs
};

/// argmin over the candidates of the window-decoding cost of the permuted
/// kernel; ties go to the lexicographically smallest permutation.
inline BestPermutation select_best(const Kernel& k,
                                   const std::vector<PermutationCandidate>& candidates) {
    if (candidates.empty())
        throw std::invalid_argument("select_best: no candidates");
    std::vector<std::vector<std::size_t>> perms;
    perms.reserve(candidates.size());
    for (const auto& c : candidates) perms.push_back(c.permutation);
    std::vector<RankedPermutation> ranked = evaluate_candidates(k, perms);

    BestPermutation best;
    best.permutation = ranked.front().permutation;
    best.cost = ranked.front().cost;
    best.kernel = permute_columns(k, best.permutation);
    for (const auto& r : ranked) {
        PermutationCandidate pc;
        pc.permutation = r.permutation;
        pc.cost = r.cost;
        for (const auto& c : candidates)
            if (c.permutation == r.permutation) { pc.metric = c.metric; break; }
        best.ranked.push_back(std::move(pc));
    }
    return best;
}

}  // namespace polarwin
