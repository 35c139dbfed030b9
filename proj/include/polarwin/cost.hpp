/*------------------------------------------------------------------------
Approximate complexity model for window decoding

Per-phase cost phi(i) of processing kernel phase i with window D_i:

  phi(i) = 2^{|D_i|+1} - 1 + Lambda(i)   if h_i > h_{i-1} and |D_i| > 0
  phi(i) = C_i                           if h_i > h_{i-1} and |D_i| = 0
  phi(i) = 1                             if h_i = h_{i-1}

with Lambda(i) = sum_{h=h_{i-1}+1}^{h_i} 2^{h+B(h)-i}, B(h) = log2(C_h+1),
and C_h the cost of evaluating bit channel h of K_A (h_{-1} := -1).

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

#include "cost_fwd.hpp"
#include "kernel.hpp"
#include "window_profile.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace polarwin {

struct ComplexityProfile {
    std::vector<std::uint64_t> per_phase;
    std::uint64_t total = 0;
    std::size_t l = 0;
    std::size_t t = 0;
};

inline ComplexityProfile kernel_cost(const WindowProfile& p) {
    ComplexityProfile c;
    c.l = p.l;
    c.t = p.t;
    c.per_phase.resize(p.l);
    for (std::size_t i = 0; i < p.l; ++i) {
        int h_prev = (i == 0) ? -1 : p.h[i - 1];
        c.per_phase[i] = phase_cost(i, p.h[i], h_prev, p.window_size(i), p.t);
        c.total += c.per_phase[i];
    }
    return c;
}

/// Rank permutations of a kernel by total window-decoding cost; ties are
/// broken lexicographically and the order is stable.
struct RankedPermutation {
    std::vector<std::size_t> permutation;  // 0-based
    std::uint64_t cost = 0;
};

inline std::vector<RankedPermutation> evaluate_candidates(
    const Kernel& k, const std::vector<std::vector<std::size_t>>& permutations) {
    if (permutations.empty())
        throw std::invalid_argument("evaluate_candidates: no candidates");
    std::vector<RankedPermutation> ranked;
    ranked.reserve(permutations.size());
    for (const auto& pi : permutations) {
        Kernel kp = permute_columns(k, pi);
        ranked.push_back({pi, kernel_cost(window_profile(kp)).total});
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedPermutation& a, const RankedPermutation& b) {
                         if (a.cost != b.cost) return a.cost < b.cost;
                         return a.permutation < b.permutation;
                     });
    return ranked;
}

}  // namespace polarwin
