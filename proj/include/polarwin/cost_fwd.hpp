/*------------------------------------------------------------------------
Per-phase cost primitives of the window-decoding complexity model

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
#include <cstdint>
#include <stdexcept>

namespace polarwin {

/// Cost C_i of evaluating Arikan bit channel i in a 2^t kernel:
/// C_0 = 2^t - 1, otherwise 2^{s+1} - 1 with s the 2-adic valuation of i.
inline std::uint64_t arikan_channel_cost(std::size_t i, std::size_t t) {
    if (i >= (std::size_t(1) << t))
        throw std::invalid_argument("arikan_channel_cost: phase out of range");
    if (i == 0) return (std::uint64_t(1) << t) - 1;
    unsigned s = static_cast<unsigned>(std::countr_zero(i));
    return (std::uint64_t(1) << (s + 1)) - 1;
}

/// log2(C_h + 1); exact because C_h + 1 is a power of two.
inline unsigned channel_cost_log(std::size_t h, std::size_t t) {
    if (h == 0) return static_cast<unsigned>(t);
    return static_cast<unsigned>(std::countr_zero(h)) + 1;
}

inline std::uint64_t phase_cost(std::size_t i, int h_i, int h_prev,
                                std::size_t window_size, std::size_t t) {
    if (h_i < h_prev || h_i < static_cast<int>(i))
        throw std::invalid_argument("phase_cost: inconsistent h sequence");
    if (window_size != static_cast<std::size_t>(h_i) - i)
        throw std::invalid_argument("phase_cost: window size must equal h_i - i");
    if (h_i == h_prev) return 1;
    if (window_size == 0) return arikan_channel_cost(i, t);
    std::uint64_t lambda = 0;
    for (int h = h_prev + 1; h <= h_i; ++h) {
        unsigned b = channel_cost_log(static_cast<std::size_t>(h), t);
        lambda += std::uint64_t(1) << (static_cast<unsigned>(h) + b - i);
    }
    return (std::uint64_t(1) << (window_size + 1)) - 1 + lambda;
}

}  // namespace polarwin
