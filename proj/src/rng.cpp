// SPDX-License-Identifier: Apache-2.0
//
// cfisac: cell-free ISAC simulator with a proactive monitor
// Copyright (C) 2026 The cfisac authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cfisac/rng.hpp"

#include <array>

namespace cfisac
{

Rng make_stream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t a, std::uint64_t b)
{
    const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    const std::array<std::uint32_t, 7> words{lo(seed), hi(seed), static_cast<std::uint32_t>(purpose),
                                             lo(a),     hi(a),    lo(b),
                                             hi(b)};
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

} // namespace cfisac
