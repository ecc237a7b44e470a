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

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace cfisac
{

using Rng = std::mt19937_64;

// Stream purposes. Each (seed, purpose, a, b) tuple names one independent stream.
enum class StreamPurpose : std::uint32_t
{
    topology = 1, // a = topology index
    trial = 2,    // a = topology index, b = trial index
    auxiliary = 3 // free for tests and tools
};

// Counter-splitting: the stream is seeded from the 32-bit words of
// (seed, purpose, a, b) through std::seed_seq, so stream j never depends on how
// many streams were drawn before it.
Rng make_stream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t a, std::uint64_t b = 0);

// Standard normal source bound to one stream. Keeps the distribution state so the
// polar method's spare variate is not thrown away between calls.
class Gaussian
{
  public:
    explicit Gaussian(Rng &rng) : rng_(rng) {}

    double real() { return nd_(rng_); }

    // Circularly-symmetric complex normal with E|x|^2 = variance.
    std::complex<double> complex(double variance)
    {
        const double s = std::sqrt(0.5 * variance);
        const double re = nd_(rng_);
        const double im = nd_(rng_);
        return {s * re, s * im};
    }

    Rng &engine() { return rng_; }

  private:
    Rng &rng_;
    std::normal_distribution<double> nd_{0.0, 1.0};
};

} // namespace cfisac
