// SPDX-License-Identifier: Apache-2.0
//
// irsdet - IRS-assisted active device detection toolkit
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

#ifndef IRSDET_RNG_HPP
#define IRSDET_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace irsdet {

/// Mixes a master seed with up to three salts into an independent stream
/// seed. Work items (grid location, trial, draw) derive their own stream so
/// results do not depend on execution order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a = 0, std::uint64_t b = 0,
                          std::uint64_t c = 0);

/// Deterministic random stream. Gaussian variates use an explicit Box-Muller
/// transform instead of std::normal_distribution, whose output sequence is
/// implementation-defined.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in (0, 1].
    double uniform();

    /// Standard normal variate (one Box-Muller pair per call, sine half
    /// discarded).
    double normal();

    /// Circularly-symmetric complex normal with the given total variance.
    std::complex<double> complex_normal(double variance);

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

} // namespace irsdet

#endif
