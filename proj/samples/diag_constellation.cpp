// Copyright 2026 The mxforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Prints rate and diversity quality of n-th root diagonal constellations
// built on the Fourier COSI of C^k (default k = 2, giving 4 x 4 members).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "mxforge/mxforge.hpp"

int main(int argc, char **argv) {
    using namespace mxforge;
    const std::size_t k = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2;
    const auto set = fourier_cosi(k);
    std::printf("%4s %8s %12s %12s\n", "n", "rate", "zeta", "sin(pi/n)");
    for (std::size_t n = 2; n <= 16; n *= 2) {
        const auto v = build_diag_root_constellation(set, n);
        const auto q = quality(v);
        std::printf("%4zu %8.4f %12.8f %12.8f\n", n, q.rate, q.zeta, std::sin(std::numbers::pi / static_cast<double>(n)));
    }
    return 0;
}
