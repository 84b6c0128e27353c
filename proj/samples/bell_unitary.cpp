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

// Builds the entangled 4x4 unitary from the COSI {E0, E1} of C^2, checks it,
// and prints it as JSON.

#include <iostream>

#include "mxforge/mxforge.hpp"

int main() {
    using namespace mxforge;
    const auto set = CosiSet::validate({0.5 * ComplexMatrix{{1, 1}, {1, 1}}, 0.5 * ComplexMatrix{{1, -1}, {-1, 1}}});
    const ComplexMatrix h = block_latin_unitary(set, LatinSquare::parse("0 1;1 0"));

    const auto rep = verify_hadamard(2.0 * h);
    std::cout << "unitary:   " << (is_unitary(h) ? "yes" : "no") << "\n"
              << "Hadamard:  " << (rep.is_hadamard ? "yes" : "no") << " (2H, Butson type "
              << (rep.butson_p ? std::to_string(*rep.butson_p) : "none") << ")\n"
              << "entangled: " << (is_block_tensor(h, 2, 2) ? "no" : "yes") << "\n"
              << to_json_text(h) << "\n";
    return is_unitary(h) ? 0 : 1;
}
