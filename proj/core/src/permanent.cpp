// Copyright 2026 The heraldsim Authors
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

#include "heraldsim/permanent.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <string>
#include <vector>

#include "heraldsim/error.hpp"

namespace heraldsim {

namespace {

void check_shape(const Matrix& a, int cap, const char* who) {
    if (a.rows() != a.cols()) throw ArgumentError(std::string(who) + ": matrix must be square");
    if (a.rows() > cap) {
        throw ArgumentError(std::string(who) + ": order " + std::to_string(a.rows()) +
                            " exceeds cap " + std::to_string(cap));
    }
}

}  // namespace

Complex permanent(const Matrix& a, int cap) {
    check_shape(a, cap, "permanent");
    const int n = static_cast<int>(a.rows());
    if (n == 0) return {1.0, 0.0};
    if (n == 1) return a(0, 0);

    // Row sums over the current column subset, updated one column per step.
    std::array<Complex, 64> row_sum{};
    const unsigned long long n_subsets = 1ULL << n;
    Complex total{};
    unsigned long long gray = 0;
    int subset_size = 0;
    for (unsigned long long k = 1; k < n_subsets; ++k) {
        const int col = std::countr_zero(k);
        const unsigned long long bit = 1ULL << col;
        gray ^= bit;
        if (gray & bit) {
            for (int i = 0; i < n; ++i) row_sum[i] += a(i, col);
            ++subset_size;
        } else {
            for (int i = 0; i < n; ++i) row_sum[i] -= a(i, col);
            --subset_size;
        }
        Complex prod = row_sum[0];
        for (int i = 1; i < n; ++i) prod *= row_sum[i];
        if ((n - subset_size) % 2 == 0) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    return total;
}

Complex permanent_naive(const Matrix& a, int cap) {
    check_shape(a, cap, "permanent_naive");
    const int n = static_cast<int>(a.rows());
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    Complex total{};
    do {
        Complex prod{1.0, 0.0};
        for (int i = 0; i < n; ++i) prod *= a(i, perm[i]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace heraldsim
