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

#ifndef HERALDSIM_PERMANENT_HPP
#define HERALDSIM_PERMANENT_HPP

#include "heraldsim/fock.hpp"

namespace heraldsim {

inline constexpr int kDefaultPermanentCap = 16;
inline constexpr int kNaivePermanentCap = 9;

/// Ryser's formula with Gray-code subset order: O(2^n n).
///
/// The subset sequence and the accumulation order are fixed, so results are
/// bit-for-bit reproducible. The empty matrix has permanent 1.
Complex permanent(const Matrix& a, int cap = kDefaultPermanentCap);

/// Direct sum over all n! permutations. Test oracle.
Complex permanent_naive(const Matrix& a, int cap = kNaivePermanentCap);

}  // namespace heraldsim

#endif  // HERALDSIM_PERMANENT_HPP
