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

#ifndef HERALDSIM_ERROR_HPP
#define HERALDSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace heraldsim {

/// Invalid argument: out-of-range mode, mismatched shapes, bad parameters.
class ArgumentError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A configured size cap (basis size, permanent order) would be exceeded.
class CapacityError : public std::length_error {
   public:
    using std::length_error::length_error;
};

/// The input carries no usable weight, e.g. an empty dual-rail subspace or
/// zero total counts.
class DegenerateInputError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

}  // namespace heraldsim

#endif  // HERALDSIM_ERROR_HPP
