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


// The shipped heralded GHZ source: circuit, input occupation, herald rule.

#ifndef HERALDSIM_PRESET_HPP
#define HERALDSIM_PRESET_HPP

#include <string>
#include <string_view>

#include "heraldsim/heralding.hpp"
#include "heraldsim/interferometer.hpp"

namespace heraldsim {

struct GhzPreset {
    CircuitSpec circuit;
    OccupationVector input;
    HeraldRule rule;
    std::string provenance;
};

/// Parses a preset document ({circuit, input, herald, provenance}).
/// Throws ArgumentError on malformed input.
GhzPreset preset_from_json(std::string_view text);

/// The embedded preset, parsed once.
const GhzPreset& ghz_preset_bundle();

std::string_view embedded_preset_json();

}  // namespace heraldsim

#endif  // HERALDSIM_PRESET_HPP
