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


#include "heraldsim/preset.hpp"

#include <json.hpp>

#include "heraldsim/error.hpp"

namespace heraldsim {

namespace detail {
extern const char* const kPresetJson;
}

namespace {

using json = nlohmann::json;

OccupationVector occupation_from(const json& j, const char* what) {
    if (!j.is_array()) throw ArgumentError(std::string("preset: '") + what + "' must be an array");
    std::vector<int> v;
    for (const auto& x : j) {
        if (!x.is_number_integer() || x.get<int>() < 0) {
            throw ArgumentError(std::string("preset: '") + what + "' needs non-negative integers");
        }
        v.push_back(x.get<int>());
    }
    return OccupationVector(std::move(v));
}

}  // namespace

GhzPreset preset_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ArgumentError(std::string("preset: ") + e.what());
    }
    for (const char* key : {"circuit", "input", "herald"}) {
        if (!doc.contains(key)) throw ArgumentError(std::string("preset: missing '") + key + "'");
    }
    GhzPreset p;
    p.circuit = circuit_from_json(doc.at("circuit").dump());
    p.input = occupation_from(doc.at("input"), "input");
    try {
        const json& h = doc.at("herald");
        p.rule.ancilla_modes = h.at("ancilla_modes").get<std::vector<int>>();
        p.rule.patterns.clear();
        for (const auto& pat : h.at("patterns")) p.rule.patterns.push_back(occupation_from(pat, "patterns"));
        if (h.contains("corrections")) p.rule.corrections = h.at("corrections").get<std::vector<std::vector<double>>>();
        if (h.contains("qubits")) {
            std::vector<std::pair<int, int>> pairs;
            for (const auto& q : h.at("qubits")) pairs.emplace_back(q.at(0).get<int>(), q.at(1).get<int>());
            p.rule.qubits = DualRailRegister::from_one_based(pairs);
        }
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("preset: herald: ") + e.what());
    }
    p.provenance = doc.value("provenance", "");
    p.rule.validate(p.circuit.n_modes, p.input.total_photons());
    if (p.input.n_modes() != static_cast<std::size_t>(p.circuit.n_modes)) {
        throw ArgumentError("preset: input occupation does not match the circuit");
    }
    return p;
}

std::string_view embedded_preset_json() { return detail::kPresetJson; }

const GhzPreset& ghz_preset_bundle() {
    static const GhzPreset preset = preset_from_json(embedded_preset_json());
    return preset;
}

CircuitSpec ghz_preset() { return ghz_preset_bundle().circuit; }

}  // namespace heraldsim
