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

#include "heraldsim/interferometer.hpp"

#include <cmath>
#include <json.hpp>
#include <algorithm>
#include <numbers>

#include "heraldsim/error.hpp"

namespace heraldsim {

using nlohmann::json;

std::string_view to_string(ElementKind kind) {
    switch (kind) {
        case ElementKind::BeamSplitter:
            return "beam_splitter";
        case ElementKind::PhaseShifter:
            return "phase_shifter";
        case ElementKind::Mzi:
            return "mzi";
    }
    return "unknown";
}

double canonical_phase(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phi, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

Element Element::beam_splitter(int a, int b, double transmission) {
    Element e;
    e.kind = ElementKind::BeamSplitter;
    e.mode_a = a;
    e.mode_b = b;
    e.transmission = transmission;
    return e;
}

Element Element::phase_shifter(int a, double phi) {
    Element e;
    e.kind = ElementKind::PhaseShifter;
    e.mode_a = a;
    e.mode_b = a;
    e.phase = phi;
    return e;
}

Element Element::mzi(int a, int b, double internal, double external) {
    Element e;
    e.kind = ElementKind::Mzi;
    e.mode_a = a;
    e.mode_b = b;
    e.phase = internal;
    e.external = external;
    return e;
}

void Element::validate(int n_modes) const {
    auto in_range = [n_modes](int m) { return m >= 1 && m <= n_modes; };
    if (!in_range(mode_a)) {
        throw ArgumentError(std::string(to_string(kind)) + ": mode " + std::to_string(mode_a) +
                            " outside [1, " + std::to_string(n_modes) + "]");
    }
    if (kind == ElementKind::PhaseShifter) {
        if (!std::isfinite(phase)) throw ArgumentError("phase_shifter: phase must be finite");
        return;
    }
    if (!in_range(mode_b)) {
        throw ArgumentError(std::string(to_string(kind)) + ": mode " + std::to_string(mode_b) +
                            " outside [1, " + std::to_string(n_modes) + "]");
    }
    if (mode_a == mode_b) throw ArgumentError(std::string(to_string(kind)) + ": modes must differ");
    if (kind == ElementKind::BeamSplitter) {
        if (!(transmission >= 0.0 && transmission <= 1.0)) {
            throw ArgumentError("beam_splitter: transmission must lie in [0, 1]");
        }
    } else if (!std::isfinite(phase) || !std::isfinite(external)) {
        throw ArgumentError("mzi: phases must be finite");
    }
}

namespace {

Eigen::Matrix2cd bs_block(double t) {
    const double ct = std::sqrt(t);
    const double rt = std::sqrt(1.0 - t);
    Eigen::Matrix2cd m;
    m << Complex(ct, 0.0), Complex(0.0, rt), Complex(0.0, rt), Complex(ct, 0.0);
    return m;
}

Eigen::Matrix2cd phase_block(double phi) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    m(0, 0) = std::polar(1.0, phi);
    return m;
}

}  // namespace

Eigen::Matrix2cd Element::block() const {
    switch (kind) {
        case ElementKind::BeamSplitter:
            return bs_block(transmission);
        case ElementKind::PhaseShifter:
            return phase_block(phase);
        case ElementKind::Mzi: {
            const Eigen::Matrix2cd half = bs_block(0.5);
            return phase_block(external) * half * phase_block(phase) * half;
        }
    }
    return Eigen::Matrix2cd::Identity();
}

namespace {

bool same_phase(double a, double b) {
    const double d = std::abs(canonical_phase(a) - canonical_phase(b));
    return std::min(d, 2.0 * std::numbers::pi - d) <= 1e-12;
}

}  // namespace

bool Element::same_as(const Element& other) const {
    if (kind != other.kind || mode_a != other.mode_a) return false;
    switch (kind) {
        case ElementKind::BeamSplitter:
            return mode_b == other.mode_b && transmission == other.transmission;
        case ElementKind::PhaseShifter:
            return same_phase(phase, other.phase);
        case ElementKind::Mzi:
            return mode_b == other.mode_b && same_phase(phase, other.phase) &&
                   same_phase(external, other.external);
    }
    return false;
}

void CircuitSpec::validate() const {
    if (n_modes < 1) throw ArgumentError("circuit needs at least one mode");
    for (const auto& e : elements) e.validate(n_modes);
}

std::size_t CircuitSpec::count(ElementKind kind) const {
    std::size_t n = 0;
    for (const auto& e : elements) n += (e.kind == kind);
    return n;
}

void apply_element(const Element& e, Matrix& u) {
    const Eigen::Index a = e.mode_a - 1;
    if (e.kind == ElementKind::PhaseShifter) {
        u.row(a) *= std::polar(1.0, e.phase);
        return;
    }
    const Eigen::Index b = e.mode_b - 1;
    const Eigen::Matrix2cd m = e.block();
    Eigen::RowVectorXcd ra = u.row(a);
    Eigen::RowVectorXcd rb = u.row(b);
    u.row(a) = m(0, 0) * ra + m(0, 1) * rb;
    u.row(b) = m(1, 0) * ra + m(1, 1) * rb;
}

CompiledUnitary compile(const CircuitSpec& spec) {
    spec.validate();
    Matrix u = Matrix::Identity(spec.n_modes, spec.n_modes);
    for (const auto& e : spec.elements) apply_element(e, u);
    return {std::move(u)};
}

UnitarityReport validate_unitary(const Matrix& u, double tolerance) {
    if (u.rows() != u.cols()) throw ArgumentError("validate_unitary: matrix must be square");
    UnitarityReport r;
    if (u.size() == 0) {
        r.pass = true;
        return r;
    }
    const Matrix gram = u.adjoint() * u;
    r.deviation = (gram - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    r.pass = r.deviation < tolerance;
    return r;
}

QubitMeasurement QubitMeasurement::equatorial(double theta) {
    return {theta, std::numbers::pi / 2.0};
}

QubitMeasurement QubitMeasurement::computational() { return {0.0, std::numbers::pi}; }

CircuitSpec append_measurement(const CircuitSpec& spec, const std::vector<QubitMeasurement>& settings,
                               const DualRailRegister& reg) {
    if (settings.size() != reg.n_qubits()) {
        throw ArgumentError("append_measurement: expected " + std::to_string(reg.n_qubits()) +
                            " settings, got " + std::to_string(settings.size()));
    }
    if (reg.mode_span() > spec.n_modes) throw ArgumentError("append_measurement: register outside circuit");
    CircuitSpec out = spec;
    for (std::size_t q = 0; q < settings.size(); ++q) {
        const int a = reg.pairs()[q].first + 1;
        const int b = reg.pairs()[q].second + 1;
        out.elements.push_back(Element::phase_shifter(b, -settings[q].theta));
        out.elements.push_back(Element::mzi(a, b, settings[q].phi, 0.0));
    }
    return out;
}

CircuitSpec append_z_phases(const CircuitSpec& spec, const std::vector<double>& phases,
                            const DualRailRegister& reg) {
    if (phases.size() != reg.n_qubits()) throw ArgumentError("append_z_phases: one phase per qubit");
    CircuitSpec out = spec;
    for (std::size_t q = 0; q < phases.size(); ++q) {
        if (phases[q] != 0.0) out.elements.push_back(Element::phase_shifter(reg.pairs()[q].second + 1, phases[q]));
    }
    return out;
}

CircuitSpec concatenate(const CircuitSpec& first, const CircuitSpec& second) {
    if (first.n_modes != second.n_modes) throw ArgumentError("concatenate: mode counts differ");
    CircuitSpec out = first;
    out.elements.insert(out.elements.end(), second.elements.begin(), second.elements.end());
    return out;
}

namespace {

json element_to_json(const Element& e) {
    json j;
    j["kind"] = std::string(to_string(e.kind));
    switch (e.kind) {
        case ElementKind::BeamSplitter:
            j["modes"] = {e.mode_a, e.mode_b};
            j["param"] = e.transmission;
            break;
        case ElementKind::PhaseShifter:
            j["modes"] = {e.mode_a};
            j["param"] = e.phase;
            break;
        case ElementKind::Mzi:
            j["modes"] = {e.mode_a, e.mode_b};
            j["param"] = {e.phase, e.external};
            break;
    }
    return j;
}

Element element_from_json(const json& j, std::size_t index) {
    const std::string where = "elements[" + std::to_string(index) + "]";
    if (!j.is_object()) throw ArgumentError(where + ": expected an object");
    for (const char* key : {"kind", "modes", "param"}) {
        if (!j.contains(key)) throw ArgumentError(where + ": missing '" + key + "'");
    }
    const std::string kind = j.at("kind").get<std::string>();
    const auto modes = j.at("modes").get<std::vector<int>>();
    const json& p = j.at("param");
    if (kind == "beam_splitter") {
        if (modes.size() != 2 || !p.is_number()) throw ArgumentError(where + ": beam_splitter needs 2 modes and a number");
        return Element::beam_splitter(modes[0], modes[1], p.get<double>());
    }
    if (kind == "phase_shifter") {
        if (modes.size() != 1 || !p.is_number()) throw ArgumentError(where + ": phase_shifter needs 1 mode and a number");
        return Element::phase_shifter(modes[0], p.get<double>());
    }
    if (kind == "mzi") {
        if (modes.size() != 2 || !p.is_array() || p.size() != 2) {
            throw ArgumentError(where + ": mzi needs 2 modes and [internal, external]");
        }
        return Element::mzi(modes[0], modes[1], p[0].get<double>(), p[1].get<double>());
    }
    throw ArgumentError(where + ": unknown kind '" + kind + "'");
}

}  // namespace

std::string circuit_to_json(const CircuitSpec& spec, int indent) {
    json j;
    j["n_modes"] = spec.n_modes;
    j["label"] = spec.label;
    j["elements"] = json::array();
    for (const auto& e : spec.elements) j["elements"].push_back(element_to_json(e));
    return j.dump(indent);
}

CircuitSpec circuit_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ArgumentError(std::string("circuit: ") + err.what());
    }
    try {
        if (!j.is_object()) throw ArgumentError("circuit: expected an object");
        if (!j.contains("n_modes") || !j.contains("elements")) {
            throw ArgumentError("circuit: 'n_modes' and 'elements' are required");
        }
        CircuitSpec spec;
        spec.n_modes = j.at("n_modes").get<int>();
        spec.label = j.value("label", std::string{});
        const json& elems = j.at("elements");
        if (!elems.is_array()) throw ArgumentError("circuit: 'elements' must be an array");
        for (std::size_t i = 0; i < elems.size(); ++i) spec.elements.push_back(element_from_json(elems[i], i));
        spec.validate();
        return spec;
    } catch (const json::exception& err) {
        throw ArgumentError(std::string("circuit: ") + err.what());
    }
}

}  // namespace heraldsim
