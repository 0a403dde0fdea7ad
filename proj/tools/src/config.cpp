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


#include "config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "heraldsim/error.hpp"
#include "heraldsim/preset.hpp"

namespace heraldsim::cli {

namespace {

// Forward iterator over the text that publishes how far the parser has read.
class TrackingIterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    TrackingIterator() = default;
    TrackingIterator(const char* p, const char** mark) : p_(p), mark_(mark) {}
    reference operator*() const { return *p_; }
    TrackingIterator& operator++() {
        ++p_;
        if (mark_) *mark_ = p_;
        return *this;
    }
    TrackingIterator operator++(int) {
        auto t = *this;
        ++*this;
        return t;
    }
    bool operator==(const TrackingIterator& o) const { return p_ == o.p_; }

   private:
    const char* p_ = nullptr;
    const char** mark_ = nullptr;
};

// JSON pointer -> line of the token that introduced it.
class LineMap : public nlohmann::json_sax<json> {
   public:
    LineMap(const std::string& text, const char** mark) : base_(text.data()), mark_(mark) {
        for (std::size_t i = 0; i < text.size(); ++i)
            if (text[i] == '\n') newlines_.push_back(i);
    }

    int line_at(std::size_t offset) const {
        return static_cast<int>(std::lower_bound(newlines_.begin(), newlines_.end(), offset) - newlines_.begin()) + 1;
    }

    int line(const std::string& ptr) const {
        std::string p = ptr;
        while (true) {
            auto it = lines_.find(p);
            if (it != lines_.end()) return it->second;
            if (p.empty()) return 1;
            p = p.substr(0, p.rfind('/'));
        }
    }

    bool null() override { return value(); }
    bool boolean(bool) override { return value(); }
    bool number_integer(number_integer_t) override { return value(); }
    bool number_unsigned(number_unsigned_t) override { return value(); }
    bool number_float(number_float_t, const string_t&) override { return value(); }
    bool string(string_t&) override { return value(); }
    bool binary(binary_t&) override { return value(); }
    bool start_object(std::size_t) override {
        value();
        stack_.push_back({true, current(), "", 0});
        return true;
    }
    bool key(string_t& k) override {
        stack_.back().key = escape(k);
        lines_[stack_.back().path + "/" + stack_.back().key] = here();
        return true;
    }
    bool end_object() override {
        stack_.pop_back();
        return true;
    }
    bool start_array(std::size_t) override {
        value();
        stack_.push_back({false, current(), "", 0});
        return true;
    }
    bool end_array() override {
        stack_.pop_back();
        return true;
    }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }

   private:
    struct Frame {
        bool object;
        std::string path;
        std::string key;
        std::size_t index;
    };

    static std::string escape(const std::string& k) {
        std::string out;
        for (char c : k) {
            if (c == '~') out += "~0";
            else if (c == '/') out += "~1";
            else out += c;
        }
        return out;
    }
    int here() const { return line_at(static_cast<std::size_t>(*mark_ - base_) - 1); }
    std::string current() const {
        if (stack_.empty()) return "";
        const Frame& f = stack_.back();
        return f.path + "/" + (f.object ? f.key : std::to_string(f.index));
    }
    bool value() {
        const std::string p = current();
        if (!lines_.count(p)) lines_[p] = here();
        if (!stack_.empty() && !stack_.back().object) ++stack_.back().index;
        return true;
    }
    // Array frames count elements as they are seen, so the pointer of the
    // value being opened must be computed before the increment.
    const char* base_;
    const char** mark_;
    std::vector<std::size_t> newlines_;
    std::vector<Frame> stack_;
    std::map<std::string, int> lines_;
};

class Reader {
   public:
    Reader(const json& j, std::string path, const LineMap& lines) : j_(j), path_(std::move(path)), lines_(lines) {}

    [[noreturn]] void fail(const std::string& msg, const std::string& key = "") const {
        const std::string p = key.empty() ? path_ : path_ + "/" + key;
        throw ConfigError((p.empty() ? std::string("/") : p) + ": " + msg, lines_.line(p));
    }

    void allow(std::initializer_list<const char*> keys) const {
        if (!j_.is_object()) fail("expected an object");
        std::set<std::string> ok(keys.begin(), keys.end());
        for (const auto& [k, v] : j_.items()) {
            if (!ok.count(k)) fail("unknown key '" + k + "'", k);
        }
    }

    bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }
    Reader at(const char* key) const { return Reader(j_.at(key), path_ + "/" + key, lines_); }
    const json& raw() const { return j_; }
    const std::string& path() const { return path_; }

    double number(const char* key, std::optional<double> dflt = std::nullopt) const {
        if (!has(key)) {
            if (dflt) return *dflt;
            fail(std::string("missing required key '") + key + "'");
        }
        const json& v = j_.at(key);
        if (!v.is_number()) fail("expected a number", key);
        return v.get<double>();
    }
    std::int64_t integer(const char* key, std::optional<std::int64_t> dflt = std::nullopt) const {
        if (!has(key)) {
            if (dflt) return *dflt;
            fail(std::string("missing required key '") + key + "'");
        }
        const json& v = j_.at(key);
        if (!v.is_number_integer()) fail("expected an integer", key);
        return v.get<std::int64_t>();
    }
    bool boolean(const char* key, bool dflt) const {
        if (!has(key)) return dflt;
        if (!j_.at(key).is_boolean()) fail("expected true or false", key);
        return j_.at(key).get<bool>();
    }
    std::string text(const char* key, const std::string& dflt) const {
        if (!has(key)) return dflt;
        if (!j_.at(key).is_string()) fail("expected a string", key);
        return j_.at(key).get<std::string>();
    }
    std::vector<double> numbers(const char* key) const {
        const json& v = j_.at(key);
        if (!v.is_array()) fail("expected an array of numbers", key);
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) at(key).fail("expected a number", std::to_string(i));
            out.push_back(v[i].get<double>());
        }
        return out;
    }
    std::vector<int> integers(const char* key) const {
        const json& v = j_.at(key);
        if (!v.is_array()) fail("expected an array of integers", key);
        std::vector<int> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number_integer()) at(key).fail("expected an integer", std::to_string(i));
            out.push_back(v[i].get<int>());
        }
        return out;
    }

   private:
    const json& j_;
    std::string path_;
    const LineMap& lines_;
};

std::vector<OccupationVector> read_patterns(const Reader& r) {
    const json& v = r.raw().at("patterns");
    if (!v.is_array() || v.empty()) r.fail("expected a non-empty array of patterns", "patterns");
    std::vector<OccupationVector> out;
    const Reader arr = r.at("patterns");
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::vector<int> c;
        if (!v[i].is_array()) arr.fail("expected an array of counts", std::to_string(i));
        for (const auto& x : v[i]) {
            if (!x.is_number_integer() || x.get<int>() < 0) arr.fail("counts must be non-negative integers", std::to_string(i));
            c.push_back(x.get<int>());
        }
        out.emplace_back(std::move(c));
    }
    return out;
}

HeraldRule read_herald(const Reader& r) {
    r.allow({"ancilla_modes", "patterns", "corrections", "qubits"});
    HeraldRule rule;
    if (r.has("ancilla_modes")) rule.ancilla_modes = r.integers("ancilla_modes");
    if (r.has("patterns")) rule.patterns = read_patterns(r);
    if (r.has("corrections")) {
        rule.corrections.clear();
        const json& c = r.raw().at("corrections");
        if (!c.is_array()) r.fail("expected an array of per-pattern phase lists", "corrections");
        const Reader cr = r.at("corrections");
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!c[i].is_array()) cr.fail("expected an array of phases", std::to_string(i));
            std::vector<double> ph;
            for (const auto& x : c[i]) {
                if (!x.is_number()) cr.fail("phases must be numbers", std::to_string(i));
                ph.push_back(x.get<double>());
            }
            rule.corrections.push_back(std::move(ph));
        }
    } else {
        rule.corrections.clear();
    }
    if (r.has("qubits")) {
        const json& q = r.raw().at("qubits");
        std::vector<std::pair<int, int>> pairs;
        const Reader qr = r.at("qubits");
        if (!q.is_array()) r.fail("expected an array of mode pairs", "qubits");
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (!q[i].is_array() || q[i].size() != 2 || !q[i][0].is_number_integer() || !q[i][1].is_number_integer()) {
                qr.fail("expected a pair of mode indices", std::to_string(i));
            }
            pairs.emplace_back(q[i][0].get<int>(), q[i][1].get<int>());
        }
        try {
            rule.qubits = DualRailRegister::from_one_based(pairs);
        } catch (const ArgumentError& e) {
            r.fail(e.what(), "qubits");
        }
    }
    return rule;
}

SourceConfig read_sources(const Reader& r) {
    r.allow({"model", "visibilities", "sigmas", "visibility", "gram", "g2", "correct_g2", "max_extra"});
    SourceConfig s;
    const std::string model = r.text("model", "ideal");
    if (model == "ideal") {
        s.kind = SourceKind::Ideal;
    } else if (model == "reported") {
        s.kind = SourceKind::Reported;
        if (!r.has("visibilities")) r.fail("model 'reported' needs 'visibilities'");
        s.visibilities = r.numbers("visibilities");
        s.sigmas = r.has("sigmas") ? r.numbers("sigmas") : std::vector<double>(s.visibilities.size(), 1.0);
        if (s.sigmas.size() != s.visibilities.size()) r.fail("one sigma per visibility", "sigmas");
    } else if (model == "uniform") {
        s.kind = SourceKind::Uniform;
        s.visibility = r.number("visibility");
        if (!(s.visibility >= 0.0 && s.visibility <= 1.0)) r.fail("visibility must lie in [0, 1]", "visibility");
    } else if (model == "gram") {
        s.kind = SourceKind::Gram;
        const json& g = r.raw().at("gram");
        if (!g.is_array() || g.empty()) r.fail("expected a square matrix", "gram");
        const auto n = static_cast<Eigen::Index>(g.size());
        s.gram = Matrix(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const json& row = g[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) r.at("gram").fail("row length mismatch", std::to_string(i));
            for (Eigen::Index j = 0; j < n; ++j) {
                const json& e = row[static_cast<std::size_t>(j)];
                if (e.is_number()) {
                    s.gram(i, j) = e.get<double>();
                } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
                    s.gram(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
                } else {
                    r.at("gram").fail("entries are numbers or [re, im]", std::to_string(i));
                }
            }
        }
    } else {
        r.fail("unknown source model '" + model + "' (ideal, reported, uniform, gram)", "model");
    }
    s.g2 = r.number("g2", 0.0);
    if (!(s.g2 >= 0.0 && s.g2 < 0.5)) r.fail("g2 must lie in [0, 0.5)", "g2");
    s.correct_g2 = r.boolean("correct_g2", false);
    s.max_extra = static_cast<int>(r.integer("max_extra", 1));
    if (s.max_extra < 0) r.fail("max_extra must be non-negative", "max_extra");
    return s;
}

DetectorModel read_detector(const Reader& r) {
    r.allow({"kind", "efficiency", "dark_count", "max_resolvable"});
    DetectorModel d;
    try {
        d.kind = detector_kind_from_string(r.text("kind", "ideal_pnr"));
    } catch (const ArgumentError& e) {
        r.fail(e.what(), "kind");
    }
    d.max_resolvable = static_cast<int>(r.integer("max_resolvable", 2));
    if (r.has("efficiency")) {
        const json& e = r.raw().at("efficiency");
        d.efficiency = e.is_number() ? std::vector<double>{e.get<double>()} : r.numbers("efficiency");
    }
    d.dark_count = r.number("dark_count", 0.0);
    return d;
}

CircuitSpec read_circuit(const Reader& root, const std::string& base_dir, bool& preset) {
    const json& c = root.raw().at("circuit");
    preset = false;
    try {
        if (c.is_string()) {
            if (c.get<std::string>() != "preset") root.fail("circuit must be \"preset\", an object or {\"file\": path}", "circuit");
            preset = true;
            return ghz_preset();
        }
        if (c.is_object() && c.contains("file")) {
            root.at("circuit").allow({"file"});
            std::filesystem::path p = c.at("file").get<std::string>();
            if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
            std::ifstream in(p);
            if (!in) root.at("circuit").fail("cannot read circuit file '" + p.string() + "'", "file");
            std::stringstream ss;
            ss << in.rdbuf();
            return circuit_from_json(ss.str());
        }
        if (c.is_object()) return circuit_from_json(c.dump());
    } catch (const ArgumentError& e) {
        root.fail(e.what(), "circuit");
    }
    root.fail("circuit must be \"preset\", an object or {\"file\": path}", "circuit");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& base_dir) {
    ExperimentConfig cfg;
    cfg.source_text = text;

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        int line = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) line += text[i] == '\n';
        std::string msg = e.what();
        const auto pos = msg.find("parse error");
        throw ConfigError("malformed JSON: " + (pos == std::string::npos ? msg : msg.substr(pos)), line);
    }
    const char* mark = text.data();
    LineMap lines(text, &mark);
    json::sax_parse(TrackingIterator(text.data(), &mark), TrackingIterator(text.data() + text.size(), nullptr), &lines);

    const Reader r(root, "", lines);
    r.allow({"schema_version", "seed", "circuit", "input", "herald", "sources", "loss", "detector", "simulate", "analyze",
             "optimize", "characterize", "limits", "description"});
    const auto version = r.integer("schema_version");
    if (version != kSchemaVersion) r.fail("unsupported schema_version " + std::to_string(version), "schema_version");
    if (!r.has("seed")) r.fail("missing required key 'seed'");
    if (!root.at("seed").is_number_unsigned() && !(root.at("seed").is_number_integer() && root.at("seed").get<std::int64_t>() >= 0)) {
        r.fail("seed must be a non-negative integer", "seed");
    }
    cfg.seed = root.at("seed").get<std::uint64_t>();

    if (!r.has("circuit")) r.fail("missing required key 'circuit'");
    cfg.circuit = read_circuit(r, base_dir, cfg.preset_circuit);
    const int n_modes = cfg.circuit.n_modes;

    if (r.has("input")) {
        auto in = r.integers("input");
        if (static_cast<int>(in.size()) != n_modes) r.fail("input needs one count per circuit mode", "input");
        for (int x : in)
            if (x < 0) r.fail("counts must be non-negative", "input");
        cfg.input = OccupationVector(std::move(in));
    } else if (cfg.preset_circuit) {
        cfg.input = ghz_preset_bundle().input;
    } else {
        r.fail("missing required key 'input'");
    }
    if (cfg.input.total_photons() == 0) r.fail("input has no photons", "input");

    if (r.has("herald")) {
        const json& h = root.at("herald");
        if (h.is_string() && h.get<std::string>() == "preset") {
            cfg.rule = ghz_preset_bundle().rule;
        } else {
            cfg.rule = read_herald(r.at("herald"));
        }
    } else if (cfg.preset_circuit) {
        cfg.rule = ghz_preset_bundle().rule;
    }
    if (cfg.rule) {
        try {
            cfg.rule->validate(n_modes, cfg.input.total_photons());
        } catch (const ArgumentError& e) {
            r.fail(e.what(), "herald");
        }
    }

    if (r.has("sources")) cfg.sources = read_sources(r.at("sources"));
    const int n_photons = cfg.input.total_photons();
    if (cfg.sources.kind == SourceKind::Reported && static_cast<int>(cfg.sources.visibilities.size()) != n_photons - 1) {
        r.at("sources").fail("reported visibilities are V_1j for j = 2..n: need " + std::to_string(n_photons - 1), "visibilities");
    }
    if (cfg.sources.kind == SourceKind::Gram && cfg.sources.gram.rows() != n_photons) {
        r.at("sources").fail("gram must be " + std::to_string(n_photons) + "x" + std::to_string(n_photons), "gram");
    }

    if (r.has("loss")) {
        const json& l = root.at("loss");
        cfg.loss = l.is_number() ? std::vector<double>(static_cast<std::size_t>(n_modes), l.get<double>()) : r.numbers("loss");
        if (static_cast<int>(cfg.loss.size()) != n_modes) r.fail("loss needs one transmission per mode", "loss");
        for (double t : cfg.loss)
            if (!(t >= 0.0 && t <= 1.0)) r.fail("transmissions must lie in [0, 1]", "loss");
        if (std::all_of(cfg.loss.begin(), cfg.loss.end(), [](double t) { return t == 1.0; })) cfg.loss.clear();
    }
    if (r.has("detector")) {
        cfg.detector = read_detector(r.at("detector"));
        try {
            cfg.detector.validate(cfg.rule ? cfg.rule->ancilla_modes.size() : 0);
        } catch (const ArgumentError& e) {
            r.fail(e.what(), "detector");
        }
    }

    if (r.has("simulate")) {
        const Reader s = r.at("simulate");
        s.allow({"top_k"});
        cfg.top_k = static_cast<int>(s.integer("top_k", 200));
        if (cfg.top_k < 1) s.fail("top_k must be positive", "top_k");
    }
    if (r.has("analyze")) {
        const Reader a = r.at("analyze");
        a.allow({"counts", "visibility_sweep", "fidelity_threshold"});
        if (a.has("counts")) {
            const Reader c = a.at("counts");
            c.allow({"expected_total", "duration_hours"});
            CountsConfig cc;
            cc.expected_total = c.number("expected_total");
            if (!(cc.expected_total > 0.0)) c.fail("expected_total must be positive", "expected_total");
            cc.duration_hours = c.number("duration_hours", 0.0);
            cfg.analyze.counts = cc;
        }
        if (a.has("visibility_sweep")) {
            cfg.analyze.visibility_sweep = a.numbers("visibility_sweep");
            for (double v : cfg.analyze.visibility_sweep)
                if (!(v >= 0.0 && v <= 1.0)) a.fail("visibilities must lie in [0, 1]", "visibility_sweep");
        }
        cfg.analyze.fidelity_threshold = a.number("fidelity_threshold", 0.0);
    }
    if (r.has("optimize")) {
        const Reader o = r.at("optimize");
        o.allow({"budget", "restarts", "noise", "random_start", "w_fidelity", "w_probability"});
        const auto budget = o.integer("budget", 5000);
        if (budget < 0) o.fail("budget must be non-negative", "budget");
        cfg.budget = static_cast<std::size_t>(budget);
        cfg.restarts = static_cast<int>(o.integer("restarts", 1));
        if (cfg.restarts < 1) o.fail("restarts must be at least 1", "restarts");
        cfg.noise = o.number("noise", 0.0);
        if (cfg.noise < 0.0) o.fail("noise must be non-negative", "noise");
        cfg.random_start = o.boolean("random_start", false);
        cfg.w_fidelity = o.number("w_fidelity", 1.0);
        cfg.w_probability = o.number("w_probability", 1.0);
    }
    if (r.has("characterize")) {
        const Reader c = r.at("characterize");
        c.allow({"inputs", "outputs"});
        if (c.has("inputs")) cfg.char_inputs = c.integers("inputs");
        if (c.has("outputs")) cfg.char_outputs = c.integers("outputs");
        for (int m : cfg.char_inputs)
            if (m < 1 || m > n_modes) c.fail("mode out of range", "inputs");
        for (int m : cfg.char_outputs)
            if (m < 1 || m > n_modes) c.fail("mode out of range", "outputs");
    }
    if (r.has("limits")) {
        const Reader l = r.at("limits");
        l.allow({"max_basis", "max_permanent", "max_pairing_photons", "max_label_assignments"});
        cfg.limits.max_basis = static_cast<std::size_t>(l.integer("max_basis", static_cast<std::int64_t>(cfg.limits.max_basis)));
        cfg.limits.max_permanent = static_cast<int>(l.integer("max_permanent", cfg.limits.max_permanent));
        cfg.limits.max_pairing_photons = static_cast<int>(l.integer("max_pairing_photons", cfg.limits.max_pairing_photons));
        cfg.limits.max_label_assignments = static_cast<std::size_t>(
            l.integer("max_label_assignments", static_cast<std::int64_t>(cfg.limits.max_label_assignments)));
    }
    return cfg;
}

}  // namespace heraldsim::cli
