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


#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "heraldsim/analysis.hpp"
#include "heraldsim/error.hpp"
#include "heraldsim/search.hpp"

namespace heraldsim::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// Shortest round-trip decimal form, for tables.
std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

json estimate_json(const Estimate& e) { return {{"value", e.value}, {"sigma", e.sigma}}; }

json analysis_json(const AnalysisResult& a) {
    json j;
    j["population"] = estimate_json(a.population);
    j["coherence"] = estimate_json(a.coherence);
    j["fidelity"] = estimate_json(a.fidelity);
    j["subspace_weight"] = a.subspace_weight;
    j["entangled"] = a.entangled;
    j["z_score"] = a.z_score;
    json ex = json::array();
    for (const auto& s : a.expectations) ex.push_back({{"theta", s.theta}, {"value", s.value.value}, {"sigma", s.value.sigma}});
    j["expectations"] = ex;
    return j;
}

const HeraldRule& require_rule(const ExperimentConfig& cfg, const char* command) {
    if (!cfg.rule) throw ConfigError(std::string(command) + " needs a 'herald' section (or the preset circuit)", 1);
    return *cfg.rule;
}

std::vector<int> photon_modes(const OccupationVector& input) {
    std::vector<int> modes = photon_rows(input);
    for (int& m : modes) ++m;
    return modes;
}

bool is_ideal(const SourceConfig& s) { return s.kind == SourceKind::Ideal && s.g2 == 0.0; }

SourceModel with_g2(SourceModel src, const SourceConfig& s) {
    if (s.g2 > 0.0) return src.with_contamination(contamination_from_g2(s.g2), s.max_extra);
    return src;
}

SourceModel uniform_source(const OccupationVector& input, double v, const SourceConfig& s) {
    const auto modes = photon_modes(input);
    return with_g2(SourceModel::from_visibility_factors(modes, std::vector<double>(modes.size(), std::sqrt(v))), s);
}

struct BuiltSource {
    SourceModel model;
    std::optional<VisibilityCalibration> calibration;
    json description;
};

BuiltSource build_source(const ExperimentConfig& cfg) {
    const SourceConfig& s = cfg.sources;
    const auto modes = photon_modes(cfg.input);
    BuiltSource b;
    b.description["g2"] = s.g2;
    b.description["contamination_p2"] = s.g2 > 0.0 ? contamination_from_g2(s.g2) : 0.0;
    b.description["max_extra"] = s.max_extra;
    switch (s.kind) {
        case SourceKind::Ideal:
            b.description["model"] = "ideal";
            b.model = SourceModel::indistinguishable(cfg.input);
            break;
        case SourceKind::Uniform:
            b.description["model"] = "uniform";
            b.description["pairwise_visibility"] = s.visibility;
            b.model = SourceModel::from_visibility_factors(modes, std::vector<double>(modes.size(), std::sqrt(s.visibility)));
            break;
        case SourceKind::Gram:
            b.description["model"] = "gram";
            b.model = SourceModel::from_gram(modes, s.gram);
            break;
        case SourceKind::Reported: {
            b.description["model"] = "reported";
            auto cal = calibrate_visibilities(s.visibilities, s.sigmas, s.g2, s.correct_g2);
            b.model = SourceModel::from_visibility_factors(modes, cal.factors);
            b.calibration = cal;
            break;
        }
    }
    b.model = with_g2(std::move(b.model), s);
    return b;
}

json calibration_json(const VisibilityCalibration& c, const SourceConfig& s) {
    json j;
    j["reported_v1j"] = c.reported;
    j["sigmas"] = s.sigmas;
    j["intrinsic_v1j"] = c.intrinsic;
    j["factors"] = c.factors;
    j["reference_visibility"] = c.reference;
    j["g2_corrected"] = c.g2_corrected;
    j["p2"] = c.p2;
    j["note"] =
        "only photon-1-referenced visibilities V_1j are given; they are completed to per-photon factors "
        "v_i with V_ij = v_i v_j, taking v_1 = sqrt(inverse-variance mean of V_1j) and v_j = V_1j / v_1. "
        "This completion is a modelling choice.";
    return j;
}

json detector_json(const DetectorModel& d) {
    return {{"kind", std::string(to_string(d.kind))},
            {"max_resolvable", d.max_resolvable},
            {"efficiency", d.efficiency},
            {"dark_count", d.dark_count}};
}

HeraldOutcome run_herald(const ExperimentConfig& cfg, const Matrix& u, const SourceModel& src) {
    return herald(u, src, *cfg.rule, cfg.detector, cfg.loss, cfg.limits);
}

json pattern_json(const PatternOutcome& p) {
    json j;
    j["pattern"] = p.pattern.counts();
    j["probability"] = p.probability;
    j["fires"] = p.state.has_value();
    j["dual_rail_weight"] = p.dual_rail_weight;
    j["subspace_ghz_fidelity"] = p.subspace_ghz_fidelity;
    return j;
}

json preset_reference(const ExperimentConfig& cfg) {
    if (!cfg.preset_circuit) return nullptr;
    return {{"label", "reference (design values of the preset, ideal sources)"},
            {"per_pattern_probability", 1.0 / 108.0},
            {"total_probability", 1.0 / 54.0}};
}

// Binomial thinning of photon-counting probabilities: loss after the
// interferometer acts classically on the counts.
std::map<OccupationVector, double> apply_mode_loss(const std::vector<OccupationVector>& outcomes,
                                                   const std::vector<double>& probs, const std::vector<double>& t) {
    std::map<OccupationVector, double> out;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        if (probs[k] == 0.0) continue;
        const auto& n = outcomes[k].counts();
        std::vector<int> kept(n.size(), 0);
        while (true) {
            double w = probs[k];
            for (std::size_t i = 0; i < n.size(); ++i) {
                w *= std::exp(std::lgamma(n[i] + 1.0) - std::lgamma(kept[i] + 1.0) - std::lgamma(n[i] - kept[i] + 1.0)) *
                     std::pow(t[i], kept[i]) * std::pow(1.0 - t[i], n[i] - kept[i]);
            }
            out[OccupationVector(kept)] += w;
            std::size_t i = 0;
            while (i < n.size() && kept[i] == n[i]) kept[i++] = 0;
            if (i == n.size()) break;
            ++kept[i];
        }
    }
    return out;
}

struct Combined {
    Matrix rho_q;
    double weight = 0.0;
};

// Probability-weighted mixture of the per-pattern register states.
Combined combine_patterns(const HeraldOutcome& h, const DualRailRegister& reg) {
    Combined c;
    for (const auto& p : h.per_pattern) {
        if (!p.state || p.dual_rail_weight <= 0.0) continue;
        const SubspaceState s = dual_rail_subspace(*p.state, reg);
        const double w = p.probability * s.weight;
        c.rho_q = c.rho_q.size() == 0 ? Matrix(w * s.rho) : Matrix(c.rho_q + w * s.rho);
        c.weight += w;
    }
    if (c.weight <= 0.0) throw DegenerateInputError("no heralded weight in the register subspace");
    c.rho_q /= c.weight;
    return c;
}

}  // namespace

CommandOutput run_simulate(const ExperimentConfig& cfg) {
    CommandOutput out;
    json& r = out.report;
    const Matrix u = compile(cfg.circuit).matrix;
    const auto unit = validate_unitary(u);
    r["unitarity"] = {{"deviation", unit.deviation}, {"pass", unit.pass}, {"tolerance", kUnitarityTolerance}};
    r["input"] = cfg.input.counts();
    r["circuit_label"] = cfg.circuit.label;

    const BuiltSource src = build_source(cfg);
    r["source"] = src.description;
    if (src.calibration) r["calibration"] = calibration_json(*src.calibration, cfg.sources);
    r["loss_transmissions"] = cfg.loss;

    std::vector<OccupationVector> outcomes;
    std::vector<double> probs;
    if (is_ideal(cfg.sources)) {
        const PureState psi = evolve_pure(u, cfg.input, cfg.limits);
        outcomes = psi.basis().states();
        probs.resize(outcomes.size());
        for (std::size_t i = 0; i < outcomes.size(); ++i) probs[i] = std::norm(psi.amplitudes()[static_cast<Eigen::Index>(i)]);
    } else {
        auto dist = evolve_distinguishable(u, src.model, cfg.limits);
        outcomes = std::move(dist.outcomes);
        probs = std::move(dist.probabilities);
    }
    if (!cfg.loss.empty()) {
        auto thinned = apply_mode_loss(outcomes, probs, cfg.loss);
        outcomes.clear();
        probs.clear();
        for (auto& [occ, p] : thinned) {
            outcomes.push_back(occ);
            probs.push_back(p);
        }
    }

    std::vector<std::size_t> order(outcomes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (probs[a] != probs[b]) return probs[a] > probs[b];
        return outcomes[a] > outcomes[b];
    });
    double total = 0.0, kept = 0.0, collision_free = 0.0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        total += probs[i];
        const auto& c = outcomes[i].counts();
        if (outcomes[i].total_photons() == cfg.input.total_photons() && std::all_of(c.begin(), c.end(), [](int x) { return x <= 1; })) {
            collision_free += probs[i];
        }
    }
    json entries = json::array();
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(cfg.top_k), order.size());
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = order[i];
        entries.push_back({{"outcome", outcomes[j].to_string()}, {"probability", probs[j]}});
        kept += probs[j];
    }
    json d;
    d["n_outcomes"] = outcomes.size();
    d["top_k"] = k;
    d["entries"] = entries;
    d["tail_mass"] = total - kept;
    d["tail_outcomes"] = outcomes.size() - k;
    d["total"] = total;
    d["normalization_residual"] = std::abs(total - 1.0);
    d["collision_free_probability"] = collision_free;
    r["distribution"] = d;

    std::ostringstream tsv;
    tsv << "outcome\tprobability\n";
    for (std::size_t i : order) tsv << outcomes[i].to_string() << '\t' << num(probs[i]) << '\n';
    out.artifacts.emplace_back("distribution.tsv", tsv.str());

    if (cfg.rule) {
        const HeraldOutcome h = run_herald(cfg, u, src.model);
        json hj;
        hj["ancilla_modes"] = cfg.rule->ancilla_modes;
        hj["detector"] = detector_json(cfg.detector);
        json pats = json::array();
        for (const auto& p : h.per_pattern) pats.push_back(pattern_json(p));
        hj["patterns"] = pats;
        hj["total_probability"] = h.total_probability;
        hj["reference"] = preset_reference(cfg);
        r["herald"] = hj;
    }
    stamp(r, "simulate", cfg);
    return out;
}

CommandOutput run_analyze(const ExperimentConfig& cfg) {
    CommandOutput out;
    json& r = out.report;
    const HeraldRule& rule = require_rule(cfg, "analyze");
    const Matrix u = compile(cfg.circuit).matrix;
    const DualRailRegister reg = rule.signal_register(cfg.circuit.n_modes);
    const BuiltSource src = build_source(cfg);
    r["source"] = src.description;
    if (src.calibration) r["calibration"] = calibration_json(*src.calibration, cfg.sources);
    r["detector"] = detector_json(cfg.detector);
    r["loss_transmissions"] = cfg.loss;

    const HeraldOutcome h = run_herald(cfg, u, src.model);
    json pats = json::array();
    for (const auto& p : h.per_pattern) {
        json pj = pattern_json(p);
        if (p.state && p.dual_rail_weight > 0.0) pj["witness"] = analysis_json(fidelity_pc(*p.state, reg));
        pats.push_back(pj);
    }
    r["patterns"] = pats;
    r["herald_probability"] = h.total_probability;

    const Combined comb = combine_patterns(h, reg);
    AnalysisResult exact = fidelity_pc(comb.rho_q);
    exact.subspace_weight = comb.weight / h.total_probability;
    r["combined"] = analysis_json(exact);

    if (cfg.analyze.counts) {
        const auto& cc = *cfg.analyze.counts;
        std::vector<CountRecord> records;
        const auto settings = witness_settings(reg.n_qubits());
        std::ostringstream tsv;
        tsv << "setting\toutcome\tcount\n";
        for (std::size_t i = 0; i < settings.size(); ++i) {
            auto rec = simulate_counts(outcome_probabilities(comb.rho_q, settings[i]), cc.expected_total,
                                       derive_seed(cfg.seed, i), settings[i]);
            rec.duration_hours = cc.duration_hours;
            for (std::size_t b = 0; b < rec.counts.size(); ++b) {
                std::string bits;
                for (std::size_t q = 0; q < reg.n_qubits(); ++q) bits += ((b >> (reg.n_qubits() - 1 - q)) & 1U) ? '1' : '0';
                tsv << settings[i].label() << '\t' << bits << '\t' << rec.counts[b] << '\n';
            }
            records.push_back(std::move(rec));
        }
        json cj = analysis_json(estimate_from_counts(records));
        cj["expected_total_per_setting"] = cc.expected_total;
        cj["duration_hours_per_setting"] = cc.duration_hours;
        json tot = json::array();
        for (const auto& rec : records) tot.push_back({{"setting", rec.setting.label()}, {"total", rec.total()}});
        cj["totals"] = tot;
        r["counts"] = cj;
        out.artifacts.emplace_back("counts.tsv", tsv.str());
    }

    r["reference"] = {{"label", "reference (experimental values; not reproduced, not a target)"},
                      {"population", {{"value", 0.758}, {"sigma", 0.025}}},
                      {"coherence", {{"value", 0.389}, {"sigma", 0.040}}},
                      {"fidelity", {{"value", 0.573}, {"sigma", 0.024}}}};

    if (!cfg.analyze.visibility_sweep.empty()) {
        json rows = json::array();
        std::ostringstream tsv;
        tsv << "visibility\therald_probability\tpopulation\tcoherence\tfidelity\n";
        std::vector<double> fids;
        for (double v : cfg.analyze.visibility_sweep) {
            const HeraldOutcome hv = run_herald(cfg, u, uniform_source(cfg.input, v, cfg.sources));
            const AnalysisResult a = fidelity_pc(combine_patterns(hv, reg).rho_q);
            rows.push_back({{"visibility", v},
                            {"herald_probability", hv.total_probability},
                            {"population", a.population.value},
                            {"coherence", a.coherence.value},
                            {"fidelity", a.fidelity.value}});
            tsv << num(v) << '\t' << num(hv.total_probability) << '\t' << num(a.population.value) << '\t'
                << num(a.coherence.value) << '\t' << num(a.fidelity.value) << '\n';
            fids.push_back(a.fidelity.value);
        }
        bool decreasing = true;
        for (std::size_t i = 1; i < fids.size(); ++i) decreasing = decreasing && fids[i] < fids[i - 1];
        r["visibility_sweep"] = {{"rows", rows}, {"fidelity_strictly_decreasing", decreasing}};
        out.artifacts.emplace_back("sweep.tsv", tsv.str());
    }

    const auto eff = heralding_efficiency(src.model, cfg.circuit, rule, cfg.detector, cfg.loss,
                                          cfg.analyze.fidelity_threshold, cfg.limits);
    r["heralding_efficiency"] = {{"value", eff.value ? json(*eff.value) : json(nullptr)},
                                 {"status", eff.status},
                                 {"herald_probability", eff.herald_probability},
                                 {"success_probability", eff.success_probability},
                                 {"fidelity_threshold", cfg.analyze.fidelity_threshold},
                                 {"note", "model-based; unmodelled hardware losses are not included"}};
    stamp(r, "analyze", cfg);
    return out;
}

CommandOutput run_optimize(const ExperimentConfig& cfg) {
    CommandOutput out;
    json& r = out.report;
    const HeraldRule& rule = require_rule(cfg, "optimize");
    SearchProblem problem = SearchProblem::transmissions_of(cfg.circuit, cfg.input, rule);
    problem.w_fidelity = cfg.w_fidelity;
    problem.w_probability = cfg.w_probability;
    SearchOptions opt;
    opt.budget = cfg.budget;
    opt.restarts = cfg.restarts;
    opt.seed = cfg.seed;
    opt.noise = cfg.noise;
    opt.random_start = cfg.random_start;
    const SearchResult res = optimize(problem, opt);

    r["options"] = {{"budget", cfg.budget},
                    {"restarts", cfg.restarts},
                    {"noise", cfg.noise},
                    {"random_start", cfg.random_start},
                    {"w_fidelity", cfg.w_fidelity},
                    {"w_probability", cfg.w_probability},
                    {"target_probability", problem.target_probability}};
    r["status"] = res.status;
    r["best_objective"] = res.best_objective;
    r["heralded_fidelity"] = res.heralded_fidelity;
    r["per_pattern_probability"] = res.per_pattern_probability;
    r["best_restart"] = res.best_restart;
    r["evaluations"] = res.evaluations;
    r["improving_steps"] = res.improving_steps;

    const std::vector<double> quoted{0.5, 0.25, 2.0 / 3.0};
    json params = json::array();
    double worst = 0.0;
    const auto& start = res.restarts[static_cast<std::size_t>(res.best_restart)].start;
    for (std::size_t i = 0; i < problem.free.size(); ++i) {
        const auto& fp = problem.free[i];
        const Element& e = cfg.circuit.elements[fp.element];
        const double v = res.best_params[i];
        double nearest = quoted[0];
        for (double q : quoted)
            if (std::abs(v - q) < std::abs(v - nearest)) nearest = q;
        worst = std::max(worst, std::abs(v - nearest));
        params.push_back({{"element", fp.element},
                          {"modes", {e.mode_a, e.mode_b}},
                          {"kind", std::string(to_string(fp.kind))},
                          {"start", start[i]},
                          {"value", v},
                          {"nearest_quoted", nearest},
                          {"distance", std::abs(v - nearest)}});
    }
    r["parameters"] = params;
    r["max_distance_to_quoted"] = worst;

    json rs = json::array();
    for (const auto& s : res.restarts) {
        rs.push_back({{"index", s.index},
                      {"seed", s.seed},
                      {"best_objective", s.best_objective},
                      {"min_fidelity", s.min_fidelity},
                      {"min_probability", s.min_probability},
                      {"evaluations", s.evaluations},
                      {"improving_steps", s.improving_steps},
                      {"simplex_resets", s.simplex_resets},
                      {"converged", s.converged}});
    }
    r["restarts"] = rs;

    CircuitSpec recovered = problem.apply(res.best_params);
    recovered.label = "recovered by optimize";
    out.artifacts.emplace_back("recovered_circuit.json", circuit_to_json(recovered) + "\n");
    std::ostringstream csv;
    csv << "evaluation,restart,objective,best\n";
    for (const auto& t : res.trace) csv << t.evaluation << ',' << t.restart << ',' << num(t.objective) << ',' << num(t.best) << '\n';
    out.artifacts.emplace_back("trace.csv", csv.str());
    r["artifacts"] = {"recovered_circuit.json", "trace.csv"};
    stamp(r, "optimize", cfg);
    return out;
}

CommandOutput run_characterize(const ExperimentConfig& cfg) {
    CommandOutput out;
    json& r = out.report;
    const Matrix u = compile(cfg.circuit).matrix;
    const int n = cfg.circuit.n_modes;
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
    const auto inputs = cfg.char_inputs.empty() ? all : cfg.char_inputs;
    const auto outputs = cfg.char_outputs.empty() ? all : cfg.char_outputs;
    const Characterization c = characterize_circuit(u, inputs, outputs);

    // Re-gauging the rebuilt matrix must reproduce the tables exactly.
    const Matrix rebuilt = rebuild_from_characterization(c);
    std::vector<int> ri(inputs.size()), ro(outputs.size());
    for (std::size_t i = 0; i < ri.size(); ++i) ri[i] = static_cast<int>(i) + 1;
    for (std::size_t i = 0; i < ro.size(); ++i) ro[i] = static_cast<int>(i) + 1;
    const Characterization again = characterize_circuit(rebuilt, ri, ro);
    const double regauge = std::max((c.amplitude - again.amplitude).cwiseAbs().maxCoeff(),
                                    (c.phase - again.phase).cwiseAbs().maxCoeff());

    // Gauge-invariant comparison against the compiled unitary: column
    // moduli after normalization, and phases of cross ratios.
    auto sub = [&](std::size_t i, std::size_t o) { return u(outputs[o] - 1, inputs[i] - 1); };
    double residual = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        double norm = 0.0;
        for (std::size_t o = 0; o < outputs.size(); ++o) norm += std::norm(sub(i, o));
        for (std::size_t o = 0; o < outputs.size(); ++o) {
            const double want = norm > 0.0 ? std::norm(sub(i, o)) / norm : 0.0;
            residual = std::max(residual, std::abs(c.amplitude(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(o)) - want));
        }
    }
    constexpr double kNonzero = 1e-9;
    for (std::size_t i0 = 0; i0 < inputs.size(); ++i0) {
        for (std::size_t o0 = 0; o0 < outputs.size(); ++o0) {
            if (std::abs(sub(i0, o0)) < kNonzero) continue;
            for (std::size_t i = 0; i < inputs.size(); ++i) {
                for (std::size_t o = 0; o < outputs.size(); ++o) {
                    const Complex a = sub(i, o) * sub(i0, o0) * std::conj(sub(i, o0)) * std::conj(sub(i0, o));
                    const Complex b = rebuilt(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(i)) *
                                      rebuilt(static_cast<Eigen::Index>(o0), static_cast<Eigen::Index>(i0)) *
                                      std::conj(rebuilt(static_cast<Eigen::Index>(o0), static_cast<Eigen::Index>(i))) *
                                      std::conj(rebuilt(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(i0)));
                    if (std::abs(a) < kNonzero || std::abs(b) < kNonzero) continue;
                    residual = std::max(residual, std::abs(std::arg(a * std::conj(b))));
                }
            }
            break;
        }
    }

    auto table = [&](const Eigen::MatrixXd& m) {
        std::ostringstream tsv;
        tsv << "input\\output";
        for (int o : outputs) tsv << '\t' << o;
        tsv << '\n';
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            tsv << inputs[i];
            for (std::size_t o = 0; o < outputs.size(); ++o) tsv << '\t' << num(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(o)));
            tsv << '\n';
        }
        return tsv.str();
    };
    auto rows = [](const Eigen::MatrixXd& m) {
        json a = json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
            a.push_back(row);
        }
        return a;
    };
    const auto unit = validate_unitary(u);
    r["unitarity"] = {{"deviation", unit.deviation}, {"pass", unit.pass}};
    r["inputs"] = inputs;
    r["outputs"] = outputs;
    r["shape"] = {inputs.size(), outputs.size()};
    r["amplitude"] = rows(c.amplitude);
    r["phase"] = rows(c.phase);
    r["gauge"] = "phases fixed to 0 on a spanning tree of nonzero entries grown from the first row, then the first column";
    r["gauge_residual"] = residual;
    r["regauge_residual"] = regauge;
    out.artifacts.emplace_back("amplitude.tsv", table(c.amplitude));
    out.artifacts.emplace_back("phase.tsv", table(c.phase));
    stamp(r, "characterize", cfg);
    return out;
}

}  // namespace heraldsim::cli
