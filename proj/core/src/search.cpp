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

#include "heraldsim/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "heraldsim/analysis.hpp"
#include "heraldsim/error.hpp"
#include "heraldsim/evolution.hpp"

namespace heraldsim {

std::string_view to_string(ParamKind kind) {
    switch (kind) {
        case ParamKind::Transmission:
            return "transmission";
        case ParamKind::Phase:
            return "phase";
        case ParamKind::MziInternal:
            return "mzi_internal";
        case ParamKind::MziExternal:
            return "mzi_external";
    }
    return "unknown";
}

SearchProblem SearchProblem::transmissions_of(const CircuitSpec& topology, const OccupationVector& input,
                                              const HeraldRule& rule) {
    SearchProblem p;
    p.topology = topology;
    p.input = input;
    p.rule = rule;
    for (std::size_t i = 0; i < topology.elements.size(); ++i) {
        if (topology.elements[i].kind == ElementKind::BeamSplitter) p.free.push_back({i, ParamKind::Transmission, 0.0, 1.0});
    }
    return p;
}

void SearchProblem::validate() const {
    topology.validate();
    if (free.empty()) throw ArgumentError("search: at least one free parameter is required");
    if (!(w_fidelity >= 0.0 && w_probability >= 0.0) || (w_fidelity == 0.0 && w_probability == 0.0)) {
        throw ArgumentError("search: weights must be non-negative and not both zero");
    }
    if (input.n_modes() != static_cast<std::size_t>(topology.n_modes)) {
        throw ArgumentError("search: input occupation does not match the mode count");
    }
    rule.validate(topology.n_modes, input.total_photons());
    for (const auto& f : free) {
        if (f.element >= topology.elements.size()) throw ArgumentError("search: free parameter element out of range");
        const ElementKind k = topology.elements[f.element].kind;
        const bool ok = (f.kind == ParamKind::Transmission && k == ElementKind::BeamSplitter) ||
                        (f.kind == ParamKind::Phase && k == ElementKind::PhaseShifter) ||
                        ((f.kind == ParamKind::MziInternal || f.kind == ParamKind::MziExternal) && k == ElementKind::Mzi);
        if (!ok) throw ArgumentError("search: parameter kind does not match element kind");
        if (!(f.lower <= f.upper)) throw ArgumentError("search: empty parameter bounds");
        if (f.kind == ParamKind::Transmission && (f.lower < 0.0 || f.upper > 1.0)) {
            throw ArgumentError("search: transmission bounds must lie within [0, 1]");
        }
    }
}

namespace {

double& slot(Element& e, ParamKind kind) {
    switch (kind) {
        case ParamKind::Transmission:
            return e.transmission;
        case ParamKind::Phase:
        case ParamKind::MziInternal:
            return e.phase;
        case ParamKind::MziExternal:
            return e.external;
    }
    return e.phase;
}

}  // namespace

std::vector<double> SearchProblem::initial_params() const {
    std::vector<double> out;
    for (const auto& f : free) {
        Element e = topology.elements.at(f.element);
        out.push_back(slot(e, f.kind));
    }
    return out;
}

CircuitSpec SearchProblem::apply(const std::vector<double>& params) const {
    if (params.size() != free.size()) throw ArgumentError("search: parameter count mismatch");
    CircuitSpec c = topology;
    for (std::size_t i = 0; i < free.size(); ++i) {
        const double v = params[i];
        if (!(v >= free[i].lower && v <= free[i].upper)) {
            throw ArgumentError("search: parameter " + std::to_string(i) + " = " + std::to_string(v) + " out of bounds");
        }
        slot(c.elements.at(free[i].element), free[i].kind) = v;
    }
    return c;
}

namespace {

// Precomputed row lists for the heralded signal outcomes of each pattern.
class Scorer {
   public:
    explicit Scorer(const SearchProblem& p) : problem_(p) {
        problem_.validate();
        cols_ = photon_rows(p.input);
        const int n_modes = p.topology.n_modes;
        const auto sig = p.rule.signal_modes(n_modes);
        const DualRailRegister sreg = p.rule.signal_register(n_modes);
        const int n_sig = static_cast<int>(sig.size());
        const double s_fact = p.input.factorial_product();
        for (const auto& r : p.rule.patterns) {
            Pattern pat;
            const int k = p.input.total_photons() - r.total_photons();
            const auto states = enumerate_basis(k, n_sig);
            const std::string zeros(sreg.n_qubits(), '0');
            const std::string ones(sreg.n_qubits(), '1');
            const OccupationVector t0 = sreg.encode(zeros, n_sig);
            const OccupationVector t1 = sreg.encode(ones, n_sig);
            for (const auto& t : states) {
                std::vector<int> rows;
                for (int j = 0; j < n_sig; ++j) {
                    for (int c = 0; c < t[static_cast<std::size_t>(j)]; ++c) rows.push_back(sig[static_cast<std::size_t>(j)] - 1);
                }
                for (std::size_t j = 0; j < r.n_modes(); ++j) {
                    for (int c = 0; c < r[j]; ++c) rows.push_back(p.rule.ancilla_modes[j] - 1);
                }
                if (t == t0) pat.i000 = pat.rows.size();
                if (t == t1) pat.i111 = pat.rows.size();
                pat.rows.push_back(std::move(rows));
                pat.scale.push_back(1.0 / std::sqrt(s_fact * t.factorial_product() * r.factorial_product()));
            }
            patterns_.push_back(std::move(pat));
        }
    }

    Evaluation operator()(const std::vector<double>& params) const {
        const Matrix u = compile(problem_.apply(params)).matrix;
        Evaluation ev;
        ev.min_fidelity = std::numeric_limits<double>::infinity();
        ev.min_probability = std::numeric_limits<double>::infinity();
        const auto n = static_cast<Eigen::Index>(cols_.size());
        Matrix m(n, n);
        for (const auto& pat : patterns_) {
            double prob = 0.0;
            Complex a0{}, a1{};
            for (std::size_t s = 0; s < pat.rows.size(); ++s) {
                for (Eigen::Index i = 0; i < n; ++i) {
                    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = u(pat.rows[s][static_cast<std::size_t>(i)], cols_[static_cast<std::size_t>(k)]);
                }
                const Complex a = permanent(m) * pat.scale[s];
                prob += std::norm(a);
                if (s == pat.i000) a0 = a;
                if (s == pat.i111) a1 = a;
            }
            PatternScore sc;
            sc.probability = prob;
            if (prob > 0.0) {
                const double num = std::abs(a0) + std::abs(a1);
                sc.fidelity = std::min(1.0, num * num / (2.0 * prob));
            }
            ev.objective += problem_.w_fidelity * (1.0 - sc.fidelity) +
                            problem_.w_probability * std::max(0.0, problem_.target_probability - sc.probability);
            ev.min_fidelity = std::min(ev.min_fidelity, sc.fidelity);
            ev.min_probability = std::min(ev.min_probability, sc.probability);
            ev.per_pattern.push_back(sc);
        }
        ev.objective /= static_cast<double>(patterns_.size());
        return ev;
    }

   private:
    struct Pattern {
        std::vector<std::vector<int>> rows;
        std::vector<double> scale;
        std::size_t i000 = std::numeric_limits<std::size_t>::max();
        std::size_t i111 = std::numeric_limits<std::size_t>::max();
    };
    SearchProblem problem_;
    std::vector<int> cols_;
    std::vector<Pattern> patterns_;
};

constexpr double kEdge = 1e-9;  // keeps transmissions off 0 and 1 in search space

double to_search(double v, const FreeParameter& f) {
    if (f.kind != ParamKind::Transmission) return v;
    const double t = std::clamp(v, kEdge, 1.0 - kEdge);
    return std::log(t / (1.0 - t));
}

double to_natural(double x, const FreeParameter& f) {
    if (f.kind != ParamKind::Transmission) return std::clamp(x, f.lower, f.upper);
    return std::clamp(1.0 / (1.0 + std::exp(-x)), f.lower, f.upper);
}

}  // namespace

Evaluation evaluate(const std::vector<double>& params, const SearchProblem& problem) {
    return Scorer(problem)(params);
}

double objective(const std::vector<double>& params, const SearchProblem& problem) {
    return evaluate(params, problem).objective;
}

namespace {

struct RunState {
    const Scorer& scorer;
    const SearchProblem& problem;
    std::vector<TraceEntry>& trace;
    std::size_t& global_evals;
    double& global_best;
    int restart;
    std::size_t budget;
    std::size_t evals = 0;
    std::size_t improving = 0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_x;

    std::vector<double> natural(const std::vector<double>& x) const {
        std::vector<double> p(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) p[i] = to_natural(x[i], problem.free[i]);
        return p;
    }

    double operator()(const std::vector<double>& x) {
        const double f = scorer(natural(x)).objective;
        ++evals;
        ++global_evals;
        if (f < best) {
            if (evals > 1) ++improving;
            best = f;
            best_x = x;
            global_best = std::min(global_best, f);
            trace.push_back({global_evals, restart, f, global_best});
        }
        return f;
    }
    bool exhausted() const { return evals >= budget; }
};

// Nelder-Mead with standard coefficients; the simplex is rebuilt around the
// best point when it collapses or stops improving.
void nelder_mead(RunState& run, std::vector<double> x0, double step, double tol, int& resets) {
    const std::size_t n = x0.size();
    auto build = [&](const std::vector<double>& c, double h) {
        std::vector<std::pair<double, std::vector<double>>> s;
        s.emplace_back(run(c), c);
        for (std::size_t i = 0; i < n && !run.exhausted(); ++i) {
            std::vector<double> v = c;
            v[i] += h;
            s.emplace_back(run(v), v);
        }
        return s;
    };
    auto simplex = build(x0, step);
    if (run.best <= tol) return;
    std::size_t since_improvement = 0;
    double last_best = run.best;
    while (!run.exhausted() && run.best > tol) {
        if (simplex.size() < n + 1) break;
        std::stable_sort(simplex.begin(), simplex.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

        double diameter = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) diameter = std::max(diameter, std::abs(simplex[i].second[j] - simplex[0].second[j]));
        }
        const double spread = simplex[n].first - simplex[0].first;
        if (diameter < 1e-10 || spread < 1e-16 || since_improvement > 50 * n) {
            ++resets;
            simplex = build(run.best_x, step * std::pow(0.5, resets % 4));
            since_improvement = 0;
            continue;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i].second[j] / static_cast<double>(n);
        }
        auto along = [&](double t) {
            std::vector<double> v(n);
            for (std::size_t j = 0; j < n; ++j) v[j] = centroid[j] + t * (simplex[n].second[j] - centroid[j]);
            return v;
        };
        const auto xr = along(-1.0);
        const double fr = run(xr);
        if (fr < simplex[0].first) {
            if (run.exhausted()) {
                simplex[n] = {fr, xr};
            } else {
                const auto xe = along(-2.0);
                const double fe = run(xe);
                simplex[n] = fe < fr ? std::make_pair(fe, xe) : std::make_pair(fr, xr);
            }
        } else if (fr < simplex[n - 1].first) {
            simplex[n] = {fr, xr};
        } else {
            const bool outside = fr < simplex[n].first;
            const auto xc = along(outside ? -0.5 : 0.5);
            const double fc = run.exhausted() ? std::numeric_limits<double>::infinity() : run(xc);
            if (fc < std::min(fr, simplex[n].first)) {
                simplex[n] = {fc, xc};
            } else {
                for (std::size_t i = 1; i <= n && !run.exhausted(); ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        simplex[i].second[j] = simplex[0].second[j] + 0.5 * (simplex[i].second[j] - simplex[0].second[j]);
                    }
                    simplex[i].first = run(simplex[i].second);
                }
            }
        }
        if (run.best < last_best) {
            last_best = run.best;
            since_improvement = 0;
        } else {
            ++since_improvement;
        }
    }
}

}  // namespace

SearchResult optimize(const SearchProblem& problem, const SearchOptions& options) {
    const Scorer scorer(problem);
    const std::size_t n = problem.free.size();
    const std::vector<double> base = options.start.value_or(problem.initial_params());
    if (base.size() != n) throw ArgumentError("optimize: start point has the wrong size");
    if (options.restarts < 1) throw ArgumentError("optimize: need at least one restart");

    SearchResult result;
    if (options.budget == 0) {
        const Evaluation ev = scorer(base);
        result.best_params = base;
        result.best_objective = ev.objective;
        result.heralded_fidelity = ev.min_fidelity;
        result.per_pattern_probability = ev.min_probability;
        result.evaluations = 1;
        result.status = "no search performed";
        result.trace.push_back({1, 0, ev.objective, ev.objective});
        RestartSummary summary;
        summary.seed = derive_seed(options.seed, 0);
        summary.start = base;
        summary.best_params = base;
        summary.best_objective = ev.objective;
        summary.min_fidelity = ev.min_fidelity;
        summary.min_probability = ev.min_probability;
        summary.evaluations = 1;
        result.restarts.push_back(std::move(summary));
        return result;
    }

    std::size_t global_evals = 0;
    double global_best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < options.restarts; ++r) {
        RestartSummary summary;
        summary.index = r;
        summary.seed = derive_seed(options.seed, static_cast<std::uint64_t>(r));
        std::mt19937_64 rng(summary.seed);
        std::vector<double> start(n);
        for (std::size_t i = 0; i < n; ++i) {
            const FreeParameter& f = problem.free[i];
            if (options.random_start) {
                if (f.kind == ParamKind::Transmission) {
                    start[i] = std::uniform_real_distribution<double>(std::max(f.lower, 0.05), std::min(f.upper, 0.95))(rng);
                } else {
                    const double lo = std::isfinite(f.lower) ? f.lower : 0.0;
                    const double hi = std::isfinite(f.upper) ? f.upper : 2.0 * std::numbers::pi;
                    start[i] = std::uniform_real_distribution<double>(lo, hi)(rng);
                }
            } else {
                double v = base[i];
                if (options.noise > 0.0) v += std::uniform_real_distribution<double>(-0.5, 0.5)(rng) * options.noise;
                start[i] = std::clamp(v, f.lower, f.upper);
            }
        }
        summary.start = start;

        RunState run{scorer, problem, result.trace, global_evals, global_best, r, options.budget, 0, 0,
                     std::numeric_limits<double>::infinity(), {}};
        std::vector<double> x0(n);
        for (std::size_t i = 0; i < n; ++i) x0[i] = to_search(start[i], problem.free[i]);
        nelder_mead(run, x0, options.initial_step, options.tolerance, summary.simplex_resets);

        summary.best_params = run.natural(run.best_x);
        const Evaluation ev = scorer(summary.best_params);
        summary.best_objective = run.best;
        summary.min_fidelity = ev.min_fidelity;
        summary.min_probability = ev.min_probability;
        summary.evaluations = run.evals;
        summary.improving_steps = run.improving;
        summary.converged = run.best <= options.tolerance;
        result.evaluations += run.evals;
        result.restarts.push_back(std::move(summary));
    }

    const auto best = std::min_element(result.restarts.begin(), result.restarts.end(), [](const auto& a, const auto& b) {
        return a.best_objective < b.best_objective;  // ties keep the lower index
    });
    result.best_restart = best->index;
    result.best_params = best->best_params;
    result.best_objective = best->best_objective;
    result.heralded_fidelity = best->min_fidelity;
    result.per_pattern_probability = best->min_probability;
    result.improving_steps = best->improving_steps;
    result.status = best->converged ? "converged" : "budget exhausted";
    return result;
}

}  // namespace heraldsim
