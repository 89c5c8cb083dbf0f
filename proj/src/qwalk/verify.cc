// Copyright 2026 The qwalk Authors
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

#include "qwalk/verify.h"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qwalk/circuit_builder.h"
#include "qwalk/native_compiler.h"
#include "qwalk/readout.h"

namespace qwalk {

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double v) {
    std::ostringstream out;
    out.precision(3);
    out << std::scientific << v;
    return out.str();
}

double forbidden_parity_mass(const Distribution &d, int t) {
    double mass = 0.0;
    for (const auto &[x, p] : d.probs) {
        if ((x + t) % 2 != 0) {
            mass += p;
        }
    }
    return mass;
}

}  // namespace

std::array<double, 4> angle_grid() {
    return {0.0, kPi / 20, kPi / 10, kPi / 4};
}

std::array<std::pair<std::string, std::pair<Complex, Complex>>, 3> initial_states() {
    const double h = 1.0 / std::sqrt(2.0);
    return {{{"zero", {1.0, 0.0}}, {"one", {0.0, 1.0}}, {"plus-i", {h, Complex{0.0, h}}}}};
}

std::vector<WalkConfig> circuit_grid() {
    std::vector<WalkConfig> out;
    for (int t = 0; t <= kMaxWalkSteps; ++t) {
        for (const auto &[name, ab] : initial_states()) {
            for (double a : angle_grid()) {
                out.push_back({a, 0.0, t, ab.first, ab.second, WalkModel::DQW});
                for (double b : angle_grid()) {
                    out.push_back({a, b, t, ab.first, ab.second, WalkModel::TwoPeriodDQW});
                }
            }
        }
    }
    return out;
}

GridReport run_circuit_grid() {
    GridReport r;
    auto start = std::chrono::steady_clock::now();
    for (const auto &cfg : circuit_grid()) {
        auto run = run_walk(cfg);
        auto oracle = evolve(cfg).second;
        r.max_oracle_diff = std::max(r.max_oracle_diff, Distribution::max_abs_diff(run.marginal.distribution, oracle));
        r.max_forbidden_parity =
            std::max(r.max_forbidden_parity, forbidden_parity_mass(run.marginal.distribution, cfg.steps));
        r.max_leakage = std::max(r.max_leakage, run.marginal.leakage);
        ++r.runs;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

CheckResult check_compiled_blocks() {
    const auto &rules = standard_rule_set();
    double worst = 0.0;
    for (const auto &rule : rules.rules) {
        worst = std::max(worst, rule_deviation(rule, ConventionChoice{}));
    }
    worst = std::max(worst, rule_deviation(ising_cnot_rule(), ConventionChoice{}));
    return {"compiled-blocks", worst < kRuleTolerance,
            "max deviation " + sci(worst) + " over " + std::to_string(rules.rules.size() + 1) + " rules"};
}

CheckResult check_circuit_oracle(const GridReport &report) {
    return {"circuit-oracle", report.max_oracle_diff < kCircuitOracleTolerance,
            "max |dP| " + sci(report.max_oracle_diff) + " over " + std::to_string(report.runs) + " runs"};
}

CheckResult check_circuit_parity(const GridReport &report) {
    return {"circuit-parity", report.max_forbidden_parity < kParityTolerance,
            "max forbidden-parity mass " + sci(report.max_forbidden_parity)};
}

CheckResult check_circuit_leakage(const GridReport &report) {
    return {"circuit-leakage", report.max_leakage < kLeakageTolerance, "max leakage " + sci(report.max_leakage)};
}

CheckResult check_oracle_parity() {
    double worst = 0.0;
    for (int t = 0; t <= kMaxPosition; ++t) {
        for (const auto &[name, ab] : initial_states()) {
            for (int a = 0; a <= 20; ++a) {
                for (int b = 0; b <= 20; b += 5) {
                    for (auto model : {WalkModel::DQW, WalkModel::TwoPeriodDQW}) {
                        auto d = evolve({a * kPi / 20, b * kPi / 20, t, ab.first, ab.second, model}).second;
                        worst = std::max(worst, forbidden_parity_mass(d, t));
                    }
                }
            }
        }
    }
    return {"oracle-parity", worst < kParityTolerance, "max forbidden-parity mass " + sci(worst)};
}

CheckResult check_oracle_norm_and_light_cone() {
    double worst_norm = 0.0;
    int cone_breaks = 0;
    for (auto model : {WalkModel::DQW, WalkModel::SplitStep, WalkModel::TwoPeriodDQW}) {
        for (const auto &[name, ab] : initial_states()) {
            for (int a = 0; a <= 20; a += 2) {
                for (int t = 0; t <= kMaxPosition; ++t) {
                    auto [state, d] = evolve({a * kPi / 20, kPi / 20, t, ab.first, ab.second, model});
                    worst_norm = std::max(worst_norm, std::abs(state.norm() - 1.0));
                    cone_breaks += state.support_radius() > t;
                }
            }
        }
    }
    return {"oracle-norm-light-cone", worst_norm < 1e-12 && cone_breaks == 0,
            "max |norm - 1| " + sci(worst_norm) + ", light-cone breaks " + std::to_string(cone_breaks)};
}

CheckResult check_split_step_equivalence() {
    double worst = 0.0;
    for (int a = 0; a <= 20; ++a) {
        for (int b = 0; b <= 20; ++b) {
            for (int t = 0; t <= kMaxWalkSteps; ++t) {
                for (const auto &[name, ab] : initial_states()) {
                    double t1 = a * kPi / 20, t2 = b * kPi / 20;
                    auto split = evolve({t1, t2, t, ab.first, ab.second, WalkModel::SplitStep}).second;
                    auto two = evolve({t1, t2, 2 * t, ab.first, ab.second, WalkModel::TwoPeriodDQW}).second;
                    for (int x = -2 * t; x <= 2 * t; ++x) {
                        double d = x % 2 == 0 ? std::abs(split.at(x / 2) - two.at(x)) : two.at(x);
                        worst = std::max(worst, d);
                    }
                }
            }
        }
    }
    return {"split-step-equivalence", worst < kSplitStepTolerance, "max |dP| " + sci(worst)};
}

CheckResult check_dca_operator() {
    double worst = 0.0;
    for (double b : angle_grid()) {
        worst = std::max(worst, dca_unitary_check(b, 7));
    }
    return {"dca-operator", worst < kDcaTolerance, "max deviation " + sci(worst)};
}

CheckResult check_spam_round_trip(size_t trials, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> err(0.0, 0.1);
    double worst = 0.0;
    for (size_t k = 0; k < trials; ++k) {
        ConfusionModel model;
        for (size_t q = 0; q < kWalkQubits; ++q) {
            double p10 = err(rng), p01 = err(rng);
            model.matrices.push_back({1.0 - p10, p01, p10, 1.0 - p01});
        }
        std::vector<double> p(size_t{1} << kWalkQubits);
        double total = 0.0;
        for (auto &v : p) {
            v = unit(rng);
            total += v;
        }
        for (auto &v : p) {
            v /= total;
        }
        auto back = correct_spam(apply_confusion(p, model), model);
        for (size_t i = 0; i < p.size(); ++i) {
            worst = std::max(worst, std::abs(back[i] - p[i]));
        }
    }
    return {"spam-round-trip", worst < kSpamTolerance,
            "max |dp| " + sci(worst) + " over " + std::to_string(trials) + " vectors"};
}

std::vector<CheckResult> run_invariant_suite() {
    std::vector<CheckResult> out;
    out.push_back(check_compiled_blocks());
    auto grid = run_circuit_grid();
    out.push_back(check_circuit_oracle(grid));
    out.push_back(check_circuit_parity(grid));
    out.push_back(check_circuit_leakage(grid));
    out.push_back(check_oracle_parity());
    out.push_back(check_oracle_norm_and_light_cone());
    out.push_back(check_split_step_equivalence());
    out.push_back(check_dca_operator());
    out.push_back(check_spam_round_trip());
    return out;
}

}  // namespace qwalk
