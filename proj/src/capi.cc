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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qwalk/circuit_builder.h"
#include "qwalk/dirac.h"
#include "qwalk/errors.h"
#include "qwalk/native_compiler.h"
#include "qwalk/qwalk.h"
#include "qwalk/readout.h"
#include "qwalk/verify.h"

using nlohmann::json;

struct qwalk_result {
    json doc;
    std::string text;
};

struct qwalk_noise {
    qwalk::NoiseConfig config;
};

namespace {

constexpr const char *kVersion = "0.1.0";
constexpr double kPi = std::numbers::pi;
constexpr double kDiracSpan = 200.0;

thread_local std::string last_error;

template <typename F>
qwalk_status guarded(F &&body) {
    last_error.clear();
    try {
        body();
        return QWALK_OK;
    } catch (const qwalk::InvariantViolation &e) {
        last_error = e.what();
        return QWALK_ERR_INVARIANT;
    } catch (const std::invalid_argument &e) {
        last_error = e.what();
        return QWALK_ERR_INVALID_ARGUMENT;
    } catch (const std::domain_error &e) {
        last_error = e.what();
        return QWALK_ERR_INVALID_ARGUMENT;
    } catch (const json::exception &e) {
        last_error = e.what();
        return QWALK_ERR_INVALID_ARGUMENT;
    } catch (const std::exception &e) {
        last_error = e.what();
        return QWALK_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return QWALK_ERR_INTERNAL;
    }
}

void require(const void *p, const char *what) {
    if (p == nullptr) {
        throw std::invalid_argument(std::string(what) + " must not be NULL");
    }
}

void emit(json doc, qwalk_result **out) {
    require(out, "out");
    auto *r = new qwalk_result{std::move(doc), {}};
    r->text = r->doc.dump(2);
    *out = r;
}

qwalk::WalkModel to_model(qwalk_model m) {
    switch (m) {
        case QWALK_MODEL_DQW:
            return qwalk::WalkModel::DQW;
        case QWALK_MODEL_SPLIT_STEP:
            return qwalk::WalkModel::SplitStep;
        case QWALK_MODEL_TWO_PERIOD:
            return qwalk::WalkModel::TwoPeriodDQW;
    }
    throw std::invalid_argument("unknown walk model " + std::to_string(static_cast<int>(m)));
}

qwalk::WalkConfig to_config(const qwalk_walk_config *c) {
    require(c, "config");
    qwalk::WalkConfig cfg{c->theta1,
                          c->theta2,
                          c->steps,
                          {c->alpha_re, c->alpha_im},
                          {c->beta_re, c->beta_im},
                          to_model(c->model)};
    cfg.validate();
    return cfg;
}

json complex_json(qwalk::Complex z) {
    return json::array({z.real(), z.imag()});
}

json walk_metadata(const qwalk::WalkConfig &cfg) {
    return {{"library", "qwalk"},
            {"version", kVersion},
            {"model", std::string(qwalk::walk_model_name(cfg.model))},
            {"theta1", cfg.theta1},
            {"theta2", cfg.theta2},
            {"steps", cfg.steps},
            {"initial", {{"alpha", complex_json(cfg.alpha)}, {"beta", complex_json(cfg.beta)}}}};
}

/// Dense positions -radius..radius with their probabilities.
void put_distribution(json &doc, const qwalk::Distribution &d, int radius) {
    json xs = json::array(), ps = json::array();
    for (int x = -radius; x <= radius; ++x) {
        xs.push_back(x);
        ps.push_back(d.at(x));
    }
    doc["positions"] = xs;
    doc["probabilities"] = ps;
}

json gate_counts_json(const qwalk::GateCount &c) {
    json steps = json::array();
    for (const auto &s : c.per_step) {
        steps.push_back({{"step", s.step}, {"r", s.r}, {"xx", s.xx}});
    }
    return {{"r", c.r_count}, {"xx", c.xx_count}, {"per_step", steps}};
}

qwalk::WalkRun checked_run(const qwalk::WalkConfig &cfg, const qwalk::CompileOptions &options, double *diff) {
    auto run = qwalk::run_walk(cfg, options);
    auto oracle = qwalk::evolve(cfg).second;
    *diff = qwalk::Distribution::max_abs_diff(run.marginal.distribution, oracle);
    if (!(*diff < qwalk::kCircuitOracleTolerance)) {
        throw qwalk::InvariantViolation("circuit distribution differs from direct evolution by " +
                                        std::to_string(*diff));
    }
    if (!(run.marginal.leakage < qwalk::kLeakageTolerance)) {
        throw qwalk::InvariantViolation("noiseless leakage onto the unused code: " +
                                        std::to_string(run.marginal.leakage));
    }
    return run;
}

json walk_document(const qwalk::WalkConfig &cfg) {
    json doc;
    doc["metadata"] = walk_metadata(cfg);
    if (cfg.model == qwalk::WalkModel::SplitStep) {
        doc["metadata"]["engine"] = "direct";
        put_distribution(doc, qwalk::evolve(cfg).second, cfg.steps);
        return doc;
    }
    double diff = 0.0;
    auto run = checked_run(cfg, {}, &diff);
    doc["metadata"]["engine"] = "circuit";
    put_distribution(doc, run.marginal.distribution, cfg.steps);
    doc["leakage"] = run.marginal.leakage;
    doc["gate_counts"] = gate_counts_json(run.counts);
    doc["direct_max_abs_diff"] = diff;
    return doc;
}

json noise_json(const qwalk::NoiseConfig &noise) {
    json j = qwalk::noise_config_to_json(noise);
    j["synthetic"] = true;
    return j;
}

qwalk::Distribution from_probabilities(const json &doc) {
    qwalk::Distribution d;
    for (size_t i = 0; i < doc.at("positions").size(); ++i) {
        d.probs[doc["positions"][i].get<int>()] = doc["probabilities"][i].get<double>();
    }
    return d;
}

json sample_document(const qwalk::WalkConfig &cfg, const qwalk::NoiseConfig *noise, uint64_t shots, uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be >= 1");
    }
    if (cfg.model == qwalk::WalkModel::SplitStep) {
        throw std::invalid_argument("sampling needs a circuit; split-step walks have none");
    }
    double diff = 0.0;
    auto run = checked_run(cfg, {}, &diff);
    qwalk::NoiseConfig nc;
    nc.model = noise != nullptr ? noise->model : qwalk::ConfusionModel::identity(qwalk::kWalkQubits);
    if (nc.model.num_qubits() != qwalk::kWalkQubits) {
        throw std::invalid_argument("noise config must list " + std::to_string(qwalk::kWalkQubits) +
                                    " readout matrices, got " + std::to_string(nc.model.num_qubits()));
    }
    nc.shots = shots;
    nc.seed = seed;
    auto record = qwalk::noisy_sample(run.probabilities, nc);
    auto raw = qwalk::marginalize(record);

    json doc;
    doc["metadata"] = walk_metadata(cfg);
    doc["metadata"]["engine"] = "circuit";
    doc["metadata"]["shots"] = shots;
    doc["metadata"]["seed"] = seed;
    doc["metadata"]["noise"] = noise != nullptr ? noise_json(nc) : json(nullptr);
    doc["counts"] = record.counts;
    put_distribution(doc, raw.distribution, qwalk::kMaxPosition);
    doc["leakage"] = raw.leakage;
    doc["gate_counts"] = gate_counts_json(run.counts);
    json ideal;
    put_distribution(ideal, run.marginal.distribution, qwalk::kMaxPosition);
    doc["ideal"] = ideal;
    if (noise != nullptr) {
        auto freqs = qwalk::frequencies(record, qwalk::kWalkQubits);
        auto fixed = qwalk::marginalize(qwalk::correct_spam(freqs, nc.model, true));
        json corrected;
        put_distribution(corrected, fixed.distribution, qwalk::kMaxPosition);
        corrected["leakage"] = fixed.leakage;
        corrected["method"] = "inverse confusion, clipped and renormalized";
        doc["corrected"] = corrected;
        auto report = qwalk::error_report(from_probabilities(corrected), run.marginal.distribution);
        json diffs = json::array();
        for (const auto &[x, d] : report.abs_diff) {
            diffs.push_back({{"x", x}, {"abs_diff", d}});
        }
        doc["error_report"] = {{"per_position", diffs}, {"max", report.max}, {"mean", report.mean}};
    }
    return doc;
}

json dirac_document(double theta2, double width, int steps, qwalk::Complex alpha, qwalk::Complex beta) {
    auto cmp = qwalk::compare_dca_dirac(theta2, width, steps, alpha, beta);
    json doc;
    doc["metadata"] = {{"library", "qwalk"},
                       {"version", kVersion},
                       {"model", "two-period"},
                       {"theta1", 0.0},
                       {"theta2", theta2},
                       {"steps", steps},
                       {"width", width},
                       {"mass", cmp.mass},
                       {"initial", {{"alpha", complex_json(alpha)}, {"beta", complex_json(beta)}}}};
    json xs = json::array(), ps = json::array(), cells = json::array();
    for (const auto &row : cmp.rows) {
        xs.push_back(row.x);
        ps.push_back(row.p_dca);
        cells.push_back(row.dirac_cell);
    }
    doc["positions"] = xs;
    doc["probabilities"] = ps;
    doc["dirac_cells"] = cells;
    doc["dirac_tail"] = cmp.dirac_tail;
    doc["dirac_normalization"] = qwalk::dirac_mass_between(cmp.mass, width, steps, -kDiracSpan, kDiracSpan);
    doc["tv_distance"] = cmp.tv_distance;
    return doc;
}

json panel(const std::string &name, std::initializer_list<const char *> columns) {
    return {{"name", name}, {"columns", columns}, {"rows", json::array()}};
}

json walk_panel(const std::string &name, qwalk::WalkConfig cfg) {
    json p = panel(name, {"step", "x", "value"});
    for (int t = 1; t <= qwalk::kMaxWalkSteps; ++t) {
        cfg.steps = t;
        auto d = qwalk::evolve(cfg).second;
        for (int x = -qwalk::kMaxWalkSteps; x <= qwalk::kMaxWalkSteps; ++x) {
            p["rows"].push_back({t, x, d.at(x)});
        }
    }
    return p;
}

std::string angle_label(int denominator) {
    return "pi-" + std::to_string(denominator);
}

// Readout and crosstalk levels of the fig5-synthetic noise model.
constexpr double kSyntheticReadout = 0.03;
constexpr double kSyntheticCrosstalk = 0.03;
constexpr uint64_t kSyntheticShots = 3000;

json error_panel(const std::string &name, qwalk::WalkConfig cfg, uint64_t seed) {
    json p = panel(name, {"step", "x", "value"});
    qwalk::NoiseConfig nc;
    nc.model = qwalk::ConfusionModel::symmetric(qwalk::kWalkQubits, kSyntheticReadout, kSyntheticReadout);
    nc.model.crosstalk_eps = kSyntheticCrosstalk;
    for (int t = 1; t <= qwalk::kMaxWalkSteps; ++t) {
        cfg.steps = t;
        auto run = qwalk::run_walk(cfg);
        nc.shots = kSyntheticShots;
        nc.seed = seed + static_cast<uint64_t>(t);
        auto record = qwalk::noisy_sample(run.probabilities, nc);
        auto corrected = qwalk::marginalize(
            qwalk::correct_spam(qwalk::frequencies(record, qwalk::kWalkQubits), nc.model, true));
        auto report = qwalk::error_report(corrected.distribution, run.marginal.distribution);
        for (int x = -qwalk::kMaxWalkSteps; x <= qwalk::kMaxWalkSteps; ++x) {
            auto it = report.abs_diff.find(x);
            p["rows"].push_back({t, x, it == report.abs_diff.end() ? 0.0 : it->second});
        }
    }
    return p;
}

json figure_document(const std::string &which, uint64_t seed) {
    const auto states = qwalk::initial_states();
    const auto plus_i = states[2].second;
    const int denominators[] = {4, 10, 20};
    json panels = json::array();
    if (which == "fig3") {
        for (const auto &[name, ab] : states) {
            panels.push_back(walk_panel("fig3_" + name, {kPi / 4, 0.0, 0, ab.first, ab.second, qwalk::WalkModel::DQW}));
        }
    } else if (which == "fig4") {
        for (int d : denominators) {
            panels.push_back(walk_panel("fig4_theta2_" + angle_label(d),
                                        {0.0, kPi / d, 0, plus_i.first, plus_i.second, qwalk::WalkModel::TwoPeriodDQW}));
        }
    } else if (which == "fig5-synthetic") {
        uint64_t k = 0;
        for (const auto &[name, ab] : states) {
            panels.push_back(error_panel("fig5_dqw_" + name,
                                         {kPi / 4, 0.0, 0, ab.first, ab.second, qwalk::WalkModel::DQW}, seed + 100 * k++));
        }
        for (int d : denominators) {
            panels.push_back(error_panel("fig5_dca_theta2_" + angle_label(d),
                                         {0.0, kPi / d, 0, plus_i.first, plus_i.second, qwalk::WalkModel::TwoPeriodDQW},
                                         seed + 100 * k++));
        }
    } else if (which == "fig6") {
        const double theta2 = kPi / 20, width = 0.4;
        const double mass = qwalk::mass_of_theta(theta2);
        for (int t : {3, 5}) {
            json p = panel("fig6_t" + std::to_string(t), {"x", "p_dca", "dirac_density", "dirac_cell"});
            auto d = qwalk::evolve({0.0, theta2, t, plus_i.first, plus_i.second, qwalk::WalkModel::TwoPeriodDQW}).second;
            for (int x = -t - 4; x <= t + 4; ++x) {
                p["rows"].push_back({x, d.at(x), qwalk::dirac_density(mass, width, t, x),
                                     qwalk::dirac_mass_between(mass, width, t, x - 1.0, x + 1.0)});
            }
            panels.push_back(p);
        }
    } else {
        throw std::invalid_argument("unknown figure \"" + which + "\"; expected fig3, fig4, fig5-synthetic or fig6");
    }
    json doc;
    doc["metadata"] = {{"library", "qwalk"}, {"version", kVersion}, {"figure", which}};
    if (which == "fig5-synthetic") {
        doc["metadata"]["seed"] = seed;
        doc["metadata"]["noise"] = {{"synthetic", true},
                                    {"readout_error", kSyntheticReadout},
                                    {"crosstalk_eps", kSyntheticCrosstalk},
                                    {"shots", kSyntheticShots}};
    }
    doc["panels"] = panels;
    return doc;
}

}  // namespace

extern "C" {

const char *qwalk_version(void) {
    return kVersion;
}

const char *qwalk_last_error(void) {
    return last_error.c_str();
}

void qwalk_walk_config_init(qwalk_walk_config *config) {
    if (config != nullptr) {
        *config = {0.0, 0.0, 0, 1.0, 0.0, 0.0, 0.0, QWALK_MODEL_DQW};
    }
}

qwalk_status qwalk_noise_parse(const char *text, qwalk_noise **out) {
    return guarded([&] {
        require(text, "json");
        require(out, "out");
        *out = new qwalk_noise{qwalk::noise_config_from_json(json::parse(text))};
    });
}

void qwalk_noise_free(qwalk_noise *noise) {
    delete noise;
}

qwalk_status qwalk_run_walk(const qwalk_walk_config *config, qwalk_result **out) {
    return guarded([&] { emit(walk_document(to_config(config)), out); });
}

qwalk_status qwalk_compile_walk(const qwalk_walk_config *config, int merge_rotations, qwalk_result **out) {
    return guarded([&] {
        auto cfg = to_config(config);
        if (cfg.model == qwalk::WalkModel::SplitStep) {
            throw std::invalid_argument("split-step walks have no circuit; use dqw or two-period");
        }
        qwalk::CompileOptions options;
        options.merge_rotations = merge_rotations != 0;
        auto abstract = qwalk::build_walk(cfg);
        auto native = qwalk::compile(abstract, options);
        json doc;
        doc["metadata"] = walk_metadata(cfg);
        doc["metadata"]["merge_rotations"] = options.merge_rotations;
        doc["metadata"]["rule_convention"] = qwalk::standard_rule_set().convention.str();
        doc["gate_counts"] = gate_counts_json(qwalk::count_native(native));
        doc["abstract_circuit"] = qwalk::circuit_to_json(abstract);
        doc["circuit"] = qwalk::circuit_to_json(native);
        emit(std::move(doc), out);
    });
}

qwalk_status qwalk_compile_block(const char *block, qwalk_result **out) {
    return guarded([&] {
        require(block, "block");
        auto id = qwalk::parse_block(block);
        const auto &set = qwalk::standard_rule_set();
        const auto &rule = set.rule(id);
        qwalk::Circuit native(rule.pattern.num_qubits());
        native.append(rule.native_sequence);
        json doc;
        doc["metadata"] = {{"library", "qwalk"},
                           {"version", kVersion},
                           {"block", block},
                           {"rule", rule.name},
                           {"rule_convention", set.convention.str()},
                           {"synthesized", rule.synthesized}};
        doc["gate_counts"] = gate_counts_json(qwalk::count_native(native));
        doc["deviation"] = qwalk::rule_deviation(rule, qwalk::ConventionChoice{});
        doc["circuit"] = qwalk::circuit_to_json(native);
        json status = json::array();
        for (const auto &s : set.status) {
            status.push_back({{"rule", s.name},
                              {"reference_deviation", s.reference_deviation},
                              {"reference_verified", s.reference_verified},
                              {"synthesized", s.synthesized}});
        }
        doc["rule_status"] = status;
        emit(std::move(doc), out);
    });
}

qwalk_status qwalk_sample_walk(const qwalk_walk_config *config, const qwalk_noise *noise, uint64_t shots,
                               uint64_t seed, qwalk_result **out) {
    return guarded([&] {
        emit(sample_document(to_config(config), noise != nullptr ? &noise->config : nullptr, shots, seed), out);
    });
}

qwalk_status qwalk_compare_dirac(double theta2, double width, int steps, double alpha_re, double alpha_im,
                                 double beta_re, double beta_im, qwalk_result **out) {
    return guarded([&] {
        qwalk::WalkConfig probe{0.0, theta2, steps, {alpha_re, alpha_im}, {beta_re, beta_im},
                                qwalk::WalkModel::TwoPeriodDQW};
        probe.validate();
        emit(dirac_document(theta2, width, steps, probe.alpha, probe.beta), out);
    });
}

qwalk_status qwalk_verify(qwalk_result **out, int *all_passed) {
    return guarded([&] {
        require(all_passed, "all_passed");
        bool ok = true;
        json checks = json::array();
        for (const auto &c : qwalk::run_invariant_suite()) {
            ok = ok && c.passed;
            checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        }
        json doc;
        doc["metadata"] = {{"library", "qwalk"}, {"version", kVersion}};
        doc["checks"] = checks;
        doc["passed"] = ok;
        *all_passed = ok ? 1 : 0;
        emit(std::move(doc), out);
    });
}

qwalk_status qwalk_figure_data(const char *which, uint64_t seed, qwalk_result **out) {
    return guarded([&] {
        require(which, "which");
        emit(figure_document(which, seed), out);
    });
}

const char *qwalk_result_json(const qwalk_result *result) {
    return result != nullptr ? result->text.c_str() : "";
}

qwalk_status qwalk_result_distribution(const qwalk_result *result, int *positions, double *probabilities,
                                       size_t capacity, size_t *size) {
    return guarded([&] {
        require(result, "result");
        require(size, "size");
        if (!result->doc.contains("positions")) {
            throw std::invalid_argument("result carries no distribution");
        }
        const auto &xs = result->doc["positions"];
        const auto &ps = result->doc["probabilities"];
        *size = xs.size();
        if (capacity > 0) {
            require(positions, "positions");
            require(probabilities, "probabilities");
        }
        for (size_t i = 0; i < xs.size() && i < capacity; ++i) {
            positions[i] = xs[i].get<int>();
            probabilities[i] = ps[i].get<double>();
        }
    });
}

void qwalk_result_free(qwalk_result *result) {
    delete result;
}

}  // extern "C"
