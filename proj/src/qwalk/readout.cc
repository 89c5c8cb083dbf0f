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

#include "qwalk/readout.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qwalk {

namespace {

size_t checked_qubits(std::span<const double> v, const ConfusionModel &model) {
    const size_t n = model.num_qubits();
    if (n == 0 || n > kMaxQubits || v.size() != (size_t{1} << n)) {
        throw std::invalid_argument("confusion: vector length " + std::to_string(v.size()) +
                                    " does not match a " + std::to_string(n) + "-qubit model");
    }
    return n;
}

void apply_per_qubit(std::vector<double> &v, size_t n, const std::vector<std::array<double, 4>> &mats) {
    for (size_t q = 0; q < n; ++q) {
        const auto &m = mats[q];
        const size_t stride = size_t{1} << (n - 1 - q);
        for (size_t base = 0; base < v.size(); base += 2 * stride) {
            for (size_t i = base; i < base + stride; ++i) {
                double p0 = v[i], p1 = v[i + stride];
                v[i] = m[0] * p0 + m[1] * p1;
                v[i + stride] = m[2] * p0 + m[3] * p1;
            }
        }
    }
}

}  // namespace

void ConfusionModel::validate() const {
    for (size_t q = 0; q < matrices.size(); ++q) {
        const auto &m = matrices[q];
        for (double e : m) {
            if (!(e >= 0.0 && e <= 1.0)) {
                throw std::invalid_argument("ConfusionModel: qubit " + std::to_string(q) + " has an entry outside [0, 1]");
            }
        }
        if (std::abs(m[0] + m[2] - 1.0) > 1e-12 || std::abs(m[1] + m[3] - 1.0) > 1e-12) {
            throw std::invalid_argument("ConfusionModel: qubit " + std::to_string(q) + " columns must sum to 1");
        }
    }
    if (!(crosstalk_eps >= 0.0 && crosstalk_eps <= kMaxCrosstalk)) {
        throw std::invalid_argument("ConfusionModel: crosstalk_eps must lie in [0, 0.05]");
    }
}

ConfusionModel ConfusionModel::identity(size_t num_qubits) {
    return {std::vector<std::array<double, 4>>(num_qubits, {1.0, 0.0, 0.0, 1.0}), 0.0};
}

ConfusionModel ConfusionModel::symmetric(size_t num_qubits, double p10, double p01) {
    ConfusionModel m{std::vector<std::array<double, 4>>(num_qubits, {1.0 - p10, p01, p10, 1.0 - p01}), 0.0};
    m.validate();
    return m;
}

std::vector<double> apply_confusion(std::span<const double> probs, const ConfusionModel &model) {
    model.validate();
    const size_t n = checked_qubits(probs, model);
    double total = 0.0;
    for (double p : probs) {
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("apply_confusion: probabilities must sum to 1");
    }
    std::vector<double> out(probs.begin(), probs.end());
    apply_per_qubit(out, n, model.matrices);
    return out;
}

std::vector<double> correct_spam(std::span<const double> freqs, const ConfusionModel &model, bool clip) {
    model.validate();
    const size_t n = checked_qubits(freqs, model);
    std::vector<std::array<double, 4>> inverses;
    for (size_t q = 0; q < n; ++q) {
        const auto &m = model.matrices[q];
        double det = m[0] * m[3] - m[1] * m[2];
        if (std::abs(det) < 1e-12) {
            throw std::invalid_argument("correct_spam: confusion matrix of qubit " + std::to_string(q) + " is singular");
        }
        inverses.push_back({m[3] / det, -m[1] / det, -m[2] / det, m[0] / det});
    }
    std::vector<double> out(freqs.begin(), freqs.end());
    apply_per_qubit(out, n, inverses);
    if (clip) {
        double total = 0.0;
        for (auto &v : out) {
            v = std::max(v, 0.0);
            total += v;
        }
        if (total > 0.0) {
            for (auto &v : out) {
                v /= total;
            }
        }
    }
    return out;
}

std::vector<double> crosstalk_leak(std::span<const double> probs, double eps) {
    if (!(eps >= 0.0 && eps <= kMaxCrosstalk)) {
        throw std::invalid_argument("crosstalk_leak: eps must lie in [0, 0.05]");
    }
    const size_t dim = probs.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("crosstalk_leak: length must be a power of two");
    }
    size_t n = 0;
    while ((size_t{1} << n) < dim) {
        ++n;
    }
    std::vector<double> out(dim);
    const double share = eps / static_cast<double>(n);
    for (size_t i = 0; i < dim; ++i) {
        out[i] += (1.0 - eps) * probs[i];
        for (size_t b = 0; b < n; ++b) {
            out[i ^ (size_t{1} << b)] += share * probs[i];
        }
    }
    return out;
}

ErrorReport error_report(const Distribution &measured, const Distribution &ideal) {
    ErrorReport r;
    for (const auto &[x, p] : measured.probs) {
        r.abs_diff[x] = std::abs(p - ideal.at(x));
    }
    for (const auto &[x, p] : ideal.probs) {
        r.abs_diff[x] = std::abs(measured.at(x) - p);
    }
    double sum = 0.0;
    for (const auto &[x, d] : r.abs_diff) {
        r.max = std::max(r.max, d);
        sum += d;
    }
    r.mean = r.abs_diff.empty() ? 0.0 : sum / static_cast<double>(r.abs_diff.size());
    return r;
}

NoiseConfig noise_config_from_json(const nlohmann::json &doc) {
    if (!doc.is_object()) {
        throw std::invalid_argument("noise config: expected a JSON object");
    }
    NoiseConfig cfg;
    try {
        for (const auto &m : doc.at("readout")) {
            if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) {
                throw std::invalid_argument("noise config: each readout entry must be a 2x2 matrix");
            }
            cfg.model.matrices.push_back(
                {m[0][0].get<double>(), m[0][1].get<double>(), m[1][0].get<double>(), m[1][1].get<double>()});
        }
        cfg.model.crosstalk_eps = doc.value("crosstalk_eps", 0.0);
        cfg.shots = doc.value("shots", cfg.shots);
        cfg.seed = doc.value("seed", cfg.seed);
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("noise config: ") + e.what());
    }
    if (cfg.shots < 1) {
        throw std::invalid_argument("noise config: shots must be >= 1");
    }
    cfg.model.validate();
    return cfg;
}

nlohmann::json noise_config_to_json(const NoiseConfig &config) {
    nlohmann::json readout = nlohmann::json::array();
    for (const auto &m : config.model.matrices) {
        readout.push_back({{m[0], m[1]}, {m[2], m[3]}});
    }
    return {{"readout", readout},
            {"crosstalk_eps", config.model.crosstalk_eps},
            {"shots", config.shots},
            {"seed", config.seed}};
}

MeasurementRecord noisy_sample(std::span<const double> probs, const NoiseConfig &config) {
    auto leaked = crosstalk_leak(probs, config.model.crosstalk_eps);
    auto confused = apply_confusion(leaked, config.model);
    auto counts = sample_counts(confused, config.shots, config.seed);
    MeasurementRecord record;
    record.shots = config.shots;
    for (size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > 0) {
            record.counts[basis_string(i, config.model.num_qubits())] = counts[i];
        }
    }
    return record;
}

std::vector<double> frequencies(const MeasurementRecord &record, size_t num_qubits) {
    if (record.shots == 0) {
        throw std::invalid_argument("frequencies: record has no shots");
    }
    std::vector<double> out(size_t{1} << num_qubits, 0.0);
    for (const auto &[bits, n] : record.counts) {
        if (bits.size() != num_qubits) {
            throw std::invalid_argument("frequencies: outcome \"" + bits + "\" has the wrong width");
        }
        out[basis_index(bits)] = static_cast<double>(n) / static_cast<double>(record.shots);
    }
    return out;
}

}  // namespace qwalk
