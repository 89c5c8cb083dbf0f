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

#ifndef QWALK_READOUT_H
#define QWALK_READOUT_H

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "json.hpp"
#include "qwalk/statevector.h"
#include "qwalk/walk_oracle.h"

namespace qwalk {

inline constexpr double kMaxCrosstalk = 0.05;

/// Per-qubit readout confusion. matrices[q] is row-major with
/// M[i][j] = Pr(read i | true j).
struct ConfusionModel {
    std::vector<std::array<double, 4>> matrices;
    double crosstalk_eps = 0.0;

    size_t num_qubits() const {
        return matrices.size();
    }
    /// Columns sum to 1, entries in [0, 1], crosstalk_eps in [0, 0.05].
    void validate() const;

    static ConfusionModel identity(size_t num_qubits);
    /// Same matrix on every qubit: p01 = Pr(read 0 | 1), p10 = Pr(read 1 | 0).
    static ConfusionModel symmetric(size_t num_qubits, double p10, double p01);
};

/// (M_0 (x) ... (x) M_{n-1}) probs, applied one qubit at a time.
std::vector<double> apply_confusion(std::span<const double> probs, const ConfusionModel &model);

/// Inverse of apply_confusion. Negative quasi-probabilities are kept unless
/// `clip` is set, in which case they are zeroed and the vector renormalized.
std::vector<double> correct_spam(std::span<const double> freqs, const ConfusionModel &model, bool clip = false);

/// Moves a fraction eps of every basis weight evenly onto its Hamming-1
/// neighbours.
std::vector<double> crosstalk_leak(std::span<const double> probs, double eps);

struct ErrorReport {
    std::map<int, double> abs_diff;
    double max = 0.0;
    double mean = 0.0;
};

/// |measured - ideal| over the union of both supports.
ErrorReport error_report(const Distribution &measured, const Distribution &ideal);

/// Noise config file: {"readout": [[[m00, m01], [m10, m11]], ...],
/// "crosstalk_eps": e, "shots": n, "seed": s}.
struct NoiseConfig {
    ConfusionModel model;
    uint64_t shots = 3000;
    uint64_t seed = 1;
};

NoiseConfig noise_config_from_json(const nlohmann::json &doc);
nlohmann::json noise_config_to_json(const NoiseConfig &config);

/// Crosstalk, then readout confusion, then multinomial sampling.
MeasurementRecord noisy_sample(std::span<const double> probs, const NoiseConfig &config);

/// Relative frequencies of a record as a dense vector over 2^n outcomes.
std::vector<double> frequencies(const MeasurementRecord &record, size_t num_qubits);

}  // namespace qwalk

#endif
