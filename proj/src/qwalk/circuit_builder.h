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

#ifndef QWALK_CIRCUIT_BUILDER_H
#define QWALK_CIRCUIT_BUILDER_H

#include <set>
#include <span>
#include <stdexcept>
#include <string>

#include "qwalk/circuit.h"
#include "qwalk/native_compiler.h"
#include "qwalk/walk_oracle.h"

namespace qwalk {

/// Walk register layout: qubit 0 is the coin, qubits 1..4 hold the position
/// code with its first character on qubit 1.
inline constexpr size_t kCoinQubit = 0;
inline constexpr size_t kWalkQubits = 5;
inline constexpr int kMaxPosition = 7;
inline constexpr int kMaxWalkSteps = 5;

struct InvalidCode : std::invalid_argument {
    explicit InvalidCode(const std::string &msg) : std::invalid_argument(msg) {
    }
};

/// 4-bit position code. The last two bits are x mod 4; the first two are
/// floor(x / 4) as 0 -> 00, 1 -> 11, -1 -> 01, -2 -> 10. "1000" is unused.
namespace position_code {
std::string encode(int x);
int decode(const std::string &bits);
bool is_valid(const std::string &bits);
}  // namespace position_code

/// Gates of one walk step: coin rotation, X on the last position qubit,
/// then coin-controlled corrections.
struct StepPlan {
    int step = 0;
    std::set<int> reachable_in;
    std::vector<Gate> gates;
    /// XX cost of the corrections once compiled.
    size_t xx_cost = 0;
};

/// Positions a walker started at 0 can occupy after `steps` steps.
std::set<int> reachable_positions(int steps);

StepPlan build_step(int t, double theta);

/// Preparation R(theta, phi) taking |0> to alpha|0> + beta|1> up to a
/// global phase. Returns nothing for alpha = 1.
std::vector<Gate> coin_preparation(Complex alpha, Complex beta);

/// Abstract 5-qubit circuit for a DQW or two-period DQW. Step k is marked
/// as step k; the coin preparation sits inside step 1.
Circuit build_walk(const WalkConfig &config);

struct MarginalDistribution {
    Distribution distribution;
    /// Weight on "1000" position codes.
    double leakage = 0.0;
};

/// Traces out the coin and decodes positions from 5-qubit basis weights.
MarginalDistribution marginalize(std::span<const double> probs);
MarginalDistribution marginalize(const MeasurementRecord &record);

struct WalkRun {
    Circuit abstract_circuit;
    Circuit native_circuit;
    GateCount counts;
    std::vector<double> probabilities;
    MarginalDistribution marginal;
};

/// Builds, compiles and simulates a walk. Throws InvariantViolation if the
/// final state drifts from unit norm.
WalkRun run_walk(const WalkConfig &config, const CompileOptions &options = {});

}  // namespace qwalk

#endif
