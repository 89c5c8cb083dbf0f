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

#ifndef QWALK_VERIFY_H
#define QWALK_VERIFY_H

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/walk_oracle.h"

namespace qwalk {

inline constexpr double kCircuitOracleTolerance = 1e-9;
inline constexpr double kParityTolerance = 1e-9;
inline constexpr double kLeakageTolerance = 1e-12;
inline constexpr double kSplitStepTolerance = 1e-10;
inline constexpr double kDcaTolerance = 1e-12;
inline constexpr double kSpamTolerance = 1e-12;

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Coin angles used by the circuit grid: 0, pi/20, pi/10, pi/4.
std::array<double, 4> angle_grid();
/// |0>, |1> and (|0> + i|1>) / sqrt(2), with their CLI names.
std::array<std::pair<std::string, std::pair<Complex, Complex>>, 3> initial_states();

/// Every circuit-buildable configuration on the grid: DQW over theta1 and
/// two-period over (theta1, theta2), t = 0..5, all initial states.
std::vector<WalkConfig> circuit_grid();

/// Worst-case figures over circuit_grid().
struct GridReport {
    size_t runs = 0;
    double max_oracle_diff = 0.0;
    double max_forbidden_parity = 0.0;
    double max_leakage = 0.0;
    double seconds = 0.0;
};
GridReport run_circuit_grid();

CheckResult check_compiled_blocks();
CheckResult check_circuit_oracle(const GridReport &report);
CheckResult check_circuit_parity(const GridReport &report);
CheckResult check_circuit_leakage(const GridReport &report);
CheckResult check_oracle_parity();
CheckResult check_oracle_norm_and_light_cone();
/// P_split(x, t) against the two-period walk at (2x, 2t) for theta1,
/// theta2 on multiples of pi/20 in [0, pi] and t <= 5.
CheckResult check_split_step_equivalence();
CheckResult check_dca_operator();
/// Round trip through apply_confusion and correct_spam on random vectors.
CheckResult check_spam_round_trip(size_t trials = 1000, uint64_t seed = 7);

/// Runs every check above.
std::vector<CheckResult> run_invariant_suite();

}  // namespace qwalk

#endif
