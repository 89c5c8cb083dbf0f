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

#ifndef QWALK_WALK_ORACLE_H
#define QWALK_WALK_ORACLE_H

#include <complex>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

namespace qwalk {

using Complex = std::complex<double>;

/// Probability per integer lattice position.
struct Distribution {
    std::map<int, double> probs;

    double at(int x) const;
    double total() const;
    /// Largest |P(x) - Q(x)| over the union of both supports.
    static double max_abs_diff(const Distribution &a, const Distribution &b);
};

/// Coin (x) position amplitudes on the bounded lattice [-L, L].
class WalkState {
   public:
    WalkState(int half_width, Complex alpha, Complex beta);

    int half_width() const {
        return half_width_;
    }
    Complex amp(int coin, int x) const;
    Complex &amp(int coin, int x);
    double norm() const;
    /// Smallest |x| bound containing all nonzero amplitudes, or -1 if empty.
    int support_radius() const;
    Distribution distribution() const;

   private:
    size_t index(int coin, int x) const;
    int half_width_;
    std::vector<Complex> amps_;
};

/// Coin rotation [[cos t, -i sin t], [-i sin t, cos t]] at every site.
WalkState coin(const WalkState &state, double theta);
/// Coin 0 moves x -> x-1, coin 1 moves x -> x+1.
WalkState shift(const WalkState &state);
/// Only coin 0 moves (left).
WalkState shift_minus(const WalkState &state);
/// Only coin 1 moves (right).
WalkState shift_plus(const WalkState &state);

enum class WalkModel { DQW, SplitStep, TwoPeriodDQW };

std::string_view walk_model_name(WalkModel model);
WalkModel parse_walk_model(std::string_view name);

struct WalkConfig {
    double theta1 = 0.0;
    double theta2 = 0.0;
    int steps = 0;
    Complex alpha = 1.0;
    Complex beta = 0.0;
    WalkModel model = WalkModel::DQW;

    void validate() const;
};

/// Evolves a walker started at x = 0 on a lattice of half width steps + 2.
///   DQW:          (shift . coin(theta1))^steps
///   SplitStep:    (shift_plus . coin(theta2) . shift_minus . coin(theta1))^steps
///   TwoPeriodDQW: shift . coin(theta_k) with theta_k alternating theta1,
///                 theta2, theta1, ... starting from theta1
std::pair<WalkState, Distribution> evolve(const WalkConfig &config);

/// Builds the block operator [[cos t S-, -i sin t], [-i sin t, cos t S+]] on
/// a cyclic lattice of 2L+1 sites and returns its max-entry distance from
/// the one-step split-step operator with theta1 = 0.
double dca_unitary_check(double theta2, int half_width);

}  // namespace qwalk

#endif
