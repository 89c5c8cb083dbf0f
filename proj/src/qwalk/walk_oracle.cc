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

#include "qwalk/walk_oracle.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qwalk {

double Distribution::at(int x) const {
    auto it = probs.find(x);
    return it == probs.end() ? 0.0 : it->second;
}

double Distribution::total() const {
    double t = 0.0;
    for (const auto &[x, p] : probs) {
        t += p;
    }
    return t;
}

double Distribution::max_abs_diff(const Distribution &a, const Distribution &b) {
    double worst = 0.0;
    for (const auto &[x, p] : a.probs) {
        worst = std::max(worst, std::abs(p - b.at(x)));
    }
    for (const auto &[x, p] : b.probs) {
        worst = std::max(worst, std::abs(p - a.at(x)));
    }
    return worst;
}

WalkState::WalkState(int half_width, Complex alpha, Complex beta) : half_width_(half_width) {
    if (half_width < 1) {
        throw std::invalid_argument("WalkState: half width must be >= 1");
    }
    amps_.assign(2 * static_cast<size_t>(2 * half_width + 1), Complex{0.0, 0.0});
    amp(0, 0) = alpha;
    amp(1, 0) = beta;
}

size_t WalkState::index(int coin, int x) const {
    if ((coin != 0 && coin != 1) || x < -half_width_ || x > half_width_) {
        throw std::out_of_range("WalkState: (coin " + std::to_string(coin) + ", x " + std::to_string(x) +
                                ") outside the lattice");
    }
    return static_cast<size_t>(coin) * static_cast<size_t>(2 * half_width_ + 1) +
           static_cast<size_t>(x + half_width_);
}

Complex WalkState::amp(int coin, int x) const {
    return amps_[index(coin, x)];
}

Complex &WalkState::amp(int coin, int x) {
    return amps_[index(coin, x)];
}

double WalkState::norm() const {
    double t = 0.0;
    for (const auto &a : amps_) {
        t += std::norm(a);
    }
    return std::sqrt(t);
}

int WalkState::support_radius() const {
    int r = -1;
    for (int c = 0; c < 2; ++c) {
        for (int x = -half_width_; x <= half_width_; ++x) {
            if (amp(c, x) != Complex{0.0, 0.0}) {
                r = std::max(r, std::abs(x));
            }
        }
    }
    return r;
}

Distribution WalkState::distribution() const {
    Distribution d;
    for (int x = -half_width_; x <= half_width_; ++x) {
        double p = std::norm(amp(0, x)) + std::norm(amp(1, x));
        if (p > 0.0) {
            d.probs[x] = p;
        }
    }
    return d;
}

WalkState coin(const WalkState &state, double theta) {
    WalkState out = state;
    const double c = std::cos(theta);
    const Complex s{0.0, -std::sin(theta)};
    for (int x = -state.half_width(); x <= state.half_width(); ++x) {
        Complex a = state.amp(0, x);
        Complex b = state.amp(1, x);
        out.amp(0, x) = c * a + s * b;
        out.amp(1, x) = s * a + c * b;
    }
    return out;
}

namespace {

// Moves the given coin component by `delta` sites. The far edge must be
// empty: the oracle never wraps around.
void move_component(const WalkState &in, WalkState &out, int coin_value, int delta) {
    const int L = in.half_width();
    const int edge = delta < 0 ? -L : L;
    if (in.amp(coin_value, edge) != Complex{0.0, 0.0}) {
        throw std::out_of_range("walk shift: amplitude reached the lattice boundary at x = " + std::to_string(edge));
    }
    for (int x = -L; x <= L; ++x) {
        out.amp(coin_value, x) = 0.0;
    }
    for (int x = -L; x <= L; ++x) {
        int y = x + delta;
        if (y >= -L && y <= L) {
            out.amp(coin_value, y) = in.amp(coin_value, x);
        }
    }
}

}  // namespace

WalkState shift(const WalkState &state) {
    WalkState out = state;
    move_component(state, out, 0, -1);
    move_component(state, out, 1, +1);
    return out;
}

WalkState shift_minus(const WalkState &state) {
    WalkState out = state;
    move_component(state, out, 0, -1);
    return out;
}

WalkState shift_plus(const WalkState &state) {
    WalkState out = state;
    move_component(state, out, 1, +1);
    return out;
}

std::string_view walk_model_name(WalkModel model) {
    switch (model) {
        case WalkModel::DQW:
            return "dqw";
        case WalkModel::SplitStep:
            return "split-step";
        case WalkModel::TwoPeriodDQW:
            return "two-period";
    }
    return "?";
}

WalkModel parse_walk_model(std::string_view name) {
    if (name == "dqw") {
        return WalkModel::DQW;
    }
    if (name == "split-step") {
        return WalkModel::SplitStep;
    }
    if (name == "two-period" || name == "dca") {
        return WalkModel::TwoPeriodDQW;
    }
    throw std::invalid_argument("unknown walk model: " + std::string(name));
}

void WalkConfig::validate() const {
    if (steps < 0) {
        throw std::invalid_argument("WalkConfig: steps must be >= 0");
    }
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
        throw std::invalid_argument("WalkConfig: initial coin state must satisfy |alpha|^2 + |beta|^2 = 1");
    }
    if (!std::isfinite(theta1) || !std::isfinite(theta2)) {
        throw std::invalid_argument("WalkConfig: non-finite coin angle");
    }
}

std::pair<WalkState, Distribution> evolve(const WalkConfig &config) {
    config.validate();
    WalkState state(config.steps + 2, config.alpha, config.beta);
    for (int t = 0; t < config.steps; ++t) {
        switch (config.model) {
            case WalkModel::DQW:
                state = shift(coin(state, config.theta1));
                break;
            case WalkModel::SplitStep:
                state = shift_plus(coin(shift_minus(coin(state, config.theta1)), config.theta2));
                break;
            case WalkModel::TwoPeriodDQW:
                state = shift(coin(state, t % 2 == 0 ? config.theta1 : config.theta2));
                break;
        }
    }
    auto dist = state.distribution();
    return {std::move(state), std::move(dist)};
}

double dca_unitary_check(double theta2, int half_width) {
    if (half_width < 1) {
        throw std::invalid_argument("dca_unitary_check: half width must be >= 1");
    }
    const Eigen::Index n = 2 * half_width + 1;
    const double c = std::cos(theta2);
    const Complex s{0.0, -std::sin(theta2)};

    // Position index p = x + L; coin 0 block first.
    Eigen::MatrixXcd left = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd right = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index p = 0; p < n; ++p) {
        left((p + n - 1) % n, p) = 1.0;
        right((p + 1) % n, p) = 1.0;
    }
    Eigen::MatrixXcd block(2 * n, 2 * n);
    block << c * left, s * Eigen::MatrixXcd::Identity(n, n), s * Eigen::MatrixXcd::Identity(n, n), c * right;

    // One split step, theta1 = 0, applied column by column on the ring.
    Eigen::MatrixXcd step(2 * n, 2 * n);
    for (Eigen::Index col = 0; col < 2 * n; ++col) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
        v(col) = 1.0;
        Eigen::VectorXcd up = v.head(n), down = v.tail(n);
        up = left * up;  // shift_minus
        Eigen::VectorXcd up2 = c * up + s * down;
        Eigen::VectorXcd down2 = s * up + c * down;
        down2 = right * down2;  // shift_plus
        step.col(col) << up2, down2;
    }
    return (block - step).cwiseAbs().maxCoeff();
}

}  // namespace qwalk
