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

#include "qwalk/circuit_builder.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qwalk/errors.h"

namespace qwalk {

namespace position_code {

std::string encode(int x) {
    if (x < -kMaxPosition || x > kMaxPosition) {
        throw std::out_of_range("encode: position " + std::to_string(x) + " outside [-7, 7]");
    }
    int hi = x >= 0 ? x / 4 : -((-x + 3) / 4);
    int lo = x - 4 * hi;
    static constexpr const char *kHigh[] = {"10", "01", "00", "11"};  // -2, -1, 0, 1
    std::string code = kHigh[hi + 2];
    code += (lo & 2) ? '1' : '0';
    code += (lo & 1) ? '1' : '0';
    return code;
}

int decode(const std::string &bits) {
    if (bits.size() != 4 || bits.find_first_not_of("01") != std::string::npos) {
        throw std::invalid_argument("decode: position code must be 4 binary digits, got \"" + bits + "\"");
    }
    if (bits == "1000") {
        throw InvalidCode("decode: \"1000\" is not a position code");
    }
    int hi = 0;
    std::string h = bits.substr(0, 2);
    if (h == "00") {
        hi = 0;
    } else if (h == "11") {
        hi = 1;
    } else if (h == "01") {
        hi = -1;
    } else {
        hi = -2;
    }
    int lo = (bits[2] == '1' ? 2 : 0) + (bits[3] == '1' ? 1 : 0);
    return 4 * hi + lo;
}

bool is_valid(const std::string &bits) {
    return bits.size() == 4 && bits.find_first_not_of("01") == std::string::npos && bits != "1000";
}

}  // namespace position_code

namespace {

constexpr double kPi = std::numbers::pi;
constexpr size_t kLastQubit = kWalkQubits - 1;

size_t mask(size_t q) {
    return size_t{1} << (kWalkQubits - 1 - q);
}

size_t apply_classical(size_t idx, const Gate &g) {
    size_t controls = 0;
    for (size_t k = 0; k + 1 < g.qubits.size(); ++k) {
        controls |= mask(g.qubits[k]);
    }
    if ((idx & controls) == controls) {
        idx ^= mask(g.qubits.back());
    }
    return idx;
}

size_t walk_index(int coin, int x) {
    return basis_index(std::string(1, coin ? '1' : '0') + position_code::encode(x));
}

struct Template {
    std::vector<Gate> gates;
    size_t cost = 0;
};

void add_framed(Template &t, const std::vector<size_t> &frame, const std::vector<Gate> &core) {
    for (size_t q : frame) {
        t.gates.push_back(Gate::x(q));
    }
    t.gates.insert(t.gates.end(), core.begin(), core.end());
    for (size_t q : frame) {
        t.gates.push_back(Gate::x(q));
    }
}

// Candidate corrections in increasing XX cost. Polarity 1 is a control on
// |1>, polarity 0 an anti-control realized by an X frame.
std::vector<Template> candidate_corrections() {
    std::vector<Template> out;
    const std::vector<size_t> pos{1, 2, 3};
    for (size_t size = 0; size <= pos.size(); ++size) {
        for (int pc : {1, 0}) {
            std::vector<bool> pick(pos.size(), false);
            std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
            do {
                std::vector<Gate> core;
                for (size_t k = 0; k < pos.size(); ++k) {
                    if (pick[k]) {
                        core.push_back(Gate::cnot(kCoinQubit, pos[k]));
                    }
                }
                Template t;
                t.cost = size;
                add_framed(t, pc ? std::vector<size_t>{} : std::vector<size_t>{kCoinQubit}, core);
                out.push_back(std::move(t));
            } while (size > 0 && std::prev_permutation(pick.begin(), pick.end()));
            if (size == 0) {
                break;
            }
        }
    }
    for (int pc : {1, 0}) {
        for (size_t b : pos) {
            for (int pb : {1, 0}) {
                for (size_t c : pos) {
                    if (c == b) {
                        continue;
                    }
                    std::vector<size_t> frame;
                    if (!pc) frame.push_back(kCoinQubit);
                    if (!pb) frame.push_back(b);
                    Template t;
                    t.cost = 4;
                    add_framed(t, frame, {Gate::toffoli(kCoinQubit, b, c), Gate::cnot(kCoinQubit, b)});
                    out.push_back(std::move(t));
                }
            }
        }
    }
    for (int pc : {1, 0}) {
        for (size_t b : pos) {
            for (int pb : {1, 0}) {
                for (size_t c : pos) {
                    for (int pcc : {1, 0}) {
                        for (size_t d : pos) {
                            if (c == b || d == b || d == c) {
                                continue;
                            }
                            std::vector<size_t> frame;
                            if (!pc) frame.push_back(kCoinQubit);
                            if (!pb) frame.push_back(b);
                            if (!pcc) frame.push_back(c);
                            Template t;
                            t.cost = 11;
                            add_framed(t, frame,
                                       {Gate::toffoli(kCoinQubit, b, c), Gate::toffoli4(kCoinQubit, b, c, d),
                                        Gate::cnot(kCoinQubit, b)});
                            out.push_back(std::move(t));
                        }
                    }
                }
            }
        }
    }
    return out;
}

bool realizes_shift(const std::vector<Gate> &gates, const std::set<int> &reachable) {
    for (int x : reachable) {
        for (int coin : {0, 1}) {
            size_t idx = walk_index(coin, x);
            for (const auto &g : gates) {
                idx = apply_classical(idx, g);
            }
            if (idx != walk_index(coin, coin ? x + 1 : x - 1)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

std::set<int> reachable_positions(int steps) {
    std::set<int> out;
    for (int x = -steps; x <= steps; x += 2) {
        out.insert(x);
    }
    return out;
}

StepPlan build_step(int t, double theta) {
    if (t < 1 || t > kMaxWalkSteps) {
        throw std::out_of_range("build_step: step " + std::to_string(t) + " outside [1, 5]");
    }
    StepPlan plan;
    plan.step = t;
    plan.reachable_in = reachable_positions(t - 1);
    static const std::vector<Template> candidates = candidate_corrections();
    for (const auto &cand : candidates) {
        std::vector<Gate> shift{Gate::x(kLastQubit)};
        shift.insert(shift.end(), cand.gates.begin(), cand.gates.end());
        if (!realizes_shift(shift, plan.reachable_in)) {
            continue;
        }
        if (theta != 0.0) {
            // Coin exp(-i theta X).
            plan.gates.push_back(Gate::r(kCoinQubit, 2 * theta, 0.0));
        }
        plan.gates.insert(plan.gates.end(), shift.begin(), shift.end());
        plan.xx_cost = cand.cost;
        return plan;
    }
    throw InvariantViolation("build_step: no correction template realizes step " + std::to_string(t));
}

std::vector<Gate> coin_preparation(Complex alpha, Complex beta) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
        throw std::invalid_argument("coin_preparation: state is not normalized");
    }
    if (std::abs(beta) == 0.0) {
        return {};
    }
    double theta = 2 * std::acos(std::min(1.0, std::abs(alpha)));
    double phi = std::arg(beta) - (std::abs(alpha) > 0.0 ? std::arg(alpha) : 0.0) + kPi / 2;
    // R(theta, phi)|0> = cos(theta/2)|0> - i e^{i phi} sin(theta/2)|1>.
    return {Gate::r(kCoinQubit, theta, phi)};
}

Circuit build_walk(const WalkConfig &config) {
    config.validate();
    if (config.steps > kMaxWalkSteps) {
        throw std::invalid_argument("build_walk: at most 5 steps fit the 4-qubit position register");
    }
    if (config.model == WalkModel::SplitStep) {
        throw std::invalid_argument("build_walk: circuits exist for the dqw and two-period models only");
    }
    Circuit circuit(kWalkQubits);
    auto prep = coin_preparation(config.alpha, config.beta);
    if (config.steps == 0) {
        circuit.append(prep);
        return circuit;
    }
    for (int t = 1; t <= config.steps; ++t) {
        double theta = config.model == WalkModel::TwoPeriodDQW && t % 2 == 0 ? config.theta2 : config.theta1;
        size_t begin = circuit.gates().size();
        if (t == 1) {
            circuit.append(prep);
        }
        circuit.append(build_step(t, theta).gates);
        circuit.mark_step(t, begin);
    }
    return circuit;
}

MarginalDistribution marginalize(std::span<const double> probs) {
    if (probs.size() != (size_t{1} << kWalkQubits)) {
        throw std::invalid_argument("marginalize: expected 32 basis weights");
    }
    MarginalDistribution out;
    for (size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] == 0.0) {
            continue;
        }
        std::string code = basis_string(i, kWalkQubits).substr(1);
        if (!position_code::is_valid(code)) {
            out.leakage += probs[i];
            continue;
        }
        out.distribution.probs[position_code::decode(code)] += probs[i];
    }
    return out;
}

MarginalDistribution marginalize(const MeasurementRecord &record) {
    if (record.shots == 0) {
        throw std::invalid_argument("marginalize: record has no shots");
    }
    std::vector<double> freqs(size_t{1} << kWalkQubits, 0.0);
    for (const auto &[bits, n] : record.counts) {
        if (bits.size() != kWalkQubits) {
            throw std::invalid_argument("marginalize: expected 5-qubit basis strings");
        }
        freqs[basis_index(bits)] = static_cast<double>(n) / static_cast<double>(record.shots);
    }
    return marginalize(freqs);
}

WalkRun run_walk(const WalkConfig &config, const CompileOptions &options) {
    WalkRun run;
    run.abstract_circuit = build_walk(config);
    run.native_circuit = compile(run.abstract_circuit, options);
    run.counts = count_native(run.native_circuit);
    StateVector state(kWalkQubits);
    run_circuit(state, run.native_circuit);
    if (std::abs(state.norm() - 1.0) > kNormTolerance) {
        throw InvariantViolation("run_walk: norm drifted to " + std::to_string(state.norm()));
    }
    run.probabilities = state.probabilities();
    run.marginal = marginalize(run.probabilities);
    return run;
}

}  // namespace qwalk
