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

#include "qwalk/circuit.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace qwalk {

namespace {

struct KindInfo {
    GateKind kind;
    std::string_view name;
    size_t arity;
    size_t angles;
    bool native;
};

constexpr std::array<KindInfo, 9> kKinds{{
    {GateKind::X, "X", 1, 0, false},
    {GateKind::RotX, "RX", 1, 1, true},
    {GateKind::RotY, "RY", 1, 1, true},
    {GateKind::RotZ, "RZ", 1, 1, true},
    {GateKind::R, "R", 1, 2, true},
    {GateKind::CNOT, "CNOT", 2, 0, false},
    {GateKind::Toffoli, "TOFFOLI", 3, 0, false},
    {GateKind::Toffoli4, "TOFFOLI4", 4, 0, false},
    {GateKind::XX, "XX", 2, 1, true},
}};

const KindInfo &info(GateKind kind) {
    for (const auto &k : kKinds) {
        if (k.kind == kind) {
            return k;
        }
    }
    throw std::invalid_argument("unknown gate kind");
}

Matrix2 single_qubit_matrix(const Gate &g) {
    const Complex I{0.0, 1.0};
    switch (g.kind) {
        case GateKind::X:
            return {0.0, 1.0, 1.0, 0.0};
        case GateKind::RotX: {
            double c = std::cos(g.angles[0] / 2), s = std::sin(g.angles[0] / 2);
            return {c, -I * s, -I * s, c};
        }
        case GateKind::RotY: {
            double c = std::cos(g.angles[0] / 2), s = std::sin(g.angles[0] / 2);
            return {c, -s, s, c};
        }
        case GateKind::RotZ: {
            double h = g.angles[0] / 2;
            return {std::polar(1.0, -h), 0.0, 0.0, std::polar(1.0, h)};
        }
        case GateKind::R: {
            double c = std::cos(g.angles[0] / 2), s = std::sin(g.angles[0] / 2);
            double phi = g.angles[1];
            return {c, -I * s * std::polar(1.0, -phi), -I * s * std::polar(1.0, phi), c};
        }
        default:
            throw std::invalid_argument("not a single-qubit gate");
    }
}

Matrix4 xx_matrix(double chi) {
    const Complex d = std::cos(chi);
    const Complex o = Complex{0.0, -std::sin(chi)};
    return {d, 0, 0, o, 0, d, o, 0, 0, o, d, 0, o, 0, 0, d};
}

}  // namespace

std::string_view gate_kind_name(GateKind kind) {
    return info(kind).name;
}

GateKind parse_gate_kind(std::string_view name) {
    for (const auto &k : kKinds) {
        if (k.name == name) {
            return k.kind;
        }
    }
    throw std::invalid_argument("unknown gate kind: " + std::string(name));
}

size_t gate_arity(GateKind kind) {
    return info(kind).arity;
}
size_t gate_angle_count(GateKind kind) {
    return info(kind).angles;
}
bool is_native(GateKind kind) {
    return info(kind).native;
}

Gate Gate::x(size_t q) {
    return {GateKind::X, {q}, {}};
}
Gate Gate::rx(size_t q, double theta) {
    return {GateKind::RotX, {q}, {theta}};
}
Gate Gate::ry(size_t q, double theta) {
    return {GateKind::RotY, {q}, {theta}};
}
Gate Gate::rz(size_t q, double lambda) {
    return {GateKind::RotZ, {q}, {lambda}};
}
Gate Gate::r(size_t q, double theta, double phi) {
    return {GateKind::R, {q}, {theta, phi}};
}
Gate Gate::cnot(size_t control, size_t target) {
    return {GateKind::CNOT, {control, target}, {}};
}
Gate Gate::toffoli(size_t c1, size_t c2, size_t target) {
    return {GateKind::Toffoli, {c1, c2, target}, {}};
}
Gate Gate::toffoli4(size_t c1, size_t c2, size_t c3, size_t target) {
    return {GateKind::Toffoli4, {c1, c2, c3, target}, {}};
}
Gate Gate::xx(size_t a, size_t b, double chi) {
    return {GateKind::XX, {a, b}, {chi}};
}

void Gate::validate() const {
    const auto &k = info(kind);
    if (qubits.size() != k.arity) {
        throw std::invalid_argument(std::string(k.name) + ": expected " + std::to_string(k.arity) + " qubits");
    }
    if (angles.size() != k.angles) {
        throw std::invalid_argument(std::string(k.name) + ": expected " + std::to_string(k.angles) + " angles");
    }
    for (size_t i = 0; i < qubits.size(); ++i) {
        for (size_t j = i + 1; j < qubits.size(); ++j) {
            if (qubits[i] == qubits[j]) {
                throw std::invalid_argument(std::string(k.name) + ": repeated qubit " + std::to_string(qubits[i]));
            }
        }
    }
    for (double a : angles) {
        if (!std::isfinite(a)) {
            throw std::invalid_argument(std::string(k.name) + ": non-finite angle");
        }
    }
}

Eigen::MatrixXcd gate_matrix(const Gate &gate) {
    gate.validate();
    Circuit c(gate.qubits.size());
    Gate local = gate;
    for (size_t i = 0; i < local.qubits.size(); ++i) {
        local.qubits[i] = i;
    }
    c.append(local);
    return unitary_of(c);
}

void Circuit::append(Gate gate) {
    gate.validate();
    for (size_t q : gate.qubits) {
        if (q >= num_qubits_) {
            throw std::invalid_argument("Circuit::append: qubit " + std::to_string(q) + " outside a " +
                                        std::to_string(num_qubits_) + "-qubit circuit");
        }
    }
    gates_.push_back(std::move(gate));
}

void Circuit::append(const std::vector<Gate> &gates) {
    for (const auto &g : gates) {
        append(g);
    }
}

void Circuit::mark_step(int step, size_t begin) {
    if (begin > gates_.size()) {
        throw std::invalid_argument("Circuit::mark_step: begin past end");
    }
    if (!step_markers_.empty() && begin < step_markers_.back().end) {
        throw std::invalid_argument("Circuit::mark_step: overlapping step markers");
    }
    step_markers_.push_back({step, begin, gates_.size()});
}

void Circuit::extend(const Circuit &other) {
    if (other.num_qubits_ > num_qubits_) {
        throw std::invalid_argument("Circuit::extend: other circuit is wider");
    }
    size_t offset = gates_.size();
    for (const auto &g : other.gates_) {
        append(g);
    }
    for (auto m : other.step_markers_) {
        m.begin += offset;
        m.end += offset;
        step_markers_.push_back(m);
    }
}

GateCount count_native(const Circuit &circuit) {
    GateCount result;
    const auto &gates = circuit.gates();
    std::vector<int> owner(gates.size(), -1);
    for (size_t m = 0; m < circuit.step_markers().size(); ++m) {
        const auto &mk = circuit.step_markers()[m];
        for (size_t i = mk.begin; i < mk.end; ++i) {
            owner[i] = static_cast<int>(m);
        }
    }
    std::vector<StepGateCount> marked(circuit.step_markers().size());
    for (size_t m = 0; m < marked.size(); ++m) {
        marked[m].step = circuit.step_markers()[m].step;
    }
    StepGateCount unmarked{0, 0, 0};
    for (size_t i = 0; i < gates.size(); ++i) {
        const auto &g = gates[i];
        if (!g.native()) {
            throw std::invalid_argument("count_native: abstract gate " + std::string(gate_kind_name(g.kind)) +
                                        " present; compile the circuit first");
        }
        StepGateCount &slot = owner[i] >= 0 ? marked[owner[i]] : unmarked;
        if (g.kind == GateKind::XX) {
            slot.xx++;
            result.xx_count++;
        } else {
            slot.r++;
            result.r_count++;
        }
    }
    if (unmarked.r + unmarked.xx > 0) {
        result.per_step.push_back(unmarked);
    }
    result.per_step.insert(result.per_step.end(), marked.begin(), marked.end());
    return result;
}

void apply_gate(StateVector &state, const Gate &gate) {
    switch (gate.kind) {
        case GateKind::X: {
            std::array<size_t, 0> none{};
            state.apply_mcx(none, gate.qubits[0]);
            return;
        }
        case GateKind::RotX:
        case GateKind::RotY:
        case GateKind::RotZ:
        case GateKind::R:
            state.apply_1q(gate.qubits[0], single_qubit_matrix(gate));
            return;
        case GateKind::XX:
            state.apply_2q(gate.qubits[0], gate.qubits[1], xx_matrix(gate.angles[0]));
            return;
        case GateKind::CNOT:
        case GateKind::Toffoli:
        case GateKind::Toffoli4: {
            std::span<const size_t> controls(gate.qubits.data(), gate.qubits.size() - 1);
            state.apply_mcx(controls, gate.qubits.back());
            return;
        }
    }
}

void run_circuit(StateVector &state, const Circuit &circuit) {
    if (circuit.num_qubits() > state.num_qubits()) {
        throw std::invalid_argument("run_circuit: circuit is wider than the state");
    }
    for (const auto &g : circuit.gates()) {
        apply_gate(state, g);
    }
}

Eigen::MatrixXcd unitary_of(const Circuit &circuit) {
    const size_t n = circuit.num_qubits();
    if (n == 0 || n > kMaxUnitaryQubits) {
        throw std::invalid_argument("unitary_of: qubit count must be in [1, " + std::to_string(kMaxUnitaryQubits) + "]");
    }
    const size_t dim = size_t{1} << n;
    Eigen::MatrixXcd u(dim, dim);
    for (size_t col = 0; col < dim; ++col) {
        std::vector<Complex> amps(dim, 0.0);
        amps[col] = 1.0;
        auto state = StateVector::from_amplitudes(std::move(amps));
        run_circuit(state, circuit);
        auto out = state.amplitudes();
        for (size_t row = 0; row < dim; ++row) {
            u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = out[row];
        }
    }
    return u;
}

double phase_aligned_deviation(const Eigen::MatrixXcd &u, const Eigen::MatrixXcd &v) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        throw std::invalid_argument("phase_aligned_deviation: dimension mismatch");
    }
    Eigen::Index r = 0, c = 0;
    v.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(v(r, c)) == 0.0) {
        return u.cwiseAbs().maxCoeff();
    }
    Complex ratio = u(r, c) / v(r, c);
    double mag = std::abs(ratio);
    Complex phase = mag > 0.0 ? ratio / mag : Complex{1.0, 0.0};
    return (u - phase * v).cwiseAbs().maxCoeff();
}

bool equivalent_up_to_phase(const Eigen::MatrixXcd &u, const Eigen::MatrixXcd &v, double tol) {
    return phase_aligned_deviation(u, v) < tol;
}

nlohmann::json circuit_to_json(const Circuit &circuit) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &g : circuit.gates()) {
        gates.push_back({{"kind", gate_kind_name(g.kind)}, {"qubits", g.qubits}, {"angles", g.angles}});
    }
    nlohmann::json markers = nlohmann::json::array();
    for (const auto &m : circuit.step_markers()) {
        markers.push_back({{"step", m.step}, {"begin", m.begin}, {"end", m.end}});
    }
    return {{"n_qubits", circuit.num_qubits()}, {"gates", gates}, {"step_markers", markers}};
}

Circuit circuit_from_json(const nlohmann::json &doc) {
    try {
        Circuit c(doc.at("n_qubits").get<size_t>());
        for (const auto &g : doc.at("gates")) {
            Gate gate;
            gate.kind = parse_gate_kind(g.at("kind").get<std::string>());
            gate.qubits = g.at("qubits").get<std::vector<size_t>>();
            gate.angles = g.value("angles", std::vector<double>{});
            c.append(std::move(gate));
        }
        if (doc.contains("step_markers")) {
            // Replay gates and markers into a fresh circuit.
            Circuit rebuilt(c.num_qubits());
            size_t next = 0;
            for (const auto &m : doc.at("step_markers")) {
                size_t begin = m.at("begin").get<size_t>();
                size_t end = m.at("end").get<size_t>();
                if (begin > end || end > c.gates().size() || begin < next) {
                    throw std::invalid_argument("circuit JSON: bad step marker range");
                }
                for (; next < begin; ++next) {
                    rebuilt.append(c.gates()[next]);
                }
                for (; next < end; ++next) {
                    rebuilt.append(c.gates()[next]);
                }
                rebuilt.mark_step(m.at("step").get<int>(), begin);
            }
            for (; next < c.gates().size(); ++next) {
                rebuilt.append(c.gates()[next]);
            }
            return rebuilt;
        }
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("circuit JSON: ") + e.what());
    }
}

}  // namespace qwalk
