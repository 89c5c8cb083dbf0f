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

#include "qwalk/native_compiler.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "qwalk/errors.h"

namespace qwalk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleEps = 1e-12;

double wrap_angle(double a) {
    a = std::remainder(a, 2 * kPi);
    if (a <= -kPi) {
        a += 2 * kPi;
    }
    return a;
}

// Pauli-product rotation helpers. zx(a, b, t) = exp(-i t Z_a X_b).
void zx(std::vector<Gate> &out, size_t a, size_t b, double t) {
    out.push_back(Gate::ry(a, kPi / 2));
    out.push_back(Gate::xx(a, b, t));
    out.push_back(Gate::ry(a, -kPi / 2));
}

// exp(-i t Z_q)
void zrot(std::vector<Gate> &out, size_t q, double t) {
    out.push_back(Gate::rz(q, 2 * t));
}

// exp(-i t X_q)
void xrot(std::vector<Gate> &out, size_t q, double t) {
    out.push_back(Gate::rx(q, 2 * t));
}

void ising_cnot(std::vector<Gate> &out, size_t c, size_t t) {
    zx(out, c, t, kPi / 4);
    out.push_back(Gate::rz(c, -kPi / 2));
    out.push_back(Gate::rx(t, -kPi / 2));
}

// Toffoli(0,1->2) then CNOT(0->1) on qubits (a, b, c).
void synth_toffoli_cnot(std::vector<Gate> &out, size_t a, size_t b, size_t c) {
    xrot(out, c, kPi / 8);
    zrot(out, a, kPi / 8);
    zx(out, a, c, -kPi / 8);
    zx(out, b, c, -kPi / 8);
    zrot(out, b, kPi / 8);
    ising_cnot(out, a, b);
    zx(out, b, c, kPi / 8);
    zrot(out, b, -kPi / 8);
}

Circuit pattern_of(size_t n, std::vector<Gate> gates) {
    Circuit c(n);
    c.append(gates);
    return c;
}

std::optional<int> first_marker_violation(const Circuit &c) {
    size_t prev_end = 0;
    for (size_t m = 0; m < c.step_markers().size(); ++m) {
        const auto &mk = c.step_markers()[m];
        if (mk.begin < prev_end || mk.end < mk.begin || mk.end > c.gates().size()) {
            return static_cast<int>(m);
        }
        prev_end = mk.end;
    }
    return std::nullopt;
}

}  // namespace

void ConventionChoice::validate() const {
    for (int v : {sign_rx, sign_xx, phase_rz}) {
        if (v != 1 && v != -1) {
            throw std::invalid_argument("ConventionChoice: fields must be +1 or -1");
        }
    }
}

std::string ConventionChoice::str() const {
    auto s = [](int v) { return v > 0 ? "+1" : "-1"; };
    return std::string("(sign_rx ") + s(sign_rx) + ", sign_xx " + s(sign_xx) + ", phase_rz " + s(phase_rz) + ")";
}

std::array<ConventionChoice, 8> all_conventions() {
    std::array<ConventionChoice, 8> out{};
    size_t k = 0;
    for (int rx : {1, -1}) {
        for (int xx : {1, -1}) {
            for (int rz : {1, -1}) {
                out[k++] = {rx, xx, rz};
            }
        }
    }
    return out;
}

void DecompositionRule::validate() const {
    for (const auto &g : native_sequence) {
        g.validate();
        if (!g.native()) {
            throw std::invalid_argument("rule " + name + ": abstract gate in native sequence");
        }
        for (size_t q : g.qubits) {
            if (q >= pattern.num_qubits()) {
                throw std::invalid_argument("rule " + name + ": qubit outside pattern");
            }
        }
    }
}

size_t DecompositionRule::xx_count() const {
    return static_cast<size_t>(
        std::count_if(native_sequence.begin(), native_sequence.end(), [](const Gate &g) { return g.kind == GateKind::XX; }));
}

std::vector<Gate> apply_convention(const std::vector<Gate> &sequence, ConventionChoice conv) {
    conv.validate();
    std::vector<Gate> out = sequence;
    for (auto &g : out) {
        switch (g.kind) {
            case GateKind::RotX:
            case GateKind::RotY:
            case GateKind::R:
                g.angles[0] *= conv.sign_rx;
                break;
            case GateKind::RotZ:
                g.angles[0] *= conv.phase_rz;
                break;
            case GateKind::XX:
                g.angles[0] *= conv.sign_xx;
                break;
            default:
                break;
        }
    }
    return out;
}

double rule_deviation(const DecompositionRule &rule, ConventionChoice conv) {
    rule.validate();
    Circuit native(rule.pattern.num_qubits());
    native.append(apply_convention(rule.native_sequence, conv));
    return phase_aligned_deviation(unitary_of(native), unitary_of(rule.pattern));
}

bool verify_rule(const DecompositionRule &rule, ConventionChoice conv) {
    return rule_deviation(rule, conv) < kRuleTolerance;
}

ConventionChoice find_conventions(const std::vector<DecompositionRule> &rules) {
    const auto candidates = all_conventions();
    std::vector<std::vector<double>> dev(rules.size());
    for (const auto &conv : candidates) {
        bool all = true;
        for (size_t r = 0; r < rules.size(); ++r) {
            double d = rule_deviation(rules[r], conv);
            dev[r].push_back(d);
            all = all && d < kRuleTolerance;
        }
        if (all) {
            return conv;
        }
    }
    std::ostringstream msg;
    msg << "no sign convention verifies every rule; max deviation per rule and convention:";
    for (size_t r = 0; r < rules.size(); ++r) {
        msg << "\n  " << rules[r].name << ":";
        for (size_t k = 0; k < candidates.size(); ++k) {
            msg << "\n    " << candidates[k].str() << " " << dev[r][k];
        }
    }
    throw ConventionSearchError(msg.str());
}

std::string_view block_name(BlockId block) {
    switch (block) {
        case BlockId::CNOT:
            return "cnot";
        case BlockId::ToffoliCNOT:
            return "toffoli-cnot";
        case BlockId::ToffoliToffoli4CNOT:
            return "toffoli-toffoli4-cnot";
    }
    return "?";
}

BlockId parse_block(std::string_view name) {
    for (BlockId b : {BlockId::CNOT, BlockId::ToffoliCNOT, BlockId::ToffoliToffoli4CNOT}) {
        if (block_name(b) == name) {
            return b;
        }
    }
    throw std::invalid_argument("unknown block: " + std::string(name));
}

Circuit abstract_block(BlockId block) {
    switch (block) {
        case BlockId::CNOT:
            return pattern_of(2, {Gate::cnot(0, 1)});
        case BlockId::ToffoliCNOT:
            return pattern_of(3, {Gate::toffoli(0, 1, 2), Gate::cnot(0, 1)});
        case BlockId::ToffoliToffoli4CNOT:
            return pattern_of(4, {Gate::toffoli(0, 1, 2), Gate::toffoli4(0, 1, 2, 3), Gate::cnot(0, 1)});
    }
    throw std::invalid_argument("unknown block");
}

DecompositionRule identity_rule() {
    return {"identity", Circuit(1), {}, false};
}

DecompositionRule ising_cnot_rule() {
    DecompositionRule rule{std::string(block_name(BlockId::CNOT)), abstract_block(BlockId::CNOT), {}, false};
    ising_cnot(rule.native_sequence, 0, 1);
    return rule;
}

DecompositionRule reference_toffoli_cnot_rule() {
    const double p = kPi;
    return {std::string(block_name(BlockId::ToffoliCNOT)),
            abstract_block(BlockId::ToffoliCNOT),
            {
                Gate::ry(0, p / 2), Gate::ry(1, p / 2), Gate::xx(1, 2, p / 8), Gate::rx(1, -p / 4),
                Gate::ry(1, -p / 2), Gate::xx(0, 1, p / 4), Gate::rx(0, -p / 2), Gate::rz(1, p / 2),
                Gate::xx(1, 2, -p / 8), Gate::rx(1, -p / 4), Gate::ry(1, -p / 2), Gate::xx(0, 2, p / 8),
                Gate::rx(0, -p / 4), Gate::ry(0, -p / 2), Gate::rx(2, -p / 4),
            },
            false};
}

DecompositionRule reference_toffoli_toffoli4_cnot_rule() {
    const double p = kPi;
    return {std::string(block_name(BlockId::ToffoliToffoli4CNOT)),
            abstract_block(BlockId::ToffoliToffoli4CNOT),
            {
                Gate::ry(1, p / 2),       Gate::xx(1, 3, -p / 16), Gate::rz(0, 5 * p / 8), Gate::rx(1, -3 * p / 8),
                Gate::ry(0, p / 2),       Gate::rz(1, p / 2),      Gate::xx(0, 1, p / 4),  Gate::ry(1, p / 2),
                Gate::xx(1, 3, p / 16),   Gate::rx(1, -5 * p / 8), Gate::rz(1, p / 2),     Gate::xx(0, 1, p / 4),
                Gate::xx(0, 3, -p / 16),  Gate::ry(1, p / 2),      Gate::ry(2, p / 2),     Gate::rx(3, p / 8),
                Gate::rx(1, p / 4),       Gate::xx(2, 3, p / 8),   Gate::rx(2, p / 4),     Gate::rz(2, p / 2),
                Gate::rx(2, p / 4),       Gate::xx(1, 2, p / 8),   Gate::rz(1, p / 2),     Gate::xx(0, 1, p / 4),
                Gate::ry(1, p / 2),       Gate::xx(1, 2, -p / 8),  Gate::rx(1, p / 4),     Gate::ry(1, -p / 2),
                Gate::xx(0, 2, p / 8),    Gate::ry(0, -p / 2),     Gate::rx(2, p / 4),     Gate::xx(2, 3, -p / 8),
                Gate::rx(2, p / 4),       Gate::ry(2, -p / 2),
            },
            false};
}

DecompositionRule synthesized_toffoli_cnot_rule() {
    DecompositionRule rule{std::string(block_name(BlockId::ToffoliCNOT)), abstract_block(BlockId::ToffoliCNOT), {}, true};
    synth_toffoli_cnot(rule.native_sequence, 0, 1, 2);
    return rule;
}

DecompositionRule synthesized_toffoli_toffoli4_cnot_rule() {
    DecompositionRule rule{std::string(block_name(BlockId::ToffoliToffoli4CNOT)),
                           abstract_block(BlockId::ToffoliToffoli4CNOT), {}, true};
    auto &s = rule.native_sequence;
    const double p = kPi;
    // Target-only terms of the anti-controlled Toffoli4: X3, Z1 X3,
    // Z0 Z1 X3 (through a CNOT pair), Z0 X3.
    xrot(s, 3, p / 16);
    zx(s, 1, 3, -p / 16);
    ising_cnot(s, 0, 1);
    zx(s, 1, 3, p / 16);
    ising_cnot(s, 0, 1);
    zx(s, 0, 3, -p / 16);
    // Terms that depend on qubit 2 are produced by conjugating Z2 X3, Z2
    // and Z1 rotations through the Toffoli-CNOT core.
    zx(s, 2, 3, p / 8);
    zrot(s, 2, -p / 8);
    zrot(s, 1, p / 16);
    zrot(s, 0, p / 16);
    synth_toffoli_cnot(s, 0, 1, 2);
    zx(s, 2, 3, -p / 8);
    zrot(s, 2, p / 8);
    zrot(s, 1, -p / 16);
    return rule;
}

const DecompositionRule &RuleSet::rule(BlockId block) const {
    for (const auto &r : rules) {
        if (r.name == block_name(block)) {
            return r;
        }
    }
    throw std::invalid_argument("RuleSet: no rule for block " + std::string(block_name(block)));
}

namespace {

RuleSet build_rule_set() {
    RuleSet set;
    const std::vector<DecompositionRule> refs{ising_cnot_rule(), reference_toffoli_cnot_rule(),
                                              reference_toffoli_toffoli4_cnot_rule()};
    try {
        set.convention = find_conventions(refs);
        set.all_references_verified = true;
    } catch (const ConventionSearchError &e) {
        set.search_diagnostic = e.what();
        // Keep the convention under which the most reference rules hold.
        size_t best = 0;
        for (const auto &conv : all_conventions()) {
            size_t ok = static_cast<size_t>(
                std::count_if(refs.begin(), refs.end(), [&](const auto &r) { return verify_rule(r, conv); }));
            if (ok > best) {
                best = ok;
                set.convention = conv;
            }
        }
    }
    for (const auto &ref : refs) {
        RuleStatus st{ref.name, rule_deviation(ref, set.convention), false, false};
        st.reference_verified = st.reference_deviation < kRuleTolerance;
        DecompositionRule chosen = ref;
        if (st.reference_verified) {
            chosen.native_sequence = apply_convention(ref.native_sequence, set.convention);
        } else if (ref.name == block_name(BlockId::ToffoliCNOT)) {
            chosen = synthesized_toffoli_cnot_rule();
        } else if (ref.name == block_name(BlockId::ToffoliToffoli4CNOT)) {
            chosen = synthesized_toffoli_toffoli4_cnot_rule();
        } else {
            throw InvariantViolation("rule " + ref.name + " fails under " + set.convention.str() +
                                     " and has no synthesized replacement");
        }
        st.synthesized = chosen.synthesized;
        double d = rule_deviation(chosen, ConventionChoice{});
        if (!(d < kRuleTolerance)) {
            throw InvariantViolation("rule " + chosen.name + " does not match its block (deviation " +
                                     std::to_string(d) + ")");
        }
        set.rules.push_back(std::move(chosen));
        set.status.push_back(st);
    }
    return set;
}

}  // namespace

const RuleSet &standard_rule_set() {
    static const RuleSet set = build_rule_set();
    return set;
}

std::vector<Gate> compile_block(BlockId block) {
    return standard_rule_set().rule(block).native_sequence;
}

std::vector<Gate> single_qubit_natives(size_t q, const Matrix2 &u) {
    const Complex det = u[0] * u[3] - u[1] * u[2];
    const Complex scale = std::sqrt(det);
    const Complex v00 = u[0] / scale;
    const Complex v10 = u[2] / scale;
    const double c = std::abs(v00);
    const double s = std::abs(v10);
    std::vector<Gate> out;
    if (s < kAngleEps) {
        double lambda = wrap_angle(-2 * std::arg(v00));
        if (std::abs(lambda) > kAngleEps) {
            out.push_back(Gate::rz(q, lambda));
        }
        return out;
    }
    // U ~ RZ(a) RX(b) RZ(c) = R(b, a) RZ(a + c).
    const double b = 2 * std::atan2(s, c);
    const double diff = 2 * (std::arg(v10) + kPi / 2);
    if (c < kAngleEps) {
        out.push_back(Gate::r(q, b, wrap_angle(diff / 2)));
        return out;
    }
    const double sum = -2 * std::arg(v00);
    const double a = (sum + diff) / 2;
    const double lambda = wrap_angle(sum);
    if (std::abs(lambda) > kAngleEps) {
        out.push_back(Gate::rz(q, lambda));
    }
    out.push_back(Gate::r(q, b, wrap_angle(a)));
    return out;
}

namespace {

struct Range {
    size_t begin;
    size_t end;
    int marker;
};

// Tries to match `pattern` at gates[i..]; fills `map` (canonical -> actual).
bool match_at(const std::vector<Gate> &gates, size_t i, size_t end, const Circuit &pattern, std::vector<size_t> &map) {
    const auto &pg = pattern.gates();
    if (pg.empty() || i + pg.size() > end) {
        return false;
    }
    constexpr size_t kUnset = static_cast<size_t>(-1);
    map.assign(pattern.num_qubits(), kUnset);
    for (size_t k = 0; k < pg.size(); ++k) {
        const Gate &g = gates[i + k];
        if (g.kind != pg[k].kind) {
            return false;
        }
        for (size_t j = 0; j < g.qubits.size(); ++j) {
            size_t canon = pg[k].qubits[j];
            if (map[canon] == kUnset) {
                if (std::find(map.begin(), map.end(), g.qubits[j]) != map.end()) {
                    return false;
                }
                map[canon] = g.qubits[j];
            } else if (map[canon] != g.qubits[j]) {
                return false;
            }
        }
    }
    return std::find(map.begin(), map.end(), kUnset) == map.end();
}

std::vector<Gate> lower_range(const std::vector<Gate> &gates, size_t begin, size_t end) {
    const auto &set = standard_rule_set();
    std::vector<const DecompositionRule *> by_size;
    for (const auto &r : set.rules) {
        by_size.push_back(&r);
    }
    std::stable_sort(by_size.begin(), by_size.end(), [](const auto *a, const auto *b) {
        return a->pattern.gates().size() > b->pattern.gates().size();
    });
    std::vector<Gate> out;
    std::vector<size_t> map;
    size_t i = begin;
    while (i < end) {
        const Gate &g = gates[i];
        if (g.native()) {
            out.push_back(g);
            ++i;
            continue;
        }
        if (g.kind == GateKind::X) {
            out.push_back(Gate::r(g.qubits[0], kPi, 0.0));
            ++i;
            continue;
        }
        bool matched = false;
        for (const auto *rule : by_size) {
            if (match_at(gates, i, end, rule->pattern, map)) {
                for (Gate n : rule->native_sequence) {
                    for (auto &q : n.qubits) {
                        q = map[q];
                    }
                    out.push_back(std::move(n));
                }
                i += rule->pattern.gates().size();
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw std::invalid_argument("compile: no rule matches " + std::string(gate_kind_name(g.kind)) +
                                        " at gate " + std::to_string(i));
        }
    }
    return out;
}

Eigen::Matrix2cd rx_matrix(double alpha) {
    Eigen::Matrix2cd m;
    const double c = std::cos(alpha / 2), s = std::sin(alpha / 2);
    m << c, Complex{0.0, -s}, Complex{0.0, -s}, c;
    return m;
}

// Splits u into RX(alpha) * w (w applied first) with w an equatorial
// rotation, or w = identity when u is itself an X rotation.
std::pair<double, std::optional<Eigen::Matrix2cd>> split_x_rotation(const Eigen::Matrix2cd &u) {
    const Eigen::Matrix2cd v = u / std::sqrt(u.determinant());
    if (std::abs(v(0, 0).imag()) < kAngleEps && std::abs(v(1, 0).real()) < kAngleEps &&
        std::abs(v(0, 1) - v(1, 0)) < kAngleEps) {
        return {2 * std::atan2(-v(1, 0).imag(), v(0, 0).real()), std::nullopt};
    }
    const double alpha = 2 * std::atan2(-v(0, 0).imag(), v(1, 0).real());
    return {alpha, rx_matrix(-alpha) * v};
}

Matrix2 as_array(const Eigen::Matrix2cd &m) {
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

std::vector<Gate> merge_rotations(const std::vector<Gate> &gates, size_t num_qubits, bool push_x) {
    std::vector<Gate> out;
    std::vector<Eigen::Matrix2cd> pending(num_qubits, Eigen::Matrix2cd::Identity());
    std::vector<bool> dirty(num_qubits, false);
    auto flush = [&](size_t q) {
        if (!dirty[q]) {
            return;
        }
        auto natives = single_qubit_natives(q, as_array(pending[q]));
        out.insert(out.end(), natives.begin(), natives.end());
        pending[q].setIdentity();
        dirty[q] = false;
    };
    // RX on either qubit commutes with XX, so only the equatorial part of a
    // pending rotation has to be emitted before it.
    auto flush_before_xx = [&](size_t q) {
        if (!dirty[q]) {
            return;
        }
        auto [alpha, rest] = split_x_rotation(pending[q]);
        if (rest) {
            auto natives = single_qubit_natives(q, as_array(*rest));
            out.insert(out.end(), natives.begin(), natives.end());
        }
        pending[q] = rx_matrix(alpha);
    };
    for (const auto &g : gates) {
        if (g.qubits.size() == 1) {
            size_t q = g.qubits[0];
            pending[q] = gate_matrix(g) * pending[q];
            dirty[q] = true;
        } else {
            for (size_t q : g.qubits) {
                if (push_x && g.kind == GateKind::XX) {
                    flush_before_xx(q);
                } else {
                    flush(q);
                }
            }
            out.push_back(g);
        }
    }
    for (size_t q = 0; q < num_qubits; ++q) {
        flush(q);
    }
    return out;
}

}  // namespace

Circuit compile(const Circuit &circuit, const CompileOptions &options) {
    if (auto bad = first_marker_violation(circuit)) {
        throw std::invalid_argument("compile: malformed step marker " + std::to_string(*bad));
    }
    const auto &gates = circuit.gates();
    std::vector<Range> ranges;
    size_t pos = 0;
    for (size_t m = 0; m < circuit.step_markers().size(); ++m) {
        const auto &mk = circuit.step_markers()[m];
        if (mk.begin > pos) {
            ranges.push_back({pos, mk.begin, -1});
        }
        ranges.push_back({mk.begin, mk.end, static_cast<int>(m)});
        pos = mk.end;
    }
    if (pos < gates.size()) {
        ranges.push_back({pos, gates.size(), -1});
    }

    Circuit out(circuit.num_qubits());
    for (const auto &r : ranges) {
        auto lowered = lower_range(gates, r.begin, r.end);
        if (options.merge_rotations) {
            lowered = merge_rotations(lowered, circuit.num_qubits(), options.commute_x_through_xx);
        }
        size_t start = out.gates().size();
        out.append(lowered);
        if (r.marker >= 0) {
            out.mark_step(circuit.step_markers()[static_cast<size_t>(r.marker)].step, start);
        }
    }
    return out;
}

}  // namespace qwalk
