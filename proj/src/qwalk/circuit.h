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

#ifndef QWALK_CIRCUIT_H
#define QWALK_CIRCUIT_H

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qwalk/statevector.h"

namespace qwalk {

/// Gate conventions used throughout the library:
///
///   RotX(t)   = exp(-i t X / 2)
///   RotY(t)   = exp(-i t Y / 2)
///   RotZ(l)   = exp(-i l Z / 2)
///   R(t, p)   = exp(-i (t / 2) (X cos p + Y sin p))
///   XX(c)     = exp(-i c X (x) X)
///
/// X, CNOT, Toffoli and Toffoli4 are abstract; the rest are native to the
/// trapped-ion gate set. For controlled gates the last qubit is the target.
enum class GateKind { X, RotX, RotY, RotZ, R, CNOT, Toffoli, Toffoli4, XX };

std::string_view gate_kind_name(GateKind kind);
GateKind parse_gate_kind(std::string_view name);
size_t gate_arity(GateKind kind);
size_t gate_angle_count(GateKind kind);
bool is_native(GateKind kind);

struct Gate {
    GateKind kind = GateKind::X;
    std::vector<size_t> qubits;
    std::vector<double> angles;

    static Gate x(size_t q);
    static Gate rx(size_t q, double theta);
    static Gate ry(size_t q, double theta);
    static Gate rz(size_t q, double lambda);
    static Gate r(size_t q, double theta, double phi);
    static Gate cnot(size_t control, size_t target);
    static Gate toffoli(size_t c1, size_t c2, size_t target);
    static Gate toffoli4(size_t c1, size_t c2, size_t c3, size_t target);
    static Gate xx(size_t a, size_t b, double chi);

    /// Throws std::invalid_argument on arity, angle-count or repeated-qubit
    /// violations.
    void validate() const;
    bool native() const {
        return is_native(kind);
    }
    bool operator==(const Gate &other) const = default;
};

/// Dense matrix of a gate on its own qubits, in the order listed by
/// gate.qubits (first qubit most significant).
Eigen::MatrixXcd gate_matrix(const Gate &gate);

/// Marks gates [begin, end) as belonging to walk step `step`.
struct StepMarker {
    int step = 0;
    size_t begin = 0;
    size_t end = 0;
    bool operator==(const StepMarker &other) const = default;
};

class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(size_t num_qubits) : num_qubits_(num_qubits) {
    }

    size_t num_qubits() const {
        return num_qubits_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }
    const std::vector<StepMarker> &step_markers() const {
        return step_markers_;
    }
    bool empty() const {
        return gates_.empty();
    }

    /// Validates the gate against this circuit's width before appending.
    void append(Gate gate);
    void append(const std::vector<Gate> &gates);
    /// Records that gates [begin, size()) form step `step`.
    void mark_step(int step, size_t begin);

    /// Gates of `other` follow this circuit's gates; markers are shifted.
    void extend(const Circuit &other);

    bool operator==(const Circuit &other) const = default;

   private:
    size_t num_qubits_ = 0;
    std::vector<Gate> gates_;
    std::vector<StepMarker> step_markers_;
};

struct StepGateCount {
    int step = 0;
    size_t r = 0;
    size_t xx = 0;
    bool operator==(const StepGateCount &other) const = default;
};

struct GateCount {
    size_t r_count = 0;
    size_t xx_count = 0;
    /// Per-step tallies in marker order. Gates outside every marker are
    /// tallied under step 0.
    std::vector<StepGateCount> per_step;
};

/// Counts native gates: R, RotX, RotY and RotZ count as R; XX counts as XX.
/// Throws std::invalid_argument if an abstract gate is present.
GateCount count_native(const Circuit &circuit);

void apply_gate(StateVector &state, const Gate &gate);
void run_circuit(StateVector &state, const Circuit &circuit);

inline constexpr size_t kMaxUnitaryQubits = 12;

/// Product of gate matrices in circuit order: for gates g1, g2, ... the
/// result is ... U(g2) U(g1). Consequently unitary_of(a then b) equals
/// unitary_of(b) * unitary_of(a).
Eigen::MatrixXcd unitary_of(const Circuit &circuit);

/// Max-entry distance between u and e^{i phi} v, with phi taken from the
/// ratio of the entries where v is largest in magnitude.
double phase_aligned_deviation(const Eigen::MatrixXcd &u, const Eigen::MatrixXcd &v);
bool equivalent_up_to_phase(const Eigen::MatrixXcd &u, const Eigen::MatrixXcd &v, double tol);

nlohmann::json circuit_to_json(const Circuit &circuit);
Circuit circuit_from_json(const nlohmann::json &doc);

}  // namespace qwalk

#endif
