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

#ifndef QWALK_NATIVE_COMPILER_H
#define QWALK_NATIVE_COMPILER_H

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/circuit.h"

namespace qwalk {

inline constexpr double kRuleTolerance = 1e-8;

/// Sign flips applied to rule angles before execution. sign_rx scales the
/// angle of RX, RY and R gates, sign_xx scales XX angles and phase_rz
/// scales RZ angles.
struct ConventionChoice {
    int sign_rx = 1;
    int sign_xx = 1;
    int phase_rz = 1;

    void validate() const;
    std::string str() const;
    bool operator==(const ConventionChoice &other) const = default;
};

/// All 8 candidates, (+1, +1, +1) first, then lexicographic with +1 < -1.
std::array<ConventionChoice, 8> all_conventions();

/// A native gate sequence claimed to implement `pattern`. Both use the
/// canonical qubits 0 .. pattern.num_qubits() - 1.
struct DecompositionRule {
    std::string name;
    Circuit pattern;
    std::vector<Gate> native_sequence;
    /// True when the sequence was built by this library rather than taken
    /// from the reference sequence set.
    bool synthesized = false;

    /// Throws std::invalid_argument if native_sequence has an abstract gate
    /// or a qubit outside the pattern.
    void validate() const;
    size_t xx_count() const;
};

/// Maps a sequence written under `conv` onto the repository
/// conventions.
std::vector<Gate> apply_convention(const std::vector<Gate> &sequence, ConventionChoice conv);

/// Phase-aligned max-entry distance between the rule's native sequence
/// (under `conv`) and its pattern.
double rule_deviation(const DecompositionRule &rule, ConventionChoice conv);
bool verify_rule(const DecompositionRule &rule, ConventionChoice conv);

/// Raised by find_conventions; what() lists per-rule deviations.
struct ConventionSearchError : std::runtime_error {
    explicit ConventionSearchError(const std::string &msg) : std::runtime_error(msg) {
    }
};

/// First ConventionChoice under which every rule verifies.
ConventionChoice find_conventions(const std::vector<DecompositionRule> &rules);

enum class BlockId { CNOT, ToffoliCNOT, ToffoliToffoli4CNOT };

std::string_view block_name(BlockId block);
BlockId parse_block(std::string_view name);
/// Abstract form of a block on canonical qubits. ToffoliCNOT is
/// Toffoli(0,1->2) then CNOT(0->1); ToffoliToffoli4CNOT is Toffoli(0,1->2),
/// Toffoli4(0,1,2->3), CNOT(0->1).
Circuit abstract_block(BlockId block);

DecompositionRule identity_rule();
/// CNOT from one XX(pi/4) and a Z-X frame.
DecompositionRule ising_cnot_rule();
/// Reference Toffoli-CNOT and Toffoli-Toffoli4-CNOT sequences, in time
/// order, with their printed angles.
DecompositionRule reference_toffoli_cnot_rule();
DecompositionRule reference_toffoli_toffoli4_cnot_rule();
/// Constructive sequences with the same XX budgets (4 and 11), built from
/// Pauli-product rotations conjugated through the controlled gates.
DecompositionRule synthesized_toffoli_cnot_rule();
DecompositionRule synthesized_toffoli_toffoli4_cnot_rule();

struct RuleStatus {
    std::string name;
    double reference_deviation = 0.0;
    bool reference_verified = false;
    bool synthesized = false;
};

/// Rules the compiler uses, all expressed under the repository convention.
struct RuleSet {
    ConventionChoice convention;
    /// Result of find_conventions over every reference rule, if it
    /// succeeded.
    bool all_references_verified = false;
    std::string search_diagnostic;
    std::vector<DecompositionRule> rules;
    std::vector<RuleStatus> status;

    const DecompositionRule &rule(BlockId block) const;
};

/// Resolves conventions over the reference rules. Rules that fail under
/// the chosen convention are replaced by their synthesized counterparts.
/// Computed once and cached.
const RuleSet &standard_rule_set();

/// Native gates for `block` on canonical qubits.
std::vector<Gate> compile_block(BlockId block);

struct CompileOptions {
    /// Fuse runs of single-qubit gates within a step into at most one RZ
    /// followed by one R.
    bool merge_rotations = true;
    /// While merging, carry the X-rotation part of each run across XX
    /// gates on the same qubit.
    bool commute_x_through_xx = true;
};

/// Lowers every abstract gate to natives. Blocks are matched greedily
/// (longest first) on consecutive gates inside one step; X becomes
/// R(pi, 0). Step markers are preserved.
Circuit compile(const Circuit &circuit, const CompileOptions &options = {});

/// Decomposes a 2x2 unitary (row-major) into natives on qubit q:
/// nothing, [RZ], [R] or [RZ, R] in time order.
std::vector<Gate> single_qubit_natives(size_t q, const Matrix2 &u);

}  // namespace qwalk

#endif
