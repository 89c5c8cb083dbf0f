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

#ifndef QWALK_STATEVECTOR_H
#define QWALK_STATEVECTOR_H

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qwalk {

using Complex = std::complex<double>;

/// Row-major 2x2 matrix acting on one qubit.
using Matrix2 = std::array<Complex, 4>;

/// Row-major 4x4 matrix acting on an ordered qubit pair (q1, q2). The row
/// index is 2 * bit(q1) + bit(q2).
using Matrix4 = std::array<Complex, 16>;

/// Maximum deviation of an input gate from unitarity before it is rejected.
inline constexpr double kUnitarityTolerance = 1e-8;
/// Tolerance used for norm checks after gate sequences.
inline constexpr double kNormTolerance = 1e-10;
inline constexpr size_t kMaxQubits = 24;

struct MeasurementRecord {
    /// Keys are n-character strings of '0'/'1', qubit 0 leftmost.
    std::map<std::string, uint64_t> counts;
    uint64_t shots = 0;

    bool operator==(const MeasurementRecord &other) const = default;
};

/// Dense statevector over n qubits.
///
/// Qubit 0 is the most significant bit of the basis index, so the basis
/// state with index i prints as the ket string whose leftmost character is
/// qubit 0. Gate kernels iterate over index pairs separated by the qubit's
/// bit stride.
class StateVector {
   public:
    /// Creates |0...0>.
    explicit StateVector(size_t num_qubits);

    /// Takes ownership of explicit amplitudes. The length must be a power of
    /// two; the norm must be 1 within kNormTolerance.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    /// Basis state given as a ket string like "01101".
    static StateVector basis(const std::string &bits);

    size_t num_qubits() const {
        return num_qubits_;
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    Complex amplitude(const std::string &bits) const;

    void apply_1q(size_t q, const Matrix2 &u);
    void apply_2q(size_t q1, size_t q2, const Matrix4 &u);
    /// Flips `target` on basis states where every control qubit is 1.
    void apply_mcx(std::span<const size_t> controls, size_t target);

    /// |amplitude|^2 per basis index.
    std::vector<double> probabilities() const;
    double norm() const;

    /// Multinomial draw of `shots` outcomes. Uses std::mt19937_64 seeded with
    /// `seed`; each shot takes the top 53 bits of one engine output as a
    /// uniform double in [0, 1) and inverts the cumulative distribution, so
    /// records are reproducible across platforms for a fixed seed.
    MeasurementRecord sample(uint64_t shots, uint64_t seed) const;

    /// Bit mask of qubit q inside a basis index.
    size_t qubit_mask(size_t q) const {
        return size_t{1} << (num_qubits_ - 1 - q);
    }

   private:
    StateVector() = default;
    size_t num_qubits_ = 0;
    std::vector<Complex> amplitudes_;
};

/// Ket string of basis index `index` over `num_qubits` qubits.
std::string basis_string(size_t index, size_t num_qubits);
/// Inverse of basis_string.
size_t basis_index(const std::string &bits);

/// Largest entry of |u^dagger u - I|.
double unitarity_deviation(std::span<const Complex> u, size_t dim);

/// Draws from a discrete distribution given as non-negative weights summing
/// to 1 (within 1e-9). Same algorithm as StateVector::sample.
std::vector<uint64_t> sample_counts(std::span<const double> probs, uint64_t shots, uint64_t seed);

}  // namespace qwalk

#endif
