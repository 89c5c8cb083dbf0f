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

#include "qwalk/statevector.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qwalk {

namespace {

void check_unitary(std::span<const Complex> u, size_t dim, const char *what) {
    double dev = unitarity_deviation(u, dim);
    if (!(dev <= kUnitarityTolerance)) {
        throw std::invalid_argument(std::string(what) + ": matrix is not unitary (deviation " + std::to_string(dev) + ")");
    }
}

double uniform53(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

StateVector::StateVector(size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("StateVector: qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    amplitudes_.assign(size_t{1} << num_qubits, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    size_t n = amplitudes.size();
    if (n < 2 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("StateVector: amplitude count must be a power of two >= 2");
    }
    StateVector result;
    result.num_qubits_ = static_cast<size_t>(std::countr_zero(n));
    if (result.num_qubits_ > kMaxQubits) {
        throw std::invalid_argument("StateVector: too many qubits");
    }
    result.amplitudes_ = std::move(amplitudes);
    if (std::abs(result.norm() - 1.0) > kNormTolerance) {
        throw std::invalid_argument("StateVector: amplitudes are not normalized");
    }
    return result;
}

StateVector StateVector::basis(const std::string &bits) {
    StateVector result(bits.size());
    result.amplitudes_[0] = 0.0;
    result.amplitudes_[basis_index(bits)] = 1.0;
    return result;
}

Complex StateVector::amplitude(const std::string &bits) const {
    if (bits.size() != num_qubits_) {
        throw std::invalid_argument("StateVector::amplitude: wrong ket length");
    }
    return amplitudes_[basis_index(bits)];
}

void StateVector::apply_1q(size_t q, const Matrix2 &u) {
    if (q >= num_qubits_) {
        throw std::out_of_range("apply_1q: qubit " + std::to_string(q) + " out of range");
    }
    check_unitary(u, 2, "apply_1q");
    const size_t stride = qubit_mask(q);
    const size_t dim = amplitudes_.size();
    for (size_t base = 0; base < dim; base += 2 * stride) {
        for (size_t i = base; i < base + stride; ++i) {
            Complex a0 = amplitudes_[i];
            Complex a1 = amplitudes_[i + stride];
            amplitudes_[i] = u[0] * a0 + u[1] * a1;
            amplitudes_[i + stride] = u[2] * a0 + u[3] * a1;
        }
    }
}

void StateVector::apply_2q(size_t q1, size_t q2, const Matrix4 &u) {
    if (q1 >= num_qubits_ || q2 >= num_qubits_) {
        throw std::out_of_range("apply_2q: qubit out of range");
    }
    if (q1 == q2) {
        throw std::invalid_argument("apply_2q: qubits must be distinct");
    }
    check_unitary(u, 4, "apply_2q");
    const size_t m1 = qubit_mask(q1);
    const size_t m2 = qubit_mask(q2);
    const size_t dim = amplitudes_.size();
    for (size_t i = 0; i < dim; ++i) {
        if (i & (m1 | m2)) {
            continue;
        }
        const std::array<size_t, 4> idx{i, i | m2, i | m1, i | m1 | m2};
        std::array<Complex, 4> in{};
        for (size_t k = 0; k < 4; ++k) {
            in[k] = amplitudes_[idx[k]];
        }
        for (size_t r = 0; r < 4; ++r) {
            Complex acc = 0.0;
            for (size_t c = 0; c < 4; ++c) {
                acc += u[4 * r + c] * in[c];
            }
            amplitudes_[idx[r]] = acc;
        }
    }
}

void StateVector::apply_mcx(std::span<const size_t> controls, size_t target) {
    if (target >= num_qubits_) {
        throw std::out_of_range("apply_mcx: target out of range");
    }
    size_t control_mask = 0;
    for (size_t c : controls) {
        if (c >= num_qubits_) {
            throw std::out_of_range("apply_mcx: control out of range");
        }
        if (c == target || (control_mask & qubit_mask(c))) {
            throw std::invalid_argument("apply_mcx: qubits must be distinct");
        }
        control_mask |= qubit_mask(c);
    }
    const size_t t = qubit_mask(target);
    for (size_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & control_mask) == control_mask && !(i & t)) {
            std::swap(amplitudes_[i], amplitudes_[i | t]);
        }
    }
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> result(amplitudes_.size());
    std::transform(amplitudes_.begin(), amplitudes_.end(), result.begin(), [](Complex a) { return std::norm(a); });
    return result;
}

double StateVector::norm() const {
    double total = 0.0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return std::sqrt(total);
}

MeasurementRecord StateVector::sample(uint64_t shots, uint64_t seed) const {
    if (shots < 1) {
        throw std::invalid_argument("sample: shots must be >= 1");
    }
    auto probs = probabilities();
    auto counts = sample_counts(probs, shots, seed);
    MeasurementRecord record;
    record.shots = shots;
    for (size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > 0) {
            record.counts[basis_string(i, num_qubits_)] = counts[i];
        }
    }
    return record;
}

std::string basis_string(size_t index, size_t num_qubits) {
    std::string s(num_qubits, '0');
    for (size_t q = 0; q < num_qubits; ++q) {
        if (index & (size_t{1} << (num_qubits - 1 - q))) {
            s[q] = '1';
        }
    }
    return s;
}

size_t basis_index(const std::string &bits) {
    if (bits.empty() || bits.size() > kMaxQubits) {
        throw std::invalid_argument("basis_index: bad ket length");
    }
    size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("basis_index: ket must contain only '0' and '1': " + bits);
        }
        index = (index << 1) | static_cast<size_t>(c == '1');
    }
    return index;
}

double unitarity_deviation(std::span<const Complex> u, size_t dim) {
    if (u.size() != dim * dim) {
        throw std::invalid_argument("unitarity_deviation: size mismatch");
    }
    double worst = 0.0;
    for (size_t r = 0; r < dim; ++r) {
        for (size_t c = 0; c < dim; ++c) {
            Complex acc = 0.0;
            for (size_t k = 0; k < dim; ++k) {
                acc += std::conj(u[k * dim + r]) * u[k * dim + c];
            }
            if (r == c) {
                acc -= 1.0;
            }
            worst = std::max(worst, std::abs(acc));
        }
    }
    if (std::isnan(worst)) {
        return INFINITY;
    }
    return worst;
}

std::vector<uint64_t> sample_counts(std::span<const double> probs, uint64_t shots, uint64_t seed) {
    std::vector<double> cumulative(probs.size());
    double total = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] < 0.0 || std::isnan(probs[i])) {
            throw std::invalid_argument("sample_counts: negative or NaN weight");
        }
        total += probs[i];
        cumulative[i] = total;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("sample_counts: weights must sum to 1");
    }
    std::vector<uint64_t> counts(probs.size(), 0);
    std::mt19937_64 rng(seed);
    for (uint64_t s = 0; s < shots; ++s) {
        double r = uniform53(rng) * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        // upper_bound lands on the first bin whose cumulative weight exceeds r,
        // which is never a zero-weight bin.
        size_t k = std::min(static_cast<size_t>(it - cumulative.begin()), probs.size() - 1);
        counts[k]++;
    }
    return counts;
}

}  // namespace qwalk
