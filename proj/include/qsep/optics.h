// Copyright 2026 The qsep Authors
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

#ifndef QSEP_OPTICS_H
#define QSEP_OPTICS_H

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>

#include "json.hpp"

// Single-photon, three-port realisation of equal-prior optimal separation.
//
// Basis vector |k> is one photon in port k and vacuum in the other two. The
// inputs |psi1> = |1>, |psi2> = s|1> + sqrt(1 - s^2)|2> leave the interferometer
// as sqrt(p)|psi'_i> + sqrt(q)|3'>, with |psi'_1> = |1'> and
// |psi'_2> = s'|1'> + sqrt(1 - s'^2)|2'>. A click in port 3' heralds failure.
namespace qsep::optics {

using Complex = std::complex<double>;
using Matrix3 = Eigen::Matrix3cd;

struct ModeState {
    std::array<Complex, 3> amplitudes{};

    double norm2() const;
    /// Probability of a click at each output port.
    std::array<double, 3> probabilities() const;
};

/// The input state for index 1 or 2. Throws std::invalid_argument otherwise.
ModeState input_state(int index, double s);

/// Equal-prior separation protocol U = M1 * M2 for overlaps (s, s').
struct Interferometer {
    Matrix3 u;
    /// Mixes ports 1 and 3.
    Matrix3 bs1;
    /// Mixes ports 2 and 3.
    Matrix3 bs2;
    double s = 0;
    double s_prime = 0;

    /// Target failure probability (s - s') / (1 - s').
    double failure_probability() const;
};

/// Requires 0 <= s' <= s < 1; s' = s gives the identity.
Interferometer build_interferometer(double s, double s_prime);

/// max_ij |(A^dagger A - I)_ij|
double unitarity_deviation(const Matrix3 &a);
/// max_ij |(bs1 bs2 - u)_ij|
double factorization_deviation(const Interferometer &itf);

/// U * st. Throws std::invalid_argument if st is not normalised to 1e-12.
ModeState apply(const Interferometer &itf, const ModeState &st);

struct ShotCounts {
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    std::int64_t n3 = 0;
    std::int64_t shots = 0;
    std::uint64_t seed = 0;

    double failure_rate() const { return static_cast<double>(n3) / static_cast<double>(shots); }
};

/// Shots are drawn in fixed-size shards, shard b seeded from seed_seq{seed, b}
/// with mt19937_64, so the counts depend only on (seed, shots).
inline constexpr std::int64_t kShardSize = 1 << 16;

/// Samples ideal single-photon detection at the three output ports.
ShotCounts simulate(const Interferometer &itf, int input_index, std::int64_t shots, std::uint64_t seed);

struct InputReport {
    int input = 0;
    std::array<double, 3> exact_probabilities{};
    ShotCounts counts;
    double empirical_q = 0;
    double sigma = 0;
    double z_score = 0;
    bool within_3_sigma = false;
    double chi_square = 0;
    int degrees_of_freedom = 0;
    double chi_square_critical = 0;
    bool chi_square_pass = false;
};

struct CertificationReport {
    double s = 0;
    double target_s_prime = 0;
    double target_q = 0;
    std::int64_t shots = 0;
    std::uint64_t seed = 0;

    double unitarity_deviation = 0;
    double factorization_deviation = 0;
    /// Overlap of the normalised success components (ports 1', 2') of both outputs.
    double exact_s_prime = 0;
    /// max_i |q_i - target_q| with q_i read off the output amplitudes.
    double exact_q_deviation = 0;
    std::array<InputReport, 2> inputs{};
    /// |q1_hat - q2_hat| in units of its standard error.
    double proportion_z = 0;

    bool unitary_ok = false;
    bool factorization_ok = false;
    bool s_prime_ok = false;
    bool q_exact_ok = false;
    bool statistics_ok = false;
    bool passed = false;
};

/// Simulates both inputs and checks the protocol against its targets:
/// exact amplitudes to 1e-12, empirical failure rates within 3 sigma, and a
/// 1%-level chi-square test across the detectors.
CertificationReport certify_separation(const Interferometer &itf, std::int64_t shots, std::uint64_t seed);

nlohmann::ordered_json to_json(const CertificationReport &report);

}  // namespace qsep::optics

#endif
