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

#include "qsep/optics.h"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace qsep::optics {

namespace {

constexpr double kExactTol = 1e-12;

double max_abs(const Matrix3 &m) { return m.cwiseAbs().maxCoeff(); }

std::array<std::int64_t, 3> sample_shard(const std::array<double, 3> &probs, std::int64_t shots, std::uint64_t seed,
                                         std::uint64_t shard) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(shard), static_cast<std::uint32_t>(shard >> 32)};
    std::mt19937_64 gen(seq);
    const double c1 = probs[0];
    const double c2 = probs[0] + probs[1];
    // Rounding in the cumulative sums must never land a click on a dark port.
    const int last = probs[2] > 0 ? 2 : (probs[1] > 0 ? 1 : 0);
    std::array<std::int64_t, 3> counts{};
    for (std::int64_t i = 0; i < shots; ++i) {
        double r = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        int port = r < c1 ? 0 : (r < c2 ? 1 : 2);
        counts[std::min(port, last)] += 1;
    }
    return counts;
}

double overlap_of_success_components(const ModeState &a, const ModeState &b) {
    Complex inner = std::conj(a.amplitudes[0]) * b.amplitudes[0] + std::conj(a.amplitudes[1]) * b.amplitudes[1];
    double na = std::norm(a.amplitudes[0]) + std::norm(a.amplitudes[1]);
    double nb = std::norm(b.amplitudes[0]) + std::norm(b.amplitudes[1]);
    if (na == 0 || nb == 0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return std::abs(inner) / std::sqrt(na * nb);
}

}  // namespace

double ModeState::norm2() const {
    return std::norm(amplitudes[0]) + std::norm(amplitudes[1]) + std::norm(amplitudes[2]);
}

std::array<double, 3> ModeState::probabilities() const {
    return {std::norm(amplitudes[0]), std::norm(amplitudes[1]), std::norm(amplitudes[2])};
}

ModeState input_state(int index, double s) {
    if (!(s >= 0 && s <= 1)) {
        throw std::invalid_argument("input overlap must lie in [0, 1]");
    }
    switch (index) {
        case 1:
            return {{Complex(1), Complex(0), Complex(0)}};
        case 2:
            return {{Complex(s), Complex(std::sqrt(1 - s * s)), Complex(0)}};
        default:
            throw std::invalid_argument("input index must be 1 or 2");
    }
}

double Interferometer::failure_probability() const { return (s - s_prime) / (1 - s_prime); }

Interferometer build_interferometer(double s, double s_prime) {
    if (!(s >= 0 && s < 1)) {
        throw std::domain_error("interferometer needs 0 <= s < 1");
    }
    if (!(s_prime >= 0 && s_prime <= s)) {
        throw std::domain_error("interferometer needs 0 <= s' <= s");
    }
    const double gap = s - s_prime;
    // Transmission and reflection amplitudes of the two beam splitters.
    const double t1 = std::sqrt((1 - s) / (1 - s_prime));
    const double r1 = std::sqrt(gap / (1 - s_prime));
    const double t2 = std::sqrt((1 + s_prime) / (1 + s));
    const double r2 = std::sqrt(gap / (1 + s));

    Interferometer itf;
    itf.s = s;
    itf.s_prime = s_prime;
    itf.bs1 << t1, 0, -r1,  //
        0, 1, 0,            //
        r1, 0, t1;
    itf.bs2 << 1, 0, 0,  //
        0, t2, -r2,      //
        0, r2, t2;
    // Entrywise closed form of bs1 * bs2.
    itf.u << t1, -gap / std::sqrt((1 - s_prime) * (1 + s)), -std::sqrt((1 + s_prime) * gap / ((1 - s_prime) * (1 + s))),
        0, t2, -r2,  //
        r1, std::sqrt((1 - s) * gap / ((1 + s) * (1 - s_prime))),
        std::sqrt((1 - s) * (1 + s_prime) / ((1 - s_prime) * (1 + s)));
    return itf;
}

double unitarity_deviation(const Matrix3 &a) { return max_abs(a.adjoint() * a - Matrix3::Identity()); }

double factorization_deviation(const Interferometer &itf) { return max_abs(itf.bs1 * itf.bs2 - itf.u); }

ModeState apply(const Interferometer &itf, const ModeState &st) {
    if (std::abs(st.norm2() - 1) > kExactTol) {
        throw std::invalid_argument("input mode state is not normalised");
    }
    Eigen::Vector3cd in(st.amplitudes[0], st.amplitudes[1], st.amplitudes[2]);
    Eigen::Vector3cd out = itf.u * in;
    return {{out(0), out(1), out(2)}};
}

ShotCounts simulate(const Interferometer &itf, int input_index, std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) {
        throw std::invalid_argument("simulate needs at least one shot");
    }
    ModeState out = apply(itf, input_state(input_index, itf.s));
    std::array<double, 3> probs = out.probabilities();
    const double total = probs[0] + probs[1] + probs[2];
    for (double &p : probs) {
        p /= total;
    }

    const std::int64_t n_shards = (shots + kShardSize - 1) / kShardSize;
    std::vector<std::array<std::int64_t, 3>> per_shard(static_cast<std::size_t>(n_shards));
    auto run = [&](std::int64_t first, std::int64_t stride) {
        for (std::int64_t b = first; b < n_shards; b += stride) {
            std::int64_t n = std::min(kShardSize, shots - b * kShardSize);
            per_shard[static_cast<std::size_t>(b)] = sample_shard(probs, n, seed, static_cast<std::uint64_t>(b));
        }
    };
    const std::int64_t workers =
        std::clamp<std::int64_t>(static_cast<std::int64_t>(std::thread::hardware_concurrency()), 1, n_shards);
    std::vector<std::thread> pool;
    for (std::int64_t w = 1; w < workers; ++w) {
        pool.emplace_back(run, w, workers);
    }
    run(0, workers);
    for (auto &th : pool) {
        th.join();
    }

    ShotCounts counts;
    counts.shots = shots;
    counts.seed = seed;
    for (const auto &c : per_shard) {
        counts.n1 += c[0];
        counts.n2 += c[1];
        counts.n3 += c[2];
    }
    return counts;
}

CertificationReport certify_separation(const Interferometer &itf, std::int64_t shots, std::uint64_t seed) {
    if (shots < 10000) {
        throw std::invalid_argument("certification needs at least 10^4 shots");
    }
    CertificationReport rep;
    rep.s = itf.s;
    rep.target_s_prime = itf.s_prime;
    rep.target_q = itf.failure_probability();
    rep.shots = shots;
    rep.seed = seed;

    rep.unitarity_deviation = std::max(
        {unitarity_deviation(itf.u), unitarity_deviation(itf.bs1), unitarity_deviation(itf.bs2)});
    rep.factorization_deviation = factorization_deviation(itf);

    const ModeState out1 = apply(itf, input_state(1, itf.s));
    const ModeState out2 = apply(itf, input_state(2, itf.s));
    rep.exact_s_prime = overlap_of_success_components(out1, out2);
    rep.exact_q_deviation =
        std::max(std::abs(out1.probabilities()[2] - rep.target_q), std::abs(out2.probabilities()[2] - rep.target_q));

    const double q = rep.target_q;
    const double p = 1 - q;
    const double sp2 = itf.s_prime * itf.s_prime;
    const std::array<std::array<double, 3>, 2> expected{{{p, 0, q}, {p * sp2, p * (1 - sp2), q}}};
    const double n = static_cast<double>(shots);
    const double sigma = std::sqrt(q * (1 - q) / n);

    for (int i = 0; i < 2; ++i) {
        InputReport &in = rep.inputs[static_cast<std::size_t>(i)];
        in.input = i + 1;
        in.exact_probabilities = (i == 0 ? out1 : out2).probabilities();
        // Shards of different inputs must not share random streams.
        in.counts = simulate(itf, i + 1, shots, seed + static_cast<std::uint64_t>(i));
        in.empirical_q = in.counts.failure_rate();
        in.sigma = sigma;
        if (sigma > 0) {
            in.z_score = std::abs(in.empirical_q - q) / sigma;
            in.within_3_sigma = in.z_score <= 3;
        } else {
            in.z_score = in.counts.n3 == static_cast<std::int64_t>(std::llround(q * n)) ? 0 : 1e300;
            in.within_3_sigma = in.z_score == 0;
        }

        const std::array<std::int64_t, 3> observed{in.counts.n1, in.counts.n2, in.counts.n3};
        int categories = 0;
        bool impossible_click = false;
        in.chi_square = 0;
        for (int k = 0; k < 3; ++k) {
            double e = expected[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * n;
            if (e > 0) {
                ++categories;
                double d = static_cast<double>(observed[static_cast<std::size_t>(k)]) - e;
                in.chi_square += d * d / e;
            } else if (observed[static_cast<std::size_t>(k)] > 0) {
                impossible_click = true;
            }
        }
        in.degrees_of_freedom = categories - 1;
        if (in.degrees_of_freedom > 0) {
            boost::math::chi_squared dist(in.degrees_of_freedom);
            in.chi_square_critical = boost::math::quantile(boost::math::complement(dist, 0.01));
            in.chi_square_pass = !impossible_click && in.chi_square <= in.chi_square_critical;
        } else {
            in.chi_square_critical = 0;
            in.chi_square_pass = !impossible_click;
        }
    }

    const double q1_hat = rep.inputs[0].empirical_q;
    const double q2_hat = rep.inputs[1].empirical_q;
    const double pooled = (q1_hat + q2_hat) / 2;
    const double se = std::sqrt(2 * pooled * (1 - pooled) / n);
    rep.proportion_z = se > 0 ? std::abs(q1_hat - q2_hat) / se : (q1_hat == q2_hat ? 0 : 1e300);

    rep.unitary_ok = rep.unitarity_deviation <= kExactTol;
    rep.factorization_ok = rep.factorization_deviation <= kExactTol;
    rep.s_prime_ok = std::abs(rep.exact_s_prime - rep.target_s_prime) <= kExactTol;
    rep.q_exact_ok = rep.exact_q_deviation <= kExactTol;
    rep.statistics_ok = rep.proportion_z <= 3;
    for (const InputReport &in : rep.inputs) {
        rep.statistics_ok = rep.statistics_ok && in.within_3_sigma && in.chi_square_pass;
    }
    rep.passed = rep.unitary_ok && rep.factorization_ok && rep.s_prime_ok && rep.q_exact_ok && rep.statistics_ok;
    return rep;
}

nlohmann::ordered_json to_json(const CertificationReport &report) {
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    for (const InputReport &in : report.inputs) {
        inputs.push_back({
            {"input", in.input},
            {"exact_probabilities", in.exact_probabilities},
            {"counts", {{"n1", in.counts.n1}, {"n2", in.counts.n2}, {"n3", in.counts.n3}, {"shots", in.counts.shots}}},
            {"seed", in.counts.seed},
            {"empirical_q", in.empirical_q},
            {"sigma", in.sigma},
            {"z_score", in.z_score},
            {"within_3_sigma", in.within_3_sigma},
            {"chi_square", in.chi_square},
            {"degrees_of_freedom", in.degrees_of_freedom},
            {"chi_square_critical_1pct", in.chi_square_critical},
            {"chi_square_pass", in.chi_square_pass},
        });
    }
    return {
        {"inputs", {{"s", report.s}, {"s_prime", report.target_s_prime}, {"shots", report.shots}, {"seed", report.seed}}},
        {"exact",
         {{"target_q", report.target_q},
          {"s_prime_from_amplitudes", report.exact_s_prime},
          {"q_deviation", report.exact_q_deviation},
          {"unitarity_deviation", report.unitarity_deviation},
          {"factorization_deviation", report.factorization_deviation}}},
        {"detectors", inputs},
        {"proportion_z", report.proportion_z},
        {"checks",
         {{"unitary", report.unitary_ok},
          {"factorization", report.factorization_ok},
          {"s_prime", report.s_prime_ok},
          {"q_exact", report.q_exact_ok},
          {"statistics", report.statistics_ok}}},
        {"passed", report.passed},
    };
}

}  // namespace qsep::optics
