// Copyright 2026 The Cheshire Authors
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

#include "cheshire/experiment.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/poisson_distribution.hpp>

#include "cheshire/photonics.h"

namespace cheshire::experiment {

namespace {

constexpr double kDeg = M_PI / 180.0;

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::vector<Operator> evolution_kraus(double g, double theta_a_deg, const Engine &engine) {
    if (std::holds_alternative<DirectEngine>(engine)) {
        auto coupling = CouplingStrength::from_g(g);
        return {total_unitary(coupling, ProbePolarization::from_theta_a(theta_a_deg * kDeg))};
    }
    const auto &ppbs = std::get<PpbsEngine>(engine);
    auto map = photonics::gate_level_total_map(g, theta_a_deg * kDeg, photonics::Indistinguishability(ppbs.eta),
                                               ppbs.balanced);
    return map.kraus();
}

uint64_t draw_poisson(boost::random::mt19937_64 &rng, double mean) {
    if (mean <= 0) {
        return 0;
    }
    boost::random::poisson_distribution<int64_t, double> dist(mean);
    return static_cast<uint64_t>(dist(rng));
}

SweepPoint estimate_point(double g, double theta, Basis basis, uint64_t n_plus, uint64_t n_minus) {
    SweepPoint p{g, theta, basis, n_plus, n_minus, std::nullopt, 0};
    uint64_t n = n_plus + n_minus;
    if (n == 0) {
        return p;
    }
    double e = (static_cast<double>(n_plus) - static_cast<double>(n_minus)) / static_cast<double>(n);
    p.estimate = e;
    p.std_error = std::sqrt(std::max(0.0, 1 - e * e) / static_cast<double>(n));
    return p;
}

}  // namespace

std::string_view basis_name(Basis basis) {
    switch (basis) {
        case Basis::kX:
            return "x";
        case Basis::kY:
            return "y";
        case Basis::kZ:
            return "z";
    }
    return "?";
}

Basis parse_basis(std::string_view name) {
    if (name == "x") {
        return Basis::kX;
    }
    if (name == "y") {
        return Basis::kY;
    }
    if (name == "z") {
        return Basis::kZ;
    }
    throw DomainError("unknown pointer basis '" + std::string(name) + "' (expected x, y or z)");
}

Eigen::Matrix2cd Analyzer::jones() const {
    return half_wave_plate(hwp_deg * kDeg) * quarter_wave_plate(qwp_deg * kDeg);
}

Analyzer pointer_tomography_settings(Basis basis) {
    auto s = spaces::pointer();
    switch (basis) {
        case Basis::kX:
            return {basis, states::diagonal(s), states::antidiagonal(s), 45.0, 22.5};
        case Basis::kY:
            return {basis, states::right_circular(s), states::left_circular(s), 0.0, 22.5};
        case Basis::kZ:
            return {basis, states::level(s, "H"), states::level(s, "V"), 0.0, 0.0};
    }
    throw DomainError("unknown pointer basis");
}

Analyzer pointer_tomography_settings(std::string_view basis) {
    return pointer_tomography_settings(parse_basis(basis));
}

std::string engine_name(const Engine &engine) {
    if (std::holds_alternative<DirectEngine>(engine)) {
        return "direct";
    }
    std::ostringstream out;
    const auto &p = std::get<PpbsEngine>(engine);
    out << "ppbs(eta=" << p.eta << (p.balanced ? "" : ",unbalanced") << ")";
    return out.str();
}

std::vector<double> symmetric_grid(double g_max, size_t points) {
    if (points < 2) {
        throw DomainError("a symmetric grid needs at least two points");
    }
    std::vector<double> out;
    auto denom = static_cast<double>(points - 1);
    for (size_t k = 0; k < points; k++) {
        double num = 2.0 * static_cast<double>(k) - denom;
        out.push_back(g_max * num / denom);
    }
    return out;
}

void SweepConfig::validate() const {
    if (g_values.empty()) {
        throw DomainError("sweep needs at least one g value");
    }
    for (double g : g_values) {
        if (!std::isfinite(g) || std::abs(g) > M_PI / 2) {
            throw DomainError("g values must be finite with |g| <= pi/2");
        }
    }
    if (probe_settings_deg.empty() || pointer_bases.empty()) {
        throw DomainError("sweep needs at least one probe setting and one pointer basis");
    }
    if (!(counts_per_setting >= 1) || !std::isfinite(counts_per_setting)) {
        throw DomainError("counts_per_setting must be >= 1");
    }
    if (threads == 0) {
        throw DomainError("threads must be >= 1");
    }
    if (const auto *p = std::get_if<PpbsEngine>(&engine)) {
        photonics::Indistinguishability check(p->eta);
        (void)check;
    }
    if (!(pre.space() == system_space()) || !(post.space() == system_space()) ||
        !(pointer_in.space() == CompositeSpace{spaces::pointer()})) {
        throw SpaceMismatch("pre/post states must live on path (x) pol and the pointer on pointer");
    }
}

Complex ConditionedPointer::expectation(const Operator &op) const {
    if (!(op.space() == CompositeSpace{spaces::pointer()})) {
        throw SpaceMismatch("pointer expectation of an operator on another space");
    }
    return (op.matrix() * rho).trace() / rho.trace().real();
}

ConditionedPointer conditioned_pointer(double g, double theta_a_deg, const SweepConfig &config) {
    auto input = tensor(config.pre, config.pointer_in);
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (const auto &k : evolution_kraus(g, theta_a_deg, config.engine)) {
        auto phi = contract(config.post, apply(k, input));
        rho += phi.amplitudes() * phi.amplitudes().adjoint();
    }
    double success = rho.trace().real();
    if (success <= tol::kZero * tol::kZero) {
        std::ostringstream msg;
        msg << "post-selection probability vanishes at g = " << g << " (theta_a = " << theta_a_deg << " deg)";
        throw PostselectionFailure(msg.str());
    }
    return {rho, success};
}

std::vector<CurvePoint> exact_curves(const SweepConfig &config) {
    config.validate();
    std::vector<CurvePoint> out;
    for (double g : config.g_values) {
        for (double theta : config.probe_settings_deg) {
            auto pointer = conditioned_pointer(g, theta, config);
            for (Basis b : config.pointer_bases) {
                auto analyzer = pointer_tomography_settings(b);
                double p_plus = pointer.expectation(analyzer.plus_projector()).real();
                double p_minus = pointer.expectation(analyzer.minus_projector()).real();
                out.push_back({g, theta, b, p_plus - p_minus, p_plus, pointer.success_probability});
            }
        }
    }
    return out;
}

std::vector<CountRecord> SweepResult::records() const {
    std::vector<CountRecord> out;
    for (const auto &p : points) {
        out.push_back({p.g, p.theta_a_deg, p.basis, +1, p.n_plus});
        out.push_back({p.g, p.theta_a_deg, p.basis, -1, p.n_minus});
    }
    return out;
}

uint64_t substream_seed(uint64_t seed, size_t g_index, size_t setting_index) {
    uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ static_cast<uint64_t>(g_index));
    return splitmix64(h ^ (static_cast<uint64_t>(setting_index) << 32));
}

SweepResult run_noisy_sweep(const SweepConfig &config) {
    config.validate();
    const size_t per_g = config.probe_settings_deg.size() * config.pointer_bases.size();
    const size_t num_g = config.g_values.size();
    std::vector<SweepPoint> points(num_g * per_g);

    auto run_g = [&](size_t gi) {
        double g = config.g_values[gi];
        for (size_t pi = 0; pi < config.probe_settings_deg.size(); pi++) {
            double theta = config.probe_settings_deg[pi];
            auto pointer = conditioned_pointer(g, theta, config);
            double n = config.counts_per_setting;
            if (config.absolute_rates) {
                n *= pointer.success_probability;
            }
            for (size_t bi = 0; bi < config.pointer_bases.size(); bi++) {
                Basis b = config.pointer_bases[bi];
                auto analyzer = pointer_tomography_settings(b);
                double p_plus = pointer.expectation(analyzer.plus_projector()).real();
                double p_minus = pointer.expectation(analyzer.minus_projector()).real();
                double total = p_plus + p_minus;
                size_t setting = pi * config.pointer_bases.size() + bi;
                boost::random::mt19937_64 rng(substream_seed(config.seed, gi, setting));
                uint64_t n_plus = draw_poisson(rng, n * std::max(0.0, p_plus) / total);
                uint64_t n_minus = draw_poisson(rng, n * std::max(0.0, p_minus) / total);
                points[gi * per_g + setting] = estimate_point(g, theta, b, n_plus, n_minus);
            }
        }
    };

    unsigned workers = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(num_g)));
    if (workers == 1) {
        for (size_t gi = 0; gi < num_g; gi++) {
            run_g(gi);
        }
    } else {
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; w++) {
                pool.emplace_back([&, w] {
                    try {
                        for (size_t gi = w; gi < num_g; gi += workers) {
                            run_g(gi);
                        }
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }
    return {std::move(points)};
}

SweepResult noiseless_sweep(const SweepConfig &config) {
    SweepResult out;
    for (const auto &c : exact_curves(config)) {
        out.points.push_back({c.g, c.theta_a_deg, c.basis, 0, 0, c.expectation, 0.0});
    }
    return out;
}

}  // namespace cheshire::experiment
