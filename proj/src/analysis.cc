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

#include "cheshire/analysis.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cheshire/errors.h"
#include "cheshire/sweep_io.h"

namespace cheshire::analysis {

namespace {

PolyFit solve(std::span<const double> xs, std::span<const double> ys, std::span<const double> sigmas, int degree) {
    if (degree < 0) {
        throw DomainError("polynomial degree must be non-negative");
    }
    if (xs.size() != ys.size() || xs.size() != sigmas.size()) {
        throw DomainError("xs, ys and sigmas must have equal length");
    }
    auto n = static_cast<Eigen::Index>(xs.size());
    Eigen::Index m = degree + 1;
    if (n < m + 1) {
        throw DomainError("polynomial fit of degree " + std::to_string(degree) + " needs at least " +
                          std::to_string(m + 1) + " points (dof >= 1)");
    }
    Eigen::MatrixXd a(n, m);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; i++) {
        double s = sigmas[static_cast<size_t>(i)];
        if (!(s > 0) || !std::isfinite(s)) {
            throw DomainError("fit sigmas must be positive and finite");
        }
        double x = xs[static_cast<size_t>(i)];
        double p = 1;
        for (Eigen::Index j = 0; j < m; j++) {
            a(i, j) = p / s;
            p *= x;
        }
        b[i] = ys[static_cast<size_t>(i)] / s;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < m) {
        throw RankDeficient("design matrix has rank " + std::to_string(qr.rank()) + " < " + std::to_string(m) +
                            " (too few distinct abscissae)");
    }
    Eigen::VectorXd c = qr.solve(b);

    Eigen::MatrixXd r = qr.matrixR().topLeftCorner(m, m).triangularView<Eigen::Upper>();
    Eigen::MatrixXd r_inv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(m, m));
    Eigen::MatrixXd p = qr.colsPermutation();
    Eigen::MatrixXd cov = p * r_inv * r_inv.transpose() * p.transpose();
    cov = (cov + cov.transpose()) * 0.5;

    double chi2 = (a * c - b).squaredNorm();
    return {degree, std::vector<double>(c.data(), c.data() + m), cov, chi2, static_cast<int>(n - m)};
}

Curve combine(const Curve &lhs, const Curve &rhs, double sign) {
    Curve out;
    for (size_t i = 0; i < lhs.g.size(); i++) {
        auto it = std::find(rhs.g.begin(), rhs.g.end(), lhs.g[i]);
        if (it == rhs.g.end()) {
            continue;
        }
        auto j = static_cast<size_t>(it - rhs.g.begin());
        out.g.push_back(lhs.g[i]);
        out.y.push_back(lhs.y[i] + sign * rhs.y[j]);
        out.sigma.push_back(std::hypot(lhs.sigma[i], rhs.sigma[j]));
    }
    return out;
}

std::string setting_name(double theta_a_deg, experiment::Basis basis) {
    return "theta_a=" + format_double(theta_a_deg) + " deg, basis " + std::string(experiment::basis_name(basis));
}

bool has_setting(const experiment::SweepResult &sweep, double theta_a_deg, experiment::Basis basis) {
    return std::any_of(sweep.points.begin(), sweep.points.end(), [&](const auto &p) {
        return p.theta_a_deg == theta_a_deg && p.basis == basis && p.estimate.has_value();
    });
}

}  // namespace

double PolyFit::evaluate(double x) const {
    double y = 0;
    for (size_t k = coefficients.size(); k-- > 0;) {
        y = y * x + coefficients[k];
    }
    return y;
}

PolyFit weighted_polyfit(std::span<const double> xs, std::span<const double> ys, std::span<const double> sigmas,
                         int degree) {
    return solve(xs, ys, sigmas, degree);
}

PolyFit unweighted_polyfit(std::span<const double> xs, std::span<const double> ys, int degree) {
    std::vector<double> ones(xs.size(), 1.0);
    auto fit = solve(xs, ys, ones, degree);
    fit.covariance *= fit.chi2 / fit.dof;
    return fit;
}

Estimate slope_at_zero(const PolyFit &fit) {
    if (fit.degree < 1) {
        throw DomainError("slope_at_zero needs a fit of degree >= 1");
    }
    return {fit.coefficients[1], std::sqrt(std::max(0.0, fit.covariance(1, 1)))};
}

Curve Curve::operator+(const Curve &other) const {
    return combine(*this, other, +1);
}

Curve Curve::operator-(const Curve &other) const {
    return combine(*this, other, -1);
}

Curve pointer_curve(const experiment::SweepResult &sweep, double theta_a_deg, experiment::Basis basis) {
    Curve out;
    for (const auto &p : sweep.points) {
        if (p.theta_a_deg == theta_a_deg && p.basis == basis && p.estimate) {
            out.g.push_back(p.g);
            out.y.push_back(*p.estimate);
            out.sigma.push_back(p.std_error);
        }
    }
    if (out.g.empty()) {
        throw MissingSetting("sweep has no data for " + setting_name(theta_a_deg, basis));
    }
    return out;
}

PolyFit fit_curve(const Curve &curve, int degree) {
    double min_positive = 0;
    for (double s : curve.sigma) {
        if (s > 0 && (min_positive == 0 || s < min_positive)) {
            min_positive = s;
        }
    }
    if (min_positive == 0) {
        return unweighted_polyfit(curve.g, curve.y, degree);
    }
    std::vector<double> sigmas = curve.sigma;
    for (double &s : sigmas) {
        if (!(s > 0)) {
            s = min_positive;
        }
    }
    return weighted_polyfit(curve.g, curve.y, sigmas, degree);
}

ExtractedWeakValue extract_weak_value(const std::string &observable, const Curve &x_curve,
                                      const std::optional<Curve> &y_curve, int degree) {
    auto re_fit = fit_curve(x_curve, degree);
    auto re_slope = slope_at_zero(re_fit);
    ExtractedWeakValue out{observable, {re_slope.value / 2, re_slope.sigma / 2}, std::nullopt, re_fit, std::nullopt};
    if (y_curve) {
        auto im_fit = fit_curve(*y_curve, degree);
        auto im_slope = slope_at_zero(im_fit);
        out.im = Estimate{im_slope.value / 2, im_slope.sigma / 2};
        out.im_fit = im_fit;
    }
    return out;
}

CheshireExtraction extract_cheshire(const experiment::SweepResult &sweep, const ExtractOptions &options) {
    using experiment::Basis;
    for (double theta : {options.probe_h_deg, options.probe_v_deg}) {
        if (!has_setting(sweep, theta, Basis::kX)) {
            throw MissingSetting("sweep has no data for " + setting_name(theta, Basis::kX));
        }
    }
    auto xh = pointer_curve(sweep, options.probe_h_deg, Basis::kX);
    auto xv = pointer_curve(sweep, options.probe_v_deg, Basis::kX);
    std::optional<Curve> yh;
    std::optional<Curve> yv;
    if (has_setting(sweep, options.probe_h_deg, Basis::kY) && has_setting(sweep, options.probe_v_deg, Basis::kY)) {
        yh = pointer_curve(sweep, options.probe_h_deg, Basis::kY);
        yv = pointer_curve(sweep, options.probe_v_deg, Basis::kY);
    }
    std::optional<Curve> y_sum;
    std::optional<Curve> y_diff;
    if (yh && yv) {
        y_sum = *yh + *yv;
        y_diff = *yh - *yv;
    }
    return {
        extract_weak_value("Pi_l*I", xh + xv, y_sum, options.degree),
        extract_weak_value("Pi_l*sigma_z", xh - xv, y_diff, options.degree),
    };
}

}  // namespace cheshire::analysis
