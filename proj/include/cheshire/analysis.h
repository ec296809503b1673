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

#ifndef CHESHIRE_ANALYSIS_H
#define CHESHIRE_ANALYSIS_H

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cheshire/experiment.h"

namespace cheshire::analysis {

struct PolyFit {
    int degree;
    /// Ascending powers: y = c0 + c1 x + c2 x^2 + ...
    std::vector<double> coefficients;
    Eigen::MatrixXd covariance;
    double chi2;
    int dof;

    double evaluate(double x) const;
};

/// Weighted least squares through a column-pivoted Householder QR of the
/// weighted Vandermonde matrix. Covariance is the inverse normal matrix.
/// Needs at least degree + 2 points and strictly positive sigmas. Throws
/// RankDeficient when the abscissae cannot determine the polynomial.
PolyFit weighted_polyfit(std::span<const double> xs, std::span<const double> ys,
                         std::span<const double> sigmas, int degree);

/// Unit weights; covariance rescaled by chi2/dof since no error model is given.
PolyFit unweighted_polyfit(std::span<const double> xs, std::span<const double> ys, int degree);

struct Estimate {
    double value;
    double sigma;
};

/// Linear coefficient with sqrt(cov[1][1]). Throws DomainError for degree 0.
Estimate slope_at_zero(const PolyFit &fit);

/// One pointer-expectation curve versus g.
struct Curve {
    std::vector<double> g;
    std::vector<double> y;
    std::vector<double> sigma;

    /// Pointwise sum/difference over the g values present in both curves;
    /// sigmas add in quadrature.
    Curve operator+(const Curve &other) const;
    Curve operator-(const Curve &other) const;
};

/// Points of `sweep` for (theta_a, basis) in sweep order. Points with a missing
/// estimate are skipped. Throws MissingSetting if none are present.
Curve pointer_curve(const experiment::SweepResult &sweep, double theta_a_deg, experiment::Basis basis);

/// Weighted when every sigma is positive, unweighted when all are zero. Zero
/// sigmas mixed with positive ones take the smallest positive sigma.
PolyFit fit_curve(const Curve &curve, int degree);

struct ExtractedWeakValue {
    std::string observable;
    Estimate re;
    std::optional<Estimate> im;
    PolyFit re_fit;
    std::optional<PolyFit> im_fit;
};

/// <sigma_x>_p ~ 2 g Re<O>_w and <sigma_y>_p ~ 2 g Im<O>_w: half the fitted slope.
ExtractedWeakValue extract_weak_value(const std::string &observable, const Curve &x_curve,
                                      const std::optional<Curve> &y_curve, int degree);

struct ExtractOptions {
    int degree = 3;
    double probe_h_deg = 45.0;
    double probe_v_deg = 0.0;
};

struct CheshireExtraction {
    ExtractedWeakValue identity;  ///< Pi_l (x) I from the sum curve
    ExtractedWeakValue sigma_z;   ///< Pi_l (x) sigma_z from the difference curve
};

/// Builds <sigma^H> +/- <sigma^V> curves, fits and halves their slopes. The y
/// basis is used for imaginary parts when present for both probes. Throws
/// MissingSetting naming any absent x-basis probe.
CheshireExtraction extract_cheshire(const experiment::SweepResult &sweep, const ExtractOptions &options = {});

}  // namespace cheshire::analysis

#endif
