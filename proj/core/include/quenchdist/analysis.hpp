// Copyright 2026 The quenchdist Authors
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

#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace quenchdist {

/// Pfaffian convergence threshold; fits stop at 10x this level.
inline constexpr double kNoiseFloor = 1e-9;
inline constexpr int kTransientWindow = 5;
inline constexpr std::size_t kMinTransientSamples = 20;
inline constexpr std::size_t kMinFitSamples = 10;

struct DistanceSeries {
  std::string label;
  std::vector<double> t;
  std::vector<double> d;
  double t_star = std::numeric_limits<double>::infinity();
};

/// Throws std::invalid_argument unless times increase strictly, sizes match
/// and every D lies in [0, 1].
void validate(const DistanceSeries& series);

struct FitWindow {
  double t_lo;
  double t_hi;
};

struct DecayFit {
  double tau;
  double log_amplitude;
  double t_lo;
  double t_hi;
  double rms_residual;
  std::size_t samples;
};

/// Time of the first sample opening a run of kTransientWindow strictly
/// decreasing values. Throws std::invalid_argument for fewer than
/// kMinTransientSamples samples and std::runtime_error if no run exists.
double detect_transient(const DistanceSeries& series);

/// [t_onset + 2 dt, min(t_star, first t past the onset with D < 10 kNoiseFloor)),
/// dt being the spacing of the first two samples.
FitWindow default_window(const DistanceSeries& series, double t_onset);

/// Least-squares line through (t, log D) for samples in the closed window and
/// below t_star. Throws std::runtime_error when fewer than kMinFitSamples
/// samples lie above 10 kNoiseFloor or the fitted slope is not negative.
DecayFit fit_exponential(const DistanceSeries& series, FitWindow window);

/// detect_transient + default_window + fit_exponential.
DecayFit fit_decay(const DistanceSeries& series);

/// (max - min) / mean.
double relative_spread(const std::vector<double>& values);

struct SweepPoint {
  double param;
  std::optional<DecayFit> fit;
  std::string error;
};

/// One fit per parameter value; a point whose evaluation throws is recorded
/// with its message and the sweep continues.
std::vector<SweepPoint> tau_sweep(const std::vector<double>& params,
                                  const std::function<DistanceSeries(double)>& series_for);

/// Header `param,tau,log_amplitude,t_lo,t_hi,rms_residual`; failed points
/// are written as nan.
void write_tau_csv(std::ostream& os, const std::vector<SweepPoint>& points);

}  // namespace quenchdist
