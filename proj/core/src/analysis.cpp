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

#include "quenchdist/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "quenchdist/io.hpp"

namespace quenchdist {

void validate(const DistanceSeries& s) {
  if (s.t.size() != s.d.size())
    throw std::invalid_argument(s.label + ": time and distance lengths differ");
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    if (i > 0 && !(s.t[i] > s.t[i - 1]))
      throw std::invalid_argument(s.label + ": times must increase strictly");
    if (!(s.d[i] >= 0.0 && s.d[i] <= 1.0))
      throw std::invalid_argument(s.label + ": D outside [0, 1] at t = " +
                                  std::to_string(s.t[i]));
  }
}

double detect_transient(const DistanceSeries& s) {
  validate(s);
  if (s.t.size() < kMinTransientSamples)
    throw std::invalid_argument(s.label + ": transient detection needs at least " +
                                std::to_string(kMinTransientSamples) + " samples");
  for (std::size_t i = 0; i + kTransientWindow <= s.d.size(); ++i) {
    bool decreasing = true;
    for (std::size_t j = i + 1; j < i + kTransientWindow && decreasing; ++j)
      decreasing = s.d[j] < s.d[j - 1];
    if (decreasing) return i == 0 ? 0.0 : s.t[i];
  }
  throw std::runtime_error(s.label + ": no decreasing window found");
}

FitWindow default_window(const DistanceSeries& s, double t_onset) {
  if (s.t.size() < 2) throw std::invalid_argument(s.label + ": series too short");
  const double dt = s.t[1] - s.t[0];
  FitWindow w{t_onset + 2.0 * dt, s.t.back()};
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    if (s.t[i] < t_onset) continue;
    if (s.t[i] >= s.t_star || s.d[i] < 10.0 * kNoiseFloor) {
      w.t_hi = s.t[i - (i > 0 ? 1 : 0)];
      break;
    }
  }
  return w;
}

DecayFit fit_exponential(const DistanceSeries& s, FitWindow window) {
  validate(s);
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    if (s.t[i] < window.t_lo || s.t[i] > window.t_hi || s.t[i] >= s.t_star) continue;
    if (s.d[i] <= 10.0 * kNoiseFloor)
      throw std::runtime_error(s.label + ": D reaches the noise floor inside the fit window at t = " +
                               std::to_string(s.t[i]));
    x.push_back(s.t[i]);
    y.push_back(std::log(s.d[i]));
  }
  if (x.size() < kMinFitSamples)
    throw std::runtime_error(s.label + ": fit window holds " + std::to_string(x.size()) +
                             " samples, need " + std::to_string(kMinFitSamples));
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  if (!(slope < 0.0))
    throw std::runtime_error(s.label + ": fitted slope is not negative");
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    ss += r * r;
  }
  return {-1.0 / slope, intercept, x.front(), x.back(), std::sqrt(ss / n), x.size()};
}

DecayFit fit_decay(const DistanceSeries& s) {
  return fit_exponential(s, default_window(s, detect_transient(s)));
}

double relative_spread(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("relative_spread: no values");
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  return (*hi - *lo) / mean;
}

std::vector<SweepPoint> tau_sweep(const std::vector<double>& params,
                                  const std::function<DistanceSeries(double)>& series_for) {
  std::vector<SweepPoint> out;
  for (double p : params) {
    SweepPoint point{p, std::nullopt, {}};
    try {
      point.fit = fit_decay(series_for(p));
    } catch (const std::exception& e) {
      point.error = e.what();
    }
    out.push_back(std::move(point));
  }
  return out;
}

void write_tau_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
  os << "param,tau,log_amplitude,t_lo,t_hi,rms_residual\n";
  for (const auto& p : points) {
    os << format_double(p.param);
    if (p.fit) {
      os << ',' << format_double(p.fit->tau) << ',' << format_double(p.fit->log_amplitude)
         << ',' << format_double(p.fit->t_lo) << ',' << format_double(p.fit->t_hi) << ','
         << format_double(p.fit->rms_residual);
    } else {
      os << ",nan,nan,nan,nan,nan";
    }
    os << '\n';
  }
}

}  // namespace quenchdist
