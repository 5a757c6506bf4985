// Copyright 2026 The bipolarlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bipolar/profile.hpp"

#include <cmath>
#include <sstream>

#include "bipolar/errors.hpp"
#include "bipolar/rng.hpp"

namespace bipolar {

namespace {

// 5-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNode[5] = {-0.906179845938664, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.906179845938664};
constexpr double kGlWeight[5] = {0.23692688505618908, 0.47862867049936647,
                                 0.5688888888888889, 0.47862867049936647,
                                 0.23692688505618908};

double glue(double x) { return x <= 0.0 ? 0.0 : std::exp(-1.0 / x); }

double glue_derivative(double x) {
  if (x <= 0.0) return 0.0;
  const double g = std::exp(-1.0 / x);
  return g / (x * x);
}

}  // namespace

SmoothStep::SmoothStep() : cells_(4096) {
  cum_.resize(cells_ + 1);
  cum_[0] = 0.0;
  const double h = 1.0 / cells_;
  for (int i = 0; i < cells_; ++i) {
    cum_[i + 1] = cum_[i] + cell_integral(i * h, (i + 1) * h);
  }
}

double SmoothStep::value(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = glue(x);
  const double b = glue(1.0 - x);
  return a / (a + b);
}

double SmoothStep::derivative(double x) const {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double a = glue(x);
  const double b = glue(1.0 - x);
  const double da = glue_derivative(x);
  const double db = glue_derivative(1.0 - x);
  // d/dx [a/(a+b)] with b = g(1-x): quotient rule, db enters with sign flip.
  return (da * b + a * db) / ((a + b) * (a + b));
}

double SmoothStep::cell_integral(double a, double b) const {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 5; ++i) {
    acc += kGlWeight[i] * value(mid + half * kGlNode[i]);
  }
  return acc * half;
}

double SmoothStep::integral(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return cum_[cells_] + (x - 1.0);
  const double scaled = x * cells_;
  int idx = static_cast<int>(scaled);
  if (idx >= cells_) idx = cells_ - 1;
  const double left = static_cast<double>(idx) / cells_;
  return cum_[idx] + cell_integral(left, x);
}

const SmoothStep& smooth_step() {
  static const SmoothStep instance;
  return instance;
}

void validate_profile(const Profile& profile) {
  if (!(profile.t_max > profile.t_min)) {
    throw ValidationError("profile: empty domain [" +
                          std::to_string(profile.t_min) + ", " +
                          std::to_string(profile.t_max) + "]");
  }
  if (profile.smoothness_class < 4) {
    throw ValidationError("profile: smoothness_class must be >= 4");
  }
  Rng rng(0x9c0ffeeULL);
  const double span = profile.t_max - profile.t_min;
  const double h = 3e-6 * std::max(1.0, span);
  for (int i = 0; i < 64; ++i) {
    const double t =
        profile.t_min + span * (0.001 + 0.998 * rng.uniform());
    const double ft = profile.f(t);
    if (!(ft > 0.0) || !std::isfinite(ft)) {
      throw ValidationError("profile: f must be positive and finite at t=" +
                            std::to_string(t));
    }
    const double curvature = -profile.ddf(t) / ft;
    if (!std::isfinite(curvature)) {
      throw ValidationError("profile: curvature not finite at t=" +
                            std::to_string(t));
    }
    if (t - h < profile.t_min || t + h > profile.t_max) continue;
    const double fd1 = (profile.f(t + h) - profile.f(t - h)) / (2.0 * h);
    const double fd2 = (profile.df(t + h) - profile.df(t - h)) / (2.0 * h);
    if (std::abs(fd1 - profile.df(t)) > 1e-6 * (1.0 + std::abs(fd1))) {
      throw ValidationError("profile: f' inconsistent with f at t=" +
                            std::to_string(t));
    }
    if (std::abs(fd2 - profile.ddf(t)) > 1e-6 * (1.0 + std::abs(fd2))) {
      throw ValidationError("profile: f'' inconsistent with f' at t=" +
                            std::to_string(t));
    }
  }
}

Profile make_cosh_profile(double extent) {
  if (!(extent > 0.0)) throw ValidationError("cosh profile: extent must be > 0");
  Profile p;
  std::ostringstream name;
  name << "cosh";
  p.name = name.str();
  p.t_min = -extent;
  p.t_max = extent;
  p.smoothness_class = 99;
  p.f = [](double t) { return std::cosh(t); };
  p.df = [](double t) { return std::sinh(t); };
  p.ddf = [](double t) { return std::cosh(t); };
  validate_profile(p);
  return p;
}

Profile make_sphere_cap_profile(double radius, double extent_fraction) {
  if (!(radius > 0.0)) {
    throw ValidationError("spherecap profile: radius must be > 0");
  }
  if (!(extent_fraction > 0.0 && extent_fraction < 1.0)) {
    throw ValidationError("spherecap profile: extent fraction must be in (0,1)");
  }
  Profile p;
  std::ostringstream name;
  name << "spherecap,r=" << radius;
  p.name = name.str();
  const double extent = extent_fraction * 0.5 * M_PI * radius;
  p.t_min = -extent;
  p.t_max = extent;
  p.smoothness_class = 99;
  const double r = radius;
  p.f = [r](double t) { return r * std::cos(t / r); };
  p.df = [r](double t) { return -std::sin(t / r); };
  p.ddf = [r](double t) { return -std::cos(t / r) / r; };
  validate_profile(p);
  return p;
}

}  // namespace bipolar
