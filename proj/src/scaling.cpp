// Copyright 2026 The purify Authors
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

#include "purify/scaling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>

#include "purify/error.hpp"
#include "purify/nelder_mead.hpp"

namespace purify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct AxisScan {
  double minus = 0.0;
  double plus = 0.0;
  bool hit_bound = false;
};

// Distance from the optimum to where g first reaches g_min + delta, on each
// side. hit_bound marks a side that ends at the range limit or at
// infeasible (non-finite) values instead.
AxisScan scan_axis(const std::function<double(double)>& g, double center, double g_min, double delta, double step,
                   double lower, double upper) {
  AxisScan out;
  for (int dir : {-1, 1}) {
    const double room = std::abs((dir < 0 ? lower : upper) - center);
    double inside = 0.0, outside = -1.0;
    for (double h = step; ; h *= 2.0) {
      const double d = std::min(h, room);
      if (!(g(center + dir * d) < g_min + delta)) {
        outside = d;
        break;
      }
      inside = d;
      if (d >= room) break;
    }
    double dist;
    if (outside < 0.0) {
      out.hit_bound = true;
      dist = room;
    } else {
      double lo = inside, hi = outside;
      double edge = g(center + dir * hi);
      for (int it = 0; it < 30 && hi - lo > 1e-4 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = g(center + dir * mid);
        if (v < g_min + delta) {
          lo = mid;
        } else {
          hi = mid;
          edge = v;
        }
      }
      dist = 0.5 * (lo + hi);
      if (!std::isfinite(edge)) out.hit_bound = true;
    }
    (dir < 0 ? out.minus : out.plus) = dist;
  }
  return out;
}

// f minimized over every coordinate except `axis`, which is held at the
// argument. Warm-started from the previous solution.
std::function<double(double)> profile_of(const std::function<double(const std::vector<double>&)>& f,
                                         const std::vector<double>& best, std::size_t axis,
                                         const std::vector<double>& steps) {
  auto warm = std::make_shared<std::vector<double>>();
  for (std::size_t d = 0; d < best.size(); ++d) {
    if (d != axis) warm->push_back(best[d]);
  }
  return [f, best, axis, steps, warm](double value) {
    std::vector<double> free_steps;
    for (std::size_t d = 0; d < best.size(); ++d) {
      if (d != axis) free_steps.push_back(steps[d]);
    }
    auto full = [&](const std::vector<double>& free) {
      std::vector<double> x(best.size());
      for (std::size_t d = 0, k = 0; d < best.size(); ++d) x[d] = d == axis ? value : free[k++];
      return f(x);
    };
    NelderMeadOptions opt;
    opt.max_evaluations = 1500;
    opt.x_tolerance = 1e-5;
    opt.f_tolerance = 1e-8;
    auto run = nelder_mead(full, *warm, free_steps, opt);
    // The warm start may sit in a worse basin than the optimum's neighbors.
    std::vector<double> home;
    for (std::size_t d = 0; d < best.size(); ++d) {
      if (d != axis) home.push_back(best[d]);
    }
    const auto alt = nelder_mead(full, home, free_steps, opt);
    if (alt.value < run.value) run = alt;
    if (std::isfinite(run.value)) *warm = run.x;
    return run.value;
  };
}

std::map<std::size_t, std::vector<ScalingRow>> by_size(const ScalingDataset& data) {
  std::map<std::size_t, std::vector<ScalingRow>> groups;
  for (const auto& r : data.rows()) groups[r.size].push_back(r);
  return groups;
}

struct SizeCurve {
  std::size_t size = 0;
  std::vector<CollapsedPoint> points;  // ascending x
};

// Linear interpolation of the mean at p_c with its propagated error.
bool interpolate(const std::vector<ScalingRow>& rows, double p_c, double& value, double& error) {
  if (rows.empty() || p_c < rows.front().p || p_c > rows.back().p) return false;
  std::size_t k = 0;
  while (k + 2 < rows.size() && rows[k + 1].p < p_c) ++k;
  if (rows.size() == 1) {
    value = rows[0].mean;
    error = rows[0].std_error;
    return true;
  }
  const auto& a = rows[k];
  const auto& b = rows[k + 1];
  const double t = (p_c - a.p) / (b.p - a.p);
  value = (1.0 - t) * a.mean + t * b.mean;
  error = (1.0 - t) * a.std_error + t * b.std_error;
  return true;
}

void check_ranges(double p_c, double nu, double zeta) {
  if (!std::isfinite(p_c)) throw ValidationError("collapse: p_c must be finite");
  if (!(nu > 0.2 && nu < 10.0)) throw ValidationError("collapse: nu out of (0.2, 10)");
  if (!(zeta > -2.0 && zeta < 3.0)) throw ValidationError("collapse: zeta out of (-2, 3)");
}

std::vector<SizeCurve> transform(const ScalingDataset& data, double p_c, double nu, double zeta) {
  std::vector<SizeCurve> curves;
  for (const auto& [size, rows] : by_size(data)) {
    double ref = 0.0, ref_err = 0.0;
    if (!interpolate(rows, p_c, ref, ref_err)) continue;
    const double l = static_cast<double>(size);
    const double xs = std::pow(l, 1.0 / nu);
    const double ys = std::pow(l, -zeta / nu);
    SizeCurve c;
    c.size = size;
    for (const auto& r : rows) {
      c.points.push_back({xs * (r.p - p_c), ys * (r.mean - ref), ys * std::hypot(r.std_error, ref_err), size});
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

double quality_of(const std::vector<SizeCurve>& curves) {
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    std::size_t size_count = 0;
    for (const auto& pt : curves[i].points) {
      double k = 0, kx = 0, ky = 0, kxx = 0, kxy = 0;
      std::size_t used = 0;
      for (std::size_t o = 0; o < curves.size(); ++o) {
        if (o == i) continue;
        const auto& other = curves[o].points;
        if (other.size() < 2 || pt.x < other.front().x || pt.x > other.back().x) continue;
        std::size_t j = 0;
        while (j + 2 < other.size() && other[j + 1].x <= pt.x) ++j;
        for (std::size_t q : {j, j + 1}) {
          const double w = 1.0 / (other[q].dy * other[q].dy);
          k += w;
          kx += w * other[q].x;
          ky += w * other[q].y;
          kxx += w * other[q].x * other[q].x;
          kxy += w * other[q].x * other[q].y;
          ++used;
        }
      }
      if (used < 2) continue;
      const double det = k * kxx - kx * kx;
      if (!(det > 0.0)) continue;
      const double master = (kxx * ky - kx * kxy) / det + pt.x * (k * kxy - kx * ky) / det;
      const double master_var = (kxx - 2.0 * pt.x * kx + pt.x * pt.x * k) / det;
      const double r = pt.y - master;
      total += r * r / (pt.dy * pt.dy + master_var);
      ++count;
      ++size_count;
    }
    // Every size must overlap the others over a third of its points.
    if (3 * size_count < curves[i].points.size()) return kInf;
  }
  std::size_t all = 0;
  for (const auto& c : curves) all += c.points.size();
  // Too little overlap between sizes leaves S undetermined.
  if (2 * count < all) return kInf;
  return total / static_cast<double>(count);
}

double quality_or_inf(const ScalingDataset& data, double p_c, double nu, double zeta) {
  if (!(nu > 0.2 && nu < 10.0) || !(zeta > -2.0 && zeta < 3.0) || !std::isfinite(p_c)) return kInf;
  const auto curves = transform(data, p_c, nu, zeta);
  if (curves.size() < 2) return kInf;
  return quality_of(curves);
}

}  // namespace

ScalingDataset::ScalingDataset(std::vector<ScalingRow> rows) : rows_(std::move(rows)) {
  std::stable_sort(rows_.begin(), rows_.end(), [](const ScalingRow& a, const ScalingRow& b) {
    return a.size != b.size ? a.size < b.size : a.p < b.p;
  });
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const auto& r = rows_[k];
    if (r.size == 0) throw ValidationError("scaling: L must be positive");
    if (!std::isfinite(r.p) || !std::isfinite(r.mean)) throw ValidationError("scaling: non-finite row");
    if (!(r.std_error >= 0.0)) throw ValidationError("scaling: stderr must be non-negative");
    if (k > 0 && rows_[k - 1].size == r.size && !(rows_[k - 1].p < r.p)) {
      throw ValidationError("scaling: p values must be strictly increasing per size (L=" + std::to_string(r.size) + ")");
    }
  }
}

std::vector<std::size_t> ScalingDataset::sizes() const {
  std::vector<std::size_t> out;
  for (const auto& r : rows_) {
    if (out.empty() || out.back() != r.size) out.push_back(r.size);
  }
  return out;
}

std::vector<ScalingRow> ScalingDataset::rows_for(std::size_t size) const {
  std::vector<ScalingRow> out;
  for (const auto& r : rows_) {
    if (r.size == size) out.push_back(r);
  }
  return out;
}

PowerLawFit powerlaw_fit(std::span<const double> sizes, std::span<const double> values) {
  if (sizes.size() != values.size()) throw ValidationError("powerlaw_fit: length mismatch");
  const std::size_t n = sizes.size();
  if (n < 3) throw ValidationError("powerlaw_fit: at least 3 points required");
  std::vector<double> lx(n), ly(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(sizes[k] > 0.0)) throw ValidationError("powerlaw_fit: sizes must be positive");
    if (!(values[k] > 0.0)) throw ValidationError("powerlaw_fit: non-positive y rejected");
    lx[k] = std::log(sizes[k]);
    ly[k] = std::log(values[k]);
  }
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (!(sxx > 0.0)) throw ValidationError("powerlaw_fit: sizes must not all be equal");
  PowerLawFit fit;
  fit.points = n;
  fit.exponent = sxy / sxx;
  const double log_a = my - fit.exponent * mx;
  fit.amplitude = std::exp(log_a);
  double rss = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = ly[k] - log_a - fit.exponent * lx[k];
    rss += r * r;
  }
  const double s2 = rss / static_cast<double>(n - 2);
  fit.exponent_error = std::sqrt(s2 / sxx);
  fit.amplitude_error = fit.amplitude * std::sqrt(s2 * (1.0 / static_cast<double>(n) + mx * mx / sxx));
  return fit;
}

PurityFit purity_transition_fit(const ScalingDataset& data) {
  if (data.empty()) throw ValidationError("purity_transition_fit: empty dataset");
  PurityFit fit;
  fit.size = data.sizes().back();
  const auto rows = data.rows_for(fit.size);
  if (rows.size() < 5) throw ValidationError("purity_transition_fit: at least 5 points required");
  const double l = static_cast<double>(fit.size);

  std::vector<double> p, y, dy;
  double floor = kInf;
  for (const auto& r : rows) {
    if (r.std_error > 0.0) floor = std::min(floor, r.std_error / l);
  }
  if (!std::isfinite(floor)) floor = 1.0;
  for (const auto& r : rows) {
    p.push_back(r.p);
    y.push_back(r.mean / l);
    dy.push_back(r.std_error > 0.0 ? r.std_error / l : floor);
  }

  // Total chi2 and the number of points entering it.
  auto chi2 = [&](double alpha, double p_c, double nu, std::size_t& used) {
    double sum = 0.0;
    used = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k] > p_c) continue;
      const double r = (y[k] - alpha * std::pow(p_c - p[k], nu)) / dy[k];
      sum += r * r;
      ++used;
    }
    return sum;
  };
  auto reduced = [&](const std::vector<double>& v) {
    if (!(v[0] > 0.0) || !(v[2] > 0.0) || v[2] > 20.0) return kInf;
    std::size_t used = 0;
    const double c = chi2(v[0], v[1], v[2], used);
    if (used < 5) return kInf;
    return c / static_cast<double>(used - 3);
  };

  const double span = p.back() - p.front();
  NelderMeadResult best;
  best.value = kInf;
  for (std::size_t i = 4; i < p.size(); i += std::max<std::size_t>(1, (p.size() - 4) / 5)) {
    const double pc0 = p[i] + 0.25 * span / static_cast<double>(p.size());
    for (double nu0 : {0.7, 1.0, 1.5, 2.2, 3.2, 4.5}) {
      // Weighted least-squares amplitude for this (p_c, nu).
      double num = 0, den = 0;
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] > pc0) continue;
        const double g = std::pow(pc0 - p[k], nu0);
        num += y[k] * g / (dy[k] * dy[k]);
        den += g * g / (dy[k] * dy[k]);
      }
      const double a0 = den > 0.0 && num > 0.0 ? num / den : 1.0;
      auto run = nelder_mead(reduced, {a0, pc0, nu0}, {0.2 * a0, 0.05 * span, 0.2 * nu0});
      for (int restart = 0; restart < 3 && !run.converged; ++restart) {
        auto again = nelder_mead(reduced, run.x, {0.1 * run.x[0], 0.02 * span, 0.1 * run.x[2]});
        again.evaluations += run.evaluations;
        run = again;
      }
      if (run.value < best.value) best = run;
    }
  }
  if (!std::isfinite(best.value)) {
    fit.flagged = true;
    fit.flag_reason = "no feasible starting point";
    fit.reduced_chi2 = kInf;
    return fit;
  }
  fit.amplitude = best.x[0];
  fit.p_c = best.x[1];
  fit.nu = best.x[2];
  fit.reduced_chi2 = best.value;
  std::size_t used = 0;
  const double chi2_min = chi2(fit.amplitude, fit.p_c, fit.nu, used);
  fit.points_used = used;
  if (!best.converged) {
    fit.flagged = true;
    fit.flag_reason = "simplex did not converge";
  }

  auto total = [&](const std::vector<double>& v) {
    if (!(v[0] > 0.0) || !(v[2] > 0.0)) return kInf;
    std::size_t u = 0;
    const double c = chi2(v[0], v[1], v[2], u);
    return u < 5 ? kInf : c;
  };
  const double delta = std::max(1.0, fit.reduced_chi2);
  const std::array<double, 3> steps{1e-3 * fit.amplitude, 1e-4 * std::max(span, 1e-3), 1e-3 * fit.nu};
  const std::array<double, 3> lower{0.0, p.front() - span, 0.0};
  const std::array<double, 3> upper{100.0 * fit.amplitude, p.back() + span, 20.0};
  std::array<double*, 3> errs{&fit.amplitude_error, &fit.p_c_error, &fit.nu_error};
  for (std::size_t a = 0; a < 3; ++a) {
    const std::vector<double> free_steps{0.05 * fit.amplitude, 0.02 * std::max(span, 1e-3), 0.05 * fit.nu};
    const auto s = scan_axis(profile_of(total, best.x, a, free_steps), best.x[a], chi2_min, delta, steps[a],
                             lower[a], upper[a]);
    *errs[a] = 0.5 * (s.minus + s.plus);
    if (s.hit_bound && !fit.flagged) {
      fit.flagged = true;
      fit.flag_reason = "uncertainty scan reached the parameter bound";
    }
  }
  return fit;
}

double collapse_quality(const ScalingDataset& data, double p_c, double nu, double zeta) {
  check_ranges(p_c, nu, zeta);
  const auto sizes = data.sizes();
  if (sizes.size() < 2) throw ValidationError("collapse_quality: at least 2 sizes required");
  for (const auto& r : data.rows()) {
    if (!(r.std_error > 0.0)) throw ValidationError("collapse_quality: stderr must be positive");
  }
  const auto curves = transform(data, p_c, nu, zeta);
  if (curves.empty()) throw ValidationError("collapse_quality: p_c outside every size's p-grid");
  if (curves.size() < 2) return kInf;
  return quality_of(curves);
}

CollapseResult collapse(const ScalingDataset& data, const CollapseGuess& guess) {
  const auto sizes = data.sizes();
  if (sizes.size() < 3) {
    throw ValidationError("collapse: ≥3 sizes required (got " + std::to_string(sizes.size()) + ")");
  }
  check_ranges(guess.p_c, guess.nu, guess.zeta);
  for (const auto& r : data.rows()) {
    if (!(r.std_error > 0.0)) throw ValidationError("collapse: stderr must be positive");
  }
  double lo = kInf, hi = -kInf;
  for (auto s : sizes) {
    const auto rows = data.rows_for(s);
    lo = std::min(lo, rows.front().p);
    hi = std::max(hi, rows.back().p);
  }
  const double span = hi - lo;
  if (!(span > 0.0)) throw ValidationError("collapse: p grid has zero span");
  if (guess.p_c < lo || guess.p_c > hi) throw ValidationError("collapse: initial p_c outside the data's p-span");

  CollapseResult out;
  std::size_t evaluations = 0;
  auto objective = [&](const std::vector<double>& v) {
    ++evaluations;
    return quality_or_inf(data, v[0], v[1], v[2]);
  };

  NelderMeadResult best;
  best.value = kInf;
  double start_max = -kInf;
  for (double dp : {-0.15, 0.0, 0.15}) {
    for (double fn : {0.7, 1.0, 1.5}) {
      for (double dz : {-0.5, 0.0, 0.5}) {
        const std::vector<double> x0{std::clamp(guess.p_c + dp * span, lo, hi), std::clamp(guess.nu * fn, 0.25, 9.5),
                                     std::clamp(guess.zeta + dz, -1.9, 2.9)};
        const double v0 = objective(x0);
        if (std::isfinite(v0)) start_max = std::max(start_max, v0);
        const auto run = nelder_mead(objective, x0, {0.05 * span, 0.2 * x0[1], 0.2});
        if (run.value < best.value) best = run;
      }
    }
  }
  out.evaluations = evaluations;
  if (!std::isfinite(best.value)) {
    out.flagged = true;
    out.flag_reason = "no feasible parameters";
    out.quality = kInf;
    return out;
  }
  out.p_c = best.x[0];
  out.nu = best.x[1];
  out.zeta = best.x[2];
  out.quality = best.value;

  if (!best.converged) {
    out.flagged = true;
    out.flag_reason = "simplex did not converge";
  }
  if ((start_max - best.value) < 0.1 * best.value) {
    out.flagged = true;
    out.flag_reason = "flat quality landscape (S variation below 10%)";
  }

  const std::array<double, 3> steps{1e-4 * span, 1e-3 * out.nu, 1e-3};
  const std::array<double, 3> lower{lo, 0.2, -2.0};
  const std::array<double, 3> upper{hi, 10.0, 3.0};
  const std::array<const char*, 3> names{"p_c", "nu", "zeta"};
  std::array<double*, 3> errs{&out.p_c_error, &out.nu_error, &out.zeta_error};
  for (std::size_t a = 0; a < 3; ++a) {
    const auto s = scan_axis(profile_of(objective, best.x, a, {0.02 * span, 0.05 * out.nu, 0.05}), best.x[a],
                             best.value, 1.0, steps[a], lower[a], upper[a]);
    *errs[a] = 0.5 * (s.minus + s.plus);
    if (s.hit_bound && !out.flagged) {
      out.flagged = true;
      out.flag_reason = std::string("unconstrained along ") + names[a];
    }
  }
  out.evaluations = evaluations;
  return out;
}

std::vector<CollapsedPoint> collapsed_coordinates(const ScalingDataset& data, double p_c, double nu, double zeta) {
  check_ranges(p_c, nu, zeta);
  std::vector<CollapsedPoint> out;
  for (const auto& c : transform(data, p_c, nu, zeta)) out.insert(out.end(), c.points.begin(), c.points.end());
  return out;
}

}  // namespace purify
