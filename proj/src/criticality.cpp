#include "gdicke/criticality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "gdicke/errors.hpp"

namespace gdicke {

SpectrumTolerances default_tolerances(double omega, double omega0) {
  return SpectrumTolerances::scaled(std::max(omega, omega0));
}

SweepRecord evaluate_point(const ModelParams& params, Branch branch,
                           const SpectrumTolerances& tol) {
  SweepRecord rec;
  rec.lambda = params.lambda;
  rec.branch = branch;
  try {
    const auto form = effective_form(params, branch);
    const auto spectrum = bogoliubov_spectrum(form, tol);
    std::array<cplx, 3> w{};
    std::copy_n(spectrum.frequencies.begin(), 3, w.begin());
    rec.frequencies = w;
    rec.physical = is_physical(spectrum.classification);
    if (rec.physical) {
      rec.energy_density = ground_energy(form, spectrum) / params.n_atoms;
    }
  } catch (const DisplacementUndefined& e) {
    rec.note = e.what();
  } catch (const NumericFailure& e) {
    rec.note = e.what();
  } catch (const PairingFailure& e) {
    rec.note = e.what();
  }
  return rec;
}

std::vector<SweepRecord> sweep(const ModelParams& base, Branch branch,
                               std::span<const double> lambda_grid,
                               const SweepOptions& options) {
  base.validate();
  for (std::size_t i = 1; i < lambda_grid.size(); ++i) {
    if (!(lambda_grid[i] > lambda_grid[i - 1])) {
      throw InvalidArgument("lambda grid must be strictly ascending");
    }
  }
  const auto tol = options.tolerances.value_or(default_tolerances(base.omega, base.omega0));
  std::vector<SweepRecord> out(lambda_grid.size());

  auto work = [&](std::size_t i) {
    ModelParams p = base;
    p.lambda = lambda_grid[i];
    out[i] = evaluate_point(p, branch, tol);
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(out.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < out.size(); ++i) work(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < out.size(); i = next++) work(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 2 || !(hi > lo)) {
    throw InvalidArgument("linear_grid needs steps >= 2 and hi > lo");
  }
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  grid.back() = hi;
  return grid;
}

bool physical_at(Branch branch, const ModelParams& params, const SpectrumTolerances& tol) {
  QuadraticBosonForm form;
  try {
    form = effective_form(params, branch);
  } catch (const DisplacementUndefined&) {
    return false;
  }
  return is_physical(bogoliubov_spectrum(form, tol).classification);
}

namespace {

template <class Predicate>
std::pair<std::pair<double, double>, int> bisect(Predicate&& pred,
                                                 std::pair<double, double> bracket,
                                                 double tol, int max_iterations) {
  auto [lo, hi] = bracket;
  if (!(hi > lo) || !(tol > 0.0)) {
    throw InvalidArgument("bisection needs lo < hi and tol > 0");
  }
  const bool at_lo = pred(lo);
  if (pred(hi) == at_lo) {
    throw BracketError("predicate has the same value at both bracket endpoints");
  }
  int it = 0;
  while (hi - lo > tol) {
    if (it == max_iterations) {
      throw NumericFailure("bisection reached its iteration cap", it);
    }
    const double mid = 0.5 * (lo + hi);
    if (pred(mid) == at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++it;
  }
  return {{lo, hi}, it};
}

}  // namespace

CriticalPoint find_critical(Branch branch, double omega, double omega0,
                            std::pair<double, double> bracket, double tol,
                            const BisectionOptions& options) {
  const auto stol = options.tolerances.value_or(default_tolerances(omega, omega0));
  ModelParams p{omega, omega0, 0.0, 1.0};
  p.validate();
  auto pred = [&](double lambda) {
    p.lambda = lambda;
    return physical_at(branch, p, stol);
  };
  const auto [final_bracket, iterations] = bisect(pred, bracket, tol, options.max_iterations);
  CriticalPoint cp;
  cp.branch = branch;
  cp.bracket = final_bracket;
  cp.lambda_c = 0.5 * (final_bracket.first + final_bracket.second);
  cp.tol = tol;
  cp.iterations = iterations;
  return cp;
}

double find_complex_onset(double omega, double omega0, std::pair<double, double> bracket,
                          double tol, const BisectionOptions& options) {
  const auto stol = options.tolerances.value_or(default_tolerances(omega, omega0));
  ModelParams p{omega, omega0, 0.0, 1.0};
  p.validate();
  auto pred = [&](double lambda) {
    p.lambda = lambda;
    return bogoliubov_spectrum(normal_form(p), stol).classification == Stability::HasComplex;
  };
  const auto [final_bracket, iterations] = bisect(pred, bracket, tol, options.max_iterations);
  return 0.5 * (final_bracket.first + final_bracket.second);
}

std::pair<double, double> default_bracket(double omega, double omega0) {
  const double lc = critical_coupling(omega, omega0);
  return {0.5 * lc, 2.0 * lc};
}

std::pair<double, double> default_onset_bracket(double omega, double omega0) {
  const double lc = critical_coupling(omega, omega0);
  return {lc, 2.0 * lc};
}

FitResult fit_power_law(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) {
    throw DomainError("power-law fit needs at least 3 points");
  }
  std::vector<double> lx, ly;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
      throw DomainError("power-law fit needs strictly positive finite data");
    }
    lx.push_back(std::log(x));
    ly.push_back(std::log(y));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DomainError("power-law fit needs distinct x values");

  FitResult fit;
  fit.exponent = sxy / sxx;
  fit.log_prefactor = my - fit.exponent * mx;
  fit.n_points = static_cast<int>(lx.size());
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (fit.log_prefactor + fit.exponent * lx[i]);
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(r));
  }
  return fit;
}

std::string_view to_string(FitTarget t) {
  switch (t) {
    case FitTarget::Gap: return "gap";
    case FitTarget::Length: return "length";
    case FitTarget::OrderParameter: return "order-parameter";
  }
  return "?";
}

std::optional<FitTarget> parse_fit_target(std::string_view name) {
  for (auto t : {FitTarget::Gap, FitTarget::Length, FitTarget::OrderParameter}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

FitWindow default_window(FitTarget) { return {1e-4, 1e-2}; }

std::vector<std::pair<double, double>> scaling_points(FitTarget target, double omega,
                                                      double omega0, FitWindow window,
                                                      int n_points) {
  if (!(window.near > 0.0) || !(window.far > window.near) || n_points < 3) {
    throw DomainError("fit window needs 0 < near < far and at least 3 points");
  }
  const double lc = critical_coupling(omega, omega0);
  if (target != FitTarget::OrderParameter && window.far >= lc) {
    throw DomainError("fit window reaches below lambda = 0");
  }
  const auto tol = default_tolerances(omega, omega0);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n_points);
  const double log_near = std::log(window.near), log_far = std::log(window.far);
  for (int i = 0; i < n_points; ++i) {
    const double x = std::exp(log_near + (log_far - log_near) * i / (n_points - 1));
    ModelParams p{omega, omega0, 0.0, 1.0};
    if (target == FitTarget::OrderParameter) {
      p.lambda = lc + x;
      pts.emplace_back(x, order_parameter(p));
      continue;
    }
    p.lambda = lc - x;
    const auto spectrum = bogoliubov_spectrum(normal_form(p), tol);
    if (spectrum.classification != Stability::AllPositive) {
      throw NumericFailure("normal phase is not stable inside the fit window", 0);
    }
    const double gap = spectrum.frequencies.back().real();
    pts.emplace_back(x, target == FitTarget::Gap ? gap : 1.0 / std::sqrt(gap));
  }
  return pts;
}

FitResult fit_exponent(FitTarget target, double omega, double omega0, FitWindow window,
                       int n_points) {
  const auto pts = scaling_points(target, omega, omega0, window, n_points);
  return fit_power_law(pts);
}

std::vector<std::pair<double, double>> energy_density_curve(
    const ModelParams& base, Branch branch, std::span<const double> lambda_grid,
    const SweepOptions& options) {
  std::vector<std::pair<double, double>> out;
  for (const auto& rec : sweep(base, branch, lambda_grid, options)) {
    if (rec.energy_density) out.emplace_back(rec.lambda, *rec.energy_density);
  }
  return out;
}

DerivativeJump second_derivative_jump(std::span<const std::pair<double, double>> left,
                                      std::span<const std::pair<double, double>> right,
                                      double lambda_c, double h) {
  if (left.size() < 3 || right.size() < 3) {
    throw DomainError("each side needs at least 3 points");
  }
  if (!(h > 0.0)) throw DomainError("step must be positive");
  const double slack = 1e-6 * h;
  const auto l0 = left[left.size() - 3], l1 = left[left.size() - 2], l2 = left.back();
  const auto r0 = right[0], r1 = right[1], r2 = right[2];
  auto near = [&](double a, double b) { return std::abs(a - b) <= slack; };
  if (!near(l2.first, lambda_c) || !near(r0.first, lambda_c)) {
    throw DomainError("curves must abut lambda_c");
  }
  if (!near(l1.first, lambda_c - h) || !near(l0.first, lambda_c - 2 * h) ||
      !near(r1.first, lambda_c + h) || !near(r2.first, lambda_c + 2 * h)) {
    throw DomainError("curves must be sampled with spacing h next to lambda_c");
  }
  const double d1_left = (l2.second - l0.second) / (2 * h);
  const double d2_left = (l2.second - 2 * l1.second + l0.second) / (h * h);
  const double d1_right = (r2.second - r0.second) / (2 * h);
  const double d2_right = (r2.second - 2 * r1.second + r0.second) / (h * h);
  return {d1_right - d1_left, d2_right - d2_left};
}

}  // namespace gdicke
