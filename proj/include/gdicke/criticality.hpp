#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gdicke/bogoliubov.hpp"
#include "gdicke/dicke.hpp"

namespace gdicke {

/// Default spectrum tolerances for a model: 1e-6 * max(omega, omega0).
SpectrumTolerances default_tolerances(double omega, double omega0);

struct SweepRecord {
  double lambda = 0.0;
  Branch branch = Branch::Normal;
  /// Unset where the branch is undefined or the eigensolver failed.
  std::optional<std::array<cplx, 3>> frequencies;
  bool physical = false;
  /// E0 / N, present iff physical.
  std::optional<double> energy_density;
  /// Error text for points that could not be evaluated.
  std::string note;
};

struct SweepOptions {
  std::optional<SpectrumTolerances> tolerances;
  /// Worker threads; results do not depend on this.
  unsigned threads = 1;
};

/// Evaluates one coupling; branch-undefined and solver failures are recorded, not thrown.
SweepRecord evaluate_point(const ModelParams& params, Branch branch,
                           const SpectrumTolerances& tol);

/// One record per grid point in grid order. The grid must be strictly ascending.
std::vector<SweepRecord> sweep(const ModelParams& base, Branch branch,
                               std::span<const double> lambda_grid,
                               const SweepOptions& options = {});

/// steps points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int steps);

struct CriticalPoint {
  Branch branch = Branch::Normal;
  double lambda_c = 0.0;
  std::pair<double, double> bracket;
  double tol = 0.0;
  int iterations = 0;
};

struct BisectionOptions {
  std::optional<SpectrumTolerances> tolerances;
  int max_iterations = 50;
};

/// True when every frequency is real and non-negative (within tolerance).
/// Super-radiant branches are unphysical where their displacements do not exist.
/// Solver failures propagate.
bool physical_at(Branch branch, const ModelParams& params, const SpectrumTolerances& tol);

/// Bisects the physicality predicate of a branch. Throws BracketError when both
/// endpoints agree and NumericFailure when the iteration cap is hit first.
CriticalPoint find_critical(Branch branch, double omega, double omega0,
                            std::pair<double, double> bracket, double tol,
                            const BisectionOptions& options = {});

/// Bisects the onset of complex normal-phase frequencies.
double find_complex_onset(double omega, double omega0, std::pair<double, double> bracket,
                          double tol, const BisectionOptions& options = {});

/// (lambda_c / 2, 2 lambda_c): straddles every branch threshold at resonance.
std::pair<double, double> default_bracket(double omega, double omega0);
/// (lambda_c, 2 lambda_c).
std::pair<double, double> default_onset_bracket(double omega, double omega0);

struct FitResult {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  double max_abs_residual = 0.0;  // in log space
  int n_points = 0;
};

/// Least-squares line through (log x, log y). Needs >= 3 strictly positive points.
FitResult fit_power_law(std::span<const std::pair<double, double>> points);

enum class FitTarget { Gap, Length, OrderParameter };

std::string_view to_string(FitTarget t);
std::optional<FitTarget> parse_fit_target(std::string_view name);

/// Distances |lambda - lambda_c| bounding the sampled region.
struct FitWindow {
  double near = 0.005;
  double far = 0.15;
};

/// Gap/length: below lambda_c, [0.005, 0.15]. Order parameter: above, [1e-4, 1e-2].
FitWindow default_window(FitTarget target);

/// (|lambda - lambda_c|, y) samples, log-spaced in the distance. Gap and length use
/// the smallest normal-phase frequency below lambda_c; the order parameter is
/// sampled above lambda_c.
std::vector<std::pair<double, double>> scaling_points(FitTarget target, double omega,
                                                      double omega0, FitWindow window,
                                                      int n_points);

FitResult fit_exponent(FitTarget target, double omega, double omega0, FitWindow window,
                       int n_points = 41);

/// (lambda, E0/N) at every physical grid point.
std::vector<std::pair<double, double>> energy_density_curve(
    const ModelParams& base, Branch branch, std::span<const double> lambda_grid,
    const SweepOptions& options = {});

struct DerivativeJump {
  double d1_jump = 0.0;
  double d2_jump = 0.0;
};

/// Finite-difference first and second derivatives one step inside each side of
/// lambda_c (left curve must end at lambda_c, right curve start there, both with
/// spacing h); returns right minus left.
DerivativeJump second_derivative_jump(std::span<const std::pair<double, double>> left,
                                      std::span<const std::pair<double, double>> right,
                                      double lambda_c, double h);

}  // namespace gdicke
