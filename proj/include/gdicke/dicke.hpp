#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "gdicke/bogoliubov.hpp"

namespace gdicke {

/// Physical inputs of the spatially extended Dicke model (hbar = 1).
struct ModelParams {
  double omega = 1.0;    // field frequency
  double omega0 = 1.0;   // atomic level splitting
  double lambda = 0.0;   // coupling
  double n_atoms = 1e6;  // N; only X/N ratios and the extensive offset depend on it

  /// Throws InvalidArgument unless omega, omega0, n_atoms > 0 and lambda >= 0.
  void validate() const;
};

enum class Branch { Normal, Sr1, Sr2, Sr3, Sr4 };

inline constexpr std::array<Branch, 5> kAllBranches = {
    Branch::Normal, Branch::Sr1, Branch::Sr2, Branch::Sr3, Branch::Sr4};
inline constexpr std::array<Branch, 4> kSuperradiantBranches = {
    Branch::Sr1, Branch::Sr2, Branch::Sr3, Branch::Sr4};

std::string_view to_string(Branch b);
std::optional<Branch> parse_branch(std::string_view name);

/// sqrt(omega * omega0 / 2): normal-phase instability and super-radiant threshold.
double critical_coupling(double omega, double omega0);

/// Super-radiant mean fields and effective-Hamiltonian coefficients at phase 0.
struct BranchCoefficients {
  double x_plus = 0, x_minus = 0;
  double alpha = 0, beta = 0, gamma = 0;
  double k_e = 0, k_f = 0;
  double omega_e = 0, omega_f = 0;
  double omega_plus = 0, omega_minus = 0;
  double a_plus = 0, a_minus = 0;
  double b_plus = 0, b_minus = 0;
  double c_plus = 0, c_minus = 0;
  double c0 = 0;
};

/// Three-mode (a, b, c) normal-phase form; c0 = 0.
QuadraticBosonForm normal_form(const ModelParams& params);

/// Throws DisplacementUndefined for lambda below critical_coupling, and
/// InvalidArgument for Branch::Normal.
BranchCoefficients branch_coefficients(const ModelParams& params, Branch branch);

/// Three-mode (d, e, f) form of a super-radiant branch with c0 from the
/// displacement energy. At exactly lambda = lambda_c only Sr1 is defined
/// (the other branches divide by X_-).
QuadraticBosonForm superradiant_form(const ModelParams& params, Branch branch);

/// normal_form or superradiant_form depending on the branch.
QuadraticBosonForm effective_form(const ModelParams& params, Branch branch);

/// Mean-field energy of real displacements (a, b, c):
///   omega a^2 + omega0 (b^2 + c^2) - 2 lambda a / sqrt(N) (b sqrt(N - b^2) + c sqrt(N - c^2)).
/// Throws DomainError unless b^2 <= N and c^2 <= N.
double classical_energy(const ModelParams& params, double a, double b, double c);

/// <a^+ a> / N in the ground state: zero below lambda_c, |alpha|^2 / N above.
double order_parameter(const ModelParams& params);

}  // namespace gdicke
