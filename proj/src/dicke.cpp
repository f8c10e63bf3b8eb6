#include "gdicke/dicke.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gdicke/errors.hpp"

namespace gdicke {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative slack on the existence condition 4 lambda^4 >= omega^2 omega0^2, so
// that lambda = sqrt(omega omega0 / 2) evaluated in floating point is accepted.
constexpr double kThresholdSlack = 1e-12;

double ratio_over(double num, double den) { return den > 0.0 ? num / den : -kInf; }

QuadraticBosonForm make_form(const std::array<std::array<double, 3>, 3>& a,
                             const std::array<std::array<double, 3>, 3>& b, double c0) {
  QuadraticBosonForm form;
  form.a.resize(3, 3);
  form.b.resize(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      form.a(i, j) = a[i][j];
      form.b(i, j) = b[i][j];
    }
  }
  form.c0 = c0;
  return form;
}

}  // namespace

void ModelParams::validate() const {
  if (!(omega > 0.0) || !(omega0 > 0.0)) {
    throw InvalidArgument("omega and omega0 must be positive");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be finite and non-negative");
  }
  if (!(n_atoms > 0.0) || !std::isfinite(n_atoms)) {
    throw InvalidArgument("n_atoms must be finite and positive");
  }
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::Normal: return "normal";
    case Branch::Sr1: return "sr1";
    case Branch::Sr2: return "sr2";
    case Branch::Sr3: return "sr3";
    case Branch::Sr4: return "sr4";
  }
  return "?";
}

std::optional<Branch> parse_branch(std::string_view name) {
  for (auto b : kAllBranches) {
    if (to_string(b) == name) return b;
  }
  return std::nullopt;
}

double critical_coupling(double omega, double omega0) {
  return std::sqrt(omega * omega0 / 2.0);
}

QuadraticBosonForm normal_form(const ModelParams& p) {
  p.validate();
  const double w = p.omega, w0 = p.omega0, l = p.lambda;
  return make_form({{{w, l, 0}, {l, w0, 0}, {0, 0, w0}}},
                   {{{0, 0, l}, {0, 0, 0}, {l, 0, 0}}}, 0.0);
}

BranchCoefficients branch_coefficients(const ModelParams& p, Branch branch) {
  p.validate();
  if (branch == Branch::Normal) {
    throw InvalidArgument("branch_coefficients needs a super-radiant branch");
  }
  const double w = p.omega, w0 = p.omega0, l = p.lambda, n = p.n_atoms;
  const double r = l > 0.0 ? w * w0 / (2.0 * l * l) : kInf;
  if (r > 1.0 + kThresholdSlack) {
    throw DisplacementUndefined("lambda = " + std::to_string(l) +
                                " is below the super-radiant threshold " +
                                std::to_string(critical_coupling(w, w0)));
  }

  BranchCoefficients c;
  c.x_plus = 0.5 * n * (1.0 + r);
  c.x_minus = std::max(0.0, 0.5 * n * (1.0 - r));
  const double xp = c.x_plus, xm = c.x_minus;

  c.alpha = (2.0 * l / w) * std::sqrt(xp * xm / n);
  switch (branch) {
    case Branch::Sr1: c.beta = std::sqrt(xm); c.gamma = std::sqrt(xm); break;
    case Branch::Sr2: c.beta = std::sqrt(xp); c.gamma = std::sqrt(xm); break;
    case Branch::Sr3: c.beta = std::sqrt(xp); c.gamma = std::sqrt(xp); break;
    case Branch::Sr4: c.beta = std::sqrt(xm); c.gamma = std::sqrt(xp); break;
    case Branch::Normal: break;
  }
  c.k_e = n - c.beta * c.beta;
  c.k_f = n - c.gamma * c.gamma;
  c.omega_e = w0 + (c.k_e > 0.0 ? l * c.alpha * c.beta / std::sqrt(n * c.k_e) : kInf);
  c.omega_f = w0 + (c.k_f > 0.0 ? l * c.alpha * c.gamma / std::sqrt(n * c.k_f) : kInf);

  c.omega_plus = w0 + 4.0 * l * l * xp / (n * w);
  c.omega_minus = w0 + 4.0 * l * l * xm / (n * w);
  c.b_plus = 2.0 * l * l * xp / (n * w);
  c.b_minus = 2.0 * l * l * xm / (n * w);
  c.a_plus = ratio_over(l * (xm - xp / 2.0), std::sqrt(n * xm));
  c.a_minus = l * (xp - xm / 2.0) / std::sqrt(n * xp);
  c.c_plus = ratio_over(-l * xp / 2.0, std::sqrt(n * xm));
  c.c_minus = -l * xm / (2.0 * std::sqrt(n * xp));

  c.c0 = w * c.alpha * c.alpha + w0 * (c.beta * c.beta + c.gamma * c.gamma) -
         (2.0 * l * c.alpha / std::sqrt(n)) *
             (c.beta * std::sqrt(std::max(0.0, c.k_e)) + c.gamma * std::sqrt(std::max(0.0, c.k_f)));
  return c;
}

QuadraticBosonForm superradiant_form(const ModelParams& p, Branch branch) {
  const auto c = branch_coefficients(p, branch);
  if (branch != Branch::Sr1 && c.x_minus == 0.0) {
    throw DisplacementUndefined(std::string(to_string(branch)) +
                                " coefficients diverge at the threshold (X_- = 0)");
  }
  const double w = p.omega;
  switch (branch) {
    case Branch::Sr1:
      return make_form({{{w, c.a_minus, c.c_minus}, {c.a_minus, c.omega_minus, 0}, {c.c_minus, 0, c.omega_minus}}},
                       {{{0, c.c_minus, c.a_minus}, {c.c_minus, c.b_minus, 0}, {c.a_minus, 0, c.b_minus}}}, c.c0);
    case Branch::Sr3:
      return make_form({{{w, c.a_plus, c.c_plus}, {c.a_plus, c.omega_plus, 0}, {c.c_plus, 0, c.omega_plus}}},
                       {{{0, c.c_plus, c.a_plus}, {c.c_plus, c.b_plus, 0}, {c.a_plus, 0, c.b_plus}}}, c.c0);
    case Branch::Sr2:
      return make_form({{{w, c.a_plus, c.c_minus}, {c.a_plus, c.omega_plus, 0}, {c.c_minus, 0, c.omega_minus}}},
                       {{{0, c.c_plus, c.a_minus}, {c.c_plus, c.b_plus, 0}, {c.a_minus, 0, c.b_minus}}}, c.c0);
    case Branch::Sr4:
      return make_form({{{w, c.a_minus, c.c_plus}, {c.a_minus, c.omega_minus, 0}, {c.c_plus, 0, c.omega_plus}}},
                       {{{0, c.c_minus, c.a_plus}, {c.c_minus, c.b_minus, 0}, {c.a_plus, 0, c.b_plus}}}, c.c0);
    case Branch::Normal: break;
  }
  throw InvalidArgument("superradiant_form needs a super-radiant branch");
}

QuadraticBosonForm effective_form(const ModelParams& params, Branch branch) {
  return branch == Branch::Normal ? normal_form(params) : superradiant_form(params, branch);
}

double classical_energy(const ModelParams& p, double a, double b, double c) {
  p.validate();
  const double n = p.n_atoms;
  if (b * b > n || c * c > n) {
    throw DomainError("displacements must satisfy b^2 <= N and c^2 <= N");
  }
  return p.omega * a * a + p.omega0 * (b * b + c * c) -
         (2.0 * p.lambda * a / std::sqrt(n)) *
             (b * std::sqrt(n - b * b) + c * std::sqrt(n - c * c));
}

double order_parameter(const ModelParams& p) {
  p.validate();
  if (p.lambda < critical_coupling(p.omega, p.omega0)) return 0.0;
  const double l2 = p.lambda * p.lambda;
  const double r = p.omega * p.omega0 / (2.0 * l2);
  return std::max(0.0, (l2 / (p.omega * p.omega)) * (1.0 - r * r));
}

}  // namespace gdicke
