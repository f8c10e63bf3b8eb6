#include "gdicke/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gdicke/errors.hpp"

namespace gdicke {

namespace {

// Normalized eta-norms below this are treated as sign-indefinite.
constexpr double kKreinTol = 1e-8;
constexpr double kResidualTol = 1e-9;

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void check_shapes(const QuadraticBosonForm& form) {
  if (form.a.rows() != form.a.cols()) {
    throw DimensionMismatch("A must be square");
  }
  if (form.b.rows() != form.a.rows() || form.b.cols() != form.a.cols()) {
    throw DimensionMismatch("B must have the same shape as A");
  }
  if (form.a.rows() == 0) {
    throw DimensionMismatch("form has no modes");
  }
}

}  // namespace

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::AllPositive: return "AllPositive";
    case Stability::HasZero: return "HasZero";
    case Stability::HasNegative: return "HasNegative";
    case Stability::HasComplex: return "HasComplex";
  }
  return "?";
}

void validate(const QuadraticBosonForm& form) {
  check_shapes(form);
  if (!form.a.allFinite() || !form.b.allFinite() || !std::isfinite(form.c0)) {
    throw InvalidArgument("form has non-finite entries");
  }
  if (max_abs(form.a - form.a.adjoint()) > 1e-12 * max_abs(form.a)) {
    throw InvalidArgument("A is not Hermitian");
  }
  if (max_abs(form.b - form.b.transpose()) > 1e-12 * max_abs(form.b)) {
    throw InvalidArgument("B is not symmetric");
  }
}

SpectrumTolerances SpectrumTolerances::scaled(double scale, double relative) {
  const double s = scale > 0.0 ? scale : 1.0;
  return {relative * s, relative * s};
}

SpectrumTolerances SpectrumTolerances::for_form(const QuadraticBosonForm& form) {
  return scaled(std::max(max_abs(form.a), max_abs(form.b)));
}

CMatrix eta_metric(Eigen::Index modes) {
  CVector d(2 * modes);
  d.head(modes).setOnes();
  d.tail(modes).setConstant(-1.0);
  return d.asDiagonal();
}

CMatrix swap_metric(Eigen::Index modes) {
  CMatrix g = CMatrix::Zero(2 * modes, 2 * modes);
  g.topRightCorner(modes, modes).setIdentity();
  g.bottomLeftCorner(modes, modes).setIdentity();
  return g;
}

CMatrix build_m_matrix(const QuadraticBosonForm& form) {
  check_shapes(form);
  const auto m = form.modes();
  CMatrix out(2 * m, 2 * m);
  out.topLeftCorner(m, m) = form.a;
  out.topRightCorner(m, m) = form.b;
  out.bottomLeftCorner(m, m) = form.b.conjugate();
  out.bottomRightCorner(m, m) = form.a.conjugate();
  return out;
}

EigenDecomposition eig_general(const CMatrix& matrix, int max_iterations,
                               Eigen::Index size_cap) {
  if (matrix.rows() != matrix.cols()) {
    throw DimensionMismatch("eig_general needs a square matrix");
  }
  const auto n = matrix.rows();
  if (n > size_cap) {
    throw InvalidArgument("matrix dimension " + std::to_string(n) +
                          " exceeds eigensolver cap " + std::to_string(size_cap));
  }
  if (!matrix.allFinite()) {
    throw InvalidArgument("matrix has non-finite entries");
  }
  EigenDecomposition out;
  if (n == 0) return out;

  const int iters = max_iterations > 0 ? max_iterations : static_cast<int>(40 * n);
  const bool is_real = matrix.imag().cwiseAbs().maxCoeff() == 0.0;

  CVector values;
  if (is_real) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver;
    solver.setMaxIterations(iters);
    solver.compute(matrix.real(), true);
    if (solver.info() != Eigen::Success) {
      throw NumericFailure("real Schur iteration did not converge", iters);
    }
    values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
  } else {
    Eigen::ComplexEigenSolver<CMatrix> solver;
    solver.setMaxIterations(iters);
    solver.compute(matrix, true);
    if (solver.info() != Eigen::Success) {
      throw NumericFailure("complex Schur iteration did not converge", iters);
    }
    values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
  }

  out.values.assign(values.data(), values.data() + n);
  const double scale = matrix.norm();
  const CMatrix identity = CMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    CVector v = out.vectors.col(k);
    double residual = (matrix * v - out.values[k] * v).norm();
    if (!(residual <= kResidualTol * scale * v.norm())) {
      // Back-substituted vectors are unreliable for defective eigenvalues
      // (Jordan blocks); the smallest right singular vector is not.
      Eigen::JacobiSVD<CMatrix> svd(matrix - out.values[k] * identity, Eigen::ComputeFullV);
      v = svd.matrixV().col(n - 1);
      out.vectors.col(k) = v;
      residual = (matrix * v - out.values[k] * v).norm();
    }
    if (!(residual <= kResidualTol * scale * v.norm())) {
      std::ostringstream msg;
      msg << "eigenpair " << k << " failed residual check (" << residual << ")";
      throw NumericFailure(msg.str(), iters);
    }
  }
  return out;
}

BogoliubovSpectrum bogoliubov_spectrum(const QuadraticBosonForm& form) {
  return bogoliubov_spectrum(form, SpectrumTolerances::for_form(form));
}

BogoliubovSpectrum bogoliubov_spectrum(const QuadraticBosonForm& form,
                                       const SpectrumTolerances& tol) {
  validate(form);
  const auto m = form.modes();
  const auto n = 2 * m;

  CMatrix eta_m = build_m_matrix(form);
  eta_m.bottomRows(m) *= -1.0;
  const EigenDecomposition eig = eig_general(eta_m);
  const auto& mu = eig.values;

  std::vector<double> eta_norm(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto v = eig.vectors.col(k);
    eta_norm[k] = (v.head(m).squaredNorm() - v.tail(m).squaredNorm()) / v.squaredNorm();
  }
  auto is_zero = [&](Eigen::Index k) { return std::abs(mu[k]) <= tol.zero; };

  // Global greedy matching of mu against -mu, best matches first. Inside a
  // degenerate cluster any assignment is acceptable.
  struct Candidate {
    double mismatch;
    Eigen::Index k, l;
  };
  std::vector<Candidate> candidates;
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = k + 1; l < n; ++l) {
      const bool both_zero = is_zero(k) && is_zero(l);
      const double mismatch = both_zero ? 0.0 : std::abs(mu[k] + mu[l]);
      if (both_zero || mismatch <= tol.zero) candidates.push_back({mismatch, k, l});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) { return x.mismatch < y.mismatch; });

  std::vector<bool> used(n, false);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  for (const auto& c : candidates) {
    if (used[c.k] || used[c.l]) continue;
    used[c.k] = used[c.l] = true;
    pairs.emplace_back(c.k, c.l);
  }
  if (static_cast<Eigen::Index>(pairs.size()) != m) {
    std::ostringstream msg;
    msg << "unpaired eigenvalues of eta*M:";
    for (Eigen::Index k = 0; k < n; ++k) {
      if (!used[k]) msg << ' ' << mu[k];
    }
    throw PairingFailure(msg.str());
  }

  struct Mode {
    cplx frequency;
    int krein;
  };
  std::vector<Mode> modes;
  modes.reserve(m);
  for (const auto& [k, l] : pairs) {
    const bool real_pair =
        std::abs(mu[k].imag()) <= tol.imag && std::abs(mu[l].imag()) <= tol.imag;
    if (is_zero(k) && is_zero(l)) {
      modes.push_back({0.0, 0});
    } else if (real_pair) {
      const auto p = eta_norm[k] >= eta_norm[l] ? k : l;
      if (eta_norm[p] > kKreinTol) {
        modes.push_back({mu[p].real(), +1});
      } else {
        // Krein collision: no definite sign, fall back to the positive member.
        const auto q = mu[k].real() >= mu[l].real() ? k : l;
        modes.push_back({mu[q].real(), 0});
      }
    } else {
      Eigen::Index p = mu[k].real() >= mu[l].real() ? k : l;
      if (std::abs(mu[k].real()) <= tol.zero && std::abs(mu[l].real()) <= tol.zero) {
        p = mu[k].imag() >= mu[l].imag() ? k : l;
      }
      modes.push_back({mu[p], 0});
    }
  }

  std::sort(modes.begin(), modes.end(), [](const Mode& x, const Mode& y) {
    if (x.frequency.real() != y.frequency.real()) return x.frequency.real() > y.frequency.real();
    return x.frequency.imag() > y.frequency.imag();
  });

  BogoliubovSpectrum out;
  bool any_complex = false, any_negative = false, any_zero = false;
  for (const auto& mode : modes) {
    out.frequencies.push_back(mode.frequency);
    out.krein_signs.push_back(mode.krein);
    const auto w = mode.frequency;
    if (std::abs(w.imag()) > tol.imag) {
      any_complex = true;
    } else if (std::abs(w) <= tol.zero) {
      any_zero = true;
    } else if (w.real() < -tol.zero) {
      any_negative = true;
    }
  }
  // A negative mode makes the form unphysical even when a zero mode is present.
  if (any_complex) {
    out.classification = Stability::HasComplex;
  } else if (any_negative) {
    out.classification = Stability::HasNegative;
  } else if (any_zero) {
    out.classification = Stability::HasZero;
  } else {
    out.classification = Stability::AllPositive;
  }
  return out;
}

CMatrix bogoliubov_transform(const QuadraticBosonForm& form,
                             const BogoliubovSpectrum& spectrum) {
  switch (spectrum.classification) {
    case Stability::AllPositive: break;
    case Stability::HasZero:
      throw ZeroModeUnnormalizable("zero mode has vanishing eta-norm; T is not normalizable");
    case Stability::HasNegative:
    case Stability::HasComplex:
      throw UnstableForm(std::string("cannot build T for a ") +
                         std::string(to_string(spectrum.classification)) + " spectrum");
  }
  validate(form);
  const auto m = form.modes();
  const CMatrix mm = build_m_matrix(form);

  // Colpa: M = K^+ K, then K eta K^+ is Hermitian with eigenvalues (omega, -omega)
  // and eigenvectors u give eta*M eigenvectors sqrt(omega) K^-1 u with unit eta-norm.
  Eigen::LLT<CMatrix> llt(mm);
  if (llt.info() != Eigen::Success) {
    throw UnstableForm("M is not positive definite");
  }
  const CMatrix k = llt.matrixU();
  const CMatrix eta = eta_metric(m);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(k * eta * k.adjoint());
  if (solver.info() != Eigen::Success) {
    throw NumericFailure("Hermitian eigensolver failed in Colpa step", 0);
  }

  CMatrix positive(2 * m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto idx = 2 * m - 1 - i;  // descending
    const double w = solver.eigenvalues()(idx);
    if (w <= 0.0) throw UnstableForm("non-positive Colpa eigenvalue");
    const CVector u = solver.eigenvectors().col(idx);
    positive.col(i) = std::sqrt(w) * llt.matrixU().solve(u);
  }

  CMatrix w(2 * m, 2 * m);
  w.leftCols(m) = positive;
  w.rightCols(m) = swap_metric(m) * positive.conjugate();
  return eta * w.adjoint() * eta;
}

BogoliubovSpectrum diagonalize(const QuadraticBosonForm& form,
                               const SpectrumTolerances& tol) {
  auto spectrum = bogoliubov_spectrum(form, tol);
  if (spectrum.classification == Stability::AllPositive) {
    spectrum.transformation = bogoliubov_transform(form, spectrum);
  }
  return spectrum;
}

double ground_energy(const QuadraticBosonForm& form, const BogoliubovSpectrum& spectrum) {
  if (!is_physical(spectrum.classification)) {
    throw UnphysicalPhase(std::string("ground energy undefined for a ") +
                          std::string(to_string(spectrum.classification)) + " spectrum");
  }
  const double sum = std::accumulate(
      spectrum.frequencies.begin(), spectrum.frequencies.end(), 0.0,
      [](double acc, cplx w) { return acc + w.real(); });
  return 0.5 * sum - 0.5 * form.a.trace().real() + form.c0;
}

}  // namespace gdicke
