#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace gdicke {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Quadratic bosonic Hamiltonian
///
///   H = sum_ij A_ij a_i^+ a_j + 1/2 sum_ij (B_ij a_i^+ a_j^+ + B_ij^* a_i a_j) + c0
///     = 1/2 U^+ M U - 1/2 tr A + c0,   U = (a_1..a_m, a_1^+..a_m^+)^T.
///
/// A must be Hermitian and B symmetric (both m x m, frequency units).
struct QuadraticBosonForm {
  CMatrix a;
  CMatrix b;
  double c0 = 0.0;

  Eigen::Index modes() const { return a.rows(); }
};

/// Throws DimensionMismatch for inconsistent shapes and InvalidArgument when
/// A is not Hermitian or B is not symmetric (relative tolerance 1e-12).
void validate(const QuadraticBosonForm& form);

enum class Stability { AllPositive, HasZero, HasNegative, HasComplex };

std::string_view to_string(Stability s);

/// AllPositive and HasZero are the physically admissible classifications.
inline bool is_physical(Stability s) {
  return s == Stability::AllPositive || s == Stability::HasZero;
}

struct BogoliubovSpectrum {
  /// One frequency per mode, descending real part (ties: descending imaginary part).
  std::vector<cplx> frequencies;
  /// +1 / -1 for the eta-norm sign of the reported eigenvector, 0 for complex or zero modes.
  std::vector<int> krein_signs;
  Stability classification = Stability::AllPositive;
  /// 2m x 2m canonical transformation, filled by diagonalize() for stable forms.
  std::optional<CMatrix> transformation;
};

/// Absolute tolerances used to call a frequency zero or an imaginary part nonzero.
struct SpectrumTolerances {
  double zero = 1e-6;
  double imag = 1e-6;

  /// Relative default: 1e-6 times the largest |M| entry.
  static SpectrumTolerances for_form(const QuadraticBosonForm& form);
  static SpectrumTolerances scaled(double scale, double relative = 1e-6);
};

/// eta = diag(I, -I)
CMatrix eta_metric(Eigen::Index modes);
/// gamma = [[0, I], [I, 0]]
CMatrix swap_metric(Eigen::Index modes);

/// M = [[A, B], [B^*, A^*]].
CMatrix build_m_matrix(const QuadraticBosonForm& form);

struct EigenDecomposition {
  std::vector<cplx> values;
  CMatrix vectors;  // column k belongs to values[k]
};

inline constexpr Eigen::Index kEigenSizeCap = 64;

/// General (non-Hermitian) eigensolver. Real input goes through the real
/// Hessenberg/Francis QR path, complex input through complex Schur. Every
/// returned pair satisfies ||(X - mu) v|| <= 1e-9 ||X|| ||v||.
/// Throws NumericFailure when the QR iteration does not converge within
/// max_iterations (default 40 per row) or a pair fails the residual check.
EigenDecomposition eig_general(const CMatrix& matrix, int max_iterations = 0,
                               Eigen::Index size_cap = kEigenSizeCap);

/// Quasiparticle frequencies of the form from the eigenproblem of eta*M.
/// Eigenvalues are paired as (mu, -mu); for a real pair the member with
/// positive eta-norm (Krein sign) is reported, for a complex pair the member
/// with positive real part (positive imaginary part if purely imaginary).
/// Eigenvalues with |mu| <= tol.zero are snapped to zero and imaginary parts
/// with |Im| <= tol.imag are dropped.
BogoliubovSpectrum bogoliubov_spectrum(const QuadraticBosonForm& form,
                                       const SpectrumTolerances& tol);
BogoliubovSpectrum bogoliubov_spectrum(const QuadraticBosonForm& form);

/// Canonical transformation T with T eta T^+ eta = 1, T^* = gamma T gamma and
/// T (eta M) T^-1 = diag(omega, -omega). Rows follow spectrum.frequencies.
/// Throws ZeroModeUnnormalizable for HasZero and UnstableForm for
/// HasNegative/HasComplex.
CMatrix bogoliubov_transform(const QuadraticBosonForm& form,
                             const BogoliubovSpectrum& spectrum);

/// Spectrum plus transformation when the form is AllPositive.
BogoliubovSpectrum diagonalize(const QuadraticBosonForm& form,
                               const SpectrumTolerances& tol);

/// E0 = 1/2 sum Re(omega_i) - 1/2 Re tr A + c0.
/// Throws UnphysicalPhase unless the spectrum is AllPositive or HasZero.
double ground_energy(const QuadraticBosonForm& form,
                     const BogoliubovSpectrum& spectrum);

}  // namespace gdicke
