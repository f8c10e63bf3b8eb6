#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/SparseCore>

#include "gdicke/bogoliubov.hpp"

namespace gdicke {

using SparseHamiltonian = Eigen::SparseMatrix<cplx>;

inline constexpr std::size_t kDefaultDimensionCap = 20000;

/// Truncated-Fock basis for an m-mode form. Basis states are ordered row-major
/// in the occupations with mode 0 slowest.
struct FockSpec {
  std::vector<int> cutoffs;          // maximum occupation per mode
  std::vector<double> displacement;  // optional: expand around a_i -> a_i + s_i
  std::size_t dimension_cap = kDefaultDimensionCap;

  std::size_t dimension() const;
};

/// Ensemble of two-level atoms at phases k*r_j. Basis: photon number slowest,
/// then atomic configurations with bit j set when atom j is excited.
struct SpinEnsemble {
  int n_atoms = 1;
  std::vector<double> phases;
  int photon_cutoff = 1;

  void validate() const;

  /// Phases drawn uniformly from [0, 2 pi) with a fixed seed.
  static SpinEnsemble random(int n_atoms, int photon_cutoff, std::uint64_t seed);
  /// Phases 0, spacing, 2 spacing, ...
  static SpinEnsemble evenly_spaced(int n_atoms, int photon_cutoff, double spacing);
};

/// H = sum A_ij a_i^+ a_j + 1/2 sum (B_ij a_i^+ a_j^+ + h.c.) + c0 restricted to the
/// truncated basis (equal to P H P, so ground energies are variational).
/// Throws ResourceError when the dimension exceeds spec.dimension_cap.
SparseHamiltonian fock_hamiltonian(const QuadraticBosonForm& form, const FockSpec& spec);

/// k lowest eigenvalues (ascending) of fock_hamiltonian.
std::vector<double> fock_ed(const QuadraticBosonForm& form, const FockSpec& spec, int k_lowest);

/// Full spin-boson Hamiltonian with counter-rotating terms:
///   omega a^+ a + omega0 sum sigma_ee + lambda/sqrt(N) sum (a^+ e^{-i k r_j} + a e^{i k r_j}) sigma_x^(j).
SparseHamiltonian spin_hamiltonian(double omega, double omega0, double lambda,
                                   const SpinEnsemble& ensemble,
                                   std::size_t dimension_cap = kDefaultDimensionCap);

std::vector<double> spin_ed(double omega, double omega0, double lambda,
                            const SpinEnsemble& ensemble, int k_lowest,
                            std::size_t dimension_cap = kDefaultDimensionCap);

/// k lowest eigenvalues of a Hermitian sparse matrix, diagonalizing each
/// connected block (conserved-quantity sector) densely.
std::vector<double> lowest_eigenvalues(const SparseHamiltonian& h, int k_lowest);

struct CommutatorExpectations {
  cplx bb_dag;  // <G| [B, B^+] |G>
  cplx bc_dag;  // <G| [B, C^+] |G>
};

/// All-ground-state expectations of the collective-operator commutators, built
/// site by site from sigma_ge / sigma_eg.
CommutatorExpectations collective_commutators(const SpinEnsemble& ensemble);

}  // namespace gdicke
