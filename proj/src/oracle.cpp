#include "gdicke/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "gdicke/errors.hpp"

namespace gdicke {

namespace {

constexpr int kMaxSpinAtoms = 8;

using Triplet = Eigen::Triplet<cplx>;

void check_cap(std::size_t dim, std::size_t cap) {
  if (dim > cap) {
    throw ResourceError("Hilbert dimension " + std::to_string(dim) + " exceeds cap " +
                        std::to_string(cap));
  }
}

// Truncated a_i + s_i on the product basis.
SparseHamiltonian ladder(const std::vector<int>& cutoffs, std::size_t mode, double shift) {
  std::size_t dim = 1;
  for (int c : cutoffs) dim *= static_cast<std::size_t>(c + 1);
  std::size_t stride = 1;
  for (std::size_t j = mode + 1; j < cutoffs.size(); ++j) stride *= static_cast<std::size_t>(cutoffs[j] + 1);
  const auto d = static_cast<std::size_t>(cutoffs[mode] + 1);

  std::vector<Triplet> t;
  t.reserve(2 * dim);
  for (std::size_t s = 0; s < dim; ++s) {
    const auto n = (s / stride) % d;
    if (n > 0) t.emplace_back(s - stride, s, std::sqrt(static_cast<double>(n)));
    if (shift != 0.0) t.emplace_back(s, s, shift);
  }
  SparseHamiltonian op(dim, dim);
  op.setFromTriplets(t.begin(), t.end());
  return op;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::size_t FockSpec::dimension() const {
  std::size_t dim = 1;
  for (int c : cutoffs) {
    if (c < 1) throw InvalidArgument("Fock cutoffs must be >= 1");
    dim *= static_cast<std::size_t>(c + 1);
    if (dim > (std::size_t{1} << 40)) break;
  }
  return dim;
}

void SpinEnsemble::validate() const {
  if (n_atoms < 1) throw InvalidArgument("ensemble needs at least one atom");
  if (static_cast<int>(phases.size()) != n_atoms) {
    throw InvalidArgument("ensemble phases must have one entry per atom");
  }
  if (photon_cutoff < 1) throw InvalidArgument("photon cutoff must be >= 1");
}

SpinEnsemble SpinEnsemble::random(int n_atoms, int photon_cutoff, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  SpinEnsemble e{n_atoms, {}, photon_cutoff};
  for (int j = 0; j < n_atoms; ++j) e.phases.push_back(phase(rng));
  return e;
}

SpinEnsemble SpinEnsemble::evenly_spaced(int n_atoms, int photon_cutoff, double spacing) {
  SpinEnsemble e{n_atoms, {}, photon_cutoff};
  for (int j = 0; j < n_atoms; ++j) e.phases.push_back(spacing * j);
  return e;
}

SparseHamiltonian fock_hamiltonian(const QuadraticBosonForm& form, const FockSpec& spec) {
  validate(form);
  const auto m = static_cast<std::size_t>(form.modes());
  if (spec.cutoffs.size() != m) {
    throw DimensionMismatch("FockSpec needs one cutoff per mode");
  }
  if (!spec.displacement.empty() && spec.displacement.size() != m) {
    throw DimensionMismatch("FockSpec displacement needs one entry per mode");
  }
  const std::size_t dim = spec.dimension();
  check_cap(dim, spec.dimension_cap);

  std::vector<SparseHamiltonian> lower(m), raise(m);
  for (std::size_t i = 0; i < m; ++i) {
    lower[i] = ladder(spec.cutoffs, i, spec.displacement.empty() ? 0.0 : spec.displacement[i]);
    raise[i] = lower[i].adjoint();
  }

  SparseHamiltonian h(dim, dim);
  SparseHamiltonian identity(dim, dim);
  identity.setIdentity();
  h = form.c0 * identity;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const cplx aij = form.a(i, j), bij = form.b(i, j);
      if (aij != 0.0) h += aij * (raise[i] * lower[j]);
      if (bij != 0.0) {
        h += (0.5 * bij) * (raise[i] * raise[j]);
        h += (0.5 * std::conj(bij)) * (lower[i] * lower[j]);
      }
    }
  }
  h.prune(cplx(0.0));
  h.makeCompressed();
  return h;
}

std::vector<double> lowest_eigenvalues(const SparseHamiltonian& h, int k_lowest) {
  const auto dim = static_cast<std::size_t>(h.rows());
  DisjointSets sets(dim);
  for (Eigen::Index col = 0; col < h.outerSize(); ++col) {
    for (SparseHamiltonian::InnerIterator it(h, col); it; ++it) {
      if (it.value() != 0.0) sets.unite(static_cast<std::size_t>(it.row()), static_cast<std::size_t>(col));
    }
  }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::ptrdiff_t> block_of_root(dim, -1);
  std::vector<std::size_t> local(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    const auto r = sets.find(s);
    if (block_of_root[r] < 0) {
      block_of_root[r] = static_cast<std::ptrdiff_t>(blocks.size());
      blocks.emplace_back();
    }
    auto& b = blocks[block_of_root[r]];
    local[s] = b.size();
    b.push_back(s);
  }

  std::vector<double> levels;
  for (const auto& block : blocks) {
    const auto n = static_cast<Eigen::Index>(block.size());
    CMatrix dense = CMatrix::Zero(n, n);
    for (auto s : block) {
      for (SparseHamiltonian::InnerIterator it(h, static_cast<Eigen::Index>(s)); it; ++it) {
        dense(local[it.row()], local[s]) = it.value();
      }
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(dense, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericFailure("dense Hermitian eigensolver failed", 0);
    }
    const auto& ev = solver.eigenvalues();
    const auto take = std::min<Eigen::Index>(n, k_lowest);
    levels.insert(levels.end(), ev.data(), ev.data() + take);
  }
  std::sort(levels.begin(), levels.end());
  if (static_cast<int>(levels.size()) > k_lowest) levels.resize(std::max(0, k_lowest));
  return levels;
}

std::vector<double> fock_ed(const QuadraticBosonForm& form, const FockSpec& spec, int k_lowest) {
  return lowest_eigenvalues(fock_hamiltonian(form, spec), k_lowest);
}

SparseHamiltonian spin_hamiltonian(double omega, double omega0, double lambda,
                                   const SpinEnsemble& ensemble, std::size_t dimension_cap) {
  ensemble.validate();
  if (ensemble.n_atoms > kMaxSpinAtoms) {
    throw ResourceError("spin oracle is limited to " + std::to_string(kMaxSpinAtoms) + " atoms");
  }
  const std::size_t configs = std::size_t{1} << ensemble.n_atoms;
  const auto photons = static_cast<std::size_t>(ensemble.photon_cutoff + 1);
  const std::size_t dim = configs * photons;
  check_cap(dim, dimension_cap);

  const double g = lambda / std::sqrt(static_cast<double>(ensemble.n_atoms));
  std::vector<Triplet> t;
  t.reserve(dim * (1 + 2 * ensemble.n_atoms));
  for (std::size_t n = 0; n < photons; ++n) {
    for (std::size_t conf = 0; conf < configs; ++conf) {
      const std::size_t s = n * configs + conf;
      const double diag = omega * static_cast<double>(n) +
                          omega0 * static_cast<double>(std::popcount(conf));
      t.emplace_back(s, s, diag);
      if (g == 0.0 || n + 1 >= photons) continue;
      const double amp = g * std::sqrt(static_cast<double>(n + 1));
      for (int j = 0; j < ensemble.n_atoms; ++j) {
        const std::size_t target = (n + 1) * configs + (conf ^ (std::size_t{1} << j));
        const cplx v = amp * std::polar(1.0, -ensemble.phases[j]);  // a^+ e^{-i k r_j} sigma_x
        t.emplace_back(target, s, v);
        t.emplace_back(s, target, std::conj(v));
      }
    }
  }
  SparseHamiltonian h(dim, dim);
  h.setFromTriplets(t.begin(), t.end());
  return h;
}

std::vector<double> spin_ed(double omega, double omega0, double lambda,
                            const SpinEnsemble& ensemble, int k_lowest,
                            std::size_t dimension_cap) {
  return lowest_eigenvalues(spin_hamiltonian(omega, omega0, lambda, ensemble, dimension_cap),
                            k_lowest);
}

CommutatorExpectations collective_commutators(const SpinEnsemble& ensemble) {
  ensemble.validate();
  // Single-site basis (|g>, |e>).
  Eigen::Matrix2cd sigma_ge, sigma_eg;
  sigma_ge << 0, 1, 0, 0;
  sigma_eg << 0, 0, 1, 0;
  const cplx site_comm = (sigma_ge * sigma_eg - sigma_eg * sigma_ge)(0, 0);

  // B = N^{-1/2} sum sigma_ge e^{-i k r_j}, B^+ = N^{-1/2} sum sigma_eg e^{i k r_j},
  // C^+ = N^{-1/2} sum sigma_eg e^{-i k r_j}; operators on different sites commute.
  const double n = ensemble.n_atoms;
  CommutatorExpectations out{0.0, 0.0};
  for (double phase : ensemble.phases) {
    const cplx b_coeff = std::polar(1.0, -phase);
    out.bb_dag += b_coeff * std::polar(1.0, phase) * site_comm;
    out.bc_dag += b_coeff * std::polar(1.0, -phase) * site_comm;
  }
  out.bb_dag /= n;
  out.bc_dag /= n;
  return out;
}

}  // namespace gdicke
