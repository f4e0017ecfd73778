#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qlogic/bohr.hpp"
#include "qlogic/context.hpp"

namespace qlogic {

/// A context poset seen as a block family: the host is the finite set of
/// projections occurring in some context, each context contributes the block
/// of its atom sums. Section operations then come from the block layer.
class BohrImage {
 public:
  /// Host labels: "0", "1", or "<context>{i,j}" naming the first context
  /// and atom indices that produce the projection.
  explicit BohrImage(ContextPoset poset, const Tolerances& tol = {});

  const ContextPoset& poset() const noexcept { return poset_; }
  const BlockPosetPtr& blocks() const noexcept { return blocks_; }
  const OrthoPoset& host() const { return blocks_->host(); }
  const MatProjection& projection(ElementId x) const { return projections_.at(x); }
  std::size_t host_size() const noexcept { return projections_.size(); }
  /// Host element of the atom sum `m` in context i.
  ElementId element(std::size_t i, AtomMask m) const;
  /// Atom set of a host element inside context i (it must lie there).
  AtomMask atoms_of(std::size_t i, ElementId x) const;

 private:
  ContextPoset poset_;
  std::vector<MatProjection> projections_;
  std::vector<std::vector<ElementId>> element_;               // [context][mask]
  std::vector<std::unordered_map<ElementId, AtomMask>> mask_;  // [context][element]
  BlockPosetPtr blocks_;
};

using BohrImagePtr = std::shared_ptr<const BohrImage>;

/// Trace-one positive semidefinite matrix.
class DensityState {
 public:
  /// Throws InvalidState (not hermitian, negative eigenvalue below -1e-9, or
  /// trace off by more than 1e-9).
  static DensityState from_matrix(Matrix rho, const Tolerances& tol = {});
  /// Pure state |v><v| for a nonzero vector.
  static DensityState pure(const Eigen::VectorXcd& v);

  Eigen::Index dim() const noexcept { return rho_.rows(); }
  const Matrix& rho() const noexcept { return rho_; }
  /// tr(rho p), real part.
  double expectation(const Matrix& p) const;

 private:
  explicit DensityState(Matrix rho) : rho_(std::move(rho)) {}
  Matrix rho_;
};

/// S_p(C) = p when p is a projection of C, else 0.
Section daseinise(const MatProjection& p, const BohrImage& image, const Tolerances& tol = {});

struct ContextSet {
  ElementSet contexts;    // indexed like the poset
  bool upward_closed = false;
};

/// {C : tr(rho S(C)) >= 1 - tol.val}, with the upward closure verified.
ContextSet kripke_valuation(const DensityState& psi, const Section& S, const BohrImage& image,
                            const Tolerances& tol = {});
/// tr(rho p) >= 1 - tol.val.
bool classical_truth(const DensityState& psi, const MatProjection& p, const Tolerances& tol = {});

/// A member of the external spectrum: a set of atoms per context, closed
/// under refinement.
using SpectrumMember = std::vector<AtomMask>;

class ExternalSpectrum {
 public:
  BohrImagePtr image;
  std::vector<SpectrumMember> members;  // ascending

  std::size_t size() const noexcept { return members.size(); }
  std::optional<std::size_t> index_of(const SpectrumMember& m) const;
  /// Refinement-closed: atoms of D under a selected atom of C <= D are selected.
  bool is_member(const SpectrumMember& m) const;
  static bool leq(const SpectrumMember& a, const SpectrumMember& b);
  /// Pointwise inclusion order as a lattice.
  FiniteOrtholattice order_lattice() const;
  /// Basis map: a monotone projection family goes to its atom supports.
  SpectrumMember basis(const Section& s) const;
  /// Inverse of the basis map.
  Section section_of(const SpectrumMember& m) const;
};

/// Enumerates all members (capped by budget). Throws BudgetExceeded.
ExternalSpectrum external_spectrum(BohrImagePtr image, std::size_t budget = kDefaultBudget);

struct DensityReport {
  std::size_t sections = 0;
  std::size_t members = 0;
  bool basis_in_frame = true;  // every f(S) is a member
  bool injective = true;
  bool dense = true;           // every member is the union of basis members below it
  std::vector<std::string> witness;
  bool pass() const { return basis_in_frame && injective && dense; }
};

/// Exhaustive check of the basis claim: needs the section algebra enumerated.
DensityReport check_density(const ExternalSpectrum& X, const BohrAlgebra& Y);

struct BridgeReport {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  std::vector<std::vector<double>> atom_measures;  // [context][atom]
  bool pass() const { return failures.empty(); }
};

/// Measure mu(p) = tr(rho p) on every block: normalization, positivity,
/// monotonicity, the modular law, finite additivity. With a spectrum, also
/// the per-context valuations nu_C(U) = mu(join U(C)) on members:
/// monotone, modular, and preserving joins of comparable pairs.
BridgeReport measure_valuation_bridge(const DensityState& psi, const BohrImage& image,
                                      const ExternalSpectrum* spectrum = nullptr,
                                      const Tolerances& tol = {});

/// {C : tr(rho join U(C)) >= 1 - tol.val}.
ContextSet pairing(const DensityState& psi, const SpectrumMember& U, const BohrImage& image,
                   const Tolerances& tol = {});

}  // namespace qlogic
