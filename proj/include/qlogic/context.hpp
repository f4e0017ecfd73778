#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlogic/lattice.hpp"
#include "qlogic/projection.hpp"

namespace qlogic {

/// Subset of the atoms of one context, bit k = atom k.
using AtomMask = std::uint64_t;

/// Commutative unital subalgebra of M_n, given by its atoms (pairwise
/// orthogonal projections summing to 1). Its projections are the atom sums.
class Context {
 public:
  /// Throws NotOrthogonal, ToleranceViolated (atoms do not sum to 1),
  /// DimMismatch.
  static Context from_atoms(std::vector<MatProjection> atoms, const Tolerances& tol = {});
  static Context trivial(Eigen::Index n);

  Eigen::Index dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  const std::vector<MatProjection>& atoms() const noexcept { return atoms_; }
  const MatProjection& atom(std::size_t k) const { return atoms_.at(k); }
  AtomMask full() const { return size() == 64 ? ~AtomMask{0} : (AtomMask{1} << size()) - 1; }

  Matrix projection(AtomMask s) const;
  /// Coefficients lambda_k = tr(a e_k) / tr(e_k); a lies in the context iff
  /// a equals sum lambda_k e_k.
  Eigen::VectorXcd coefficients(const Matrix& a) const;
  bool contains(const Matrix& a, double tol) const;
  /// The atom set whose sum is p, if p is a projection of this context.
  std::optional<AtomMask> decompose(const Matrix& p, double tol) const;

 private:
  Context(std::vector<MatProjection> atoms, Eigen::Index dim)
      : atoms_(std::move(atoms)), dim_(dim) {}
  std::vector<MatProjection> atoms_;
  Eigen::Index dim_ = 0;
};

/// Context generated by commuting projections: atoms are the nonzero
/// products of p_i or 1 - p_i. Throws NotCommuting, DimMismatch.
Context context_generate(const std::vector<MatProjection>& projs, Eigen::Index dim,
                         const Tolerances& tol = {});

/// C <= D iff every atom of C is a sum of atoms of D.
bool refines(const Context& C, const Context& D, const Tolerances& tol = {});
bool same_context(const Context& C, const Context& D, const Tolerances& tol = {});
/// Largest common subalgebra: atoms are the classes of C-atoms and D-atoms
/// linked by a nonzero product.
Context context_intersection(const Context& C, const Context& D, const Tolerances& tol = {});

class ContextPoset {
 public:
  /// Adds the trivial context (named "trivial"), drops duplicates (the first
  /// name wins) and optionally closes under intersection. Contexts are sorted
  /// by atom count. Throws DimMismatch.
  static ContextPoset build(std::vector<Context> contexts, std::vector<std::string> names,
                            bool close_under_meet, const Tolerances& tol = {});
  /// The one-element poset {C}.
  static ContextPoset single(Context C, std::string name = "C");

  std::size_t size() const noexcept { return contexts_.size(); }
  Eigen::Index dim() const { return contexts_.front().dim(); }
  const Context& context(std::size_t i) const { return contexts_.at(i); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;
  bool leq(std::size_t i, std::size_t j) const { return up_[i].test(j); }
  const ElementSet& up(std::size_t i) const { return up_[i]; }
  std::size_t bottom() const noexcept { return bottom_; }
  /// Atoms of context j lying under atom k of context i (requires i <= j).
  AtomMask atoms_under(std::size_t i, std::size_t j, std::size_t k) const;

 private:
  void finish(const Tolerances& tol);

  std::vector<Context> contexts_;
  std::vector<std::string> names_;
  std::vector<ElementSet> up_;
  std::vector<std::vector<std::vector<AtomMask>>> under_;
  std::size_t bottom_ = 0;
};

struct RelativeRickartReport {
  MatProjection rp_matrix;           // from the singular value decomposition
  AtomMask in_D = 0;                 // support of x among the D-atoms
  std::optional<AtomMask> in_C;      // the same projection as C-atoms, if possible
  bool matches_matrix = false;       // D-atom sum equals rp_matrix
  bool lies_in_C() const { return in_C.has_value(); }
};

/// RP[x] computed inside D and re-expressed in C. Throws
/// PreconditionViolated unless C <= D and x lies in C.
RelativeRickartReport relative_rickart_check(const Matrix& x, const Context& C,
                                             const Context& D, const Tolerances& tol = {});

/// Atoms where the positive part of a is nonzero. Throws NotInContext.
AtomMask spectrum_basis(const Matrix& a, const Context& C, const Tolerances& tol = {});

struct RelationCheck {
  std::string name;
  bool pass = true;
  bool applicable = true;
};

struct RelationReport {
  std::vector<RelationCheck> checks;
  bool all_pass() const;
};

/// The spectrum relations for hermitian a, b in C, the pseudocomplement law
/// ~D(a) = D([a+ = 0]), regularity over a finite grid below the smallest
/// positive eigenvalue, and the multiplication lemma (a <= ab implies
/// D(a) <= D(b), when the premise holds).
RelationReport spectrum_relations(const Matrix& a, const Matrix& b, const Context& C,
                                  const Tolerances& tol = {});

struct SupportClauses {
  MatProjection from_positive;  // [a>0] from the spectrum
  MatProjection from_kernel;    // 1 - [a+ = 0]
  bool times_a_is_positive_part = false;  // [a>0] a = a+
  bool disjoint_from_negative = false;    // [a>0] ^ [-a>0] = 0
  bool kernel_annihilates = false;        // a+ [a+=0] = 0
  bool kernel_is_largest = false;         // a+ b = 0 implies b = b [a+=0], b atom sums
  bool agree = false;
  bool all() const {
    return times_a_is_positive_part && disjoint_from_negative && kernel_annihilates &&
           kernel_is_largest && agree;
  }
};

/// Equivalent characterizations of the support projection of a hermitian
/// element of a context. Throws NotInContext.
SupportClauses support_clauses(const Matrix& a, const Context& C, const Tolerances& tol = {});

}  // namespace qlogic
