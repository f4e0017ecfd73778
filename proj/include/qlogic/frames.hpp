#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qlogic/lattice.hpp"

namespace qlogic {

/// A family of downsets of a base lattice, ordered by inclusion. The
/// inclusion order is also materialized as a lattice when it is one.
class DownsetFrame {
 public:
  /// Members are checked to be downsets, deduplicated and sorted
  /// canonically. Throws PreconditionViolated.
  DownsetFrame(LatticePtr base, std::vector<ElementSet> members, std::string kind);

  const FiniteOrtholattice& base() const noexcept { return *base_; }
  const LatticePtr& base_ptr() const noexcept { return base_; }
  const std::string& kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<ElementSet>& members() const noexcept { return members_; }
  const ElementSet& member(std::size_t i) const { return members_.at(i); }
  std::optional<std::size_t> index_of(const ElementSet& s) const;
  bool leq(std::size_t i, std::size_t j) const {
    return members_[i].is_subset_of(members_[j]);
  }

  /// Inclusion order as a lattice; empty when some pair lacks a meet or join.
  const std::optional<FiniteOrtholattice>& order() const noexcept { return order_; }
  /// Why the inclusion order is not a lattice (empty when it is).
  const std::string& order_failure() const noexcept { return order_failure_; }

 private:
  LatticePtr base_;
  std::string kind_;
  std::vector<ElementSet> members_;
  std::optional<FiniteOrtholattice> order_;
  std::string order_failure_;
};

/// Inclusion order of arbitrary sets as a lattice (labels from `label`).
/// Throws NotALattice.
FiniteOrtholattice inclusion_lattice(const std::vector<ElementSet>& sets,
                                     const std::vector<std::string>& labels);

struct IdealCompletion {
  DownsetFrame frame;
  /// element_to_member[x] = index of the principal ideal of x.
  std::vector<std::size_t> element_to_member;
};

/// Ideals of a finite lattice; all are principal.
IdealCompletion ideal_completion(LatticePtr L);

struct FrameCheck {
  bool is_lattice = false;
  bool has_bounds = false;
  bool is_distributive = false;
  bool pass() const { return is_lattice && has_bounds && is_distributive; }
  std::vector<std::string> witness;
  std::string note;
};

/// Bounded-lattice laws plus distributivity of meet over joins. In a finite
/// lattice every join is a finite iterate of binary joins, so the binary law
/// covers all enumerated joins.
FrameCheck check_frame(const DownsetFrame& F);

/// True when (join M) ^ l = join_{m in M} (m ^ l) for every l.
bool is_distributive_downset(const FiniteOrtholattice& L, const ElementSet& M);

struct BrunsLakserReport {
  std::optional<DownsetFrame> definitional;
  /// Only when the base is isomorphic to the ten-element worked example.
  std::optional<DownsetFrame> family;
  std::size_t family_generators = 0;  // unions considered before dedup
  std::vector<ElementSet> only_definitional;
  std::vector<ElementSet> only_family;
  std::vector<ElementSet> in_both;
  std::optional<FrameCheck> definitional_check;
  std::optional<FrameCheck> family_check;
};

/// Distributive ideals by the defining equation, side by side with the
/// explicit union family when the base is the worked example.
BrunsLakserReport bruns_lakser(LatticePtr L, std::size_t budget = kDefaultBudget);

struct FramePoint {
  /// assignment[k] = value of the k-th member.
  std::vector<bool> assignment;
  /// The largest member sent to 0 (a meet-prime element).
  std::size_t kernel = 0;
};

/// All 0/1 maps preserving finite meets and all joins. Such a map is fixed by
/// the join of its zero set, which must be meet-prime and not the top.
/// Throws PreconditionViolated when the member order is not a lattice and
/// BudgetExceeded when there are more than `budget` members.
std::vector<FramePoint> frame_points(const DownsetFrame& F,
                                     std::size_t budget = kDefaultBudget);

/// Points of a finite lattice, one per meet-prime element below the top;
/// phi(u) = 0 exactly when u <= that element.
std::vector<std::vector<bool>> lattice_points(const FiniteOrtholattice& order);

/// Direct check of the point conditions on a lattice.
bool is_frame_point(const FiniteOrtholattice& order, const std::vector<bool>& phi);

}  // namespace qlogic
