#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace qlogic {

using ElementId = std::uint32_t;
using ElementSet = boost::dynamic_bitset<std::uint64_t>;
using ElementPair = std::pair<ElementId, ElementId>;

inline constexpr std::size_t kDefaultBudget = 10'000'000;

/// Ids of the set bits, ascending.
std::vector<ElementId> members_of(const ElementSet& s);

/// Canonical total order on sets: by cardinality, then lexicographically on
/// the ascending id lists.
bool canonical_less(const ElementSet& a, const ElementSet& b);

enum class RelationKind { Covers, Leq };

/// A finite bounded lattice, optionally with an orthocomplement.
///
/// Elements are dense ids 0..n-1. The order is stored as bit rows (principal
/// down- and up-sets) and meet/join are materialized as n*n tables, so every
/// law check below is a table lookup. Instances are immutable once built.
class FiniteOrtholattice {
 public:
  /// Validates and builds. `pairs` is either the cover relation or any
  /// generating subset of the order; the reflexive-transitive closure is
  /// taken in both cases. Throws NotAPoset, NotALattice or BadPerp with a
  /// witness.
  static FiniteOrtholattice build(std::vector<std::string> labels,
                                  std::span<const ElementPair> pairs,
                                  RelationKind kind,
                                  std::optional<std::vector<ElementId>> perp);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(ElementId x) const { return labels_.at(x); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<ElementId> find(std::string_view label) const;
  /// Throws UnknownLabel.
  ElementId id(std::string_view label) const;

  bool leq(ElementId x, ElementId y) const { return down_[y].test(x); }
  ElementId meet(ElementId x, ElementId y) const { return meet_[x * size() + y]; }
  ElementId join(ElementId x, ElementId y) const { return join_[x * size() + y]; }
  ElementId bottom() const noexcept { return bottom_; }
  ElementId top() const noexcept { return top_; }

  bool has_perp() const noexcept { return !perp_.empty(); }
  /// Throws BadPerp when no orthocomplement was supplied.
  ElementId perp(ElementId x) const;

  const ElementSet& down(ElementId x) const { return down_[x]; }
  const ElementSet& up(ElementId x) const { return up_[x]; }

  /// Join (meet) of an arbitrary subset; the empty join is bottom.
  ElementId join_of(const ElementSet& s) const;
  ElementId meet_of(const ElementSet& s) const;

  /// Cover pairs (x, y) with x < y and nothing strictly between, sorted.
  std::vector<ElementPair> covers() const;

  ElementSet empty_set() const { return ElementSet(size()); }
  ElementSet full_set() const;
  std::string format_set(const ElementSet& s) const;

 private:
  FiniteOrtholattice() = default;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, ElementId> index_;
  std::vector<ElementSet> down_;
  std::vector<ElementSet> up_;
  std::vector<ElementId> meet_;
  std::vector<ElementId> join_;
  std::vector<ElementId> perp_;
  ElementId bottom_ = 0;
  ElementId top_ = 0;
};

using LatticePtr = std::shared_ptr<const FiniteOrtholattice>;

/// One concrete violation of a named law: substituting `elements` into the
/// law yields `lhs != rhs` (ids of the two sides, when the law has sides).
struct LawWitness {
  std::string law;
  std::vector<ElementId> elements;
  std::optional<ElementId> lhs;
  std::optional<ElementId> rhs;
  std::string note;
};

struct StructureReport {
  bool is_lattice = true;
  bool is_orthocomplemented = false;
  bool is_orthomodular = false;
  bool is_distributive = false;
  bool is_boolean = false;
  std::vector<LawWitness> witnesses;
};

/// Names used in LawWitness::law.
namespace law {
inline constexpr std::string_view kOrthocomplement = "orthocomplement";
inline constexpr std::string_view kOrthomodular = "orthomodular";
inline constexpr std::string_view kDistributive = "distributive";
}  // namespace law

/// Exhaustive structural classification.
StructureReport classify(const FiniteOrtholattice& lattice);

/// True when the witness, substituted into its law, really violates it.
bool witness_violates(const FiniteOrtholattice& lattice, const LawWitness& w);

/// All downsets (including the empty one), in canonical order. Throws
/// BudgetExceeded when more than `budget` exist.
std::vector<ElementSet> downsets(const FiniteOrtholattice& lattice,
                                 std::size_t budget = kDefaultBudget);

bool is_downset(const FiniteOrtholattice& lattice, const ElementSet& s);

/// Graphviz description of the cover relation, edges pointing upward.
std::string hasse_dot(const FiniteOrtholattice& lattice);

/// Order isomorphism (respecting perp when both sides carry one), found by
/// backtracking. Returns image[x] for every x of `from`.
std::optional<std::vector<ElementId>> find_isomorphism(
    const FiniteOrtholattice& from, const FiniteOrtholattice& to);

/// Checks that `image` is a bijection with x <= y iff image[x] <= image[y].
bool is_order_isomorphism(const FiniteOrtholattice& from, const FiniteOrtholattice& to,
                          const std::vector<ElementId>& image);

// Standard small lattices.
FiniteOrtholattice chain_lattice(std::size_t n);
/// Subsets of {1..n}; labels like "{1,3}", "0" for the empty set and "1" for
/// the full set. Complement is the orthocomplement.
FiniteOrtholattice power_set_lattice(std::size_t n);
/// Horizontal sum of k four-element Boolean algebras {0, x_i, x_i', 1}.
FiniteOrtholattice mo_lattice(std::size_t k);

}  // namespace qlogic
