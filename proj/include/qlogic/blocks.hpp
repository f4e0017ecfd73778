#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qlogic/lattice.hpp"

namespace qlogic {

/// The order and orthocomplement a block family lives in. For an abstract
/// lattice this is the lattice itself; for matrix contexts it is the finite
/// set of projections the contexts contain, which need not be a lattice.
struct OrthoPoset {
  std::vector<std::string> labels;
  std::vector<ElementSet> up;  // up[x] = {y : x <= y}
  std::vector<ElementId> perp;

  std::size_t size() const noexcept { return labels.size(); }
  bool leq(ElementId x, ElementId y) const { return up[x].test(y); }
  static OrthoPoset from_lattice(const FiniteOrtholattice& L);
};

struct BooleanBlock {
  ElementSet carrier;
  ElementSet atoms;
  std::string name;
};

/// Inclusion-ordered family of Boolean blocks over one host.
///
/// Each block keeps its own meet/join tables, computed as greatest lower and
/// least upper bounds inside the carrier. When the host is a lattice the
/// carriers are also required to be closed under the host operations, so the
/// two agree.
class BlockPoset {
 public:
  /// Validates every block and the family. Throws InvalidBlock.
  BlockPoset(LatticePtr host, std::vector<ElementSet> carriers,
             std::vector<std::string> names = {});
  BlockPoset(std::shared_ptr<const OrthoPoset> host, std::vector<ElementSet> carriers,
             std::vector<std::string> names = {});

  std::size_t size() const noexcept { return blocks_.size(); }
  const BooleanBlock& block(std::size_t i) const { return blocks_.at(i); }
  const std::vector<BooleanBlock>& blocks() const noexcept { return blocks_; }
  std::optional<std::size_t> find(std::string_view name) const;

  /// Carrier inclusion.
  bool leq(std::size_t i, std::size_t j) const { return above_[i].test(j); }
  /// Blocks j with i <= j (including i).
  const ElementSet& above(std::size_t i) const { return above_[i]; }
  const ElementSet& below(std::size_t i) const { return below_[i]; }
  std::size_t bottom() const noexcept { return bottom_; }

  const OrthoPoset& host() const noexcept { return *host_; }
  /// Null when the host is not a lattice.
  const LatticePtr& host_lattice() const noexcept { return lattice_; }
  ElementId host_bottom() const noexcept { return host_bottom_; }
  ElementId host_top() const noexcept { return host_top_; }

  bool contains(std::size_t i, ElementId x) const { return blocks_[i].carrier.test(x); }
  /// Block-internal operations; arguments must lie in the carrier.
  ElementId meet(std::size_t i, ElementId x, ElementId y) const;
  ElementId join(std::size_t i, ElementId x, ElementId y) const;
  ElementId perp(ElementId x) const { return host_->perp[x]; }
  /// Greatest carrier element below every member of `bounds` (host order).
  ElementId greatest_below(std::size_t i, const std::vector<ElementId>& bounds) const;

 private:
  void init(std::vector<ElementSet> carriers, std::vector<std::string> names);

  std::shared_ptr<const OrthoPoset> host_;
  LatticePtr lattice_;
  std::vector<ElementSet> host_down_;
  std::vector<BooleanBlock> blocks_;
  std::vector<std::vector<ElementId>> members_;  // carrier ids, ascending
  std::vector<std::vector<int>> local_;          // host id -> index in members_, or -1
  std::vector<std::vector<ElementId>> meet_;
  std::vector<std::vector<ElementId>> join_;
  std::vector<ElementSet> above_;
  std::vector<ElementSet> below_;
  std::size_t bottom_ = 0;
  ElementId host_bottom_ = 0;
  ElementId host_top_ = 0;
};

using BlockPosetPtr = std::shared_ptr<const BlockPoset>;

/// Default display name: "B[atom,atom,...]", or "B0" for {0,1}.
std::string block_name(const OrthoPoset& host, const ElementSet& atoms);

enum class BlockMode { All, Maximal };

/// Boolean subalgebras of an orthomodular lattice. Search grows blocks one
/// generator at a time by closure from {0,1}; a non-distributive closure is
/// pruned since nothing containing it can be Boolean. Sorted by size, then
/// by ascending id list. Throws NotOrthomodular, BudgetExceeded.
BlockPoset enumerate_blocks(LatticePtr X, BlockMode mode = BlockMode::All,
                            std::size_t budget = kDefaultBudget);

/// Closure of a set under host meet, join and perp.
ElementSet close_subset(const FiniteOrtholattice& L, ElementSet s);

struct BulletCheck {
  std::string name;
  bool pass = true;
  std::vector<std::string> witness;
};

struct PartialBooleanReport {
  std::vector<BulletCheck> bullets;
  bool all_pass() const;
};

/// The six coherence conditions of a partial Boolean algebra, evaluated with
/// block-internal operations only.
PartialBooleanReport verify_partial_boolean(const BlockPoset& P);

/// Union of the carriers with the transitive closure of the block orders and
/// the block complements. Throws AmalgamationConflict when the result is not
/// a lattice or disagrees with some block on an overlap.
FiniteOrtholattice amalgamate(const BlockPoset& P);

}  // namespace qlogic
