#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qlogic/blocks.hpp"

namespace qlogic {

/// A monotone choice of one carrier element per block. Values are dense,
/// indexed by block id.
struct Section {
  BlockPosetPtr base;
  std::vector<ElementId> values;

  bool operator==(const Section& o) const {
    return base == o.base && values == o.values;
  }
};

/// Validates membership and monotonicity. Throws PreconditionViolated.
Section make_section(BlockPosetPtr base, std::vector<ElementId> values);
Section top_section(BlockPosetPtr base);
Section bottom_section(BlockPosetPtr base);
bool is_monotone(const BlockPoset& base, const std::vector<ElementId>& values);

// Pointwise order and lattice operations. Throw MixedBase.
bool sec_leq(const Section& f, const Section& g);
Section sec_meet(const Section& f, const Section& g);
Section sec_join(const Section& f, const Section& g);

/// (g => h)(i) = greatest x in B_i with x <= g(j)' v h(j) for every j >= i.
Section implies(const Section& g, const Section& h);
/// (~f)(i) = greatest x in B_i below f(j)' for every j >= i; cross-checked
/// against implies(f, bottom).
Section negate(const Section& f);

/// D(x)(i) = x when x is in B_i, else 0.
Section embed_D(BlockPosetPtr base, ElementId x);

ElementId sasaki_hook(const FiniteOrtholattice& L, ElementId x, ElementId y);

struct SasakiRow {
  std::size_t block = 0;
  std::string case_name;   // "x-out", "x-in-y-out", "both-in"
  ElementId hook = 0;      // D(x =>_S y)(i)
  ElementId heyting = 0;   // (D(x) => D(y))(i)
  bool agree = false;
  ElementId hook_display = 0;     // value given by the case formula
  ElementId heyting_display = 0;  // meet over j >= i of the case formula
  bool hook_display_matches = false;
  bool heyting_display_matches = false;
};

struct SasakiReport {
  ElementId x = 0;
  ElementId y = 0;
  Section hook_section;
  Section heyting_section;
  std::vector<SasakiRow> rows;
};

/// Requires a lattice host.
SasakiReport sasaki_report(BlockPosetPtr base, ElementId x, ElementId y);

class BohrAlgebra {
 public:
  BlockPosetPtr base;
  /// Present when the number of sections is within the budget.
  std::optional<std::vector<Section>> enumeration;
  Section top;
  Section bottom;
  /// Exact count when within budget; otherwise budget + 1.
  std::size_t counted = 0;

  bool enumerated() const { return enumeration.has_value(); }
  /// Index of a section in the enumeration.
  std::optional<std::size_t> index_of(const Section& f) const;
};

/// Counts sections with a pruned depth-first search (capped at budget + 1)
/// and materializes them only when the count fits. With `require`, an
/// over-budget count throws BudgetExceeded.
BohrAlgebra bohrify(BlockPosetPtr base, std::size_t budget = kDefaultBudget,
                    bool require = false);

/// Visits every monotone section; `visit` returns false to stop early.
template <class F>
void for_each_section(const BlockPoset& base, F&& visit);

/// The enumeration as a lattice (pointwise order). Labels come from
/// format_section.
FiniteOrtholattice as_lattice(const BohrAlgebra& Y);

/// "{B[..]=x, B[..]=y, ...}"
std::string format_section(const Section& f);

// ---------------------------------------------------------------------------

namespace detail {
std::vector<std::size_t> linear_extension(const BlockPoset& base);
}

template <class F>
void for_each_section(const BlockPoset& base, F&& visit) {
  const auto order = detail::linear_extension(base);
  std::vector<ElementId> values(base.size(), base.host_bottom());
  std::vector<std::vector<ElementId>> carriers;
  std::vector<std::vector<ElementId>> lower;
  for (std::size_t i = 0; i < base.size(); ++i) {
    carriers.push_back(members_of(base.block(i).carrier));
    auto below = base.below(i);
    below.reset(i);
    lower.push_back(members_of(below));
  }
  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == order.size()) return visit(values);
    const auto i = order[k];
    for (auto v : carriers[i]) {
      bool ok = true;
      for (auto j : lower[i]) {
        if (!base.host().leq(values[j], v)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      values[i] = v;
      if (!self(self, k + 1)) return false;
    }
    return true;
  };
  rec(rec, 0);
}

}  // namespace qlogic
