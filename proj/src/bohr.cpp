#include "qlogic/bohr.hpp"

#include <algorithm>
#include <numeric>

#include "qlogic/error.hpp"

namespace qlogic {

namespace detail {

std::vector<std::size_t> linear_extension(const BlockPoset& base) {
  std::vector<std::size_t> order(base.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return base.block(a).carrier.count() < base.block(b).carrier.count();
  });
  return order;
}

}  // namespace detail

namespace {

void same_base(const Section& f, const Section& g) {
  if (f.base != g.base) {
    throw Error(ErrorKind::MixedBase, "sections live over different block posets");
  }
}

}  // namespace

bool is_monotone(const BlockPoset& base, const std::vector<ElementId>& values) {
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (auto j : members_of(base.above(i))) {
      if (!base.host().leq(values[i], values[j])) return false;
    }
  }
  return true;
}

Section make_section(BlockPosetPtr base, std::vector<ElementId> values) {
  if (values.size() != base->size()) {
    throw Error(ErrorKind::PreconditionViolated, "one value per block expected");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= base->host().size() || !base->contains(i, values[i])) {
      throw Error(ErrorKind::PreconditionViolated, "value outside its block",
                  {base->block(i).name});
    }
  }
  for (std::size_t i = 0; i < base->size(); ++i) {
    for (auto j : members_of(base->above(i))) {
      if (!base->host().leq(values[i], values[j])) {
        throw Error(ErrorKind::PreconditionViolated, "section is not monotone",
                    {base->block(i).name, base->block(j).name});
      }
    }
  }
  return Section{std::move(base), std::move(values)};
}

Section top_section(BlockPosetPtr base) {
  const auto n = base->size();
  const auto t = base->host_top();
  return Section{std::move(base), std::vector<ElementId>(n, t)};
}

Section bottom_section(BlockPosetPtr base) {
  const auto n = base->size();
  const auto b = base->host_bottom();
  return Section{std::move(base), std::vector<ElementId>(n, b)};
}

bool sec_leq(const Section& f, const Section& g) {
  same_base(f, g);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (!f.base->host().leq(f.values[i], g.values[i])) return false;
  }
  return true;
}

Section sec_meet(const Section& f, const Section& g) {
  same_base(f, g);
  Section r{f.base, f.values};
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    r.values[i] = f.base->meet(i, f.values[i], g.values[i]);
  }
  return r;
}

Section sec_join(const Section& f, const Section& g) {
  same_base(f, g);
  Section r{f.base, f.values};
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    r.values[i] = f.base->join(i, f.values[i], g.values[i]);
  }
  return r;
}

Section implies(const Section& g, const Section& h) {
  same_base(g, h);
  const auto& P = *g.base;
  std::vector<ElementId> local(P.size());
  for (std::size_t j = 0; j < P.size(); ++j) {
    local[j] = P.join(j, P.perp(g.values[j]), h.values[j]);
  }
  Section r{g.base, g.values};
  for (std::size_t i = 0; i < P.size(); ++i) {
    std::vector<ElementId> bounds;
    for (auto j : members_of(P.above(i))) bounds.push_back(local[j]);
    r.values[i] = P.greatest_below(i, bounds);
  }
  return r;
}

Section negate(const Section& f) {
  const auto& P = *f.base;
  Section r{f.base, f.values};
  for (std::size_t i = 0; i < P.size(); ++i) {
    std::vector<ElementId> bounds;
    for (auto j : members_of(P.above(i))) bounds.push_back(P.perp(f.values[j]));
    r.values[i] = P.greatest_below(i, bounds);
  }
  if (!(r == implies(f, bottom_section(f.base)))) {
    throw Error(ErrorKind::PreconditionViolated,
                "negation disagrees with implication into bottom");
  }
  return r;
}

Section embed_D(BlockPosetPtr base, ElementId x) {
  Section r = bottom_section(base);
  for (std::size_t i = 0; i < base->size(); ++i) {
    if (base->contains(i, x)) r.values[i] = x;
  }
  return r;
}

ElementId sasaki_hook(const FiniteOrtholattice& L, ElementId x, ElementId y) {
  return L.join(L.perp(x), L.meet(x, y));
}

SasakiReport sasaki_report(BlockPosetPtr base, ElementId x, ElementId y) {
  const auto& L = base->host_lattice();
  if (!L) throw Error(ErrorKind::PreconditionViolated, "Sasaki hook needs a lattice host");
  SasakiReport rep;
  rep.x = x;
  rep.y = y;
  const auto hook = sasaki_hook(*L, x, y);
  rep.hook_section = embed_D(base, hook);
  rep.heyting_section = implies(embed_D(base, x), embed_D(base, y));

  const auto& P = *base;
  auto case_value = [&](std::size_t j) -> ElementId {
    if (!P.contains(j, x)) return L->top();
    if (!P.contains(j, y)) return L->perp(x);
    return L->join(L->perp(x), y);
  };
  for (std::size_t i = 0; i < P.size(); ++i) {
    SasakiRow row;
    row.block = i;
    if (!P.contains(i, x)) {
      row.case_name = "x-out";
      row.hook_display = L->bottom();
    } else if (!P.contains(i, y)) {
      row.case_name = "x-in-y-out";
      row.hook_display = L->perp(x);
    } else {
      row.case_name = "both-in";
      row.hook_display = hook;
    }
    std::vector<ElementId> bounds;
    for (auto j : members_of(P.above(i))) bounds.push_back(case_value(j));
    row.heyting_display = P.greatest_below(i, bounds);
    row.hook = rep.hook_section.values[i];
    row.heyting = rep.heyting_section.values[i];
    row.agree = row.hook == row.heyting;
    row.hook_display_matches = row.hook_display == row.hook;
    row.heyting_display_matches = row.heyting_display == row.heyting;
    rep.rows.push_back(row);
  }
  return rep;
}

std::optional<std::size_t> BohrAlgebra::index_of(const Section& f) const {
  if (!enumeration || f.base != base) return std::nullopt;
  auto it = std::lower_bound(
      enumeration->begin(), enumeration->end(), f,
      [](const Section& a, const Section& b) { return a.values < b.values; });
  if (it == enumeration->end() || it->values != f.values) return std::nullopt;
  return static_cast<std::size_t>(it - enumeration->begin());
}

BohrAlgebra bohrify(BlockPosetPtr base, std::size_t budget, bool require) {
  BohrAlgebra Y;
  Y.base = base;
  Y.top = top_section(base);
  Y.bottom = bottom_section(base);
  std::size_t count = 0;
  for_each_section(*base, [&](const std::vector<ElementId>&) {
    ++count;
    return count <= budget;
  });
  Y.counted = count;
  if (count > budget) {
    if (require) {
      throw Error(ErrorKind::BudgetExceeded,
                  "more than " + std::to_string(budget) + " sections");
    }
    return Y;
  }
  std::vector<Section> all;
  all.reserve(count);
  for_each_section(*base, [&](const std::vector<ElementId>& v) {
    all.push_back(Section{base, v});
    return true;
  });
  std::sort(all.begin(), all.end(),
            [](const Section& a, const Section& b) { return a.values < b.values; });
  Y.enumeration = std::move(all);
  return Y;
}

std::string format_section(const Section& f) {
  std::string s = "{";
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (i) s += ", ";
    s += f.base->block(i).name + "=" + f.base->host().labels[f.values[i]];
  }
  return s + "}";
}

FiniteOrtholattice as_lattice(const BohrAlgebra& Y) {
  if (!Y.enumeration) {
    throw Error(ErrorKind::BudgetExceeded, "section algebra was not enumerated");
  }
  const auto& E = *Y.enumeration;
  std::vector<std::string> labels;
  for (const auto& f : E) labels.push_back(format_section(f));
  std::vector<ElementPair> pairs;
  for (std::size_t a = 0; a < E.size(); ++a) {
    for (std::size_t b = 0; b < E.size(); ++b) {
      if (a != b && sec_leq(E[a], E[b])) {
        pairs.emplace_back(static_cast<ElementId>(a), static_cast<ElementId>(b));
      }
    }
  }
  return FiniteOrtholattice::build(std::move(labels), pairs, RelationKind::Leq,
                                   std::nullopt);
}

}  // namespace qlogic
