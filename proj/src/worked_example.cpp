#include "qlogic/worked_example.hpp"

#include "qlogic/error.hpp"

namespace qlogic {

LatticePtr hasse_example() {
  std::vector<std::string> labels{"0", "a", "b", "c", "d", "d'", "a'", "b'", "c'", "1"};
  auto id = [&](std::string_view s) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == s) return static_cast<ElementId>(i);
    }
    return ElementId{0};
  };
  std::vector<ElementPair> covers;
  for (auto x : {"a", "b", "c", "d", "d'"}) covers.emplace_back(id("0"), id(x));
  for (auto x : {"a'", "b'", "c'", "d", "d'"}) covers.emplace_back(id(x), id("1"));
  const std::pair<const char*, const char*> middle[] = {
      {"a", "b'"}, {"a", "c'"}, {"b", "a'"}, {"b", "c'"}, {"c", "a'"}, {"c", "b'"}};
  for (const auto& [x, y] : middle) covers.emplace_back(id(x), id(y));
  std::vector<ElementId> perp(labels.size());
  const std::pair<const char*, const char*> pairs[] = {
      {"0", "1"}, {"a", "a'"}, {"b", "b'"}, {"c", "c'"}, {"d", "d'"}};
  for (const auto& [x, y] : pairs) {
    perp[id(x)] = id(y);
    perp[id(y)] = id(x);
  }
  return std::make_shared<const FiniteOrtholattice>(FiniteOrtholattice::build(
      std::move(labels), covers, RelationKind::Covers, std::move(perp)));
}

namespace {

std::vector<ElementId> image_from_example(const FiniteOrtholattice& X) {
  const auto ref = hasse_example();
  auto image = find_isomorphism(*ref, X);
  if (!image) {
    throw Error(ErrorKind::PreconditionViolated,
                "lattice is not isomorphic to the ten-element example");
  }
  return *image;
}

}  // namespace

BlockPosetPtr four_block_family(const LatticePtr& X) {
  const auto ref = hasse_example();
  const auto image = image_from_example(*X);
  std::vector<ElementSet> carriers;
  std::vector<std::string> names;
  ElementSet base(X->size());
  base.set(X->bottom());
  base.set(X->top());
  carriers.push_back(base);
  names.emplace_back("B0");
  for (auto g : {"a", "b", "c", "d"}) {
    ElementSet c = base;
    const auto x = image[ref->id(g)];
    c.set(x);
    c.set(X->perp(x));
    carriers.push_back(c);
    names.push_back(std::string("B") + g);
  }
  return std::make_shared<const BlockPoset>(X, std::move(carriers), std::move(names));
}

std::vector<ElementSet> union_family(const FiniteOrtholattice& target,
                                     const std::vector<ElementId>& image) {
  const auto ref = hasse_example();
  std::vector<ElementId> gens;
  for (auto g : {"a", "b", "c", "d", "d'", "a'", "b'", "c'"}) gens.push_back(image[ref->id(g)]);
  std::vector<ElementSet> out;
  for (unsigned mask = 1; mask < (1u << gens.size()); ++mask) {
    ElementSet s = target.empty_set();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (mask >> k & 1u) s |= target.down(gens[k]);
    }
    out.push_back(s);
  }
  out.push_back(target.full_set());
  return out;
}

FiniteOrtholattice power_set_plus_top(std::size_t n) {
  const auto P = power_set_lattice(n);
  auto labels = P.labels();
  auto covers = P.covers();
  labels.emplace_back("1+");
  covers.emplace_back(P.top(), static_cast<ElementId>(P.size()));
  return FiniteOrtholattice::build(std::move(labels), covers, RelationKind::Covers,
                                   std::nullopt);
}

ProductPlusTop product_plus_top(const BohrAlgebra& Y) {
  if (!Y.enumeration) {
    throw Error(ErrorKind::BudgetExceeded, "section algebra was not enumerated");
  }
  const auto& P = *Y.base;
  const auto& X = P.host_lattice();
  if (!X) throw Error(ErrorKind::PreconditionViolated, "needs a lattice host");
  const auto ref = hasse_example();
  const auto image = image_from_example(*X);
  const auto b0 = P.find("B0");
  if (!b0) throw Error(ErrorKind::PreconditionViolated, "no block named B0");
  std::vector<std::size_t> slots;
  std::vector<ElementId> gens;
  for (auto g : {"a", "b", "c", "d"}) {
    const auto i = P.find(std::string("B") + g);
    if (!i) throw Error(ErrorKind::PreconditionViolated, std::string("no block B") + g);
    slots.push_back(*i);
    gens.push_back(image[ref->id(g)]);
  }
  ProductPlusTop out{power_set_plus_top(2 * slots.size()), {}};
  const auto new_top = static_cast<ElementId>(out.target.size() - 1);
  for (const auto& f : *Y.enumeration) {
    if (f.values[*b0] != X->bottom()) {
      out.image.push_back(new_top);
      continue;
    }
    unsigned mask = 0;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const auto v = f.values[slots[k]];
      if (v == gens[k] || v == X->top()) mask |= 1u << (2 * k);
      if (v == X->perp(gens[k]) || v == X->top()) mask |= 1u << (2 * k + 1);
    }
    out.image.push_back(static_cast<ElementId>(mask));
  }
  return out;
}

}  // namespace qlogic
