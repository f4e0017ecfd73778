#include "qlogic/lattice.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "qlogic/error.hpp"

namespace qlogic {

std::vector<ElementId> members_of(const ElementSet& s) {
  std::vector<ElementId> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) {
    out.push_back(static_cast<ElementId>(i));
  }
  return out;
}

bool canonical_less(const ElementSet& a, const ElementSet& b) {
  const auto ca = a.count();
  const auto cb = b.count();
  if (ca != cb) return ca < cb;
  auto i = a.find_first();
  auto j = b.find_first();
  while (i != ElementSet::npos && j != ElementSet::npos) {
    if (i != j) return i < j;
    i = a.find_next(i);
    j = b.find_next(j);
  }
  return false;
}

FiniteOrtholattice FiniteOrtholattice::build(
    std::vector<std::string> labels, std::span<const ElementPair> pairs,
    RelationKind /*kind*/, std::optional<std::vector<ElementId>> perp) {
  const std::size_t n = labels.size();
  if (n == 0) {
    throw Error(ErrorKind::NotALattice, "a lattice needs at least one element");
  }
  FiniteOrtholattice lat;
  for (std::size_t i = 0; i < n; ++i) {
    if (!lat.index_.emplace(labels[i], static_cast<ElementId>(i)).second) {
      throw Error(ErrorKind::Parse, "duplicate element label", {labels[i]});
    }
  }
  lat.labels_ = std::move(labels);

  // Reflexive-transitive closure on up-sets (bitset Warshall).
  lat.up_.assign(n, ElementSet(n));
  for (std::size_t i = 0; i < n; ++i) lat.up_[i].set(i);
  for (const auto& [x, y] : pairs) {
    if (x >= n || y >= n) {
      throw Error(ErrorKind::Parse, "order pair refers to an unknown element");
    }
    lat.up_[x].set(y);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (lat.up_[i].test(k)) lat.up_[i] |= lat.up_[k];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (lat.up_[i].test(j) && lat.up_[j].test(i)) {
        throw Error(ErrorKind::NotAPoset,
                    "order relation has a cycle (antisymmetry fails)",
                    {lat.labels_[i], lat.labels_[j]});
      }
    }
  }
  lat.down_.assign(n, ElementSet(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j = lat.up_[i].find_first(); j != ElementSet::npos;
         j = lat.up_[i].find_next(j)) {
      lat.down_[j].set(i);
    }
  }

  // Meet/join tables: the candidate glb is the lower bound with the largest
  // down-set; it is the glb iff it dominates every other lower bound.
  lat.meet_.assign(n * n, 0);
  lat.join_.assign(n * n, 0);
  auto best_in = [](const ElementSet& bounds, const std::vector<ElementSet>& rows) {
    std::size_t best = ElementSet::npos;
    std::size_t best_count = 0;
    for (auto g = bounds.find_first(); g != ElementSet::npos; g = bounds.find_next(g)) {
      const auto c = rows[g].count();
      if (best == ElementSet::npos || c > best_count) {
        best = g;
        best_count = c;
      }
    }
    return best;
  };
  // All meets first, so a missing glb is reported before a missing lub. A
  // pair with several maximal lower bounds is a better witness than a pair
  // with none, so the latter is only reported when nothing else fails.
  auto fill = [&](const std::vector<ElementSet>& inward, std::vector<ElementId>& table,
                  const char* what) {
    std::optional<std::pair<std::size_t, std::size_t>> empty_pair;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x; y < n; ++y) {
        const ElementSet bounds = inward[x] & inward[y];
        const auto g = best_in(bounds, inward);
        if (g == ElementSet::npos) {
          if (!empty_pair) empty_pair.emplace(x, y);
          continue;
        }
        if (!bounds.is_subset_of(inward[g])) {
          throw Error(ErrorKind::NotALattice, std::string("pair has no ") + what,
                      {lat.labels_[x], lat.labels_[y]});
        }
        table[x * n + y] = table[y * n + x] = static_cast<ElementId>(g);
      }
    }
    if (empty_pair) {
      throw Error(ErrorKind::NotALattice, std::string("pair has no ") + what,
                  {lat.labels_[empty_pair->first], lat.labels_[empty_pair->second]});
    }
  };
  fill(lat.down_, lat.meet_, "greatest lower bound");
  fill(lat.up_, lat.join_, "least upper bound");
  ElementId bot = 0;
  ElementId top = 0;
  for (std::size_t x = 1; x < n; ++x) {
    bot = lat.meet_[bot * n + x];
    top = lat.join_[top * n + x];
  }
  lat.bottom_ = bot;
  lat.top_ = top;

  if (perp) {
    auto& p = *perp;
    if (p.size() != n) {
      throw Error(ErrorKind::BadPerp, "orthocomplement must be total");
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (p[x] >= n) throw Error(ErrorKind::BadPerp, "perp maps outside the lattice");
    }
    for (std::size_t x = 0; x < n; ++x) {
      const auto& lx = lat.labels_[x];
      if (p[p[x]] != x) {
        throw Error(ErrorKind::BadPerp, "perp is not involutive", {lx});
      }
      if (lat.meet_[x * n + p[x]] != bot || lat.join_[x * n + p[x]] != top) {
        throw Error(ErrorKind::BadPerp, "x and perp(x) are not complements", {lx});
      }
      for (std::size_t y = 0; y < n; ++y) {
        if (lat.up_[x].test(y) && !lat.up_[p[y]].test(p[x])) {
          throw Error(ErrorKind::BadPerp, "perp is not antitone",
                      {lx, lat.labels_[y]});
        }
      }
    }
    lat.perp_ = std::move(p);
  }
  return lat;
}

std::optional<ElementId> FiniteOrtholattice::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElementId FiniteOrtholattice::id(std::string_view label) const {
  if (auto x = find(label)) return *x;
  throw Error(ErrorKind::UnknownLabel, "no such element", {std::string(label)});
}

ElementId FiniteOrtholattice::perp(ElementId x) const {
  if (perp_.empty()) {
    throw Error(ErrorKind::BadPerp, "lattice has no orthocomplement");
  }
  return perp_.at(x);
}

ElementId FiniteOrtholattice::join_of(const ElementSet& s) const {
  ElementId acc = bottom_;
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) {
    acc = join(acc, static_cast<ElementId>(i));
  }
  return acc;
}

ElementId FiniteOrtholattice::meet_of(const ElementSet& s) const {
  ElementId acc = top_;
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) {
    acc = meet(acc, static_cast<ElementId>(i));
  }
  return acc;
}

std::vector<ElementPair> FiniteOrtholattice::covers() const {
  std::vector<ElementPair> out;
  const std::size_t n = size();
  for (std::size_t x = 0; x < n; ++x) {
    for (auto y = up_[x].find_first(); y != ElementSet::npos; y = up_[x].find_next(y)) {
      if (y == x) continue;
      if ((up_[x] & down_[y]).count() == 2) {
        out.emplace_back(static_cast<ElementId>(x), static_cast<ElementId>(y));
      }
    }
  }
  return out;
}

ElementSet FiniteOrtholattice::full_set() const {
  ElementSet s(size());
  s.set();
  return s;
}

std::string FiniteOrtholattice::format_set(const ElementSet& s) const {
  std::string out = "{";
  bool first = true;
  for (auto i : members_of(s)) {
    if (!first) out += ',';
    out += labels_[i];
    first = false;
  }
  out += '}';
  return out;
}

StructureReport classify(const FiniteOrtholattice& L) {
  StructureReport r;
  const auto n = static_cast<ElementId>(L.size());
  r.is_orthocomplemented = L.has_perp();
  if (!r.is_orthocomplemented) {
    r.witnesses.push_back({std::string(law::kOrthocomplement), {}, {}, {},
                           "no orthocomplement supplied"});
  }

  r.is_distributive = true;
  for (ElementId x = 0; x < n && r.is_distributive; ++x) {
    for (ElementId y = 0; y < n && r.is_distributive; ++y) {
      for (ElementId z = 0; z < n; ++z) {
        const auto lhs = L.meet(L.join(x, y), z);
        const auto rhs = L.join(L.meet(x, z), L.meet(y, z));
        if (lhs != rhs) {
          r.is_distributive = false;
          r.witnesses.push_back({std::string(law::kDistributive), {x, y, z}, lhs, rhs,
                                 "(x v y) ^ z != (x ^ z) v (y ^ z)"});
          break;
        }
      }
    }
  }

  if (r.is_orthocomplemented) {
    r.is_orthomodular = true;
    for (ElementId x = 0; x < n && r.is_orthomodular; ++x) {
      for (ElementId y = 0; y < n; ++y) {
        if (!L.leq(x, y)) continue;
        const auto lhs = L.join(x, L.meet(L.perp(x), y));
        if (lhs != y) {
          r.is_orthomodular = false;
          r.witnesses.push_back({std::string(law::kOrthomodular), {x, y}, lhs, y,
                                 "x <= y but x v (x' ^ y) != y"});
          break;
        }
      }
    }
  } else {
    r.witnesses.push_back({std::string(law::kOrthomodular), {}, {}, {},
                           "orthomodularity needs an orthocomplement"});
  }
  r.is_boolean = r.is_distributive && r.is_orthocomplemented;
  return r;
}

bool witness_violates(const FiniteOrtholattice& L, const LawWitness& w) {
  const auto& e = w.elements;
  if (w.law == law::kOrthocomplement) return !L.has_perp();
  if (w.law == law::kDistributive) {
    if (e.size() != 3) return false;
    return L.meet(L.join(e[0], e[1]), e[2]) !=
           L.join(L.meet(e[0], e[2]), L.meet(e[1], e[2]));
  }
  if (w.law == law::kOrthomodular) {
    if (!L.has_perp()) return e.empty();
    if (e.size() != 2 || !L.leq(e[0], e[1])) return false;
    return L.join(e[0], L.meet(L.perp(e[0]), e[1])) != e[1];
  }
  return false;
}

bool is_downset(const FiniteOrtholattice& L, const ElementSet& s) {
  for (auto x = s.find_first(); x != ElementSet::npos; x = s.find_next(x)) {
    if (!L.down(static_cast<ElementId>(x)).is_subset_of(s)) return false;
  }
  return true;
}

std::vector<ElementSet> downsets(const FiniteOrtholattice& L, std::size_t budget) {
  const std::size_t n = L.size();
  // |down(x)| strictly increases along the order, so sorting by it gives a
  // linear extension: every element is decided after everything below it.
  std::vector<ElementId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<ElementId>(i);
  std::stable_sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
    return L.down(a).count() < L.down(b).count();
  });

  std::vector<ElementSet> out;
  ElementSet current(n);
  std::function<void(std::size_t)> visit = [&](std::size_t k) {
    if (k == n) {
      if (out.size() >= budget) {
        throw Error(ErrorKind::BudgetExceeded,
                    "downset enumeration exceeds budget of " + std::to_string(budget));
      }
      out.push_back(current);
      return;
    }
    const ElementId x = order[k];
    visit(k + 1);
    ElementSet below = L.down(x);
    below.reset(x);
    if (below.is_subset_of(current)) {
      current.set(x);
      visit(k + 1);
      current.reset(x);
    }
  };
  visit(0);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string hasse_dot(const FiniteOrtholattice& L) {
  std::ostringstream os;
  os << "digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (std::size_t x = 0; x < L.size(); ++x) {
    os << "  " << dot_quote(L.label(static_cast<ElementId>(x))) << ";\n";
  }
  for (const auto& [x, y] : L.covers()) {
    os << "  " << dot_quote(L.label(x)) << " -> " << dot_quote(L.label(y)) << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::optional<std::vector<ElementId>> find_isomorphism(const FiniteOrtholattice& from,
                                                       const FiniteOrtholattice& to) {
  const std::size_t n = from.size();
  if (to.size() != n) return std::nullopt;
  const bool use_perp = from.has_perp() && to.has_perp();

  auto signature = [](const FiniteOrtholattice& L, ElementId x) {
    return std::pair{L.down(x).count(), L.up(x).count()};
  };
  std::vector<ElementId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<ElementId>(i);
  std::stable_sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
    return from.down(a).count() < from.down(b).count();
  });

  constexpr ElementId kUnset = static_cast<ElementId>(-1);
  std::vector<ElementId> image(n, kUnset);
  std::vector<bool> used(n, false);

  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == n) return true;
    const ElementId x = order[k];
    const auto sig = signature(from, x);
    for (ElementId y = 0; y < n; ++y) {
      if (used[y] || signature(to, y) != sig) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        const ElementId xp = order[j];
        const ElementId yp = image[xp];
        ok = from.leq(xp, x) == to.leq(yp, y) && from.leq(x, xp) == to.leq(y, yp);
      }
      if (ok && use_perp) {
        const ElementId px = from.perp(x);
        if (px == x) {
          ok = to.perp(y) == y;
        } else if (image[px] != kUnset) {
          ok = to.perp(y) == image[px];
        }
      }
      if (!ok) continue;
      image[x] = y;
      used[y] = true;
      if (assign(k + 1)) return true;
      image[x] = kUnset;
      used[y] = false;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;
  return image;
}

bool is_order_isomorphism(const FiniteOrtholattice& from, const FiniteOrtholattice& to,
                          const std::vector<ElementId>& image) {
  const std::size_t n = from.size();
  if (to.size() != n || image.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (auto y : image) {
    if (y >= n || hit[y]) return false;
    hit[y] = true;
  }
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = 0; y < n; ++y) {
      if (from.leq(x, y) != to.leq(image[x], image[y])) return false;
    }
  }
  return true;
}

FiniteOrtholattice chain_lattice(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<ElementPair> covers;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    if (i > 0) covers.emplace_back(static_cast<ElementId>(i - 1), static_cast<ElementId>(i));
  }
  std::optional<std::vector<ElementId>> perp;
  if (n == 1) perp = std::vector<ElementId>{0};
  if (n == 2) perp = std::vector<ElementId>{1, 0};
  return FiniteOrtholattice::build(std::move(labels), covers, RelationKind::Covers,
                                   std::move(perp));
}

FiniteOrtholattice power_set_lattice(std::size_t n) {
  const std::size_t count = std::size_t{1} << n;
  const std::size_t full = count - 1;
  std::vector<std::string> labels(count);
  std::vector<ElementPair> covers;
  std::vector<ElementId> perp(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    if (mask == 0) {
      labels[mask] = "0";
    } else if (mask == full) {
      labels[mask] = "1";
    } else {
      std::string s = "{";
      for (std::size_t b = 0; b < n; ++b) {
        if (mask >> b & 1) {
          if (s.size() > 1) s += ',';
          s += std::to_string(b + 1);
        }
      }
      labels[mask] = s + "}";
    }
    perp[mask] = static_cast<ElementId>(full ^ mask);
    for (std::size_t b = 0; b < n; ++b) {
      if (!(mask >> b & 1)) {
        covers.emplace_back(static_cast<ElementId>(mask),
                            static_cast<ElementId>(mask | (std::size_t{1} << b)));
      }
    }
  }
  return FiniteOrtholattice::build(std::move(labels), covers, RelationKind::Covers,
                                   std::move(perp));
}

FiniteOrtholattice mo_lattice(std::size_t k) {
  std::vector<std::string> labels{"0"};
  std::vector<ElementPair> covers;
  std::vector<ElementId> perp{0};
  for (std::size_t i = 0; i < k; ++i) {
    const std::string name = k <= 26 ? std::string(1, static_cast<char>('a' + i))
                                     : "x" + std::to_string(i + 1);
    labels.push_back(name);
    labels.push_back(name + "'");
  }
  labels.push_back("1");
  const auto top = static_cast<ElementId>(labels.size() - 1);
  perp.resize(labels.size());
  perp[0] = top;
  perp[top] = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto x = static_cast<ElementId>(1 + 2 * i);
    const auto xp = static_cast<ElementId>(2 + 2 * i);
    perp[x] = xp;
    perp[xp] = x;
    for (auto e : {x, xp}) {
      covers.emplace_back(0, e);
      covers.emplace_back(e, top);
    }
  }
  if (k == 0) covers.emplace_back(0, top);
  return FiniteOrtholattice::build(std::move(labels), covers, RelationKind::Covers,
                                   std::move(perp));
}

}  // namespace qlogic
