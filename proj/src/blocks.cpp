#include "qlogic/blocks.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "qlogic/error.hpp"

namespace qlogic {

OrthoPoset OrthoPoset::from_lattice(const FiniteOrtholattice& L) {
  OrthoPoset P;
  P.labels = L.labels();
  for (std::size_t x = 0; x < L.size(); ++x) {
    P.up.push_back(L.up(static_cast<ElementId>(x)));
    P.perp.push_back(L.perp(static_cast<ElementId>(x)));
  }
  return P;
}

std::string block_name(const OrthoPoset& host, const ElementSet& atoms) {
  if (atoms.count() == 1) return "B0";
  std::string s = "B[";
  bool first = true;
  for (auto a : members_of(atoms)) {
    if (!first) s += ',';
    s += host.labels[a];
    first = false;
  }
  return s + "]";
}

BlockPoset::BlockPoset(LatticePtr host, std::vector<ElementSet> carriers,
                       std::vector<std::string> names) {
  if (!host || !host->has_perp()) {
    throw Error(ErrorKind::InvalidBlock, "host lattice must carry an orthocomplement");
  }
  lattice_ = host;
  host_ = std::make_shared<const OrthoPoset>(OrthoPoset::from_lattice(*host));
  init(std::move(carriers), std::move(names));
}

BlockPoset::BlockPoset(std::shared_ptr<const OrthoPoset> host,
                       std::vector<ElementSet> carriers, std::vector<std::string> names)
    : host_(std::move(host)) {
  init(std::move(carriers), std::move(names));
}

void BlockPoset::init(std::vector<ElementSet> carriers, std::vector<std::string> names) {
  const std::size_t n = host_->size();
  if (carriers.empty()) throw Error(ErrorKind::InvalidBlock, "block family is empty");
  if (!names.empty() && names.size() != carriers.size()) {
    throw Error(ErrorKind::InvalidBlock, "one name per block expected");
  }
  host_down_.assign(n, ElementSet(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (auto y : members_of(host_->up[x])) host_down_[y].set(x);
  }
  bool have_bottom = false;
  bool have_top = false;
  for (std::size_t x = 0; x < n; ++x) {
    if (host_->up[x].count() == n) {
      host_bottom_ = static_cast<ElementId>(x);
      have_bottom = true;
    }
    if (host_down_[x].count() == n) {
      host_top_ = static_cast<ElementId>(x);
      have_top = true;
    }
  }
  if (!have_bottom || !have_top) {
    throw Error(ErrorKind::InvalidBlock, "host has no least or greatest element");
  }

  const auto nb = carriers.size();
  blocks_.resize(nb);
  members_.resize(nb);
  local_.assign(nb, std::vector<int>(n, -1));
  meet_.resize(nb);
  join_.resize(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    auto& c = carriers[i];
    if (c.size() != n) throw Error(ErrorKind::InvalidBlock, "carrier has the wrong width");
    const auto ids = members_of(c);
    members_[i] = ids;
    for (std::size_t k = 0; k < ids.size(); ++k) local_[i][ids[k]] = static_cast<int>(k);
    const std::string where = std::to_string(i);
    if (!c.test(host_bottom_) || !c.test(host_top_)) {
      throw Error(ErrorKind::InvalidBlock, "block " + where + " misses the bounds");
    }
    for (auto x : ids) {
      if (!c.test(host_->perp[x])) {
        throw Error(ErrorKind::InvalidBlock, "block " + where + " is not closed under perp",
                    {host_->labels[x]});
      }
    }
    const std::size_t m = ids.size();
    meet_[i].assign(m * m, 0);
    join_[i].assign(m * m, 0);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a; b < m; ++b) {
        const auto x = ids[a];
        const auto y = ids[b];
        const ElementSet lower = c & host_down_[x] & host_down_[y];
        const ElementSet upper = c & host_->up[x] & host_->up[y];
        std::optional<ElementId> g;
        std::optional<ElementId> l;
        for (auto z : members_of(lower)) {
          if (lower.is_subset_of(host_down_[z])) g = z;
        }
        for (auto z : members_of(upper)) {
          if (upper.is_subset_of(host_->up[z])) l = z;
        }
        if (!g || !l) {
          throw Error(ErrorKind::InvalidBlock, "block " + where + " is not a lattice",
                      {host_->labels[x], host_->labels[y]});
        }
        if (lattice_ && (lattice_->meet(x, y) != *g || lattice_->join(x, y) != *l)) {
          throw Error(ErrorKind::InvalidBlock,
                      "block " + where + " is not closed under meet/join",
                      {host_->labels[x], host_->labels[y]});
        }
        meet_[i][a * m + b] = meet_[i][b * m + a] = *g;
        join_[i][a * m + b] = join_[i][b * m + a] = *l;
      }
    }
    for (auto x : ids) {
      const auto px = host_->perp[x];
      if (meet(i, x, px) != host_bottom_ || join(i, x, px) != host_top_) {
        throw Error(ErrorKind::InvalidBlock, "perp is not a complement in block " + where,
                    {host_->labels[x]});
      }
      for (auto y : ids) {
        for (auto z : ids) {
          if (meet(i, join(i, x, y), z) != join(i, meet(i, x, z), meet(i, y, z))) {
            throw Error(ErrorKind::InvalidBlock, "block " + where + " is not distributive",
                        {host_->labels[x], host_->labels[y], host_->labels[z]});
          }
        }
      }
    }
    ElementSet atoms(n);
    for (auto x : ids) {
      if (x == host_bottom_) continue;
      ElementSet strictly_below = c & host_down_[x];
      strictly_below.reset(x);
      strictly_below.reset(host_bottom_);
      if (strictly_below.none()) atoms.set(x);
    }
    for (auto x : ids) {
      ElementId acc = host_bottom_;
      for (auto a : members_of(atoms & host_down_[x])) acc = join(i, acc, a);
      if (acc != x) {
        throw Error(ErrorKind::InvalidBlock, "block " + where + " is not atomistic",
                    {host_->labels[x]});
      }
    }
    blocks_[i].carrier = c;
    blocks_[i].atoms = atoms;
    blocks_[i].name = names.empty() ? block_name(*host_, atoms) : names[i];
  }

  above_.assign(nb, ElementSet(nb));
  below_.assign(nb, ElementSet(nb));
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      if (blocks_[i].carrier.is_subset_of(blocks_[j].carrier)) {
        if (i != j && blocks_[i].carrier == blocks_[j].carrier) {
          throw Error(ErrorKind::InvalidBlock, "two blocks have the same carrier",
                      {blocks_[i].name, blocks_[j].name});
        }
        above_[i].set(j);
        below_[j].set(i);
      }
    }
  }
  std::set<std::string> seen;
  for (const auto& b : blocks_) {
    if (!seen.insert(b.name).second) {
      throw Error(ErrorKind::InvalidBlock, "duplicate block name", {b.name});
    }
  }
  bool found = false;
  for (std::size_t i = 0; i < nb; ++i) {
    if (above_[i].count() == nb) {
      bottom_ = i;
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorKind::InvalidBlock, "block family has no least block");
}

std::optional<std::size_t> BlockPoset::find(std::string_view name) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].name == name) return i;
  }
  return std::nullopt;
}

ElementId BlockPoset::meet(std::size_t i, ElementId x, ElementId y) const {
  const auto m = members_[i].size();
  return meet_[i][static_cast<std::size_t>(local_[i][x]) * m +
                  static_cast<std::size_t>(local_[i][y])];
}

ElementId BlockPoset::join(std::size_t i, ElementId x, ElementId y) const {
  const auto m = members_[i].size();
  return join_[i][static_cast<std::size_t>(local_[i][x]) * m +
                  static_cast<std::size_t>(local_[i][y])];
}

ElementId BlockPoset::greatest_below(std::size_t i,
                                     const std::vector<ElementId>& bounds) const {
  ElementSet cand = blocks_[i].carrier;
  for (auto b : bounds) cand &= host_down_[b];
  ElementId acc = host_bottom_;
  for (auto x : members_of(cand)) acc = join(i, acc, x);
  return acc;
}

ElementSet close_subset(const FiniteOrtholattice& L, ElementSet s) {
  bool changed = true;
  while (changed) {
    changed = false;
    const auto ids = members_of(s);
    for (auto x : ids) {
      if (!s.test(L.perp(x))) {
        s.set(L.perp(x));
        changed = true;
      }
      for (auto y : ids) {
        for (auto z : {L.meet(x, y), L.join(x, y)}) {
          if (!s.test(z)) {
            s.set(z);
            changed = true;
          }
        }
      }
    }
  }
  return s;
}

namespace {

bool distributive_within(const FiniteOrtholattice& L, const ElementSet& s) {
  const auto ids = members_of(s);
  for (auto x : ids) {
    for (auto y : ids) {
      for (auto z : ids) {
        if (L.meet(L.join(x, y), z) != L.join(L.meet(x, z), L.meet(y, z))) return false;
      }
    }
  }
  return true;
}

}  // namespace

BlockPoset enumerate_blocks(LatticePtr X, BlockMode mode, std::size_t budget) {
  const auto report = classify(*X);
  if (!report.is_orthomodular) {
    std::vector<std::string> witness;
    for (const auto& w : report.witnesses) {
      if (w.law != law::kOrthomodular) continue;
      for (auto e : w.elements) witness.push_back(X->label(e));
    }
    throw Error(ErrorKind::NotOrthomodular, "blocks need an orthomodular lattice",
                std::move(witness));
  }
  const std::size_t n = X->size();
  ElementSet start(n);
  start.set(X->bottom());
  start.set(X->top());

  std::vector<ElementSet> found{start};
  std::set<std::vector<ElementId>> seen{members_of(start)};
  std::deque<ElementSet> queue{start};
  while (!queue.empty()) {
    const ElementSet s = queue.front();
    queue.pop_front();
    for (std::size_t x = 0; x < n; ++x) {
      if (s.test(x)) continue;
      ElementSet grown = s;
      grown.set(x);
      grown = close_subset(*X, grown);
      if (!seen.insert(members_of(grown)).second) continue;
      if (!distributive_within(*X, grown)) continue;
      if (found.size() >= budget) {
        throw Error(ErrorKind::BudgetExceeded,
                    "block enumeration exceeds budget of " + std::to_string(budget));
      }
      found.push_back(grown);
      queue.push_back(grown);
    }
  }
  std::sort(found.begin(), found.end(), canonical_less);
  if (mode == BlockMode::Maximal) {
    std::vector<ElementSet> kept;
    for (std::size_t i = 0; i < found.size(); ++i) {
      bool maximal = true;
      for (std::size_t j = 0; j < found.size() && maximal; ++j) {
        if (i != j && found[i].is_proper_subset_of(found[j])) maximal = false;
      }
      if (maximal || found[i] == start) kept.push_back(found[i]);
    }
    found = std::move(kept);
  }
  return BlockPoset(std::move(X), std::move(found));
}

bool PartialBooleanReport::all_pass() const {
  return std::all_of(bullets.begin(), bullets.end(),
                     [](const BulletCheck& b) { return b.pass; });
}

namespace {

struct BlockView {
  const BlockPoset& P;
  std::vector<std::vector<ElementId>> ids;
  std::vector<ElementId> zero;
  std::vector<ElementId> one;

  explicit BlockView(const BlockPoset& p) : P(p) {
    for (std::size_t i = 0; i < P.size(); ++i) {
      ids.push_back(members_of(P.block(i).carrier));
      ElementId z = ids[i].front();
      ElementId o = ids[i].front();
      for (auto x : ids[i]) {
        z = P.meet(i, z, x);
        o = P.join(i, o, x);
      }
      zero.push_back(z);
      one.push_back(o);
    }
  }
  bool leq(std::size_t i, ElementId x, ElementId y) const { return P.meet(i, x, y) == x; }
  ElementId complement(std::size_t i, ElementId x) const {
    for (auto y : ids[i]) {
      if (P.meet(i, x, y) == zero[i] && P.join(i, x, y) == one[i]) return y;
    }
    return x;
  }
  bool in(std::size_t i, ElementId x) const { return P.contains(i, x); }
};

}  // namespace

PartialBooleanReport verify_partial_boolean(const BlockPoset& P) {
  const BlockView V(P);
  const auto& L = P.host().labels;
  const std::size_t nb = P.size();
  PartialBooleanReport r;

  BulletCheck zero{"shared-zero", true, {}};
  for (std::size_t i = 1; i < nb && zero.pass; ++i) {
    if (V.zero[i] != V.zero[0]) {
      zero.pass = false;
      zero.witness = {P.block(0).name, P.block(i).name};
    }
  }
  r.bullets.push_back(zero);

  BulletCheck order{"order-agreement", true, {}};
  BulletCheck compl_{"complement-agreement", true, {}};
  BulletCheck joins{"join-agreement", true, {}};
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = i + 1; j < nb; ++j) {
      const auto common = members_of(P.block(i).carrier & P.block(j).carrier);
      for (auto x : common) {
        if (compl_.pass && V.complement(i, x) != V.complement(j, x)) {
          compl_.pass = false;
          compl_.witness = {P.block(i).name, P.block(j).name, L[x]};
        }
        for (auto y : common) {
          if (order.pass && V.leq(i, x, y) != V.leq(j, x, y)) {
            order.pass = false;
            order.witness = {P.block(i).name, P.block(j).name, L[x], L[y]};
          }
          if (joins.pass && P.join(i, x, y) != P.join(j, x, y)) {
            joins.pass = false;
            joins.witness = {P.block(i).name, P.block(j).name, L[x], L[y]};
          }
        }
      }
    }
  }

  BulletCheck compose{"order-composable", true, {}};
  for (std::size_t i = 0; i < nb && compose.pass; ++i) {
    for (auto x : V.ids[i]) {
      for (auto y : V.ids[i]) {
        if (!V.leq(i, x, y)) continue;
        for (std::size_t j = 0; j < nb && compose.pass; ++j) {
          if (!V.in(j, y)) continue;
          for (auto z : V.ids[j]) {
            if (!V.leq(j, y, z)) continue;
            bool ok = false;
            for (std::size_t k = 0; k < nb && !ok; ++k) {
              ok = V.in(k, x) && V.in(k, z) && V.leq(k, x, z);
            }
            if (!ok) {
              compose.pass = false;
              compose.witness = {L[x], L[y], L[z]};
              break;
            }
          }
        }
        if (!compose.pass) break;
      }
      if (!compose.pass) break;
    }
  }

  BulletCheck triples{"orthogonal-triples", true, {}};
  for (std::size_t i = 0; i < nb && triples.pass; ++i) {
    for (auto x : V.ids[i]) {
      for (auto y : V.ids[i]) {
        if (!V.leq(i, y, V.complement(i, x))) continue;
        for (std::size_t j = 0; j < nb && triples.pass; ++j) {
          if (!V.in(j, x)) continue;
          for (auto z : V.ids[j]) {
            if (!V.leq(j, x, z)) continue;
            bool y_below = false;
            for (std::size_t k = 0; k < nb && !y_below; ++k) {
              y_below = V.in(k, y) && V.in(k, z) && V.leq(k, y, z);
            }
            if (!y_below) continue;
            bool common = false;
            for (std::size_t l = 0; l < nb && !common; ++l) {
              common = V.in(l, x) && V.in(l, y) && V.in(l, z);
            }
            if (!common) {
              triples.pass = false;
              triples.witness = {L[x], L[y], L[z]};
              break;
            }
          }
        }
        if (!triples.pass) break;
      }
      if (!triples.pass) break;
    }
  }

  r.bullets.push_back(order);
  r.bullets.push_back(compose);
  r.bullets.push_back(compl_);
  r.bullets.push_back(joins);
  r.bullets.push_back(triples);
  return r;
}

FiniteOrtholattice amalgamate(const BlockPoset& P) {
  const BlockView V(P);
  const auto& H = P.host();
  ElementSet all(H.size());
  for (const auto& b : P.blocks()) all |= b.carrier;
  const auto ids = members_of(all);
  std::vector<int> local(H.size(), -1);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    local[ids[k]] = static_cast<int>(k);
    labels.push_back(H.labels[ids[k]]);
  }
  auto loc = [&](ElementId x) { return static_cast<ElementId>(local[x]); };

  std::vector<ElementPair> pairs;
  std::vector<int> perp(ids.size(), -1);
  for (std::size_t i = 0; i < P.size(); ++i) {
    for (auto x : V.ids[i]) {
      const auto c = loc(V.complement(i, x));
      if (perp[loc(x)] >= 0 && static_cast<ElementId>(perp[loc(x)]) != c) {
        throw Error(ErrorKind::AmalgamationConflict, "blocks disagree on a complement",
                    {H.labels[x]});
      }
      perp[loc(x)] = static_cast<int>(c);
      for (auto y : V.ids[i]) {
        if (x != y && V.leq(i, x, y)) pairs.emplace_back(loc(x), loc(y));
      }
    }
  }
  std::vector<ElementId> perp_ids(perp.begin(), perp.end());

  std::optional<FiniteOrtholattice> out;
  try {
    out.emplace(FiniteOrtholattice::build(labels, pairs, RelationKind::Leq, perp_ids));
  } catch (const Error& e) {
    throw Error(ErrorKind::AmalgamationConflict,
                std::string("union does not form an ortholattice (") + e.what() + ")",
                e.witness());
  }
  for (std::size_t i = 0; i < P.size(); ++i) {
    for (auto x : V.ids[i]) {
      for (auto y : V.ids[i]) {
        if (out->meet(loc(x), loc(y)) != loc(P.meet(i, x, y)) ||
            out->join(loc(x), loc(y)) != loc(P.join(i, x, y))) {
          throw Error(ErrorKind::AmalgamationConflict,
                      "amalgamated operations disagree with block " + P.block(i).name,
                      {H.labels[x], H.labels[y]});
        }
      }
    }
  }
  return std::move(*out);
}

}  // namespace qlogic
