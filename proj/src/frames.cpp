#include "qlogic/frames.hpp"

#include <algorithm>

#include "qlogic/error.hpp"
#include "qlogic/worked_example.hpp"

namespace qlogic {

FiniteOrtholattice inclusion_lattice(const std::vector<ElementSet>& sets,
                                     const std::vector<std::string>& labels) {
  std::vector<ElementPair> pairs;
  for (std::size_t a = 0; a < sets.size(); ++a) {
    for (std::size_t b = 0; b < sets.size(); ++b) {
      if (a != b && sets[a].is_subset_of(sets[b])) {
        pairs.emplace_back(static_cast<ElementId>(a), static_cast<ElementId>(b));
      }
    }
  }
  return FiniteOrtholattice::build(labels, pairs, RelationKind::Leq, std::nullopt);
}

DownsetFrame::DownsetFrame(LatticePtr base, std::vector<ElementSet> members,
                           std::string kind)
    : base_(std::move(base)), kind_(std::move(kind)) {
  for (const auto& m : members) {
    if (m.size() != base_->size() || !is_downset(*base_, m)) {
      throw Error(ErrorKind::PreconditionViolated, "frame member is not a downset",
                  {base_->format_set(m)});
    }
  }
  std::sort(members.begin(), members.end(), canonical_less);
  members.erase(std::unique(members.begin(), members.end()), members.end());
  members_ = std::move(members);
  if (members_.empty()) {
    order_failure_ = "no members";
    return;
  }
  std::vector<std::string> labels;
  for (const auto& m : members_) labels.push_back(base_->format_set(m));
  try {
    order_.emplace(inclusion_lattice(members_, labels));
  } catch (const Error& e) {
    order_failure_ = e.what();
  }
}

std::optional<std::size_t> DownsetFrame::index_of(const ElementSet& s) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), s, canonical_less);
  if (it == members_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

IdealCompletion ideal_completion(LatticePtr L) {
  std::vector<ElementSet> members;
  for (std::size_t x = 0; x < L->size(); ++x) {
    members.push_back(L->down(static_cast<ElementId>(x)));
  }
  DownsetFrame F(L, members, "ideals");
  std::vector<std::size_t> map;
  for (const auto& m : members) map.push_back(*F.index_of(m));
  return IdealCompletion{std::move(F), std::move(map)};
}

FrameCheck check_frame(const DownsetFrame& F) {
  FrameCheck r;
  if (!F.order()) {
    r.note = F.order_failure();
    return r;
  }
  const auto& O = *F.order();
  r.is_lattice = true;
  r.has_bounds = O.size() > 0;
  const auto report = classify(O);
  r.is_distributive = report.is_distributive;
  for (const auto& w : report.witnesses) {
    if (w.law != law::kDistributive) continue;
    for (auto e : w.elements) r.witness.push_back(O.label(e));
    r.note = "(x v y) ^ z != (x ^ z) v (y ^ z)";
  }
  return r;
}

bool is_distributive_downset(const FiniteOrtholattice& L, const ElementSet& M) {
  if (M.none()) return false;
  const auto top = L.join_of(M);
  const auto ids = members_of(M);
  for (ElementId l = 0; l < L.size(); ++l) {
    ElementId rhs = L.bottom();
    for (auto m : ids) rhs = L.join(rhs, L.meet(m, l));
    if (L.meet(top, l) != rhs) return false;
  }
  return true;
}

BrunsLakserReport bruns_lakser(LatticePtr L, std::size_t budget) {
  BrunsLakserReport r;
  std::vector<ElementSet> def;
  for (const auto& M : downsets(*L, budget)) {
    if (is_distributive_downset(*L, M)) def.push_back(M);
  }
  r.definitional.emplace(L, std::move(def), "distributive-ideals");
  r.definitional_check = check_frame(*r.definitional);

  const auto ref = hasse_example();
  const auto image = L->has_perp() ? find_isomorphism(*ref, *L) : std::nullopt;
  if (image) {
    auto fam = union_family(*L, *image);
    r.family_generators = fam.size();
    r.family.emplace(L, std::move(fam), "union-family");
    r.family_check = check_frame(*r.family);
    const auto& A = r.definitional->members();
    const auto& B = r.family->members();
    for (const auto& m : A) {
      (r.family->index_of(m) ? r.in_both : r.only_definitional).push_back(m);
    }
    for (const auto& m : B) {
      if (!r.definitional->index_of(m)) r.only_family.push_back(m);
    }
  }
  return r;
}

std::vector<std::vector<bool>> lattice_points(const FiniteOrtholattice& O) {
  const auto n = static_cast<ElementId>(O.size());
  std::vector<std::vector<bool>> out;
  for (ElementId m = 0; m < n; ++m) {
    if (m == O.top()) continue;
    bool prime = true;
    for (ElementId x = 0; x < n && prime; ++x) {
      if (O.leq(x, m)) continue;
      for (ElementId y = 0; y < n; ++y) {
        if (!O.leq(y, m) && O.leq(O.meet(x, y), m)) {
          prime = false;
          break;
        }
      }
    }
    if (!prime) continue;
    std::vector<bool> phi(n);
    for (ElementId u = 0; u < n; ++u) phi[u] = !O.leq(u, m);
    out.push_back(std::move(phi));
  }
  return out;
}

bool is_frame_point(const FiniteOrtholattice& O, const std::vector<bool>& phi) {
  const auto n = static_cast<ElementId>(O.size());
  if (phi.size() != n || phi[O.bottom()] || !phi[O.top()]) return false;
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = 0; y < n; ++y) {
      if (phi[O.meet(x, y)] != (phi[x] && phi[y])) return false;
      if (phi[O.join(x, y)] != (phi[x] || phi[y])) return false;
    }
  }
  return true;
}

std::vector<FramePoint> frame_points(const DownsetFrame& F, std::size_t budget) {
  if (F.size() > budget) {
    throw Error(ErrorKind::BudgetExceeded,
                "frame has more than " + std::to_string(budget) + " members");
  }
  if (!F.order()) {
    throw Error(ErrorKind::PreconditionViolated,
                "frame members do not form a lattice: " + F.order_failure());
  }
  const auto& O = *F.order();
  std::vector<FramePoint> out;
  for (auto& phi : lattice_points(O)) {
    FramePoint p;
    ElementId kernel = O.bottom();
    for (std::size_t k = 0; k < phi.size(); ++k) {
      if (!phi[k]) kernel = O.join(kernel, static_cast<ElementId>(k));
    }
    p.kernel = kernel;
    p.assignment = std::move(phi);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace qlogic
