#include "qlogic/quantum_logic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qlogic/error.hpp"

namespace qlogic {

namespace {

std::string mask_label(const std::string& context, AtomMask m) {
  std::string s = context + "{";
  bool first = true;
  for (std::size_t k = 0; k < 64; ++k) {
    if (!(m >> k & 1u)) continue;
    if (!first) s += ',';
    s += std::to_string(k);
    first = false;
  }
  return s + "}";
}

}  // namespace

BohrImage::BohrImage(ContextPoset poset, const Tolerances& tol) : poset_(std::move(poset)) {
  const auto nc = poset_.size();
  const auto n = poset_.dim();
  std::vector<std::string> labels;
  element_.resize(nc);
  mask_.resize(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    const auto& C = poset_.context(i);
    if (C.size() > 20) {
      throw Error(ErrorKind::BudgetExceeded, "context " + poset_.name(i) + " has too many atoms");
    }
    const AtomMask full = C.full();
    element_[i].resize(static_cast<std::size_t>(full) + 1);
    for (AtomMask m = 0; m <= full; ++m) {
      Matrix p = C.projection(m);
      std::optional<ElementId> id;
      for (std::size_t x = 0; x < projections_.size(); ++x) {
        if (max_abs(projections_[x].matrix() - p) <= tol.proj) {
          id = static_cast<ElementId>(x);
          break;
        }
      }
      if (!id) {
        id = static_cast<ElementId>(projections_.size());
        projections_.push_back(MatProjection::trusted(std::move(p)));
        if (m == 0) {
          labels.emplace_back("0");
        } else if (max_abs(projections_.back().matrix() - Matrix::Identity(n, n)) <= tol.proj) {
          labels.emplace_back("1");
        } else {
          labels.push_back(mask_label(poset_.name(i), m));
        }
      }
      element_[i][static_cast<std::size_t>(m)] = *id;
      mask_[i][*id] = m;
    }
  }
  auto host = std::make_shared<OrthoPoset>();
  const auto h = projections_.size();
  host->labels = std::move(labels);
  host->up.assign(h, ElementSet(h));
  host->perp.assign(h, 0);
  for (std::size_t x = 0; x < h; ++x) {
    for (std::size_t y = 0; y < h; ++y) {
      if (proj_order(projections_[x], projections_[y], tol)) host->up[x].set(y);
    }
  }
  for (std::size_t i = 0; i < nc; ++i) {
    const AtomMask full = poset_.context(i).full();
    for (const auto& [x, m] : mask_[i]) host->perp[x] = element_[i][full & ~m];
  }
  std::vector<ElementSet> carriers;
  for (std::size_t i = 0; i < nc; ++i) {
    ElementSet c(h);
    for (auto x : element_[i]) c.set(x);
    carriers.push_back(c);
  }
  blocks_ = std::make_shared<const BlockPoset>(std::shared_ptr<const OrthoPoset>(host),
                                               std::move(carriers), poset_.names());
}

ElementId BohrImage::element(std::size_t i, AtomMask m) const {
  return element_.at(i).at(static_cast<std::size_t>(m));
}

AtomMask BohrImage::atoms_of(std::size_t i, ElementId x) const {
  auto it = mask_.at(i).find(x);
  if (it == mask_[i].end()) {
    throw Error(ErrorKind::NotInContext, "projection is not in context " + poset_.name(i));
  }
  return it->second;
}

DensityState DensityState::from_matrix(Matrix rho, const Tolerances& tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw Error(ErrorKind::InvalidState, "density matrix must be square");
  }
  if (!rho.allFinite()) throw Error(ErrorKind::InvalidState, "non-finite entry");
  if (!is_hermitian(rho, tol.val)) throw Error(ErrorKind::InvalidState, "not hermitian");
  const Matrix h = (rho + rho.adjoint()) * 0.5;
  const double lo =
      Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues()[0];
  if (lo < -tol.val) {
    throw Error(ErrorKind::InvalidState, "negative eigenvalue " + std::to_string(lo));
  }
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > tol.val) {
    throw Error(ErrorKind::InvalidState, "trace " + std::to_string(tr));
  }
  return DensityState(h);
}

DensityState DensityState::pure(const Eigen::VectorXcd& v) {
  const double norm = v.norm();
  if (norm == 0.0) throw Error(ErrorKind::InvalidState, "zero vector");
  const Eigen::VectorXcd u = v / norm;
  return DensityState(u * u.adjoint());
}

double DensityState::expectation(const Matrix& p) const {
  return (rho_ * p).trace().real();
}

Section daseinise(const MatProjection& p, const BohrImage& image, const Tolerances& tol) {
  const auto& P = image.poset();
  if (p.dim() != P.dim()) throw Error(ErrorKind::DimMismatch, "projection has the wrong dimension");
  std::vector<ElementId> values;
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto m = P.context(i).decompose(p.matrix(), tol.proj);
    values.push_back(m ? image.element(i, *m) : image.element(i, 0));
  }
  return make_section(image.blocks(), std::move(values));
}

namespace {

ContextSet upward(const ContextPoset& P, ElementSet s) {
  ContextSet out{std::move(s), true};
  for (auto i : members_of(out.contexts)) {
    if (!P.up(i).is_subset_of(out.contexts)) out.upward_closed = false;
  }
  return out;
}

}  // namespace

ContextSet kripke_valuation(const DensityState& psi, const Section& S, const BohrImage& image,
                            const Tolerances& tol) {
  const auto& P = image.poset();
  if (psi.dim() != P.dim()) throw Error(ErrorKind::DimMismatch, "state has the wrong dimension");
  if (S.base != image.blocks()) throw Error(ErrorKind::MixedBase, "section over another poset");
  ElementSet s(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (psi.expectation(image.projection(S.values[i]).matrix()) >= 1.0 - tol.val) s.set(i);
  }
  return upward(P, std::move(s));
}

bool classical_truth(const DensityState& psi, const MatProjection& p, const Tolerances& tol) {
  if (psi.dim() != p.dim()) throw Error(ErrorKind::DimMismatch, "state has the wrong dimension");
  return psi.expectation(p.matrix()) >= 1.0 - tol.val;
}

std::optional<std::size_t> ExternalSpectrum::index_of(const SpectrumMember& m) const {
  auto it = std::lower_bound(members.begin(), members.end(), m);
  if (it == members.end() || *it != m) return std::nullopt;
  return static_cast<std::size_t>(it - members.begin());
}

bool ExternalSpectrum::is_member(const SpectrumMember& m) const {
  const auto& P = image->poset();
  if (m.size() != P.size()) return false;
  for (std::size_t i = 0; i < P.size(); ++i) {
    if ((m[i] & ~P.context(i).full()) != 0) return false;
    for (auto j : members_of(P.up(i))) {
      for (std::size_t k = 0; k < P.context(i).size(); ++k) {
        if (!(m[i] >> k & 1u)) continue;
        const AtomMask under = P.atoms_under(i, j, k);
        if ((under & ~m[j]) != 0) return false;
      }
    }
  }
  return true;
}

bool ExternalSpectrum::leq(const SpectrumMember& a, const SpectrumMember& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

FiniteOrtholattice ExternalSpectrum::order_lattice() const {
  std::vector<std::string> labels;
  const auto& P = image->poset();
  for (const auto& m : members) {
    std::string s = "{";
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) s += ", ";
      s += mask_label(P.name(i), m[i]);
    }
    labels.push_back(s + "}");
  }
  std::vector<ElementPair> pairs;
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = 0; b < members.size(); ++b) {
      if (a != b && leq(members[a], members[b])) {
        pairs.emplace_back(static_cast<ElementId>(a), static_cast<ElementId>(b));
      }
    }
  }
  return FiniteOrtholattice::build(std::move(labels), pairs, RelationKind::Leq, std::nullopt);
}

SpectrumMember ExternalSpectrum::basis(const Section& s) const {
  if (s.base != image->blocks()) throw Error(ErrorKind::MixedBase, "section over another poset");
  SpectrumMember m;
  for (std::size_t i = 0; i < s.values.size(); ++i) m.push_back(image->atoms_of(i, s.values[i]));
  return m;
}

Section ExternalSpectrum::section_of(const SpectrumMember& m) const {
  std::vector<ElementId> values;
  for (std::size_t i = 0; i < m.size(); ++i) values.push_back(image->element(i, m[i]));
  return make_section(image->blocks(), std::move(values));
}

ExternalSpectrum external_spectrum(BohrImagePtr image, std::size_t budget) {
  ExternalSpectrum X;
  X.image = image;
  const auto& P = image->poset();
  const auto nc = P.size();
  SpectrumMember current(nc, 0);
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == nc) {
      if (X.members.size() >= budget) {
        throw Error(ErrorKind::BudgetExceeded,
                    "external spectrum exceeds budget of " + std::to_string(budget));
      }
      X.members.push_back(current);
      return;
    }
    AtomMask required = 0;
    for (std::size_t i = 0; i < j; ++i) {
      if (!P.leq(i, j)) continue;
      for (std::size_t k = 0; k < P.context(i).size(); ++k) {
        if (current[i] >> k & 1u) required |= P.atoms_under(i, j, k);
      }
    }
    const AtomMask free = P.context(j).full() & ~required;
    AtomMask sub = free;
    while (true) {
      current[j] = required | sub;
      self(self, j + 1);
      if (sub == 0) break;
      sub = (sub - 1) & free;
    }
    current[j] = 0;
  };
  rec(rec, 0);
  std::sort(X.members.begin(), X.members.end());
  return X;
}

DensityReport check_density(const ExternalSpectrum& X, const BohrAlgebra& Y) {
  if (!Y.enumeration) throw Error(ErrorKind::BudgetExceeded, "section algebra was not enumerated");
  if (Y.base != X.image->blocks()) throw Error(ErrorKind::MixedBase, "different posets");
  DensityReport r;
  r.sections = Y.enumeration->size();
  r.members = X.size();
  std::vector<SpectrumMember> images;
  std::set<SpectrumMember> seen;
  for (const auto& s : *Y.enumeration) {
    auto b = X.basis(s);
    if (!X.is_member(b) || !X.index_of(b)) {
      if (r.basis_in_frame) r.witness.push_back(format_section(s));
      r.basis_in_frame = false;
    }
    if (!seen.insert(b).second) r.injective = false;
    images.push_back(std::move(b));
  }
  for (const auto& U : X.members) {
    SpectrumMember acc(U.size(), 0);
    for (const auto& b : images) {
      if (!ExternalSpectrum::leq(b, U)) continue;
      for (std::size_t i = 0; i < U.size(); ++i) acc[i] |= b[i];
    }
    if (acc != U) {
      if (r.dense) r.witness.push_back("member " + std::to_string(*X.index_of(U)));
      r.dense = false;
    }
  }
  return r;
}

BridgeReport measure_valuation_bridge(const DensityState& psi, const BohrImage& image,
                                      const ExternalSpectrum* spectrum, const Tolerances& tol) {
  const auto& P = image.poset();
  if (psi.dim() != P.dim()) throw Error(ErrorKind::InvalidState, "state has the wrong dimension");
  BridgeReport r;
  auto check = [&](bool ok, const std::string& what) {
    ++r.checks;
    if (!ok && r.failures.size() < 20) r.failures.push_back(what);
  };
  const double eps = tol.val;
  std::vector<std::vector<double>> mu(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto& C = P.context(i);
    const auto& name = P.name(i);
    const AtomMask full = C.full();
    mu[i].resize(static_cast<std::size_t>(full) + 1);
    for (AtomMask m = 0; m <= full; ++m) mu[i][m] = psi.expectation(C.projection(m));
    std::vector<double> atoms;
    for (std::size_t k = 0; k < C.size(); ++k) atoms.push_back(mu[i][AtomMask{1} << k]);
    r.atom_measures.push_back(atoms);

    check(std::abs(mu[i][0]) <= eps, name + ": mu(0) = 0");
    check(std::abs(mu[i][full] - 1.0) <= eps, name + ": mu(1) = 1");
    for (AtomMask a = 0; a <= full; ++a) {
      check(mu[i][a] >= -eps, name + ": mu >= 0");
      for (AtomMask b = 0; b <= full; ++b) {
        const auto pa = MatProjection::trusted(C.projection(a));
        const auto pb = MatProjection::trusted(C.projection(b));
        double meet_mu;
        double join_mu;
        if (C.size() <= 6) {
          meet_mu = psi.expectation(proj_meet(pa, pb, tol).matrix());
          join_mu = psi.expectation(proj_join(pa, pb, tol).matrix());
        } else {
          meet_mu = mu[i][a & b];
          join_mu = mu[i][a | b];
        }
        check(std::abs(mu[i][a] + mu[i][b] - meet_mu - join_mu) <= eps,
              name + ": modular law " + mask_label("", a) + " " + mask_label("", b));
        if ((a & ~b) == 0) check(mu[i][a] <= mu[i][b] + eps, name + ": monotone");
        if ((a & b) == 0) {
          check(std::abs(mu[i][a | b] - mu[i][a] - mu[i][b]) <= eps,
                name + ": additivity " + mask_label("", a) + " " + mask_label("", b));
        }
      }
    }
  }
  if (spectrum) {
    const auto& M = spectrum->members;
    auto nu = [&](std::size_t i, const SpectrumMember& U) { return mu[i][U[i]]; };
    for (std::size_t a = 0; a < M.size(); ++a) {
      for (std::size_t b = 0; b < M.size(); ++b) {
        SpectrumMember meet(M[a].size());
        SpectrumMember join(M[a].size());
        for (std::size_t i = 0; i < meet.size(); ++i) {
          meet[i] = M[a][i] & M[b][i];
          join[i] = M[a][i] | M[b][i];
        }
        const bool comparable = ExternalSpectrum::leq(M[a], M[b]);
        for (std::size_t i = 0; i < P.size(); ++i) {
          check(std::abs(nu(i, M[a]) + nu(i, M[b]) - nu(i, meet) - nu(i, join)) <= eps,
                P.name(i) + ": valuation modular law");
          if (comparable) {
            check(nu(i, M[a]) <= nu(i, M[b]) + eps, P.name(i) + ": valuation monotone");
            check(std::abs(nu(i, join) - std::max(nu(i, M[a]), nu(i, M[b]))) <= eps,
                  P.name(i) + ": valuation preserves directed joins");
          }
        }
      }
    }
  }
  return r;
}

ContextSet pairing(const DensityState& psi, const SpectrumMember& U, const BohrImage& image,
                   const Tolerances& tol) {
  const auto& P = image.poset();
  if (U.size() != P.size()) throw Error(ErrorKind::MixedBase, "member over another poset");
  if (psi.dim() != P.dim()) throw Error(ErrorKind::DimMismatch, "state has the wrong dimension");
  ElementSet s(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (psi.expectation(P.context(i).projection(U[i])) >= 1.0 - tol.val) s.set(i);
  }
  return upward(P, std::move(s));
}

}  // namespace qlogic
