#include "qlogic/context.hpp"

#include <algorithm>
#include <numeric>

#include "qlogic/error.hpp"

namespace qlogic {

Context Context::from_atoms(std::vector<MatProjection> atoms, const Tolerances& tol) {
  if (atoms.empty()) throw Error(ErrorKind::PreconditionViolated, "context needs atoms");
  if (atoms.size() > 64) {
    throw Error(ErrorKind::PreconditionViolated, "at most 64 atoms are supported");
  }
  const auto n = atoms.front().dim();
  Matrix sum = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].dim() != n) throw Error(ErrorKind::DimMismatch, "atoms of mixed dimension");
    if (max_abs(atoms[i].matrix()) <= tol.proj) {
      throw Error(ErrorKind::NotAProjection, "zero atom", {std::to_string(i)});
    }
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      const double d = max_abs(atoms[i].matrix() * atoms[j].matrix());
      if (d > tol.proj) {
        throw Error(ErrorKind::NotOrthogonal, "atoms overlap, |e_i e_j| = " + std::to_string(d),
                    {std::to_string(i), std::to_string(j)});
      }
    }
    sum += atoms[i].matrix();
  }
  const double gap = max_abs(sum - Matrix::Identity(n, n));
  if (gap > tol.proj) {
    throw Error(ErrorKind::ToleranceViolated, "atoms do not sum to 1, gap " + std::to_string(gap));
  }
  return Context(std::move(atoms), n);
}

Context Context::trivial(Eigen::Index n) {
  return Context({MatProjection::identity(n)}, n);
}

Matrix Context::projection(AtomMask s) const {
  Matrix p = Matrix::Zero(dim_, dim_);
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (s >> k & 1u) p += atoms_[k].matrix();
  }
  return p;
}

Eigen::VectorXcd Context::coefficients(const Matrix& a) const {
  Eigen::VectorXcd c(static_cast<Eigen::Index>(atoms_.size()));
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const auto& e = atoms_[k].matrix();
    c[static_cast<Eigen::Index>(k)] = (a * e).trace() / e.trace();
  }
  return c;
}

bool Context::contains(const Matrix& a, double tol) const {
  if (a.rows() != dim_ || a.cols() != dim_) return false;
  const auto c = coefficients(a);
  Matrix r = a;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    r -= c[static_cast<Eigen::Index>(k)] * atoms_[k].matrix();
  }
  return max_abs(r) <= tol;
}

std::optional<AtomMask> Context::decompose(const Matrix& p, double tol) const {
  if (p.rows() != dim_ || p.cols() != dim_) return std::nullopt;
  const auto c = coefficients(p);
  AtomMask m = 0;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (std::abs(c[static_cast<Eigen::Index>(k)] - 1.0) < 0.5) m |= AtomMask{1} << k;
  }
  if (max_abs(p - projection(m)) > tol) return std::nullopt;
  return m;
}

Context context_generate(const std::vector<MatProjection>& projs, Eigen::Index dim,
                         const Tolerances& tol) {
  for (std::size_t i = 0; i < projs.size(); ++i) {
    if (projs[i].dim() != dim) throw Error(ErrorKind::DimMismatch, "generator of wrong dimension");
    for (std::size_t j = i + 1; j < projs.size(); ++j) {
      const double c = max_abs(projs[i].matrix() * projs[j].matrix() -
                               projs[j].matrix() * projs[i].matrix());
      if (c > tol.proj) {
        throw Error(ErrorKind::NotCommuting, "|pq - qp| = " + std::to_string(c),
                    {std::to_string(i), std::to_string(j)});
      }
    }
  }
  std::vector<Matrix> atoms{Matrix::Identity(dim, dim)};
  const Matrix one = Matrix::Identity(dim, dim);
  for (const auto& p : projs) {
    std::vector<Matrix> next;
    for (const auto& e : atoms) {
      for (const Matrix& part : {Matrix(e * p.matrix()), Matrix(e * (one - p.matrix()))}) {
        if (max_abs(part) > tol.proj) next.push_back(part);
      }
    }
    atoms = std::move(next);
  }
  std::vector<MatProjection> out;
  for (auto& e : atoms) out.push_back(MatProjection::from_matrix((e + e.adjoint()) * 0.5, tol));
  return Context::from_atoms(std::move(out), tol);
}

bool refines(const Context& C, const Context& D, const Tolerances& tol) {
  if (C.dim() != D.dim()) return false;
  for (const auto& e : C.atoms()) {
    if (!D.decompose(e.matrix(), tol.proj)) return false;
  }
  return true;
}

bool same_context(const Context& C, const Context& D, const Tolerances& tol) {
  return C.size() == D.size() && refines(C, D, tol) && refines(D, C, tol);
}

Context context_intersection(const Context& C, const Context& D, const Tolerances& tol) {
  if (C.dim() != D.dim()) throw Error(ErrorKind::DimMismatch, "contexts of mixed dimension");
  const std::size_t k = C.size();
  const std::size_t l = D.size();
  std::vector<std::size_t> parent(k + l);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      if (max_abs(C.atom(i).matrix() * D.atom(j).matrix()) > tol.proj) {
        parent[root(i)] = root(k + j);
      }
    }
  }
  std::vector<std::size_t> roots;
  std::vector<Matrix> sums;
  for (std::size_t i = 0; i < k; ++i) {
    const auto r = root(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      sums.push_back(C.atom(i).matrix());
    } else {
      sums[static_cast<std::size_t>(it - roots.begin())] += C.atom(i).matrix();
    }
  }
  std::vector<MatProjection> atoms;
  for (auto& s : sums) atoms.push_back(MatProjection::trusted(std::move(s)));
  return Context::from_atoms(std::move(atoms), tol);
}

ContextPoset ContextPoset::build(std::vector<Context> contexts, std::vector<std::string> names,
                                 bool close_under_meet, const Tolerances& tol) {
  if (!names.empty() && names.size() != contexts.size()) {
    throw Error(ErrorKind::PreconditionViolated, "one name per context expected");
  }
  if (names.empty()) {
    for (std::size_t i = 0; i < contexts.size(); ++i) names.push_back("C" + std::to_string(i + 1));
  }
  if (contexts.empty()) {
    throw Error(ErrorKind::PreconditionViolated, "context family is empty");
  }
  const auto n = contexts.front().dim();
  for (const auto& c : contexts) {
    if (c.dim() != n) throw Error(ErrorKind::DimMismatch, "contexts of mixed dimension");
  }
  ContextPoset P;
  auto add = [&](Context c, std::string name) {
    for (const auto& d : P.contexts_) {
      if (same_context(c, d, tol)) return false;
    }
    P.contexts_.push_back(std::move(c));
    P.names_.push_back(std::move(name));
    return true;
  };
  add(Context::trivial(n), "trivial");
  for (std::size_t i = 0; i < contexts.size(); ++i) add(contexts[i], names[i]);
  if (close_under_meet) {
    bool grew = true;
    while (grew) {
      grew = false;
      const auto m = P.contexts_.size();
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
          auto c = context_intersection(P.contexts_[i], P.contexts_[j], tol);
          if (add(std::move(c), P.names_[i] + "^" + P.names_[j])) grew = true;
        }
      }
    }
  }
  std::vector<std::size_t> order(P.contexts_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return P.contexts_[a].size() < P.contexts_[b].size();
  });
  std::vector<Context> sorted;
  std::vector<std::string> sorted_names;
  for (auto i : order) {
    sorted.push_back(P.contexts_[i]);
    sorted_names.push_back(P.names_[i]);
  }
  P.contexts_ = std::move(sorted);
  P.names_ = std::move(sorted_names);
  P.finish(tol);
  return P;
}

ContextPoset ContextPoset::single(Context C, std::string name) {
  ContextPoset P;
  P.contexts_.push_back(std::move(C));
  P.names_.push_back(std::move(name));
  P.finish({});
  return P;
}

void ContextPoset::finish(const Tolerances& tol) {
  const auto m = contexts_.size();
  up_.assign(m, ElementSet(m));
  under_.assign(m, std::vector<std::vector<AtomMask>>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!refines(contexts_[i], contexts_[j], tol)) continue;
      up_[i].set(j);
      for (const auto& e : contexts_[i].atoms()) {
        under_[i][j].push_back(*contexts_[j].decompose(e.matrix(), tol.proj));
      }
    }
  }
  bool found = false;
  for (std::size_t i = 0; i < m; ++i) {
    if (up_[i].count() == m) {
      bottom_ = i;
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorKind::PreconditionViolated, "context family has no least element");
}

std::optional<std::size_t> ContextPoset::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

AtomMask ContextPoset::atoms_under(std::size_t i, std::size_t j, std::size_t k) const {
  if (!leq(i, j)) throw Error(ErrorKind::PreconditionViolated, "contexts are not ordered");
  return under_[i][j].at(k);
}

RelativeRickartReport relative_rickart_check(const Matrix& x, const Context& C,
                                             const Context& D, const Tolerances& tol) {
  if (!refines(C, D, tol)) {
    throw Error(ErrorKind::PreconditionViolated, "C is not contained in D");
  }
  if (!C.contains(x, tol.proj)) {
    throw Error(ErrorKind::PreconditionViolated, "x does not lie in C");
  }
  RelativeRickartReport r{right_projection(x, tol), 0, std::nullopt, false};
  const auto c = D.coefficients(x);
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    if (std::abs(c[k]) > tol.rank) r.in_D |= AtomMask{1} << k;
  }
  const Matrix p = D.projection(r.in_D);
  r.matches_matrix = max_abs(p - r.rp_matrix.matrix()) <= tol.proj;
  r.in_C = C.decompose(p, tol.proj);
  return r;
}

AtomMask spectrum_basis(const Matrix& a, const Context& C, const Tolerances& tol) {
  if (!C.contains(a, tol.proj)) {
    throw Error(ErrorKind::NotInContext, "element is not a combination of the atoms");
  }
  const auto c = C.coefficients(a);
  AtomMask m = 0;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    if (std::abs(c[k].imag()) > tol.proj) {
      throw Error(ErrorKind::NotHermitian, "element has a non-real spectral value");
    }
    if (c[k].real() > tol.rank) m |= AtomMask{1} << k;
  }
  return m;
}

bool RelationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.pass; });
}

namespace {

double min_eigenvalue(const Matrix& a) {
  const Matrix h = (a + a.adjoint()) * 0.5;
  return Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues()[0];
}

bool subset(AtomMask a, AtomMask b) { return (a & ~b) == 0; }

}  // namespace

RelationReport spectrum_relations(const Matrix& a, const Matrix& b, const Context& C,
                                  const Tolerances& tol) {
  const auto n = C.dim();
  const Matrix one = Matrix::Identity(n, n);
  auto D = [&](const Matrix& m) { return spectrum_basis(m, C, tol); };
  const AtomMask Da = D(a);
  const AtomMask Db = D(b);
  const AtomMask Dna = D(-a);
  const AtomMask Dnb = D(-b);
  RelationReport r;
  r.checks.push_back({"D(1) = top", D(one) == C.full()});
  r.checks.push_back({"D(a) ^ D(-a) = bottom", (Da & Dna) == 0});
  r.checks.push_back({"D(-b^2) = bottom", D(-(b * b)) == 0});
  r.checks.push_back({"D(a+b) <= D(a) v D(b)", subset(D(a + b), Da | Db)});
  r.checks.push_back(
      {"D(ab) = (D(a) ^ D(b)) v (D(-a) ^ D(-b))", D(a * b) == ((Da & Db) | (Dna & Dnb))});

  const auto coeff = C.coefficients(a);
  std::vector<double> positive;
  for (Eigen::Index k = 0; k < coeff.size(); ++k) {
    if (coeff[k].real() > tol.rank) positive.push_back(coeff[k].real());
  }
  AtomMask continuity = 0;
  for (double lam : positive) continuity |= D(a - (lam / 2) * one);
  if (positive.empty()) continuity = D(a - one);
  r.checks.push_back({"D(a) = join_s D(a - s)", continuity == Da});

  const Matrix zero_of_positive = support_zero(positive_part(a, tol), tol).matrix();
  r.checks.push_back({"~D(a) = D([a+ = 0])", D(zero_of_positive) == (C.full() & ~Da)});

  bool regular = true;
  AtomMask acc = 0;
  if (positive.empty()) {
    acc = D(support_positive(a - one, tol).matrix());
  } else {
    const double lmin = *std::min_element(positive.begin(), positive.end());
    double r_k = lmin;
    for (int k = 1; k <= 10; ++k) {
      r_k /= 2;
      const AtomMask term = D(support_positive(a - r_k * one, tol).matrix());
      regular = regular && subset(term, Da) && term == Da;
      acc |= term;
    }
  }
  r.checks.push_back({"D(a) = join_r D([a - r > 0])", regular && acc == Da});

  const bool premise = min_eigenvalue(a) >= -tol.rank && min_eigenvalue(b) >= -tol.rank &&
                       min_eigenvalue(a * b - a) >= -tol.rank;
  RelationCheck lemma{"a <= ab implies D(a) <= D(b)", true, premise};
  if (premise) lemma.pass = subset(Da, Db);
  r.checks.push_back(lemma);
  return r;
}

SupportClauses support_clauses(const Matrix& a, const Context& C, const Tolerances& tol) {
  if (!C.contains(a, tol.proj)) {
    throw Error(ErrorKind::NotInContext, "element is not a combination of the atoms");
  }
  const auto n = C.dim();
  const Matrix one = Matrix::Identity(n, n);
  const auto p = support_positive(a, tol);
  const Matrix apos = positive_part(a, tol);
  const auto z = support_zero(apos, tol);
  SupportClauses s{p, MatProjection::trusted(one - z.matrix())};
  s.times_a_is_positive_part = max_abs(p.matrix() * a - apos) <= tol.proj;
  const auto q = support_positive(-a, tol);
  s.disjoint_from_negative = max_abs(proj_meet(p, q, tol).matrix()) <= tol.proj;
  s.kernel_annihilates = max_abs(apos * z.matrix()) <= tol.proj;
  bool largest = true;
  if (C.size() <= 10) {
    for (AtomMask m = 0; m <= C.full() && largest; ++m) {
      const Matrix bm = C.projection(m);
      if (max_abs(apos * bm) <= tol.proj) largest = max_abs(bm - bm * z.matrix()) <= tol.proj;
    }
  } else {
    for (const auto& e : C.atoms()) {
      if (max_abs(apos * e.matrix()) <= tol.proj) {
        largest = largest && max_abs(e.matrix() - e.matrix() * z.matrix()) <= tol.proj;
      }
    }
  }
  s.kernel_is_largest = largest;
  s.agree = approx_equal(s.from_positive, s.from_kernel, tol.proj);
  return s;
}

}  // namespace qlogic
