#include "qlogic/projection.hpp"

#include <cmath>
#include <string>

#include "qlogic/error.hpp"

namespace qlogic {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_projection_matrix(const Matrix& m, double tol) {
  return is_hermitian(m, tol) && max_abs(m * m - m) <= tol;
}

MatProjection MatProjection::from_matrix(Matrix m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimMismatch, "projection must be square");
  }
  if (!m.allFinite()) throw Error(ErrorKind::NotAProjection, "non-finite entry");
  const double h = max_abs(m - m.adjoint());
  if (h > tol.proj) {
    throw Error(ErrorKind::NotHermitian, "|M - M*| = " + std::to_string(h));
  }
  const double i = max_abs(m * m - m);
  if (i > tol.proj) {
    throw Error(ErrorKind::NotAProjection, "|M^2 - M| = " + std::to_string(i));
  }
  return MatProjection(std::move(m));
}

MatProjection MatProjection::trusted(Matrix m) {
  Matrix h = (m + m.adjoint()) * 0.5;
  return MatProjection(std::move(h));
}

MatProjection MatProjection::zero(Eigen::Index n) {
  return MatProjection(Matrix::Zero(n, n));
}

MatProjection MatProjection::identity(Eigen::Index n) {
  return MatProjection(Matrix::Identity(n, n));
}

Eigen::Index MatProjection::rank() const {
  return static_cast<Eigen::Index>(std::llround(m_.trace().real()));
}

bool approx_equal(const MatProjection& p, const MatProjection& q, double tol) {
  return p.dim() == q.dim() && max_abs(p.matrix() - q.matrix()) <= tol;
}

namespace {

void same_dim(const MatProjection& p, const MatProjection& q) {
  if (p.dim() != q.dim()) {
    throw Error(ErrorKind::DimMismatch, "dimensions " + std::to_string(p.dim()) + " and " +
                                            std::to_string(q.dim()));
  }
}

}  // namespace

bool proj_order(const MatProjection& p, const MatProjection& q, const Tolerances& tol) {
  same_dim(p, q);
  return max_abs(p.matrix() * q.matrix() - p.matrix()) <= tol.proj;
}

MatProjection proj_perp(const MatProjection& p) {
  return MatProjection::trusted(Matrix::Identity(p.dim(), p.dim()) - p.matrix());
}

Matrix projector_onto(const Matrix& columns) {
  return columns * columns.adjoint();
}

Matrix range_basis(const Matrix& x, double tol) {
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s[r] > tol) ++r;
  return svd.matrixU().leftCols(r);
}

MatProjection proj_meet(const MatProjection& p, const MatProjection& q,
                        const Tolerances& tol) {
  same_dim(p, q);
  const auto n = p.dim();
  Matrix stacked(2 * n, n);
  stacked.topRows(n) = Matrix::Identity(n, n) - p.matrix();
  stacked.bottomRows(n) = Matrix::Identity(n, n) - q.matrix();
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (s[k] <= tol.rank) null_cols.push_back(k);
  }
  Matrix basis(n, static_cast<Eigen::Index>(null_cols.size()));
  for (std::size_t k = 0; k < null_cols.size(); ++k) {
    basis.col(static_cast<Eigen::Index>(k)) = svd.matrixV().col(null_cols[k]);
  }
  return MatProjection::trusted(projector_onto(basis));
}

MatProjection proj_join(const MatProjection& p, const MatProjection& q,
                        const Tolerances& tol) {
  return proj_perp(proj_meet(proj_perp(p), proj_perp(q), tol));
}

bool commute(const MatProjection& p, const MatProjection& q, double tol) {
  same_dim(p, q);
  return max_abs(p.matrix() * q.matrix() - q.matrix() * p.matrix()) <= tol;
}

IterateResult proj_meet_iterate(const MatProjection& p, const MatProjection& q,
                                const Tolerances& tol) {
  same_dim(p, q);
  IterateResult r;
  Matrix x = p.matrix() * q.matrix();
  for (int k = 0; k < tol.iterate_cap; ++k) {
    Matrix next = x * x;
    ++r.steps;
    const double diff = max_abs(next - x);
    x = std::move(next);
    if (diff <= tol.cauchy) {
      r.converged = true;
      break;
    }
  }
  r.limit = std::move(x);
  return r;
}

MatProjection right_projection(const Matrix& x, const Tolerances& tol) {
  return MatProjection::trusted(projector_onto(range_basis(x.adjoint(), tol.rank)));
}

MatProjection left_projection(const Matrix& x, const Tolerances& tol) {
  return MatProjection::trusted(projector_onto(range_basis(x, tol.rank)));
}

Spectrum spectrum(const Matrix& a, const Tolerances& tol) {
  if (!is_hermitian(a, tol.proj)) {
    throw Error(ErrorKind::NotHermitian,
                "|a - a*| = " + std::to_string(max_abs(a - a.adjoint())));
  }
  const Matrix h = (a + a.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& ev = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  Spectrum s;
  Eigen::Index start = 0;
  const auto n = ev.size();
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && ev[end] - ev[end - 1] <= tol.rank) ++end;
    s.values.push_back(ev.segment(start, end - start).mean());
    s.projections.push_back(
        MatProjection::trusted(projector_onto(vecs.middleCols(start, end - start))));
    start = end;
  }
  return s;
}

MatProjection support_positive(const Matrix& a, const Tolerances& tol) {
  const auto s = spectrum(a, tol);
  Matrix p = Matrix::Zero(a.rows(), a.cols());
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    if (s.values[k] > tol.rank) p += s.projections[k].matrix();
  }
  return MatProjection::trusted(std::move(p));
}

MatProjection support_zero(const Matrix& a, const Tolerances& tol) {
  const auto s = spectrum(a, tol);
  Matrix p = Matrix::Zero(a.rows(), a.cols());
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    if (std::abs(s.values[k]) <= tol.rank) p += s.projections[k].matrix();
  }
  return MatProjection::trusted(std::move(p));
}

Matrix positive_part(const Matrix& a, const Tolerances& tol) {
  const auto s = spectrum(a, tol);
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    if (s.values[k] > tol.rank) out += s.values[k] * s.projections[k].matrix();
  }
  return out;
}

RickartProjections rickart_projections(const Matrix& x, const Tolerances& tol) {
  if (!x.allFinite()) throw Error(ErrorKind::ToleranceViolated, "non-finite entry");
  RickartProjections r{right_projection(x, tol), left_projection(x, tol), std::nullopt};
  if (x.rows() == x.cols() && is_hermitian(x, tol.proj)) r.support = support_positive(x, tol);
  return r;
}

MatProjection rickart_join(const MatProjection& p, const MatProjection& q,
                           const Tolerances& tol) {
  same_dim(p, q);
  const auto n = p.dim();
  const Matrix x = p.matrix() * (Matrix::Identity(n, n) - q.matrix());
  return MatProjection::trusted(q.matrix() + right_projection(x, tol).matrix());
}

MatProjection rickart_meet(const MatProjection& p, const MatProjection& q,
                           const Tolerances& tol) {
  same_dim(p, q);
  const auto n = p.dim();
  const Matrix x = p.matrix() * (Matrix::Identity(n, n) - q.matrix());
  return MatProjection::trusted(p.matrix() - left_projection(x, tol).matrix());
}

MatProjection ortho_sup(const std::vector<MatProjection>& ps, Eigen::Index dim,
                        const Tolerances& tol) {
  for (const auto& p : ps) {
    if (p.dim() != dim) throw Error(ErrorKind::DimMismatch, "family has mixed dimensions");
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const double d = max_abs(ps[i].matrix() * ps[j].matrix());
      if (d > tol.proj) {
        throw Error(ErrorKind::NotOrthogonal, "|p_i p_j| = " + std::to_string(d),
                    {std::to_string(i), std::to_string(j)});
      }
    }
  }
  Matrix a = Matrix::Zero(dim, dim);
  double weight = 0.5;
  for (const auto& p : ps) {
    if (max_abs(p.matrix()) <= tol.proj) continue;
    a += weight * p.matrix();
    weight *= 0.5;
  }
  return support_positive(a, tol);
}

}  // namespace qlogic
