#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace qlogic {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

struct Tolerances {
  double proj = 1e-9;     // hermitian / idempotent / orthogonality checks
  double val = 1e-9;      // probability-one threshold
  double iterate = 1e-6;  // agreement of iterative limits
  double cauchy = 1e-10;  // early exit of the (pq)^m iterate
  int iterate_cap = 200;
  double rank = 1e-9;     // singular / eigenvalue zero threshold
};

/// Largest entry modulus.
double max_abs(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol);
bool is_projection_matrix(const Matrix& m, double tol);

/// Hermitian idempotent matrix, validated on construction.
class MatProjection {
 public:
  /// Throws NotHermitian or NotAProjection.
  static MatProjection from_matrix(Matrix m, const Tolerances& tol = {});
  /// Symmetrizes without validating; for results of exact constructions.
  static MatProjection trusted(Matrix m);
  static MatProjection zero(Eigen::Index n);
  static MatProjection identity(Eigen::Index n);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  /// Trace, rounded to the nearest integer.
  Eigen::Index rank() const;

 private:
  explicit MatProjection(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

bool approx_equal(const MatProjection& p, const MatProjection& q, double tol);

/// p <= q iff pq = p.
bool proj_order(const MatProjection& p, const MatProjection& q, const Tolerances& tol = {});
MatProjection proj_perp(const MatProjection& p);
/// Projector onto ran p intersected with ran q, from the null space of the
/// stacked matrix [1-p; 1-q].
MatProjection proj_meet(const MatProjection& p, const MatProjection& q,
                        const Tolerances& tol = {});
/// (p' ^ q')'.
MatProjection proj_join(const MatProjection& p, const MatProjection& q,
                        const Tolerances& tol = {});
bool commute(const MatProjection& p, const MatProjection& q, double tol);

struct IterateResult {
  Matrix limit;
  int steps = 0;
  bool converged = false;
};

/// Limit of (pq)^m along m = 2^k (repeated squaring) until successive terms
/// differ by at most tol.cauchy, or tol.iterate_cap squarings.
IterateResult proj_meet_iterate(const MatProjection& p, const MatProjection& q,
                                const Tolerances& tol = {});

/// Projector onto an orthonormal column set.
Matrix projector_onto(const Matrix& columns);
/// Orthonormal basis of the column space (singular values above tol).
Matrix range_basis(const Matrix& x, double tol);

/// Right projection: projector onto ran x*, so that {y : xy = 0} = (1-RP)A.
MatProjection right_projection(const Matrix& x, const Tolerances& tol = {});
/// Left projection: projector onto ran x.
MatProjection left_projection(const Matrix& x, const Tolerances& tol = {});

/// Spectral data of a hermitian matrix with eigenvalues closer than
/// tol.rank merged into one cluster.
struct Spectrum {
  std::vector<double> values;         // cluster means, ascending
  std::vector<MatProjection> projections;
};
Spectrum spectrum(const Matrix& a, const Tolerances& tol = {});

/// [a>0]: spectral projection onto eigenvalues above tol.rank. Throws
/// NotHermitian.
MatProjection support_positive(const Matrix& a, const Tolerances& tol = {});
/// [a=0]: spectral projection onto eigenvalues within tol.rank of zero.
MatProjection support_zero(const Matrix& a, const Tolerances& tol = {});
/// a+ = sum of lambda P over positive clusters.
Matrix positive_part(const Matrix& a, const Tolerances& tol = {});

struct RickartProjections {
  MatProjection right;
  MatProjection left;
  std::optional<MatProjection> support;  // [x>0], hermitian x only
};
RickartProjections rickart_projections(const Matrix& x, const Tolerances& tol = {});

/// q + RP[p(1-q)] = p v q.
MatProjection rickart_join(const MatProjection& p, const MatProjection& q,
                           const Tolerances& tol = {});
/// p - LP[p(1-q)] = p ^ q.
MatProjection rickart_meet(const MatProjection& p, const MatProjection& q,
                           const Tolerances& tol = {});

/// [a > 0] for a = sum 2^-(k+1) p_k over the nonzero members. Throws
/// NotOrthogonal.
MatProjection ortho_sup(const std::vector<MatProjection>& ps, Eigen::Index dim,
                        const Tolerances& tol = {});

}  // namespace qlogic
