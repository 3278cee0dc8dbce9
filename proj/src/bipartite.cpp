#include "sepred/bipartite.hpp"

#include <cmath>
#include <string>

#include "sepred/error.hpp"

namespace sepred {

namespace {

void require_equal_dims(const BipartiteOperator& op, const char* what) {
  if (op.dim_a() != op.dim_b()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": needs dimA == dimB, got " + std::to_string(op.dim_a()) +
                    " and " + std::to_string(op.dim_b()));
  }
}

}  // namespace

BipartiteOperator::BipartiteOperator(std::size_t dim_a, std::size_t dim_b, ComplexMatrix mat)
    : dim_a_(dim_a), dim_b_(dim_b), mat_(std::move(mat)) {
  if (dim_a == 0 || dim_b == 0 || mat_.rows() != dim_a * dim_b || !mat_.is_square()) {
    throw Error(ErrorKind::DimensionMismatch,
                "BipartiteOperator: dims (" + std::to_string(dim_a) + ", " +
                    std::to_string(dim_b) + ") do not fit a " + std::to_string(mat_.rows()) +
                    "x" + std::to_string(mat_.cols()) + " matrix");
  }
}

BipartiteOperator BipartiteOperator::identity(std::size_t dim_a, std::size_t dim_b) {
  return {dim_a, dim_b, ComplexMatrix::identity(dim_a * dim_b)};
}

PureVector::PureVector(std::size_t a, std::size_t b, std::vector<cplx> v)
    : dim_a(a), dim_b(b), vec(std::move(v)) {
  if (a == 0 || b == 0 || vec.size() != a * b) {
    throw Error(ErrorKind::DimensionMismatch,
                "PureVector: dims (" + std::to_string(a) + ", " + std::to_string(b) +
                    ") with " + std::to_string(vec.size()) + " entries");
  }
}

double PureVector::norm() const {
  double s = 0.0;
  for (const cplx& x : vec) s += std::norm(x);
  return std::sqrt(s);
}

ComplexMatrix PureVector::reshape() const { return ComplexMatrix(dim_a, dim_b, vec); }

BipartiteOperator PureVector::projector() const {
  const ComplexMatrix col = ComplexMatrix::column(vec);
  return {dim_a, dim_b, col * col.adjoint()};
}

PureVector tensor(std::span<const cplx> v, std::span<const cplx> w) {
  std::vector<cplx> out(v.size() * w.size());
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = 0; b < w.size(); ++b) out[a * w.size() + b] = v[a] * w[b];
  return {v.size(), w.size(), std::move(out)};
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

BipartiteOperator partial_transpose(const BipartiteOperator& op) {
  const std::size_t da = op.dim_a();
  const std::size_t db = op.dim_b();
  ComplexMatrix out(op.side(), op.side());
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t a2 = 0; a2 < da; ++a2)
        for (std::size_t b2 = 0; b2 < db; ++b2)
          out(a * db + b, a2 * db + b2) = op.at(a, b2, a2, b);
  return {da, db, std::move(out)};
}

ComplexMatrix realign(const BipartiteOperator& op) {
  const std::size_t da = op.dim_a();
  const std::size_t db = op.dim_b();
  ComplexMatrix out(da * da, db * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * da + j, k * db + l) = op.at(i, k, j, l);
  return out;
}

BipartiteOperator realign_square(const BipartiteOperator& op) {
  require_equal_dims(op, "realign_square");
  return {op.dim_a(), op.dim_b(), realign(op)};
}

BipartiteOperator flip(std::size_t n) {
  ComplexMatrix f(n * n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) f(a * n + b, b * n + a) = 1.0;
  return {n, n, std::move(f)};
}

BipartiteOperator flip_conjugate(const BipartiteOperator& op) {
  require_equal_dims(op, "flip_conjugate");
  const std::size_t n = op.dim_a();
  ComplexMatrix out(op.side(), op.side());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t a2 = 0; a2 < n; ++a2)
        for (std::size_t b2 = 0; b2 < n; ++b2) out(a * n + b, a2 * n + b2) = op.at(b, a, b2, a2);
  return {n, n, std::move(out)};
}

ComplexMatrix marginal_a(const BipartiteOperator& op) {
  ComplexMatrix out(op.dim_a(), op.dim_a());
  for (std::size_t a = 0; a < op.dim_a(); ++a)
    for (std::size_t a2 = 0; a2 < op.dim_a(); ++a2)
      for (std::size_t b = 0; b < op.dim_b(); ++b) out(a, a2) += op.at(a, b, a2, b);
  return out;
}

ComplexMatrix marginal_b(const BipartiteOperator& op) {
  ComplexMatrix out(op.dim_b(), op.dim_b());
  for (std::size_t b = 0; b < op.dim_b(); ++b)
    for (std::size_t b2 = 0; b2 < op.dim_b(); ++b2)
      for (std::size_t a = 0; a < op.dim_a(); ++a) out(b, b2) += op.at(a, b, a, b2);
  return out;
}

BipartiteOperator proj_sym(std::size_t n) {
  ComplexMatrix p = ComplexMatrix::identity(n * n) + flip(n).matrix();
  p *= 0.5;
  return {n, n, std::move(p)};
}

BipartiteOperator proj_anti(std::size_t n) {
  ComplexMatrix p = ComplexMatrix::identity(n * n) - flip(n).matrix();
  p *= 0.5;
  return {n, n, std::move(p)};
}

ComplexMatrix g_map(const BipartiteOperator& op, const ComplexMatrix& x) {
  if (x.rows() != op.dim_a() || x.cols() != op.dim_a()) {
    throw Error(ErrorKind::DimensionMismatch,
                "g_map: X must be " + std::to_string(op.dim_a()) + "x" +
                    std::to_string(op.dim_a()));
  }
  ComplexMatrix out(op.dim_b(), op.dim_b());
  for (std::size_t b = 0; b < op.dim_b(); ++b)
    for (std::size_t b2 = 0; b2 < op.dim_b(); ++b2) {
      cplx s = 0.0;
      for (std::size_t a = 0; a < op.dim_a(); ++a)
        for (std::size_t a2 = 0; a2 < op.dim_a(); ++a2) s += op.at(a, b, a2, b2) * x(a2, a);
      out(b, b2) = s;
    }
  return out;
}

PureVector max_ent_vec(std::size_t n) {
  std::vector<cplx> u(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) u[i * n + i] = 1.0;
  return {n, n, std::move(u)};
}

BipartiteOperator local_filter(const BipartiteOperator& op, const ComplexMatrix& x,
                               const ComplexMatrix& y) {
  const std::size_t da = op.dim_a();
  const std::size_t db = op.dim_b();
  if (x.rows() != da || x.cols() != da || y.rows() != db || y.cols() != db) {
    throw Error(ErrorKind::DimensionMismatch, "local_filter: filter sides must match dims");
  }
  const std::size_t side = op.side();
  // Left factor: rows (a,b) ← Σ X(a,a1) Y(b,b1) rows (a1,b1).
  ComplexMatrix t1(side, side);
  const ComplexMatrix& d = op.matrix();
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t a1 = 0; a1 < da; ++a1) {
      const cplx xa = x(a, a1);
      if (xa == cplx(0.0, 0.0)) continue;
      for (std::size_t b = 0; b < db; ++b)
        for (std::size_t col = 0; col < side; ++col) t1(a * db + b, col) += xa * d(a1 * db + b, col);
    }
  ComplexMatrix t2(side, side);
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t b1 = 0; b1 < db; ++b1) {
        const cplx yb = y(b, b1);
        if (yb == cplx(0.0, 0.0)) continue;
        for (std::size_t col = 0; col < side; ++col) t2(a * db + b, col) += yb * t1(a * db + b1, col);
      }
  // Right factor: columns (c,e) ← Σ conj(X(c,c1)) conj(Y(e,e1)) columns (c1,e1).
  ComplexMatrix t3(side, side);
  for (std::size_t c = 0; c < da; ++c)
    for (std::size_t c1 = 0; c1 < da; ++c1) {
      const cplx xc = std::conj(x(c, c1));
      if (xc == cplx(0.0, 0.0)) continue;
      for (std::size_t row = 0; row < side; ++row)
        for (std::size_t e = 0; e < db; ++e) t3(row, c * db + e) += xc * t2(row, c1 * db + e);
    }
  ComplexMatrix out(side, side);
  for (std::size_t e = 0; e < db; ++e)
    for (std::size_t e1 = 0; e1 < db; ++e1) {
      const cplx ye = std::conj(y(e, e1));
      if (ye == cplx(0.0, 0.0)) continue;
      for (std::size_t row = 0; row < side; ++row)
        for (std::size_t c = 0; c < da; ++c) out(row, c * db + e) += ye * t3(row, c * db + e1);
    }
  return {da, db, std::move(out)};
}

}  // namespace sepred
