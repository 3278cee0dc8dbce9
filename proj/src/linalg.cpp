#include "sepred/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sepred/error.hpp"

namespace sepred {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 100;

std::string shape(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(op) + ": " + shape(a) + " vs " + shape(b));
  }
}

// Reorders columns of `mats` and the entries of `keys` so that `keys` follows
// `before`.
template <typename Cmp>
void sort_columns(std::vector<double>& keys, std::initializer_list<ComplexMatrix*> mats,
                  Cmp before) {
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return before(keys[a], keys[b]); });
  std::vector<double> sorted(keys.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = keys[order[i]];
  keys = std::move(sorted);
  for (ComplexMatrix* m : mats) {
    ComplexMatrix out(m->rows(), m->cols());
    for (std::size_t r = 0; r < m->rows(); ++r)
      for (std::size_t c = 0; c < order.size(); ++c) out(r, c) = (*m)(r, order[c]);
    *m = std::move(out);
  }
}

// Fills the zero columns of `u` (marked in `empty`) with an orthonormal
// completion drawn from the canonical basis.
void complete_orthonormal(ComplexMatrix& u, const std::vector<bool>& empty) {
  const std::size_t n = u.rows();
  std::size_t next_basis = 0;
  for (std::size_t col = 0; col < u.cols(); ++col) {
    if (!empty[col]) continue;
    for (; next_basis < n; ++next_basis) {
      std::vector<cplx> w(n, 0.0);
      w[next_basis] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t other = 0; other < u.cols(); ++other) {
          if (other == col || (empty[other] && other > col)) continue;
          cplx dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += std::conj(u(i, other)) * w[i];
          for (std::size_t i = 0; i < n; ++i) w[i] -= dot * u(i, other);
        }
      }
      double norm = 0.0;
      for (const cplx& x : w) norm += std::norm(x);
      norm = std::sqrt(norm);
      if (norm > 0.5) {
        for (std::size_t i = 0; i < n; ++i) u(i, col) = w[i] / norm;
        ++next_basis;
        break;
      }
    }
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorKind::DimensionMismatch,
                "matrix entries: expected " + std::to_string(rows * cols) + ", got " +
                    std::to_string(data_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const cplx> v) {
  return ComplexMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (cplx& x : out.data_) x = std::conj(x);
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const cplx& x : data_) m = std::max(m, std::abs(x));
  return m;
}

double ComplexMatrix::frobenius() const noexcept {
  double s = 0.0;
  for (const cplx& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& x : data_) x *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "operator*: " + shape(a) + " times " + shape(b));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const cplx ail = a(i, l);
      if (ail == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += ail * b(l, j);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

ComplexMatrix hermitian_part(const ComplexMatrix& h) {
  ComplexMatrix out = h + h.adjoint();
  out *= 0.5;
  return out;
}

bool is_hermitian(const ComplexMatrix& h, double tol) {
  if (!h.is_square()) return false;
  return max_abs_diff(h, h.adjoint()) <= tol * h.max_abs();
}

EigResult hermitian_eig(const ComplexMatrix& h, double tol) {
  if (!h.is_square()) {
    throw Error(ErrorKind::NotHermitian, "hermitian_eig: non-square " + shape(h));
  }
  if (!is_hermitian(h, tol)) {
    throw Error(ErrorKind::NotHermitian,
                "hermitian_eig: ‖H − H*‖ = " + std::to_string(max_abs_diff(h, h.adjoint())));
  }
  const std::size_t n = h.rows();
  ComplexMatrix a = hermitian_part(h);
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  bool converged = n <= 1;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (mag == 0.0 || mag <= 0.5 * kEps * std::sqrt(std::abs(app) * std::abs(aqq))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        // Phase e^{iφ} = apq/|apq| reduces the pair to a real symmetric 2x2.
        const cplx phase = apq / mag;
        const cplx phase_c = std::conj(phase);
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t i = 0; i < n; ++i) {
          const cplx aip = a(i, p);
          const cplx aiq = a(i, q);
          a(i, p) = c * aip - s * phase_c * aiq;
          a(i, q) = s * aip + c * phase_c * aiq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const cplx apj = a(p, j);
          const cplx aqj = a(q, j);
          a(p, j) = c * apj - s * phase * aqj;
          a(q, j) = s * apj + c * phase * aqj;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t i = 0; i < n; ++i) {
          const cplx vip = v(i, p);
          const cplx viq = v(i, q);
          v(i, p) = c * vip - s * phase_c * viq;
          v(i, q) = s * vip + c * phase_c * viq;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    throw Error(ErrorKind::NoConvergence,
                "hermitian_eig: " + std::to_string(kMaxSweeps) + " sweeps on " + shape(h));
  }

  EigResult out;
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = a(i, i).real();
  out.eigenvectors = std::move(v);
  sort_columns(out.eigenvalues, {&out.eigenvectors}, std::less<>{});
  return out;
}

ComplexMatrix reconstruct(const EigResult& eig) {
  const ComplexMatrix& v = eig.eigenvectors;
  ComplexMatrix scaled = v;
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j) scaled(i, j) *= eig.eigenvalues[j];
  return scaled * v.adjoint();
}

SvdResult svd(const ComplexMatrix& m) {
  if (m.rows() < m.cols()) {
    SvdResult t = svd(m.adjoint());
    return SvdResult{std::move(t.v), std::move(t.s), std::move(t.u)};
  }
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  ComplexMatrix w = m;
  ComplexMatrix v = ComplexMatrix::identity(cols);
  const double tol = static_cast<double>(std::max<std::size_t>(rows, 1)) * kEps;

  // Column norms are maintained incrementally and refreshed every sweep.
  std::vector<double> norms(cols);
  auto refresh_norms = [&] {
    for (std::size_t j = 0; j < cols; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < rows; ++i) s += std::norm(w(i, j));
      norms[j] = s;
    }
  };

  // Columns below eps * ||M||_F are roundoff from a rank deficiency. Rotating
  // them against the rest never satisfies the relative test, so they are
  // left alone and reported as zero singular values.
  refresh_norms();
  double fro2 = 0.0;
  for (double x : norms) fro2 += x;
  const double negligible = kEps * kEps * fro2;

  bool converged = cols <= 1;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    refresh_norms();
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        const double alpha = norms[p];
        const double beta = norms[q];
        if (alpha <= negligible || beta <= negligible) continue;
        cplx gamma = 0.0;
        for (std::size_t i = 0; i < rows; ++i) gamma += std::conj(w(i, p)) * w(i, q);
        const double mag = std::abs(gamma);
        if (mag <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const cplx phase_c = std::conj(gamma / mag);
        const double zeta = (beta - alpha) / (2.0 * mag);
        double t = 1.0 / (std::abs(zeta) + std::sqrt(zeta * zeta + 1.0));
        if (zeta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t i = 0; i < rows; ++i) {
          const cplx wp = w(i, p);
          const cplx wq = phase_c * w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < cols; ++i) {
          const cplx vp = v(i, p);
          const cplx vq = phase_c * v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
        norms[p] = alpha - t * mag;
        norms[q] = beta + t * mag;
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    throw Error(ErrorKind::NoConvergence,
                "svd: " + std::to_string(kMaxSweeps) + " sweeps on " + shape(m));
  }

  SvdResult out;
  out.s.resize(cols);
  out.u = ComplexMatrix(rows, cols);
  refresh_norms();
  for (std::size_t j = 0; j < cols; ++j) out.s[j] = std::sqrt(norms[j]);
  out.v = std::move(v);
  sort_columns(out.s, {&w, &out.v}, std::greater<>{});

  const double smax = out.s.empty() ? 0.0 : out.s.front();
  std::vector<bool> empty(cols, false);
  bool any_empty = false;
  for (std::size_t j = 0; j < cols; ++j) {
    if (out.s[j] * out.s[j] <= negligible || out.s[j] <= smax * kEps * kEps) {
      out.s[j] = 0.0;
      empty[j] = true;
      any_empty = true;
      continue;
    }
    for (std::size_t i = 0; i < rows; ++i) out.u(i, j) = w(i, j) / out.s[j];
  }
  if (any_empty) complete_orthonormal(out.u, empty);
  return out;
}

ComplexMatrix reconstruct(const SvdResult& d) {
  ComplexMatrix us = d.u;
  for (std::size_t i = 0; i < us.rows(); ++i)
    for (std::size_t j = 0; j < us.cols(); ++j) us(i, j) *= d.s[j];
  return us * d.v.adjoint();
}

std::size_t numerical_rank(const ComplexMatrix& m, double rank_tol) {
  const SvdResult d = svd(m);
  if (d.s.empty() || d.s.front() == 0.0) return 0;
  const double cutoff = rank_tol * d.s.front();
  return static_cast<std::size_t>(
      std::count_if(d.s.begin(), d.s.end(), [&](double x) { return x > cutoff; }));
}

ComplexMatrix inv_sqrt_psd(const ComplexMatrix& h, double floor_tol) {
  const EigResult eig = hermitian_eig(h);
  const double lmin = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
  const double lmax = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
  if (!(lmax > 0.0) || !(lmin > floor_tol * lmax)) {
    throw Error(ErrorKind::SingularMarginal, "inv_sqrt_psd: eigenvalue range [" +
                                                 std::to_string(lmin) + ", " +
                                                 std::to_string(lmax) + "]");
  }
  EigResult inv = eig;
  for (double& l : inv.eigenvalues) l = 1.0 / std::sqrt(l);
  return hermitian_part(reconstruct(inv));
}

double operator_norm(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return svd(m).s.front();
}

double trace_norm(const ComplexMatrix& m) {
  const SvdResult d = svd(m);
  return std::accumulate(d.s.begin(), d.s.end(), 0.0);
}

}  // namespace sepred
