#pragma once

// Dense linear algebra over the height lattice: Gram determinants with
// perturbation bounds, quadratic-form evaluation and short-vector enumeration.
// Everything is templated on the scalar so the same code runs in double (tests,
// quick estimates) and in the multiprecision Real used for certified results.

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace cnb {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Coefficients = std::vector<long>;

/// det of a square matrix; 1 for the empty matrix.
template <class Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() == 0) return Scalar(1);
  return Matrix<Scalar>(m).partialPivLu().determinant();
}

/// Bound on |det(M + E) - det(M)| over all E with |E_ij| <= err_ij.
/// det is multilinear in rows, so each mixed term is bounded by Hadamard's
/// inequality and the sum telescopes to Π(‖m_i‖ + ‖e_i‖) - Π‖m_i‖.
template <class DerivedM, class DerivedE>
typename DerivedM::Scalar determinant_perturbation_bound(const Eigen::MatrixBase<DerivedM>& m,
                                                         const Eigen::MatrixBase<DerivedE>& err) {
  using Scalar = typename DerivedM::Scalar;
  Scalar with_err(1), without(1);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const Scalar rm = m.row(i).norm();
    const Scalar re = err.row(i).norm();
    with_err *= rm + re;
    without *= rm;
  }
  return with_err - without;
}

/// xᵀ G x for an integer vector x.
template <class Derived>
typename Derived::Scalar quadratic_form(const Eigen::MatrixBase<Derived>& g, const Coefficients& x) {
  using Scalar = typename Derived::Scalar;
  Scalar s(0);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) s += g(i, j) * Scalar(x[i]) * Scalar(x[j]);
  return s;
}

/// |x|ᵀ E |x|: worst-case error of quadratic_form when G is known to within E.
template <class Derived>
typename Derived::Scalar quadratic_form_error(const Eigen::MatrixBase<Derived>& err, const Coefficients& x) {
  using Scalar = typename Derived::Scalar;
  Scalar s(0);
  for (Eigen::Index i = 0; i < err.rows(); ++i)
    for (Eigen::Index j = 0; j < err.cols(); ++j)
      s += err(i, j) * Scalar(std::labs(x[i])) * Scalar(std::labs(x[j]));
  return s;
}

/// Fincke–Pohst enumeration of every integer x with xᵀ G x <= bound for
/// positive-definite G. Vectors are returned in lexicographic order.
/// Returns false (and stops) once more than `cap` vectors have been produced.
template <class Derived>
bool short_vectors(const Eigen::MatrixBase<Derived>& g, const typename Derived::Scalar& bound, std::size_t cap,
                   std::vector<Coefficients>& out) {
  using Scalar = typename Derived::Scalar;
  using std::ceil;
  using std::floor;
  using std::sqrt;
  const Eigen::Index r = g.rows();
  out.clear();
  if (r == 0) {
    out.push_back({});
    return true;
  }
  // xᵀGx = Σ_i q(i,i)·(x_i + Σ_{j>i} q(i,j)·x_j)²
  Matrix<Scalar> q = g;
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = i + 1; j < r; ++j) {
      q(j, i) = q(i, j);
      q(i, j) = q(i, j) / q(i, i);
    }
    for (Eigen::Index k = i + 1; k < r; ++k)
      for (Eigen::Index l = k; l < r; ++l) q(k, l) -= q(k, i) * q(i, l);
  }

  Coefficients x(r, 0);
  std::vector<Scalar> remaining(r + 1, Scalar(0));
  remaining[r] = bound;
  bool ok = true;
  std::function<void(Eigen::Index)> descend = [&](Eigen::Index i) {
    if (!ok) return;
    Scalar centre(0);
    for (Eigen::Index j = i + 1; j < r; ++j) centre -= q(i, j) * Scalar(x[j]);
    const Scalar budget = remaining[i + 1];
    if (budget < 0) return;
    const Scalar half_width = sqrt(budget / q(i, i));
    const long lo = static_cast<long>(ceil(centre - half_width));
    const long hi = static_cast<long>(floor(centre + half_width));
    for (long v = lo; v <= hi && ok; ++v) {
      x[i] = v;
      const Scalar t = Scalar(v) - centre;
      remaining[i] = budget - q(i, i) * t * t;
      if (remaining[i] < 0) continue;
      if (i == 0) {
        if (out.size() >= cap) {
          ok = false;
          return;
        }
        out.push_back(x);
      } else {
        descend(i - 1);
      }
    }
    x[i] = 0;
  };
  descend(r - 1);
  std::sort(out.begin(), out.end());
  return ok;
}

/// max over δ ∈ {-1, 0, 1}^r of δᵀ G δ, with the maximising δ.
template <class Derived>
typename Derived::Scalar max_over_sign_vectors(const Eigen::MatrixBase<Derived>& g, Coefficients* argmax = nullptr) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index r = g.rows();
  Coefficients d(r, -1);
  Scalar best(0);
  if (argmax) argmax->assign(r, 0);
  if (r == 0) return best;
  while (true) {
    const Scalar v = quadratic_form(g, d);
    if (v > best) {
      best = v;
      if (argmax) *argmax = d;
    }
    Eigen::Index i = 0;
    while (i < r && d[i] == 1) d[i++] = -1;
    if (i == r) break;
    ++d[i];
  }
  return best;
}

}  // namespace cnb
