// Copyright 2026 The colltherm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "colltherm/errors.hpp"

namespace colltherm {

using Complex = std::complex<double>;

// Dense complex matrix, column-major (Eigen's default storage order).
//
// Qubit ordering: qubit 0 is the leftmost kron factor and therefore the most
// significant bit of a computational-basis index. For an n-qubit register,
// qubit q lives at bit (n - 1 - q). Basis state |0> is |g>, |1> is |e>.
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

namespace detail {

inline std::int64_t bit_of(int num_qubits, int qubit) {
  return std::int64_t{1} << (num_qubits - 1 - qubit);
}

inline bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

inline int log2_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

inline void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch(std::string(who) + ": matrix must be square and non-empty, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

inline void require_qubit(int num_qubits, int qubit, const char* who) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw IndexOutOfRange(std::string(who) + ": qubit " + std::to_string(qubit) +
                          " outside register of " + std::to_string(num_qubits));
  }
}

}  // namespace detail

/// Largest absolute entry.
inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Largest entry of |m - m^dagger|.
inline double hermiticity_defect(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_square(a, "kron");
  detail::require_square(b, "kron");
  const Eigen::Index da = a.rows(), db = b.rows();
  ComplexMatrix out(da * db, da * db);
  for (Eigen::Index j = 0; j < da; ++j) {
    for (Eigen::Index i = 0; i < da; ++i) {
      out.block(i * db, j * db, db, db) = a(i, j) * b;
    }
  }
  return out;
}

struct HermitianEigen {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors;  // columns, orthonormal
};

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
/// (h + h^dagger)/2 before solving; inputs further than 1e-8 from Hermitian
/// are rejected.
inline HermitianEigen hermitian_eig(const ComplexMatrix& h) {
  detail::require_square(h, "hermitian_eig");
  const double defect = hermiticity_defect(h);
  if (defect > 1e-8) throw HermiticityViolation(defect);
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    // Eigen's tridiagonal QL stops after 30 sweeps per dimension.
    throw EigensolverFailure("Hermitian eigensolver did not converge", 30 * h.rows());
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Partial trace of a raw n-qubit operator (no validity requirements). The
/// kept qubits appear in the order given by `keep`.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, int num_qubits,
                                   std::span<const int> keep) {
  detail::require_square(m, "partial_trace");
  if (m.rows() != (Eigen::Index{1} << num_qubits)) {
    throw DimensionMismatch("partial_trace: dimension does not match qubit count");
  }
  if (keep.empty()) throw InvalidParameter("partial_trace: keep set is empty");
  std::vector<bool> kept(num_qubits, false);
  for (int q : keep) {
    detail::require_qubit(num_qubits, q, "partial_trace");
    if (kept[q]) throw InvalidParameter("partial_trace: duplicate qubit in keep set");
    kept[q] = true;
  }
  std::vector<int> traced;
  for (int q = 0; q < num_qubits; ++q) {
    if (!kept[q]) traced.push_back(q);
  }

  const int nk = static_cast<int>(keep.size());
  const int nt = static_cast<int>(traced.size());
  const Eigen::Index dk = Eigen::Index{1} << nk;
  const Eigen::Index dt = Eigen::Index{1} << nt;

  // Full-register offsets for every kept and traced sub-index.
  std::vector<std::int64_t> kept_offset(dk, 0), traced_offset(dt, 0);
  for (Eigen::Index k = 0; k < dk; ++k) {
    for (int b = 0; b < nk; ++b) {
      if (k & (Eigen::Index{1} << (nk - 1 - b))) kept_offset[k] |= detail::bit_of(num_qubits, keep[b]);
    }
  }
  for (Eigen::Index t = 0; t < dt; ++t) {
    for (int b = 0; b < nt; ++b) {
      if (t & (Eigen::Index{1} << (nt - 1 - b))) traced_offset[t] |= detail::bit_of(num_qubits, traced[b]);
    }
  }

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index j = 0; j < dk; ++j) {
    for (Eigen::Index i = 0; i < dk; ++i) {
      Complex acc{0.0, 0.0};
      for (Eigen::Index t = 0; t < dt; ++t) {
        acc += m(kept_offset[i] | traced_offset[t], kept_offset[j] | traced_offset[t]);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

/// Inserts a one-qubit operator as a new qubit at `position` of an n-qubit
/// operator, returning the (n+1)-qubit tensor product with the new factor in
/// that slot.
inline ComplexMatrix insert_qubit(const ComplexMatrix& m, int num_qubits, int position,
                                  const ComplexMatrix& single) {
  if (single.rows() != 2 || single.cols() != 2) {
    throw DimensionMismatch("insert_qubit: inserted operator must be 2x2");
  }
  if (position < 0 || position > num_qubits) {
    throw IndexOutOfRange("insert_qubit: position " + std::to_string(position));
  }
  const int n_out = num_qubits + 1;
  const Eigen::Index d_out = Eigen::Index{1} << n_out;
  const int low_bits = num_qubits - position;  // bits below the inserted qubit
  const Eigen::Index low_mask = (Eigen::Index{1} << low_bits) - 1;

  auto split = [&](Eigen::Index idx, Eigen::Index& old_idx, int& bit) {
    bit = static_cast<int>((idx >> low_bits) & 1);
    old_idx = ((idx >> (low_bits + 1)) << low_bits) | (idx & low_mask);
  };

  ComplexMatrix out(d_out, d_out);
  for (Eigen::Index j = 0; j < d_out; ++j) {
    Eigen::Index oj;
    int bj;
    split(j, oj, bj);
    for (Eigen::Index i = 0; i < d_out; ++i) {
      Eigen::Index oi;
      int bi;
      split(i, oi, bi);
      out(i, j) = m(oi, oj) * single(bi, bj);
    }
  }
  return out;
}

/// In place m <- U m U^dagger for a two-qubit unitary acting on qubits
/// (first, second) of an n-qubit operator. U is given in the basis
/// |x_first x_second>. Cost O(dim^2).
inline void conjugate_two_qubit(ComplexMatrix& m, int num_qubits, int first, int second,
                                const Eigen::Matrix4cd& u) {
  detail::require_qubit(num_qubits, first, "conjugate_two_qubit");
  detail::require_qubit(num_qubits, second, "conjugate_two_qubit");
  if (first == second) throw InvalidParameter("conjugate_two_qubit: qubits must differ");
  const Eigen::Index dim = m.rows();
  const std::int64_t bf = detail::bit_of(num_qubits, first);
  const std::int64_t bs = detail::bit_of(num_qubits, second);
  const std::int64_t off[4] = {0, bs, bf, bf | bs};

  // Left multiplication, column by column.
  for (Eigen::Index c = 0; c < dim; ++c) {
    Complex* col = m.col(c).data();
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (r & (bf | bs)) continue;
      Complex v[4];
      for (int k = 0; k < 4; ++k) v[k] = col[r | off[k]];
      for (int k = 0; k < 4; ++k) {
        col[r | off[k]] = u(k, 0) * v[0] + u(k, 1) * v[1] + u(k, 2) * v[2] + u(k, 3) * v[3];
      }
    }
  }
  // Right multiplication by U^dagger: new(:, c_k) = sum_l old(:, c_l) conj(u(k, l)).
  const Eigen::Matrix4cd uc = u.conjugate();
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (c & (bf | bs)) continue;
    Complex* cols[4];
    for (int k = 0; k < 4; ++k) cols[k] = m.col(c | off[k]).data();
    for (Eigen::Index r = 0; r < dim; ++r) {
      Complex v[4];
      for (int k = 0; k < 4; ++k) v[k] = cols[k][r];
      for (int k = 0; k < 4; ++k) {
        cols[k][r] = v[0] * uc(k, 0) + v[1] * uc(k, 1) + v[2] * uc(k, 2) + v[3] * uc(k, 3);
      }
    }
  }
}

class DensityMatrix;
inline DensityMatrix validate_state(const ComplexMatrix& mat, double tol,
                                    bool check_positivity = true);

/// Validated quantum state on a qubit register.
class DensityMatrix {
 public:
  const ComplexMatrix& matrix() const noexcept { return mat_; }
  int num_qubits() const noexcept { return num_qubits_; }
  Eigen::Index dim() const noexcept { return mat_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

 private:
  DensityMatrix(ComplexMatrix mat, int num_qubits)
      : mat_(std::move(mat)), num_qubits_(num_qubits) {}

  friend DensityMatrix validate_state(const ComplexMatrix&, double, bool);

  ComplexMatrix mat_;
  int num_qubits_;
};

/// Checks the density-matrix invariants at tolerance `tol` and returns the
/// symmetrized, trace-renormalized state.
///
/// `check_positivity = false` skips the eigendecomposition; use it only for
/// outputs of completely positive maps applied to valid states, where
/// positivity holds by construction (downstream eigendecompositions still
/// catch numerical negativity).
inline DensityMatrix validate_state(const ComplexMatrix& mat, double tol,
                                    bool check_positivity) {
  detail::require_square(mat, "validate_state");
  if (!detail::is_power_of_two(mat.rows())) {
    throw DimensionMismatch("validate_state: dimension " + std::to_string(mat.rows()) +
                            " is not a power of two");
  }
  const double herm = hermiticity_defect(mat);
  if (herm > tol) throw HermiticityViolation(herm);
  ComplexMatrix sym = 0.5 * (mat + mat.adjoint());
  const double tr = sym.trace().real();
  if (!std::isfinite(tr) || std::abs(tr - 1.0) > tol) throw TraceViolation(std::abs(tr - 1.0));
  sym /= tr;
  if (check_positivity) {
    const double min_eig = hermitian_eig(sym).eigenvalues.minCoeff();
    if (min_eig < -tol) throw NegativityViolation(-min_eig);
  }
  return DensityMatrix(std::move(sym), detail::log2_dim(mat.rows()));
}

/// Partial trace of a state; the result's qubits follow the order of `keep`.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  ComplexMatrix reduced = partial_trace(rho.matrix(), rho.num_qubits(), keep);
  return validate_state(reduced, 1e-10, false);
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

/// Tensor product of two states.
inline DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  return validate_state(kron(a.matrix(), b.matrix()), 1e-10, false);
}

}  // namespace colltherm
