#include "bellforge/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bellforge {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const long ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  if (ra * rb > kMaxDim || ca * cb > kMaxDim)
    throw std::invalid_argument("kron: product dimension exceeds " + std::to_string(kMaxDim));
  ComplexMatrix out(ra * rb, ca * cb);
  for (long i = 0; i < ra; ++i)
    for (long j = 0; j < ca; ++j) out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
  return max_abs(ComplexMatrix(m - m.adjoint()));
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix d = m * m.adjoint() - ComplexMatrix::Identity(m.rows(), m.cols());
  return max_abs(d) <= tol;
}

bool is_projective(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (hermiticity_defect(m) > tol) return false;
  const ComplexMatrix d = m * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return max_abs(d) <= tol;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix pauli_observable(double nx, double ny, double nz) {
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("pauli_observable: Bloch vector norm " + std::to_string(norm));
  ComplexMatrix m(2, 2);
  m << Complex(nz, 0), Complex(nx, -ny), Complex(nx, ny), Complex(-nz, 0);
  return m;
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eigensystem: not square");
  if (h.rows() > kMaxDim)
    throw std::invalid_argument("hermitian_eigensystem: dimension exceeds " +
                                std::to_string(kMaxDim));
  const double defect = hermiticity_defect(h);
  const double scale = std::max(1.0, max_abs(h));
  if (defect > 1e-10 * scale)
    throw std::invalid_argument("hermitian_eigensystem: input not Hermitian, defect = " +
                                std::to_string(defect));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigensystem: solver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

void apply_single_qubit(StateVector& v, int n, int party, const ComplexMatrix& op) {
  if (op.rows() != 2 || op.cols() != 2) throw std::invalid_argument("apply_single_qubit: op not 2x2");
  if (party < 0 || party >= n) throw std::invalid_argument("apply_single_qubit: party out of range");
  if (v.size() != (1L << n)) throw std::invalid_argument("apply_single_qubit: state size mismatch");
  const long stride = 1L << (n - 1 - party);
  const Complex a = op(0, 0), b = op(0, 1), c = op(1, 0), d = op(1, 1);
  for (long base = 0; base < v.size(); base += 2 * stride) {
    for (long off = 0; off < stride; ++off) {
      const long i0 = base + off, i1 = i0 + stride;
      const Complex x = v[i0], y = v[i1];
      v[i0] = a * x + b * y;
      v[i1] = c * x + d * y;
    }
  }
}

bool is_normalized(const StateVector& v, double tol) {
  return std::abs(v.norm() - 1.0) <= tol;
}

}  // namespace bellforge
