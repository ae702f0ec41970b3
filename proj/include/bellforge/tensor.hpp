#pragma once

#include <Eigen/Dense>
#include <complex>

namespace bellforge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Dense operators live on at most 2^10 dimensions.
inline constexpr int kMaxQubits = 10;
inline constexpr long kMaxDim = 1L << kMaxQubits;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& m);
double hermiticity_defect(const ComplexMatrix& m);  // max |M - M^dagger|
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-10);
bool is_projective(const ComplexMatrix& m, double tol = 1e-10);  // Hermitian and M^2 = I

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// n . sigma for a unit Bloch vector (checked to 1e-12).
ComplexMatrix pauli_observable(double nx, double ny, double nz);

struct Eigensystem {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns, orthonormal
};

// Dense Hermitian eigensolver. Throws std::invalid_argument (with the measured
// defect) when the input is not Hermitian within tolerance, or too large.
Eigensystem hermitian_eigensystem(const ComplexMatrix& h);

// In-place application of a 2x2 operator to one qubit of an n-qubit state.
// Party 0 owns the most significant bit of the basis index.
void apply_single_qubit(StateVector& v, int n, int party, const ComplexMatrix& op);

bool is_normalized(const StateVector& v, double tol = 1e-12);

}  // namespace bellforge
