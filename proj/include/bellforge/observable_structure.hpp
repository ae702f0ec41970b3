#pragma once

#include <random>
#include <utility>
#include <vector>

#include "bellforge/tensor.hpp"

namespace bellforge {

// a party's two binary observables on one Hilbert space
struct ObservablePair {
  ComplexMatrix a;
  ComplexMatrix a_prime;
};

// a_prime = a_plus + a_minus with [a, a_plus] = 0 and {a, a_minus} = 0
struct SplitResult {
  ComplexMatrix a;
  ComplexMatrix a_prime;
  ComplexMatrix a_plus;
  ComplexMatrix a_minus;
  int dim_plus = 0;   // multiplicity of the +1 eigenvalue of a
  int dim_minus = 0;
};

SplitResult split_commuting_parts(const ObservablePair& pair);

// how well b maps each eigenvector of a onto the opposite eigenvalue
struct PairingReport {
  int dimension = 0;
  double spectrum_asymmetry_a = 0;
  double spectrum_asymmetry_b = 0;
  double max_map_residual = 0;
  int mapped_count = 0;
  int null_count = 0;
  bool ok(double tol = 1e-8) const {
    return spectrum_asymmetry_a <= tol && spectrum_asymmetry_b <= tol && max_map_residual <= tol;
  }
};

PairingReport spectral_pairing_check(const ComplexMatrix& a, const ComplexMatrix& b);

struct AngleSubspace {
  double theta = 0;        // in (0, pi/2]; sin(theta) is the paired singular value of a_minus
  int multiplicity = 0;    // number of +-pairs
  ComplexMatrix basis;     // dim x (2 * multiplicity), orthonormal
};

struct SubspaceDecomposition {
  std::vector<AngleSubspace> subspaces;
  int kernel_dimension = 0;
  ComplexMatrix retained_basis;  // all subspace bases side by side
};

SubspaceDecomposition truncate_kernel(const SplitResult& split, double kernel_tol = 1e-10);

// unitary w with w a w^+ and w b_minus w^+ strictly anti-diagonal, given a
// traceless projective triple with [a, b_plus] = 0, {a, b_minus} = {b_plus, b_minus} = 0
ComplexMatrix antidiagonalize(const ComplexMatrix& a, const ComplexMatrix& b_plus,
                              const ComplexMatrix& b_minus);

// full pipeline: split, drop the kernel, build the projective frame per angle
// subspace, and assemble one unitary that anti-diagonalizes both restrictions
struct PairAntidiagonalization {
  SplitResult split;
  SubspaceDecomposition decomposition;
  ComplexMatrix a_restricted;        // retained-support coordinates
  ComplexMatrix a_prime_restricted;
  ComplexMatrix b_plus;              // projective frame on the retained support
  ComplexMatrix b_minus;
  ComplexMatrix w;
};

PairAntidiagonalization antidiagonalize_pair(const ObservablePair& pair);

// seeded generators for property tests
ComplexMatrix haar_unitary(int dim, std::mt19937_64& rng);
ObservablePair random_projective_pair(int dim, std::mt19937_64& rng);
std::pair<ComplexMatrix, ComplexMatrix> random_anticommuting_pair(int dim, std::mt19937_64& rng);

}  // namespace bellforge
