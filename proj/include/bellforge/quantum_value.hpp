#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bellforge/bell_expression.hpp"
#include "bellforge/parallel.hpp"
#include "bellforge/tensor.hpp"

namespace bellforge {

// one equatorial angle per party; A_j is sigma_x, A_j' is cos(t) sigma_x + sin(t) sigma_y
using AngleConfig = std::vector<double>;

// operator whose only nonzero entries sit at (b, ~b)
struct AntidiagonalOperator {
  int n = 0;
  std::vector<Complex> beta;  // beta[b] = entry at row b, column ~b
  bool hermitian = false;     // true when beta[~b] == conj(beta[b]) throughout
  ComplexMatrix densify() const;
};

AntidiagonalOperator antidiagonal_elements(const BellExpression& e, const AngleConfig& angles);
// same contraction for an arbitrary complex coefficient vector (used by quadratic witnesses)
AntidiagonalOperator antidiagonal_elements_complex(const std::vector<Complex>& coeffs, int n,
                                                   const AngleConfig& angles);

// d|beta[b]|^2 / dtheta_j for every party
std::vector<double> antidiagonal_gradient(const BellExpression& e, const AngleConfig& angles,
                                          std::uint32_t b);

struct GhzDescriptor {
  int n = 0;
  std::uint32_t b = 0;  // branch index, paired with ~b
  double phase = 0;     // relative phase of the ~b branch
  double amplitude0 = 0;
  double amplitude1 = 0;
  std::string b_string() const;
};

StateVector ghz_state(int n, std::uint32_t b, double phase);
// read a GHZ-form descriptor off a dense state; throws if the state is not supported on {b, ~b}
GhzDescriptor ghz_descriptor_from_state(const StateVector& state, std::uint32_t b,
                                        double imbalance_tol = 1e-10);

struct GhzValueResult {
  double value = 0;
  std::uint32_t b = 0;  // smallest maximizing branch
  double phase = 0;
  std::vector<std::uint32_t> tied_branches;  // representatives b < ~b within 1e-12 of the max
};

// largest eigenvalue of a hermitian anti-diagonal operator, by block inspection
GhzValueResult ghz_value(const AntidiagonalOperator& op);

struct Diagnostics {
  long grid_points = 0;
  int starts = 0;
  int sweeps = 0;
  int best_start = -1;
  bool converged = false;
  double phi = 0;  // phi-scan only
  std::vector<double> sweep_values;  // see-saw only, best restart
};

struct QuantumValueResult {
  double value = 0;
  AngleConfig angles;
  std::optional<GhzDescriptor> maximizer;
  std::string method;
  Diagnostics diagnostics;
};

struct OptimizeOptions {
  int grid_density = 8;        // points per axis for n <= 6
  int max_sweeps = 60;         // coordinate descent sweeps
  int starts_per_party = 64;   // random starts for n > 6
  std::uint64_t seed = kDefaultSeed;
};

QuantumValueResult optimize_angles(const BellExpression& e, const OptimizeOptions& opts = {});

// polish a given configuration by coordinate descent only; used by scans that
// need to land on the optimal set from a chosen neighborhood
QuantumValueResult refine_angles(const BellExpression& e, const AngleConfig& start,
                                 int max_sweeps = 60, double window = 0.4);

struct PartyObservables {
  Eigen::Vector3d unprimed;
  Eigen::Vector3d primed;
};

std::vector<PartyObservables> observables_from_angles(const AngleConfig& angles);
ComplexMatrix dense_operator(const BellExpression& e, const std::vector<PartyObservables>& obs);

struct SeesawOptions {
  int restarts = 20;
  int max_sweeps = 200;
  double tol = 1e-12;
  std::uint64_t seed = kDefaultSeed;
};

// dense alternating-eigenvector oracle, independent of the anti-diagonal route
QuantumValueResult seesaw_oracle(const BellExpression& e, const SeesawOptions& opts = {});

// quadratic witness <first>^2 + <second>^2 evaluated on the GHZ family at fixed angles
QuantumValueResult uffink_value(const QuadraticExpression& q, const AngleConfig& angles);
QuantumValueResult uffink_optimize(const QuadraticExpression& q, const OptimizeOptions& opts = {});

struct UffinkOracleOptions {
  int phi_steps = 360;
  SeesawOptions seesaw;
  UffinkOracleOptions() { seesaw.restarts = 4; }
};

// support-function scan: max over phi of the see-saw value of cos(phi) first + sin(phi) second
QuantumValueResult uffink_oracle(const QuadraticExpression& q, const UffinkOracleOptions& opts = {});

}  // namespace bellforge
