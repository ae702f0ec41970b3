#include "bellforge/quantum_value.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

namespace bellforge {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double wrap_angle(double t) {
  double w = std::remainder(t, 2 * kPi);
  if (w <= -kPi) w = kPi;  // land on (-pi, pi]
  return w;
}

// contract one party: out[.. b_j ..] = sum_{k_j} T[b_j][k_j] in[.. k_j ..],
// with T = [[1, e^{-it}], [1, e^{it}]]
void apply_chain_factor(StateVector& v, int n, int party, double theta) {
  const Complex em(std::cos(theta), -std::sin(theta));
  const Complex ep = std::conj(em);
  const int stride = 1 << (n - 1 - party);
  const int dim = 1 << n;
  for (int base = 0; base < dim; base += stride << 1) {
    for (int i = base; i < base + stride; ++i) {
      const Complex x = v[i];
      const Complex y = v[i + stride];
      v[i] = x + em * y;
      v[i + stride] = x + ep * y;
    }
  }
}

// derivative of the factor above in theta
void apply_chain_factor_derivative(StateVector& v, int n, int party, double theta) {
  const Complex em(std::cos(theta), -std::sin(theta));
  const Complex dm = Complex(0, -1) * em;          // d/dt e^{-it}
  const Complex dp = std::conj(dm);
  const int stride = 1 << (n - 1 - party);
  const int dim = 1 << n;
  for (int base = 0; base < dim; base += stride << 1) {
    for (int i = base; i < base + stride; ++i) {
      const Complex y = v[i + stride];
      v[i] = dm * y;
      v[i + stride] = dp * y;
    }
  }
}

StateVector coeff_vector(const BellExpression& e) {
  StateVector c(int64_t{1} << e.n());
  for (uint32_t k = 0; k < e.key_count(); ++k) c[k] = Complex(e.coeff(k).to_double(), 0);
  return c;
}

StateVector transform_all(const StateVector& base, int n, const AngleConfig& th) {
  StateVector v = base;
  for (int j = 0; j < n; ++j) apply_chain_factor(v, n, j, th[j]);
  return v;
}

// largest squared block value of a linear expression: max_b |beta_b|^2
struct LinearObjective {
  StateVector base;
  int n;
  double operator()(const AngleConfig& th) const {
    StateVector v = transform_all(base, n, th);
    double best = 0;
    for (int i = 0; i < v.size(); ++i) best = std::max(best, std::norm(v[i]));
    return best;
  }
};

// largest squared pair mean of a quadratic witness: max_b ((|beta_b| + |beta_{~b}|)/2)^2
struct QuadraticObjective {
  StateVector base;
  int n;
  double operator()(const AngleConfig& th) const {
    StateVector v = transform_all(base, n, th);
    const uint32_t mask = (uint32_t{1} << n) - 1;
    double best = 0;
    for (uint32_t b = 0; b < (uint32_t{1} << (n - 1)); ++b) {
      double g = 0.5 * (std::abs(v[b]) + std::abs(v[~b & mask]));
      best = std::max(best, g * g);
    }
    return best;
  }
};

using Objective = std::function<double(const AngleConfig&)>;

// golden-section maximization on [lo, hi]; returns (argmax, value)
std::pair<double, double> golden_max(const std::function<double(double)>& f, double lo, double hi,
                                     double tol) {
  constexpr double kGolden = 0.6180339887498949;
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = f(x1);
    }
  }
  double mid = (lo + hi) / 2;
  double fm = f(mid);
  if (f1 > fm) fm = f1, mid = x1;
  if (f2 > fm) fm = f2, mid = x2;
  return {mid, fm};
}

struct RefineResult {
  double target = 0;
  AngleConfig angles;
  int sweeps = 0;
  bool converged = false;
};

RefineResult refine_config(const Objective& objective, AngleConfig th, int max_sweeps,
                           double window) {
  const int n = static_cast<int>(th.size());
  RefineResult r;
  double cur = objective(th);
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    const double before = cur;
    for (int j = 0; j < n; ++j) {
      const double keep = th[j];
      auto slice = [&](double t) {
        th[j] = t;
        return objective(th);
      };
      auto [x, fx] = golden_max(slice, keep - window, keep + window, 1e-9);
      if (fx > cur) {
        th[j] = x;
        cur = fx;
      } else {
        th[j] = keep;
      }
    }
    r.sweeps = sweep;
    if (cur - before <= 1e-13 * std::max(1.0, std::abs(cur))) {
      r.converged = true;
      break;
    }
  }
  for (double& t : th) t = wrap_angle(t);
  // wrapping may tie several representations; re-evaluate at the wrapped point
  r.target = objective(th);
  if (r.target < cur) r.target = cur;  // guard against boundary rounding
  r.angles = std::move(th);
  return r;
}

bool lex_less(const AngleConfig& a, const AngleConfig& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct SearchOutcome {
  RefineResult best;
  long grid_points = 0;
  int starts = 0;
  int best_start = -1;
};

SearchOutcome search_angles(int n, const Objective& objective, const OptimizeOptions& opts) {
  SearchOutcome out;
  const double window = kPi / opts.grid_density;
  std::vector<AngleConfig> starts;

  if (n <= 6) {
    const int g = opts.grid_density;
    long total = 1;
    for (int j = 0; j < n; ++j) total *= g;
    out.grid_points = total;
    std::vector<double> targets(total);
    parallel_for(static_cast<size_t>(total), [&](size_t idx) {
      AngleConfig th(n);
      long rest = static_cast<long>(idx);
      for (int j = n - 1; j >= 0; --j) {
        th[j] = -kPi + (2 * kPi * (rest % g)) / g;
        rest /= g;
      }
      targets[idx] = objective(th);
    });
    // keep the best few grid cells and polish each
    std::vector<long> order(total);
    std::iota(order.begin(), order.end(), 0);
    const size_t keep = std::min<size_t>(16, order.size());
    std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                      [&](long a, long b) { return targets[a] != targets[b] ? targets[a] > targets[b] : a < b; });
    for (size_t i = 0; i < keep; ++i) {
      AngleConfig th(n);
      long rest = order[i];
      for (int j = n - 1; j >= 0; --j) {
        th[j] = -kPi + (2 * kPi * (rest % g)) / g;
        rest /= g;
      }
      starts.push_back(std::move(th));
    }
  } else {
    // canonical warm starts, then seeded random ones
    starts.push_back(AngleConfig(n, kPi / 2));
    starts.push_back(AngleConfig(n, -kPi / 2));
    starts.push_back(AngleConfig(n, kPi / 4));
    AngleConfig alt(n);
    for (int j = 0; j < n; ++j) alt[j] = (j % 2 == 0) ? kPi / 2 : -kPi / 2;
    starts.push_back(std::move(alt));
    const int randoms = opts.starts_per_party * n;
    for (int s = 0; s < randoms; ++s) {
      std::mt19937_64 rng(mix_seed(opts.seed, static_cast<uint64_t>(s)));
      std::uniform_real_distribution<double> u(-kPi, kPi);
      AngleConfig th(n);
      for (double& t : th) t = u(rng);
      starts.push_back(std::move(th));
    }
  }

  out.starts = static_cast<int>(starts.size());
  std::vector<RefineResult> refined(starts.size());
  parallel_for(starts.size(), [&](size_t i) {
    refined[i] = refine_config(objective, starts[i], opts.max_sweeps, window);
  });
  int best = -1;
  for (size_t i = 0; i < refined.size(); ++i) {
    if (best < 0 || refined[i].target > refined[best].target ||
        (refined[i].target == refined[best].target && lex_less(refined[i].angles, refined[best].angles)))
      best = static_cast<int>(i);
  }
  out.best = refined[best];
  out.best_start = best;
  return out;
}

ComplexMatrix pauli_from_vec(const Eigen::Vector3d& v) {
  return pauli_observable(v.x(), v.y(), v.z());
}

// dense assembly by splitting on the leading remaining party
ComplexMatrix assemble_dense(int n, int party, size_t base, const std::vector<double>& coeffs,
                             const std::vector<std::array<ComplexMatrix, 2>>& ops) {
  const int m = n - party;
  if (m == 0) return ComplexMatrix::Constant(1, 1, Complex(coeffs[base], 0));
  const size_t half = size_t{1} << (m - 1);
  const int dim = 1 << m;
  bool any0 = std::any_of(coeffs.begin() + base, coeffs.begin() + base + half,
                          [](double c) { return c != 0; });
  bool any1 = std::any_of(coeffs.begin() + base + half, coeffs.begin() + base + 2 * half,
                          [](double c) { return c != 0; });
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  if (any0) out += kron(ops[party][0], assemble_dense(n, party + 1, base, coeffs, ops));
  if (any1) out += kron(ops[party][1], assemble_dense(n, party + 1, base + half, coeffs, ops));
  return out;
}

struct SeesawRun {
  double value = 0;
  std::vector<PartyObservables> obs;
  std::vector<double> trace;
  bool converged = false;
};

SeesawRun seesaw_single(int n, const std::vector<double>& coeffs, std::uint64_t seed,
                        int max_sweeps, double tol) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  auto random_unit = [&]() {
    Eigen::Vector3d v;
    do {
      v = Eigen::Vector3d(g(rng), g(rng), g(rng));
    } while (v.norm() < 1e-8);
    return Eigen::Vector3d(v / v.norm());
  };

  SeesawRun run;
  run.obs.resize(n);
  std::vector<std::array<ComplexMatrix, 2>> ops(n);
  for (int j = 0; j < n; ++j) {
    run.obs[j].unprimed = random_unit();
    run.obs[j].primed = random_unit();
    ops[j][0] = pauli_from_vec(run.obs[j].unprimed);
    ops[j][1] = pauli_from_vec(run.obs[j].primed);
  }

  const int dim = 1 << n;
  std::vector<uint32_t> keys;
  for (uint32_t k = 0; k < (uint32_t{1} << n); ++k)
    if (coeffs[k] != 0) keys.push_back(k);

  double prev = -1e300;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    ComplexMatrix b = assemble_dense(n, 0, 0, coeffs, ops);
    Eigensystem es = hermitian_eigensystem(b);
    const double lambda = es.values[dim - 1];
    StateVector psi = es.vectors.col(dim - 1);
    run.trace.push_back(lambda);
    run.value = lambda;
    if (lambda - prev < tol && sweep > 0) {
      run.converged = true;
      break;
    }
    prev = lambda;

    for (int j = 0; j < n; ++j) {
      for (int x = 0; x < 2; ++x) {
        Complex e00 = 0, e01 = 0, e11 = 0;
        for (uint32_t k : keys) {
          if (static_cast<int>((k >> (n - 1 - j)) & 1u) != x) continue;
          StateVector phi = psi;
          for (int l = 0; l < n; ++l) {
            if (l == j) continue;
            apply_single_qubit(phi, n, l, ops[l][(k >> (n - 1 - l)) & 1u]);
          }
          const int stride = 1 << (n - 1 - j);
          Complex s00 = 0, s01 = 0, s11 = 0;
          for (int basei = 0; basei < dim; basei += stride << 1) {
            for (int i = basei; i < basei + stride; ++i) {
              s00 += std::conj(psi[i]) * phi[i];
              s01 += std::conj(psi[i]) * phi[i + stride];
              s11 += std::conj(psi[i + stride]) * phi[i + stride];
            }
          }
          e00 += coeffs[k] * s00;
          e01 += coeffs[k] * s01;
          e11 += coeffs[k] * s11;
        }
        // steepest single-party update: align the Bloch vector with the linear form
        Eigen::Vector3d t(2 * e01.real(), 2 * e01.imag(), e00.real() - e11.real());
        if (t.norm() > 1e-14) {
          Eigen::Vector3d unit = t / t.norm();
          if (x == 0)
            run.obs[j].unprimed = unit;
          else
            run.obs[j].primed = unit;
          ops[j][x] = pauli_from_vec(unit);
        }
      }
    }
  }
  // one more eigenvalue so the reported value matches the final observables
  ComplexMatrix b = assemble_dense(n, 0, 0, coeffs, ops);
  Eigensystem es = hermitian_eigensystem(b);
  if (es.values[dim - 1] > run.value) {
    run.value = es.values[dim - 1];
    run.trace.push_back(run.value);
  }
  return run;
}

SeesawRun seesaw_multi(int n, const std::vector<double>& coeffs, const SeesawOptions& opts,
                       int* best_restart) {
  std::vector<SeesawRun> runs(opts.restarts);
  parallel_for(static_cast<size_t>(opts.restarts), [&](size_t r) {
    runs[r] = seesaw_single(n, coeffs, mix_seed(opts.seed, r), opts.max_sweeps, opts.tol);
  });
  int best = 0;
  for (int r = 1; r < opts.restarts; ++r)
    if (runs[r].value > runs[best].value) best = r;
  if (best_restart) *best_restart = best;
  return runs[best];
}

std::vector<double> double_coeffs(const BellExpression& e) {
  std::vector<double> c(size_t{1} << e.n());
  for (uint32_t k = 0; k < e.key_count(); ++k) c[k] = e.coeff(k).to_double();
  return c;
}

AngleConfig relative_angles(const std::vector<PartyObservables>& obs) {
  AngleConfig th(obs.size());
  for (size_t j = 0; j < obs.size(); ++j) {
    double c = std::clamp(obs[j].unprimed.dot(obs[j].primed), -1.0, 1.0);
    th[j] = std::acos(c);
  }
  return th;
}

GhzDescriptor descriptor_from_block(int n, uint32_t b, double phase) {
  GhzDescriptor d;
  d.n = n;
  d.b = b;
  d.phase = phase;
  d.amplitude0 = d.amplitude1 = 1.0 / std::sqrt(2.0);
  return d;
}

}  // namespace

ComplexMatrix AntidiagonalOperator::densify() const {
  const int dim = 1 << n;
  const uint32_t mask = static_cast<uint32_t>(dim - 1);
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (uint32_t b = 0; b < static_cast<uint32_t>(dim); ++b) m(b, ~b & mask) = beta[b];
  return m;
}

AntidiagonalOperator antidiagonal_elements_complex(const std::vector<Complex>& coeffs, int n,
                                                   const AngleConfig& angles) {
  if (n < 1 || n > 20) throw std::invalid_argument("antidiagonal_elements: party count out of range");
  if (coeffs.size() != size_t{1} << n)
    throw std::invalid_argument("antidiagonal_elements: coefficient count mismatch");
  if (angles.size() != static_cast<size_t>(n))
    throw std::invalid_argument("antidiagonal_elements: one angle per party required");
  StateVector v(int64_t{1} << n);
  for (size_t k = 0; k < coeffs.size(); ++k) v[static_cast<int64_t>(k)] = coeffs[k];
  for (int j = 0; j < n; ++j) apply_chain_factor(v, n, j, angles[j]);

  AntidiagonalOperator op;
  op.n = n;
  op.beta.assign(v.data(), v.data() + v.size());
  const uint32_t mask = (uint32_t{1} << n) - 1;
  double scale = 0, defect = 0;
  for (uint32_t b = 0; b < op.beta.size(); ++b) {
    scale = std::max(scale, std::abs(op.beta[b]));
    defect = std::max(defect, std::abs(op.beta[~b & mask] - std::conj(op.beta[b])));
  }
  op.hermitian = defect <= 1e-12 * std::max(1.0, scale);
  return op;
}

AntidiagonalOperator antidiagonal_elements(const BellExpression& e, const AngleConfig& angles) {
  std::vector<Complex> coeffs(size_t{1} << e.n());
  for (uint32_t k = 0; k < e.key_count(); ++k) coeffs[k] = Complex(e.coeff(k).to_double(), 0);
  return antidiagonal_elements_complex(coeffs, e.n(), angles);
}

std::vector<double> antidiagonal_gradient(const BellExpression& e, const AngleConfig& angles,
                                          std::uint32_t b) {
  const int n = e.n();
  if (angles.size() != static_cast<size_t>(n))
    throw std::invalid_argument("antidiagonal_gradient: one angle per party required");
  StateVector base = coeff_vector(e);
  StateVector full = transform_all(base, n, angles);
  std::vector<double> grad(n);
  for (int j = 0; j < n; ++j) {
    StateVector v = base;
    for (int l = 0; l < n; ++l) {
      if (l == j)
        apply_chain_factor_derivative(v, n, l, angles[l]);
      else
        apply_chain_factor(v, n, l, angles[l]);
    }
    grad[j] = 2 * (std::conj(full[b]) * v[b]).real();
  }
  return grad;
}

std::string GhzDescriptor::b_string() const { return index_bits(b, n); }

StateVector ghz_state(int n, std::uint32_t b, double phase) {
  const int64_t dim = int64_t{1} << n;
  const uint32_t mask = static_cast<uint32_t>(dim - 1);
  StateVector v = StateVector::Zero(dim);
  v[b] = Complex(1 / std::sqrt(2.0), 0);
  v[~b & mask] = std::exp(Complex(0, phase)) / std::sqrt(2.0);
  return v;
}

GhzDescriptor ghz_descriptor_from_state(const StateVector& state, std::uint32_t b,
                                        double imbalance_tol) {
  const int64_t dim = state.size();
  int n = 0;
  while ((int64_t{1} << n) < dim) ++n;
  if ((int64_t{1} << n) != dim) throw std::invalid_argument("ghz_descriptor_from_state: not a qubit register");
  const uint32_t mask = static_cast<uint32_t>(dim - 1);
  const uint32_t bb = ~b & mask;
  double off = 0;
  for (uint32_t i = 0; i < static_cast<uint32_t>(dim); ++i)
    if (i != b && i != bb) off += std::norm(state[i]);
  if (std::sqrt(off) > 1e-10)
    throw std::runtime_error("ghz_descriptor_from_state: support leaks off the branch pair");
  GhzDescriptor d;
  d.n = n;
  d.b = b;
  d.amplitude0 = std::abs(state[b]);
  d.amplitude1 = std::abs(state[bb]);
  if (std::abs(d.amplitude0 - d.amplitude1) > imbalance_tol)
    throw std::runtime_error("ghz_descriptor_from_state: branch amplitudes are unbalanced");
  d.phase = std::arg(state[bb]) - std::arg(state[b]);
  return d;
}

GhzValueResult ghz_value(const AntidiagonalOperator& op) {
  if (!op.hermitian) throw std::invalid_argument("ghz_value: operator is not hermitian");
  GhzValueResult r;
  for (uint32_t b = 0; b < (uint32_t{1} << (op.n - 1)); ++b) {
    const double v = std::abs(op.beta[b]);
    if (v > r.value) {
      r.value = v;
      r.b = b;
    }
  }
  for (uint32_t b = 0; b < (uint32_t{1} << (op.n - 1)); ++b)
    if (std::abs(op.beta[b]) >= r.value - 1e-12) r.tied_branches.push_back(b);
  r.phase = -std::arg(op.beta[r.b]);
  return r;
}

std::vector<PartyObservables> observables_from_angles(const AngleConfig& angles) {
  std::vector<PartyObservables> obs(angles.size());
  for (size_t j = 0; j < angles.size(); ++j) {
    obs[j].unprimed = Eigen::Vector3d(1, 0, 0);
    obs[j].primed = Eigen::Vector3d(std::cos(angles[j]), std::sin(angles[j]), 0);
  }
  return obs;
}

ComplexMatrix dense_operator(const BellExpression& e, const std::vector<PartyObservables>& obs) {
  const int n = e.n();
  if (n > kMaxQubits) throw std::invalid_argument("dense_operator: too many parties for a dense matrix");
  if (obs.size() != static_cast<size_t>(n))
    throw std::invalid_argument("dense_operator: one observable pair per party required");
  const int dim = 1 << n;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (uint32_t k = 0; k < e.key_count(); ++k) {
    if (e.coeff(k).is_zero()) continue;
    ComplexMatrix term = ComplexMatrix::Constant(1, 1, Complex(e.coeff(k).to_double(), 0));
    for (int j = 0; j < n; ++j) {
      const Eigen::Vector3d& v =
          ((k >> (n - 1 - j)) & 1u) ? obs[j].primed : obs[j].unprimed;
      term = kron(term, pauli_from_vec(v));
    }
    out += term;
  }
  return out;
}

QuantumValueResult optimize_angles(const BellExpression& e, const OptimizeOptions& opts) {
  const int n = e.n();
  LinearObjective obj{coeff_vector(e), n};
  SearchOutcome so = search_angles(n, obj, opts);

  QuantumValueResult r;
  r.value = std::sqrt(so.best.target);
  r.angles = so.best.angles;
  r.method = "fast-path";
  r.diagnostics.grid_points = so.grid_points;
  r.diagnostics.starts = so.starts;
  r.diagnostics.sweeps = so.best.sweeps;
  r.diagnostics.best_start = so.best_start;
  r.diagnostics.converged = so.best.converged;

  AntidiagonalOperator op = antidiagonal_elements(e, r.angles);
  if (op.hermitian) {
    GhzValueResult gv = ghz_value(op);
    r.maximizer = descriptor_from_block(n, gv.b, gv.phase);
  }
  return r;
}

QuantumValueResult refine_angles(const BellExpression& e, const AngleConfig& start,
                                 int max_sweeps, double window) {
  const int n = e.n();
  if (start.size() != static_cast<size_t>(n))
    throw std::invalid_argument("refine_angles: one angle per party required");
  LinearObjective obj{coeff_vector(e), n};
  RefineResult rr = refine_config(obj, start, max_sweeps, window);

  QuantumValueResult r;
  r.value = std::sqrt(rr.target);
  r.angles = rr.angles;
  r.method = "fast-path";
  r.diagnostics.starts = 1;
  r.diagnostics.sweeps = rr.sweeps;
  r.diagnostics.converged = rr.converged;

  AntidiagonalOperator op = antidiagonal_elements(e, r.angles);
  if (op.hermitian) {
    GhzValueResult gv = ghz_value(op);
    r.maximizer = descriptor_from_block(n, gv.b, gv.phase);
  }
  return r;
}

QuantumValueResult seesaw_oracle(const BellExpression& e, const SeesawOptions& opts) {
  const int n = e.n();
  if (n > 8) throw std::invalid_argument("seesaw_oracle: dense oracle is limited to eight parties");
  int best_restart = 0;
  SeesawRun run = seesaw_multi(n, double_coeffs(e), opts, &best_restart);
  QuantumValueResult r;
  r.value = run.value;
  r.angles = relative_angles(run.obs);
  r.method = "see-saw";
  r.diagnostics.starts = opts.restarts;
  r.diagnostics.best_start = best_restart;
  r.diagnostics.sweeps = static_cast<int>(run.trace.size());
  r.diagnostics.converged = run.converged;
  r.diagnostics.sweep_values = run.trace;
  return r;
}

namespace {

StateVector quadratic_coeff_vector(const QuadraticExpression& q) {
  const int n = q.first.n();
  StateVector c(int64_t{1} << n);
  for (uint32_t k = 0; k < q.first.key_count(); ++k)
    c[k] = Complex(q.first.coeff(k).to_double(), q.second.coeff(k).to_double());
  return c;
}

GhzDescriptor quadratic_maximizer(const AntidiagonalOperator& op, double* out_value) {
  const int n = op.n;
  const uint32_t mask = (uint32_t{1} << n) - 1;
  double best = -1;
  uint32_t arg = 0;
  for (uint32_t b = 0; b < (uint32_t{1} << (n - 1)); ++b) {
    const double g = 0.5 * (std::abs(op.beta[b]) + std::abs(op.beta[~b & mask]));
    if (g > best) {
      best = g;
      arg = b;
    }
  }
  if (out_value) *out_value = best * best;
  // phase aligning both branch contributions of <first> + i <second>; a dead
  // branch leaves the phase free, so pin it by aligning the live one
  const double scale = std::max(std::abs(op.beta[arg]), std::abs(op.beta[~arg & mask]));
  double chi = 0;
  if (std::abs(op.beta[arg]) <= 1e-12 * scale)
    chi = std::arg(op.beta[~arg & mask]) / 2;
  else if (std::abs(op.beta[~arg & mask]) <= 1e-12 * scale)
    chi = -std::arg(op.beta[arg]) / 2;
  else
    chi = (std::arg(op.beta[~arg & mask]) - std::arg(op.beta[arg])) / 2;
  return descriptor_from_block(n, arg, chi);
}

}  // namespace

QuantumValueResult uffink_value(const QuadraticExpression& q, const AngleConfig& angles) {
  const int n = q.first.n();
  StateVector base = quadratic_coeff_vector(q);
  std::vector<Complex> coeffs(base.data(), base.data() + base.size());
  AntidiagonalOperator op = antidiagonal_elements_complex(coeffs, n, angles);
  QuantumValueResult r;
  r.angles = angles;
  r.method = "fast-path";
  r.maximizer = quadratic_maximizer(op, &r.value);
  return r;
}

QuantumValueResult uffink_optimize(const QuadraticExpression& q, const OptimizeOptions& opts) {
  const int n = q.first.n();
  QuadraticObjective obj{quadratic_coeff_vector(q), n};
  SearchOutcome so = search_angles(n, obj, opts);

  QuantumValueResult r = uffink_value(q, so.best.angles);
  r.diagnostics.grid_points = so.grid_points;
  r.diagnostics.starts = so.starts;
  r.diagnostics.sweeps = so.best.sweeps;
  r.diagnostics.best_start = so.best_start;
  r.diagnostics.converged = so.best.converged;
  return r;
}

QuantumValueResult uffink_oracle(const QuadraticExpression& q, const UffinkOracleOptions& opts) {
  const int n = q.first.n();
  std::vector<double> cf = double_coeffs(q.first);
  std::vector<double> cs = double_coeffs(q.second);
  const size_t dim = cf.size();

  uint64_t eval_counter = 0;
  auto h = [&](double phi, uint64_t salt) {
    std::vector<double> combo(dim);
    for (size_t k = 0; k < dim; ++k) combo[k] = std::cos(phi) * cf[k] + std::sin(phi) * cs[k];
    SeesawOptions so = opts.seesaw;
    so.seed = mix_seed(opts.seesaw.seed, salt);
    return seesaw_multi(n, combo, so, nullptr);
  };

  std::vector<double> values(opts.phi_steps);
  parallel_for(static_cast<size_t>(opts.phi_steps), [&](size_t i) {
    values[i] = h(2 * kPi * static_cast<double>(i) / opts.phi_steps, i).value;
  });
  int best_i = 0;
  for (int i = 1; i < opts.phi_steps; ++i)
    if (values[i] > values[best_i]) best_i = i;

  const double phi0 = 2 * kPi * best_i / opts.phi_steps;
  const double delta = 2 * kPi / opts.phi_steps;
  SeesawRun best_run;
  double best_phi = phi0;
  double best_h = values[best_i];
  auto refined = golden_max(
      [&](double phi) {
        SeesawRun run = h(phi, 1000000 + (eval_counter++));
        if (run.value > best_h) {
          best_h = run.value;
          best_phi = phi;
          best_run = run;
        }
        return run.value;
      },
      phi0 - delta, phi0 + delta, 1e-9);
  (void)refined;
  if (best_run.obs.empty()) best_run = h(best_phi, 999);

  QuantumValueResult r;
  r.value = best_h * best_h;
  r.angles = relative_angles(best_run.obs);
  r.method = "phi-scan";
  r.diagnostics.grid_points = opts.phi_steps;
  r.diagnostics.phi = wrap_angle(best_phi);
  r.diagnostics.converged = true;
  r.diagnostics.sweep_values = best_run.trace;
  return r;
}

}  // namespace bellforge
