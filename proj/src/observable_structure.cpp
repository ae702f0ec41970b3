#include "bellforge/observable_structure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellforge {

namespace {

void require_projective(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(who) + ": matrix is not square");
  if (!is_projective(m, 1e-9))
    throw std::invalid_argument(std::string(who) + ": observable is not binary projective");
}

// scale every column so its largest entry is real positive; keeps outputs
// stable across eigensolver phase conventions
void fix_phases(ComplexMatrix& m) {
  for (int c = 0; c < m.cols(); ++c) {
    int arg = 0;
    double best = -1;
    for (int r = 0; r < m.rows(); ++r) {
      double a = std::abs(m(r, c));
      if (a > best + 1e-12) {
        best = a;
        arg = r;
      }
    }
    if (best > 1e-14) {
      Complex ph = m(arg, c) / std::abs(m(arg, c));
      m.col(c) *= std::conj(ph);
    }
  }
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs(a * b - b * a);
}

double anticommutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs(a * b + b * a);
}

}  // namespace

SplitResult split_commuting_parts(const ObservablePair& pair) {
  require_projective(pair.a, "split_commuting_parts");
  require_projective(pair.a_prime, "split_commuting_parts");
  if (pair.a.rows() != pair.a_prime.rows())
    throw std::invalid_argument("split_commuting_parts: dimension mismatch");

  const int dim = static_cast<int>(pair.a.rows());
  Eigensystem es = hermitian_eigensystem(pair.a);
  int plus = 0;
  for (int i = 0; i < dim; ++i)
    if (es.values[i] > 0) ++plus;

  // +1 eigenvectors first, then -1
  ComplexMatrix q(dim, dim);
  int col = 0;
  for (int i = dim - plus; i < dim; ++i) q.col(col++) = es.vectors.col(i);
  for (int i = 0; i < dim - plus; ++i) q.col(col++) = es.vectors.col(i);
  fix_phases(q);

  ComplexMatrix tilted = q.adjoint() * pair.a_prime * q;
  ComplexMatrix block = ComplexMatrix::Zero(dim, dim);
  block.topLeftCorner(plus, plus) = tilted.topLeftCorner(plus, plus);
  block.bottomRightCorner(dim - plus, dim - plus) = tilted.bottomRightCorner(dim - plus, dim - plus);

  SplitResult r;
  r.a = pair.a;
  r.a_prime = pair.a_prime;
  r.a_plus = q * block * q.adjoint();
  r.a_plus = ComplexMatrix((r.a_plus + r.a_plus.adjoint()) / 2.0);
  r.a_minus = pair.a_prime - r.a_plus;  // exact by construction
  r.dim_plus = plus;
  r.dim_minus = dim - plus;
  return r;
}

PairingReport spectral_pairing_check(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!is_hermitian(a, 1e-10) || !is_hermitian(b, 1e-10))
    throw std::invalid_argument("spectral_pairing_check: inputs must be hermitian");
  if (a.rows() != b.rows())
    throw std::invalid_argument("spectral_pairing_check: dimension mismatch");
  const double scale = std::max({1.0, max_abs(a), max_abs(b)});
  if (anticommutator_norm(a, b) > 1e-8 * scale)
    throw std::invalid_argument("spectral_pairing_check: inputs do not anticommute");

  const int dim = static_cast<int>(a.rows());
  PairingReport rep;
  rep.dimension = dim;

  Eigensystem ea = hermitian_eigensystem(a);
  Eigensystem eb = hermitian_eigensystem(b);
  for (int i = 0; i < dim; ++i) {
    rep.spectrum_asymmetry_a =
        std::max(rep.spectrum_asymmetry_a, std::abs(ea.values[i] + ea.values[dim - 1 - i]));
    rep.spectrum_asymmetry_b =
        std::max(rep.spectrum_asymmetry_b, std::abs(eb.values[i] + eb.values[dim - 1 - i]));
  }

  const double bscale = std::max(1.0, max_abs(b));
  for (int i = 0; i < dim; ++i) {
    StateVector v = ea.vectors.col(i);
    StateVector w = b * v;
    if (w.norm() <= 1e-8 * bscale) {
      ++rep.null_count;
      continue;
    }
    ++rep.mapped_count;
    double residual = (a * w + ea.values[i] * w).norm() / w.norm();
    rep.max_map_residual = std::max(rep.max_map_residual, residual);
  }
  return rep;
}

SubspaceDecomposition truncate_kernel(const SplitResult& split, double kernel_tol) {
  const int dim = static_cast<int>(split.a_minus.rows());
  Eigensystem es = hermitian_eigensystem(split.a_minus);

  SubspaceDecomposition out;
  std::vector<int> kernel;
  // group indices by eigenvalue, positives descending
  struct Group {
    double value;
    std::vector<int> idx;
  };
  std::vector<Group> pos, neg;
  for (int i = dim - 1; i >= 0; --i) {
    const double v = es.values[i];
    if (std::abs(v) < kernel_tol) {
      kernel.push_back(i);
      continue;
    }
    auto& side = v > 0 ? pos : neg;
    if (!side.empty() && std::abs(side.back().value - v) < 1e-8) {
      side.back().idx.push_back(i);
      side.back().value =
          (side.back().value * (side.back().idx.size() - 1) + v) / side.back().idx.size();
    } else {
      side.push_back({v, {i}});
    }
  }
  // positives were collected descending; order negatives most-negative-first
  // so group gi on both sides shares one |value|
  std::sort(neg.begin(), neg.end(), [](const Group& x, const Group& y) { return x.value < y.value; });

  out.kernel_dimension = static_cast<int>(kernel.size());
  if (pos.size() != neg.size())
    throw std::runtime_error("truncate_kernel: unpaired spectrum in the anticommuting part");

  int retained = 0;
  for (size_t gi = 0; gi < pos.size(); ++gi) {
    if (std::abs(pos[gi].value + neg[gi].value) > 1e-8 ||
        pos[gi].idx.size() != neg[gi].idx.size())
      throw std::runtime_error("truncate_kernel: unpaired spectrum in the anticommuting part");
    AngleSubspace sub;
    sub.theta = std::asin(std::clamp(pos[gi].value, 0.0, 1.0));
    sub.multiplicity = static_cast<int>(pos[gi].idx.size());
    sub.basis = ComplexMatrix(dim, 2 * sub.multiplicity);
    int c = 0;
    for (int i : pos[gi].idx) sub.basis.col(c++) = es.vectors.col(i);
    for (int i : neg[gi].idx) sub.basis.col(c++) = es.vectors.col(i);
    fix_phases(sub.basis);
    retained += 2 * sub.multiplicity;
    out.subspaces.push_back(std::move(sub));
  }

  out.retained_basis = ComplexMatrix(dim, retained);
  int c = 0;
  for (const AngleSubspace& sub : out.subspaces) {
    out.retained_basis.middleCols(c, sub.basis.cols()) = sub.basis;
    c += static_cast<int>(sub.basis.cols());
  }
  return out;
}

ComplexMatrix antidiagonalize(const ComplexMatrix& a, const ComplexMatrix& b_plus,
                              const ComplexMatrix& b_minus) {
  const int dim = static_cast<int>(a.rows());
  if (dim % 2 != 0) throw std::invalid_argument("antidiagonalize: odd dimension");
  const double tol = 1e-8;
  for (const ComplexMatrix* m : {&a, &b_plus, &b_minus}) {
    if (!is_projective(*m, tol)) throw std::invalid_argument("antidiagonalize: input is not projective");
    if (std::abs(m->trace()) > tol * dim)
      throw std::invalid_argument("antidiagonalize: input is not traceless");
  }
  if (commutator_norm(a, b_plus) > tol || anticommutator_norm(a, b_minus) > tol ||
      anticommutator_norm(b_plus, b_minus) > tol)
    throw std::invalid_argument("antidiagonalize: inputs do not satisfy the required relations");

  const int m = dim / 2;
  Eigensystem ea = hermitian_eigensystem(a);
  ComplexMatrix p(dim, m);
  for (int i = 0; i < m; ++i) p.col(i) = ea.vectors.col(dim - 1 - i);  // +1 eigenspace

  // diagonalize the commuting part inside the +1 eigenspace
  ComplexMatrix inner = p.adjoint() * b_plus * p;
  inner = ComplexMatrix((inner + inner.adjoint()) / 2.0);
  Eigensystem ei = hermitian_eigensystem(inner);
  ComplexMatrix u(dim, m);
  for (int i = 0; i < m; ++i) u.col(i) = p * ei.vectors.col(m - 1 - i);  // +1 block first
  fix_phases(u);

  ComplexMatrix q(dim, dim);
  for (int i = 0; i < m; ++i) {
    q.col(i) = u.col(i);
    q.col(dim - 1 - i) = b_minus * u.col(i);
  }
  if (max_abs(q.adjoint() * q - ComplexMatrix::Identity(dim, dim)) > 1e-7)
    throw std::runtime_error("antidiagonalize: paired frame failed to come out orthonormal");

  // per pair: sigma_z -> sigma_x, sigma_x -> sigma_y
  const Complex h(0.5, 0);
  ComplexMatrix rot = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < m; ++i) {
    rot(i, i) = h * Complex(-1, 1);
    rot(i, dim - 1 - i) = h * Complex(1, 1);
    rot(dim - 1 - i, i) = h * Complex(-1, 1);
    rot(dim - 1 - i, dim - 1 - i) = h * Complex(-1, -1);
  }
  return rot * q.adjoint();
}

PairAntidiagonalization antidiagonalize_pair(const ObservablePair& pair) {
  PairAntidiagonalization out;
  out.split = split_commuting_parts(pair);
  out.decomposition = truncate_kernel(out.split);
  if (out.decomposition.subspaces.empty())
    throw std::invalid_argument("antidiagonalize_pair: the observables commute on the whole space");

  const ComplexMatrix& rb = out.decomposition.retained_basis;
  const int total = static_cast<int>(rb.cols());
  out.a_restricted = rb.adjoint() * out.split.a * rb;
  out.a_prime_restricted = rb.adjoint() * out.split.a_prime * rb;
  out.b_plus = ComplexMatrix::Zero(total, total);
  out.b_minus = ComplexMatrix::Zero(total, total);
  out.w = ComplexMatrix::Zero(total, total);

  int col_offset = 0;  // start of this subspace in retained coordinates
  int pair_offset = 0; // how many +-pairs came before, for the mirrored layout
  for (const AngleSubspace& sub : out.decomposition.subspaces) {
    const int sdim = 2 * sub.multiplicity;
    const ComplexMatrix& v = sub.basis;
    ComplexMatrix a_i = v.adjoint() * out.split.a * v;
    ComplexMatrix aplus_i = v.adjoint() * out.split.a_plus * v;
    ComplexMatrix aminus_i = v.adjoint() * out.split.a_minus * v;

    const double s = std::sin(sub.theta);
    const double c = std::cos(sub.theta);
    ComplexMatrix b_minus_i = aminus_i / s;
    // at theta = pi/2 the commuting part vanishes on this subspace; the
    // restriction of a itself completes the frame
    ComplexMatrix b_plus_i = c > 1e-8 ? ComplexMatrix(aplus_i / c) : a_i;

    ComplexMatrix w_i = antidiagonalize(a_i, b_plus_i, b_minus_i);

    out.b_plus.block(col_offset, col_offset, sdim, sdim) = b_plus_i;
    out.b_minus.block(col_offset, col_offset, sdim, sdim) = b_minus_i;

    // mirrored placement keeps every block anti-diagonal in the global frame
    for (int l = 0; l < sdim; ++l) {
      const int g = l < sub.multiplicity
                        ? pair_offset + l
                        : total - 1 - (pair_offset + (sdim - 1 - l));
      out.w.row(g).segment(col_offset, sdim) = w_i.row(l);
    }
    col_offset += sdim;
    pair_offset += sub.multiplicity;
  }
  return out;
}

ComplexMatrix haar_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    Complex d = r(i, i);
    q.col(i) *= (std::abs(d) > 1e-14) ? d / std::abs(d) : Complex(1, 0);
  }
  return q;
}

ObservablePair random_projective_pair(int dim, std::mt19937_64& rng) {
  auto random_signs = [&](int d) {
    RealVector s(d);
    bool seen_plus = false, seen_minus = false;
    while (!(seen_plus && seen_minus)) {
      seen_plus = seen_minus = false;
      for (int i = 0; i < d; ++i) {
        s[i] = (rng() & 1) ? 1.0 : -1.0;
        (s[i] > 0 ? seen_plus : seen_minus) = true;
      }
      if (d < 2) break;
    }
    return s;
  };
  ObservablePair p;
  ComplexMatrix u = haar_unitary(dim, rng);
  ComplexMatrix v = haar_unitary(dim, rng);
  p.a = u * random_signs(dim).asDiagonal() * u.adjoint();
  p.a_prime = v * random_signs(dim).asDiagonal() * v.adjoint();
  p.a = ComplexMatrix((p.a + p.a.adjoint()) / 2.0);
  p.a_prime = ComplexMatrix((p.a_prime + p.a_prime.adjoint()) / 2.0);
  return p;
}

std::pair<ComplexMatrix, ComplexMatrix> random_anticommuting_pair(int dim, std::mt19937_64& rng) {
  const int m = dim / 2;
  const int rest = dim - 2 * m;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix b = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < m; ++i) {
    a(2 * i, 2 * i) = 1;
    a(2 * i + 1, 2 * i + 1) = -1;
    double d = (rng() % 5 == 0) ? 0.0 : u(rng);  // singular values, some zero
    b(2 * i, 2 * i + 1) = d;
    b(2 * i + 1, 2 * i) = d;
  }
  for (int i = 0; i < rest; ++i) a(2 * m + i, 2 * m + i) = (rng() & 1) ? 1 : -1;
  ComplexMatrix w = haar_unitary(dim, rng);
  ComplexMatrix wa = w * a * w.adjoint();
  ComplexMatrix wb = w * b * w.adjoint();
  wa = ComplexMatrix((wa + wa.adjoint()) / 2.0);
  wb = ComplexMatrix((wb + wb.adjoint()) / 2.0);
  return {wa, wb};
}

}  // namespace bellforge
