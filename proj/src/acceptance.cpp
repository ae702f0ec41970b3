#include "bellforge/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>

#include "bellforge/bounds.hpp"
#include "bellforge/facet_classifier.hpp"
#include "bellforge/observable_structure.hpp"
#include "bellforge/quantum_value.hpp"
#include "bellforge/selftest.hpp"
#include "bellforge/tensor.hpp"

namespace bellforge {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CriterionResult chain_fast_path() {
  CriterionResult r{1, "fast path reaches the chain plateau for 2..8 parties", false, ""};
  const auto t0 = std::chrono::steady_clock::now();
  double value_err = 0, angle_err = 0;
  for (int n = 2; n <= 8; ++n) {
    QuantumValueResult q = optimize_angles(mabk(n));
    value_err = std::max(value_err, std::abs(q.value - std::pow(2.0, (n - 1) / 2.0)));
    for (double t : q.angles) angle_err = std::max(angle_err, std::abs(std::abs(t) - kPi / 2));
  }
  const double dt = seconds_since(t0);
  r.passed = value_err <= 1e-9 && angle_err <= 1e-6 && dt < 30.0;
  r.detail = fmt("max value err %.2e (tol 1e-9), max angle err %.2e (tol 1e-6), %.1fs (limit 30s)",
                 value_err, angle_err, dt);
  return r;
}

CriterionResult chain_local_bounds() {
  CriterionResult r{2, "exact classical bound of the chain is 1 for 2..6 parties", false, ""};
  const auto t0 = std::chrono::steady_clock::now();
  bool all_one = true;
  for (int n = 2; n <= 6; ++n)
    if (!(*local_bound(mabk(n), 1).local == Dyadic(1))) all_one = false;
  const double dt = seconds_since(t0);
  r.passed = all_one && dt < 60.0;
  r.detail = fmt("all bounds exactly 1/1: %s, %.1fs (limit 60s)", all_one ? "yes" : "no", dt);
  return r;
}

CriterionResult chain_oracle() {
  CriterionResult r{3, "dense see-saw oracle reproduces the chain plateau for 2..6 parties", false,
                    ""};
  double err = 0;
  for (int n = 2; n <= 6; ++n) {
    QuantumValueResult q = seesaw_oracle(mabk(n));
    err = std::max(err, std::abs(q.value - std::pow(2.0, (n - 1) / 2.0)));
  }
  r.passed = err <= 1e-6;
  r.detail = fmt("max oracle err %.2e (tol 1e-6)", err);
  return r;
}

CriterionResult chain_selftest_data() {
  CriterionResult r{4, "chain maximizer is the branch state with anticommuting pairs for 2..6",
                    false, ""};
  double worst_fid = 1, worst_res = 0;
  for (int n = 2; n <= 6; ++n) {
    QuantumValueResult q = optimize_angles(mabk(n));
    std::vector<GhzDescriptor> ms = extract_maximizer(mabk(n), q.angles);
    if (ms.empty()) {
      r.detail = "no maximizer extracted";
      return r;
    }
    worst_fid = std::min(worst_fid, ghz_fidelity(mabk(n), q.angles, ms.front()));
    for (double res : anticommutation_residuals(q.angles)) worst_res = std::max(worst_res, res);
  }
  r.passed = worst_fid >= 1 - 1e-8 && worst_res <= 1e-6;
  r.detail = fmt("min fidelity 1-%.2e (tol 1e-8), max residual %.2e (tol 1e-6)", 1 - worst_fid,
                 worst_res);
  return r;
}

CriterionResult tripartite_classes() {
  CriterionResult r{5, "all 256 tripartite tables fall into the five known classes", false, ""};
  Classification c = classify(3);
  size_t total = 0;
  int nontrivial = 0;
  bool locals_one = true, routes_agree = true;
  for (const FacetClass& fc : c.classes) {
    total += fc.members.size();
    if (fc.label != "trivial") ++nontrivial;
    if (!(fc.local == Dyadic(1))) locals_one = false;
    if (std::abs(fc.value_fast - fc.value_oracle) > 1e-6) routes_agree = false;
  }
  auto value_of = [&](const char* label) {
    for (const FacetClass& fc : c.classes)
      if (fc.label == label) return fc.value_fast;
    return -1.0;
  };
  auto class_of = [&](const char* label) -> const FacetClass* {
    for (const FacetClass& fc : c.classes)
      if (fc.label == label) return &fc;
    return nullptr;
  };
  const bool values_ok = std::abs(value_of("trivial") - 1.0) <= 1e-9 &&
                         std::abs(value_of("unbalanced") - 5.0 / 3.0) <= 1e-9 &&
                         std::abs(value_of("chsh-like") - std::sqrt(2.0)) <= 1e-9 &&
                         std::abs(value_of("extended-chsh") - std::sqrt(2.0)) <= 1e-9 &&
                         std::abs(value_of("mermin") - 2.0) <= 1e-9;
  bool residuals_ok = false;
  if (const FacetClass* mer = class_of("mermin")) {
    residuals_ok = true;
    for (double res : mer->residuals) residuals_ok = residuals_ok && res <= 1e-6;
  }
  if (const FacetClass* unb = class_of("unbalanced")) {
    for (double res : unb->residuals)
      residuals_ok = residuals_ok && std::abs(res - 1.0 / 3.0) <= 1e-6;
  } else {
    residuals_ok = false;
  }
  r.passed = total == 256 && c.classes.size() == 5 && nontrivial == 4 && locals_one &&
             routes_agree && values_ok && residuals_ok;
  r.detail = fmt("%zu tables in %zu classes (%d non-trivial), locals==1: %s, fast/oracle<=1e-6: "
                 "%s, values: %s, residuals: %s",
                 total, c.classes.size(), nontrivial, locals_one ? "yes" : "no",
                 routes_agree ? "yes" : "no", values_ok ? "ok" : "bad",
                 residuals_ok ? "ok" : "bad");
  return r;
}

CriterionResult tripartite_verdicts() {
  CriterionResult r{6, "uniqueness scans grade the named tripartite representatives", false, ""};
  SelftestReport mer = uniqueness_scan(tripartite_representative("mermin"));
  SelftestReport ext = uniqueness_scan(tripartite_representative("extended-chsh"));
  SelftestReport cl = uniqueness_scan(tripartite_representative("chsh-like"));
  bool pair_found = false;
  for (const std::string& s : ext.constraints_detected)
    if (s.find("theta2") != std::string::npos && s.find("theta3") != std::string::npos &&
        s.find("pi/2") != std::string::npos)
      pair_found = true;
  bool free_found = false;
  for (const std::string& s : cl.constraints_detected)
    if (s == "theta3 free") free_found = true;
  r.passed = mer.verdict == "full-selftest" && ext.verdict == "partial" && pair_found &&
             cl.verdict == "state-only" && free_found;
  r.detail = fmt("mermin=%s, extended-chsh=%s (theta2/theta3 pair %s), chsh-like=%s (theta3 %s)",
                 mer.verdict.c_str(), ext.verdict.c_str(), pair_found ? "found" : "missing",
                 cl.verdict.c_str(), free_found ? "free" : "not free");
  return r;
}

CriterionResult quadratic_witnesses() {
  CriterionResult r{7, "quadratic witness peaks at 2^(n-1) on both routes", false, ""};
  double opt_err = 0, angle_err = 0, dense_err = 0, oracle_err = 0;
  for (int n = 3; n <= 6; ++n) {
    QuadraticExpression q = uffink(n, UffinkBase::mabk);
    QuantumValueResult u = uffink_optimize(q);
    const double target = std::pow(2.0, n - 1);
    opt_err = std::max(opt_err, std::abs(u.value - target));
    for (double t : u.angles) angle_err = std::max(angle_err, std::abs(std::abs(t) - kPi / 2));
    if (!u.maximizer) {
      r.detail = "no quadratic maximizer reported";
      return r;
    }
    // dense cross-check on the reported branch state
    std::vector<PartyObservables> obs = observables_from_angles(u.angles);
    const ComplexMatrix m = dense_operator(q.first, obs);
    const ComplexMatrix mp = dense_operator(q.second, obs);
    const StateVector psi = ghz_state(n, u.maximizer->b, u.maximizer->phase);
    const double em = (psi.adjoint() * m * psi)(0, 0).real();
    const double ep = (psi.adjoint() * mp * psi)(0, 0).real();
    dense_err = std::max(dense_err, std::abs(em * em + ep * ep - u.value));
  }
  for (int n = 3; n <= 5; ++n) {
    QuantumValueResult o = uffink_oracle(uffink(n, UffinkBase::mabk));
    oracle_err = std::max(oracle_err, std::abs(o.value - std::pow(2.0, n - 1)));
  }
  r.passed = opt_err <= 1e-8 && angle_err <= 1e-6 && dense_err <= 1e-8 && oracle_err <= 1e-6;
  r.detail = fmt("optimize err %.2e (tol 1e-8), angle err %.2e (tol 1e-6), dense err %.2e "
                 "(tol 1e-8), oracle err %.2e (tol 1e-6)",
                 opt_err, angle_err, dense_err, oracle_err);
  return r;
}

CriterionResult observable_pipeline() {
  CriterionResult r{8, "observable split, pairing and anti-diagonal frames hold at scale", false,
                    ""};
  std::mt19937_64 rng(kDefaultSeed);
  double split_err = 0, off_err = 0, unitary_err = 0, frame_err = 0;
  std::uniform_real_distribution<double> uang(-kPi, kPi);
  for (int i = 0; i < 500; ++i) {
    const int dim = 2 + (i % 15);
    ObservablePair p = random_projective_pair(dim, rng);
    SplitResult s = split_commuting_parts(p);
    split_err = std::max(split_err, (s.a_plus + s.a_minus - p.a_prime).norm());
    split_err = std::max(split_err, (p.a * s.a_plus - s.a_plus * p.a).norm());
    split_err = std::max(split_err, (p.a * s.a_minus + s.a_minus * p.a).norm());

    PairAntidiagonalization pd = antidiagonalize_pair(p);
    const Eigen::Index d = pd.a_restricted.rows();
    unitary_err = std::max(
        unitary_err,
        (pd.w * pd.w.adjoint() - ComplexMatrix::Identity(pd.w.rows(), pd.w.rows())).norm());
    const ComplexMatrix ar = pd.w * pd.a_restricted * pd.w.adjoint();
    const ComplexMatrix apr = pd.w * pd.a_prime_restricted * pd.w.adjoint();
    for (Eigen::Index row = 0; row < d; ++row)
      for (Eigen::Index col = 0; col < d; ++col) {
        if (row + col == d - 1) continue;
        off_err = std::max(off_err, std::abs(ar(row, col)));
        off_err = std::max(off_err, std::abs(apr(row, col)));
      }
    for (int k = 0; k < 100; ++k) {
      const double alpha = uang(rng);
      const ComplexMatrix mix = std::cos(alpha) * pd.b_plus + std::sin(alpha) * pd.b_minus;
      frame_err = std::max(frame_err, (mix * mix - ComplexMatrix::Identity(d, d)).norm());
      frame_err = std::max(frame_err, std::abs(mix.trace()));
    }
  }
  bool pairing_ok = true;
  double pairing_res = 0;
  for (int i = 0; i < 200; ++i) {
    const int dim = 2 + (i % 15);
    auto [a, b] = random_anticommuting_pair(dim, rng);
    PairingReport report = spectral_pairing_check(a, b);
    // kernel directions are allowed, so the guarantees are the eigenvector map
    // property and the symmetry of b's spectrum
    if (report.spectrum_asymmetry_b > 1e-8 || report.max_map_residual > 1e-8 ||
        report.mapped_count + report.null_count != dim)
      pairing_ok = false;
    pairing_res = std::max(pairing_res, report.max_map_residual);
  }
  r.passed = split_err <= 1e-10 && pairing_ok && off_err <= 1e-9 && unitary_err <= 1e-10 &&
             frame_err <= 1e-9;
  r.detail = fmt("split err %.2e (tol 1e-10), pairing %s (max residual %.2e), off-block %.2e "
                 "(tol 1e-9), unitarity %.2e (tol 1e-10), frame %.2e (tol 1e-9)",
                 split_err, pairing_ok ? "ok" : "bad", pairing_res, off_err, unitary_err,
                 frame_err);
  return r;
}

CriterionResult hybrid_ratios() {
  CriterionResult r{9, "hybrid values agree across routes; ratios to stated constants reported",
                    false, ""};
  bool agree = true;
  std::string ratios;
  for (int n : {3, 4}) {
    const double stated = reference_bounds(Family::svetlichny, n).biseparable->to_double();
    for (int sign : {+1, -1}) {
      BellExpression e = svetlichny(n, sign);
      const double fast = optimize_angles(e).value;
      const double oracle = seesaw_oracle(e).value;
      if (std::abs(fast - oracle) > 1e-6) agree = false;
      const double ratio = fast / stated;
      const bool match = std::abs(ratio - std::sqrt(2.0)) <= 1e-4;
      ratios += fmt("%s n=%d sign=%+d ratio=%.6f%s", ratios.empty() ? "" : ";", n, sign, ratio,
                    match ? "" : " (differs from sqrt(2), reported)");
    }
  }
  // the ratio clause passes by matching sqrt(2) or by reporting the measured value
  r.passed = agree;
  r.detail = fmt("fast/oracle agree <=1e-6: %s; %s", agree ? "yes" : "no", ratios.c_str());
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  out.push_back(chain_fast_path());
  out.push_back(chain_local_bounds());
  out.push_back(chain_oracle());
  out.push_back(chain_selftest_data());
  out.push_back(tripartite_classes());
  out.push_back(tripartite_verdicts());
  out.push_back(quadratic_witnesses());
  out.push_back(observable_pipeline());
  out.push_back(hybrid_ratios());
  return out;
}

}  // namespace bellforge
