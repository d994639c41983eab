// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fedlab/dimensions.hpp"
#include "fedlab/error.hpp"
#include "fedlab/experiment.hpp"
#include "fedlab/microstates.hpp"
#include "fedlab/orbits.hpp"
#include "fedlab/spectra.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fedlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

unsigned hardware_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

double log_count_slope(const RealVector& omegas, const std::vector<std::size_t>& counts) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    x.push_back(-std::log(omegas[i]));
    y.push_back(std::log(static_cast<double>(counts[i])));
  }
  return oracle::slope(x, y);
}

// 1. exact orbit counts for sigma = {0,1,2}, omega = 0.9
Outcome orbit_counts() {
  Outcome o;
  const RealVector sigma{0, 1, 2};
  const auto start = std::chrono::steady_clock::now();
  for (int k : {10, 20, 30}) {
    const std::uint64_t got = exact_orbit_covering_finite_spectrum(sigma, k, 0.9);
    const std::uint64_t want = oracle::pascal(k - 1, 2);
    o.require(got == want, "k=" + std::to_string(k) + " got " + std::to_string(got) + " want " + std::to_string(want));
    o.note("k=" + std::to_string(k) + ":" + std::to_string(got));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 1.0, "runtime " + fmt(secs) + "s >= 1s");
  return o;
}

// 2. sampled conjugators never beat the eigenvalue reduction
Outcome reduction_soundness() {
  Outcome o;
  constexpr int kPairs = 100;
  constexpr int kUnitaries = 10000;
  constexpr int kSearchStarts = 16;
  const auto start = std::chrono::steady_clock::now();
  for (int k : {2, 3, 4}) {
    std::vector<int> violations(kPairs, 0);
    std::vector<double> gap_ratio(kPairs, 0.0);  // (best conjugator - reduction) / (1 + |A| + |B|), worst metric
    std::vector<double> raw_ratio(kPairs, 0.0);  // same for the unrefined Haar samples alone
    std::vector<std::thread> pool;
    const unsigned workers = hardware_workers();
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int p = static_cast<int>(w); p < kPairs; p += static_cast<int>(workers)) {
          RngStream s(2024, static_cast<std::uint64_t>(k * 1000 + p));
          const HermitianMatrix a = gen::gue(k, s);
          const HermitianMatrix b = gen::gue(k, s);
          const double red_op = orbit_distance(a, b, Metric::op);
          const double red_hs = orbit_distance(a, b, Metric::hs);
          const double scale = 1.0 + op_norm(a) + op_norm(b);
          const double guard = 1e-12 * scale;
          double best_op = INFINITY, best_hs = INFINITY;
          for (int u = 0; u < kUnitaries; ++u) {
            const HermitianMatrix d = difference(a, conjugate(b, haar_unitary(k, s)));
            const double dop = op_norm(d);
            const double dhs = hs_norm(d);
            if (dop < red_op - guard) ++violations[p];
            if (dhs < red_hs - guard) ++violations[p];
            best_op = std::min(best_op, dop);
            best_hs = std::min(best_hs, dhs);
          }
          raw_ratio[p] = std::max(best_op - red_op, best_hs - red_hs) / scale;
          // Conjugator search: Haar starting points refined by polar steps.
          const HermitianTuple ta{a}, tb{b};
          const double ref_op = tuple_orbit_distance_upper(tb, ta, Metric::op, kSearchStarts, s);
          const double ref_hs = tuple_orbit_distance_upper(tb, ta, Metric::hs, kSearchStarts, s);
          if (ref_op < red_op - guard) ++violations[p];
          if (ref_hs < red_hs - guard) ++violations[p];
          best_op = std::min(best_op, ref_op);
          best_hs = std::min(best_hs, ref_hs);
          gap_ratio[p] = std::max(best_op - red_op, best_hs - red_hs) / scale;
        }
      });
    }
    for (auto& t : pool) t.join();
    int total = 0;
    for (int v : violations) total += v;
    const double worst = *std::max_element(gap_ratio.begin(), gap_ratio.end());
    const double raw = *std::max_element(raw_ratio.begin(), raw_ratio.end());
    o.require(total == 0, "k=" + std::to_string(k) + " " + std::to_string(total) + " violations");
    o.require(worst <= 0.05, "k=" + std::to_string(k) + " best conjugator gap " + fmt(worst) + " x (1+|A|+|B|) > 0.05");
    o.note("k=" + std::to_string(k) + " worst gap " + fmt(worst) + " (raw Haar " + fmt(raw) + ")");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 300.0, "runtime " + fmt(secs) + "s >= 300s");
  o.note(fmt(secs, 3) + "s");
  return o;
}

// 3. Monte Carlo packing slopes of flag orbits
Outcome packing_exponent() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  struct Case {
    HermitianMatrix model;
    RealVector omegas;
    double lo, hi;
  };
  const Case cases[] = {{HermitianMatrix::diagonal({0.0, 1.0}), {0.4, 0.2, 0.1}, 1.6, 2.4},
                        {HermitianMatrix::diagonal({0.0, 1.0, 2.0}), {0.6, 0.45, 0.3}, 4.2, 7.8}};
  for (const Case& c : cases) {
    OrbitPackingRequest req;
    req.model = c.model;
    req.omegas = c.omegas;
    req.metric = Metric::hs;
    req.budget = 100000;
    req.seed = 1;
    req.workers = hardware_workers();
    req.with_covering = false;
    const OrbitPackingResult r = monte_carlo_orbit_packing(req);
    const double slope = log_count_slope(c.omegas, r.packing);
    const std::string k = std::to_string(c.model.dim());
    o.require(slope >= c.lo && slope <= c.hi,
              "k=" + k + " slope " + fmt(slope) + " outside [" + fmt(c.lo) + ", " + fmt(c.hi) + "]");
    o.note("k=" + k + " slope " + fmt(slope));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs <= 1800.0, "runtime " + fmt(secs) + "s > 1800s");
  o.note(fmt(secs, 3) + "s");
  return o;
}

RealVector geometric(double base, int from, int to) {
  RealVector w;
  for (int j = from; j <= to; ++j) w.push_back(std::pow(base, -j));
  return w;
}

// 4. packing dimension of Cantor, interval and finite sets
Outcome packing_dimension() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const double cantor = fit_packing_dimension(SpectrumSpec::cantor(0, 1, 1.0 / 3.0, 10), geometric(3, 1, 8)).value;
  const double want = std::log(2.0) / std::log(3.0);
  o.require(std::abs(cantor - want) <= 0.01, "cantor " + fmt(cantor, 6));
  const double interval = fit_packing_dimension(SpectrumSpec::interval(0, 1), geometric(2, 4, 12)).value;
  o.require(std::abs(interval - 1.0) <= 0.02, "interval " + fmt(interval, 6));
  for (const RealVector& pts : {RealVector{0, 1, 2}, RealVector{-1, 0.25, 0.5, 3}, RealVector{5}}) {
    double gap = INFINITY;
    for (std::size_t i = 1; i < pts.size(); ++i) gap = std::min(gap, pts[i] - pts[i - 1]);
    const double top = std::min(gap, 1.0) * 0.9;
    const double d = fit_packing_dimension(SpectrumSpec::finite(pts), {top, top / 2, top / 4, top / 100}).value;
    o.require(d == 0.0, "finite set of " + std::to_string(pts.size()) + " gives " + fmt(d, 17));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 1.0, "runtime " + fmt(secs) + "s >= 1s");
  o.note("cantor " + fmt(cantor, 6) + ", interval " + fmt(interval, 6));
  return o;
}

// 5. orbit-dimension statistics
Outcome orbit_dimension() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  CurveRequest fin;
  fin.target = SpectrumSpec::finite({0, 1, 2});
  fin.ks = {200};
  fin.omegas = {0.5};
  fin.method = CurveMethod::exact_orbit;
  const double flat = fit_orbit_dimension(build_covering_curve(fin).curve, OrbitVariant::f_log_over_k2).value;
  o.require(flat < 0.05, "f_log_over_k2 " + fmt(flat));

  CurveRequest can;
  can.target = SpectrumSpec::cantor(0, 1, 1.0 / 3.0, 10);
  can.omegas = geometric(3, 1, 6);
  can.method = CurveMethod::net_orbit;
  can.k_powers = {2, 3, 4};
  const DimensionEstimate ll = fit_orbit_dimension(build_covering_curve(can).curve, OrbitVariant::f_loglog);
  const double at_smallest = ll.per_omega.front().value;
  const double want = std::log(2.0) / std::log(3.0);
  o.require(std::abs(at_smallest - want) <= 0.05, "f_loglog at smallest omega " + fmt(at_smallest));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 120.0, "runtime " + fmt(secs) + "s >= 120s");
  o.note("f_log_over_k2 " + fmt(flat) + ", f_loglog " + fmt(at_smallest));
  return o;
}

// 6. closed forms and inequalities
Outcome closed_forms() {
  Outcome o;
  for (const RealVector& pts : {RealVector{0}, RealVector{0, 1}, RealVector{0, 1, 2}, RealVector{-3, 0, 0.5, 7, 9}}) {
    const double f = formula_delta_top_one_variable(SpectrumSpec::finite(pts));
    o.require(f == 1.0 - 1.0 / static_cast<double>(pts.size()), "formula on " + std::to_string(pts.size()) + " points");
  }
  o.require(formula_delta_top_one_variable(SpectrumSpec::interval(0, 1)) == 1.0, "formula on an interval");
  o.require(formula_delta_top_one_variable(SpectrumSpec::cantor(0, 1, 1.0 / 3.0, 10)) == 1.0, "formula on cantor");

  // delta_top against the orbit dimension on finite-spectrum grids
  int checked = 0;
  const std::vector<RealVector> spectra{{0, 1}, {0, 1, 2}, {0, 0.5, 2, 3}};
  const RealVector omegas{0.4, 0.2, 0.1, 0.05};
  for (const RealVector& pts : spectra) {
    const SpectrumSpec target = SpectrumSpec::finite(pts);
    CurveRequest orbit;
    orbit.target = target;
    orbit.ks = {4, 8, 12, 16};
    orbit.omegas = omegas;
    orbit.method = CurveMethod::exact_orbit;
    const DimensionEstimate kf = fit_orbit_dimension(build_covering_curve(orbit).curve, OrbitVariant::f_log_over_k2);

    CurveRequest bound = orbit;
    bound.method = CurveMethod::analytic_bound;
    CurveRequest mc = orbit;
    mc.method = CurveMethod::monte_carlo;
    mc.ks = {static_cast<long long>(pts.size()), static_cast<long long>(pts.size()) + 1};
    mc.budget = 2000;
    mc.seed = 5;
    mc.metric = Metric::op;
    const double deltas[] = {fit_delta_top(build_covering_curve(bound).curve).value,
                             fit_delta_top(build_covering_curve(mc).curve).value,
                             formula_delta_top_one_variable(target)};
    for (double d : deltas) {
      ++checked;
      o.require(d <= kf.value + 1.0, "delta_top " + fmt(d) + " > k_f + 1 = " + fmt(kf.value + 1.0));
    }
  }

  double worst = 0.0;
  for (double d : {0.0, 0.25, 0.5, 2.0 / 3.0, 1.0, 1.7}) {
    CoveringCurve c;
    for (long long k : {3, 5, 8, 13}) {
      for (double w : {0.5, 0.1, 0.02, 0.001}) {
        const double v = d * static_cast<double>(k * k) * -std::log(w);
        c.add({k, w, v, v, CurveMethod::analytic_bound, 0, 0});
      }
    }
    worst = std::max(worst, std::abs(fit_delta_top(c).value - d));
  }
  o.require(worst <= 1e-12, "power-law inversion error " + fmt(worst));
  o.note(std::to_string(checked) + " grid checks, inversion error " + fmt(worst));
  return o;
}

// 7. bucketing of perturbed exact microstates, and the partition bound
Outcome microstate_regime() {
  Outcome o;
  const SpectrumSpec sigma = SpectrumSpec::finite({0, 1, 2});
  RngStream s(77, 0);
  int wrong = 0, flagged = 0;
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 3 + static_cast<int>(s.below(14));
    const double omega = 0.05 + 0.45 * s.uniform();  // at most theta/2
    const MultiplicityVector mult(gen::random_composition(k, 3, s));
    const HermitianMatrix exact = exact_microstate(sigma.finite_points(), mult);
    const HermitianMatrix rotated = conjugate(exact, haar_unitary(k, s));
    const HermitianMatrix noise = gen::noise_with_op_norm(k, omega * (0.999 * s.uniform()), s);
    const HermitianMatrix a = HermitianMatrix::hermitize(rotated.entries() + noise.entries());
    const BucketReport r = bucket_spectrum(a, separated_net(sigma, omega), omega);
    if (!r.in_regime) ++flagged;
    worst_ratio = std::max(worst_ratio, r.deviation / omega);
    const auto got = r.multiplicities();
    if (r.deviation > 2.0 * omega || !got || !(*got == mult)) ++wrong;
  }
  o.require(wrong == 0, std::to_string(wrong) + " trials with wrong buckets");
  o.require(flagged == 0, "flag rate " + fmt(flagged / 1000.0));

  int outside = 0, broken = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const gen::PartitionInstance inst = gen::partition_instance(s);
    const double m = inst.m;
    if (inst.hs_distance > 2.0 / std::pow(m, 3)) {
      ++outside;
      continue;
    }
    const MultiplicityVector blocks(inst.blocks);
    const std::vector<int> sizes = eigenvalue_partition(inst.eigs, blocks, inst.m);
    const double cap = 4.0 * inst.k / std::pow(m, 4);
    for (int j = 0; j < inst.m; ++j) {
      if (inst.blocks[j] - sizes[j] > cap) ++broken;
    }
    if (sizes.back() > 4.0 * inst.k / std::pow(m, 3)) ++broken;
  }
  o.require(outside == 0, std::to_string(outside) + " instances outside the distance regime");
  o.require(broken == 0, std::to_string(broken) + " partition bound violations");
  o.note("max deviation/omega " + fmt(worst_ratio));
  return o;
}

// 8. Monte Carlo payloads do not depend on reruns or worker counts
Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> runs{
      {"covering-curve", "target=finite:0,1,2", "ks=3,4", "omegas=0.6,0.4", "method=monte-carlo", "budget=3000"},
      {"delta-top", "target=interval:0..1", "ks=2,3", "omegas=0.3,0.2", "budget=2000", "metric=op"},
      {"orbit-dim", "target=finite:0,1", "ks=2,4", "omegas=0.5,0.25", "method=monte-carlo", "budget=2000"}};
  for (const auto& base : runs) {
    std::string reference;
    std::string reference_csv;
    for (const char* workers : {"1", "1", "4", "8", "4"}) {
      auto args = base;
      args.push_back("seed=9");
      args.push_back(std::string("workers=") + workers);
      const Report r = run_experiment(ExperimentConfig::from_args(args, std::nullopt));
      const std::string csv = (r.curve ? r.curve->to_csv() : std::string()) + r.summary_csv();
      if (reference.empty()) {
        reference = r.payload_json;
        reference_csv = csv;
      } else {
        o.require(r.payload_json == reference && csv == reference_csv,
                  base.front() + " differs at workers=" + workers);
      }
    }
  }
  o.note(std::to_string(runs.size()) + " experiments x 5 runs");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact orbit counts", orbit_counts},
      {"orbit-distance reduction soundness", reduction_soundness},
      {"flag-orbit packing exponent", packing_exponent},
      {"packing-dimension estimator", packing_dimension},
      {"orbit-dimension statistics", orbit_dimension},
      {"closed forms and inequalities", closed_forms},
      {"microstate bucketing regime", microstate_regime},
      {"determinism", determinism}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu: %s (%.2fs) %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
