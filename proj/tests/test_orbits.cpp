#include <catch_amalgamated.hpp>

#include <cmath>

#include "fedlab/error.hpp"
#include "fedlab/orbits.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fedlab;
using Catch::Approx;

namespace {

double abs_dist(double a, double b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("orbit distance reduction", "[orbits]") {
  REQUIRE(orbit_distance(HermitianMatrix::diagonal({0, 1}), HermitianMatrix::diagonal({1, 0}), Metric::op) == 0.0);
  REQUIRE(orbit_distance(HermitianMatrix::diagonal({0, 0, 1}), HermitianMatrix::diagonal({0, 1, 1}), Metric::op) ==
          1.0);
  REQUIRE(orbit_distance(HermitianMatrix::diagonal({0, 0, 1}), HermitianMatrix::diagonal({0, 1, 1}), Metric::hs) ==
          Approx(std::sqrt(1.0 / 3.0)));
  REQUIRE_THROWS_AS(orbit_distance(HermitianMatrix::identity(2), HermitianMatrix::identity(3), Metric::op),
                    DimensionMismatch);
  REQUIRE(parse_metric("hs") == Metric::hs);
  REQUIRE_THROWS_AS(parse_metric("l1"), ConfigError);

  // Diagonal matrices: the best unitary is a permutation, found by enumeration.
  RngStream s(31, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + static_cast<int>(s.below(6));
    RealVector a;
    RealVector b;
    for (int i = 0; i < k; ++i) {
      a.push_back(s.normal());
      b.push_back(s.normal());
    }
    const auto da = HermitianMatrix::diagonal(a);
    const auto db = HermitianMatrix::diagonal(b);
    REQUIRE(orbit_distance(da, db, Metric::op) == Approx(oracle::min_perm_sup(a, b)).margin(1e-12));
    REQUIRE(orbit_distance(da, db, Metric::hs) == Approx(oracle::min_perm_l2(a, b)).margin(1e-12));
  }
}

TEST_CASE("orbit distance is a pseudometric", "[orbits]") {
  RngStream s(32, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index k = 1 + static_cast<Eigen::Index>(s.below(5));
    const HermitianMatrix a = gen::gue(k, s);
    const HermitianMatrix b = gen::gue(k, s);
    const HermitianMatrix c = gen::gue(k, s);
    for (Metric m : {Metric::op, Metric::hs}) {
      const double ab = orbit_distance(a, b, m);
      REQUIRE(ab == Approx(orbit_distance(b, a, m)).margin(1e-12));
      REQUIRE(orbit_distance(a, c, m) <= ab + orbit_distance(b, c, m) + 1e-12);
      REQUIRE(orbit_distance(a, conjugate(a, haar_unitary(k, s)), m) <= 1e-9);
    }
  }
}

TEST_CASE("sampled conjugators never beat the reduction", "[orbits]") {
  RngStream s(33, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index k = 2 + static_cast<Eigen::Index>(s.below(3));
    const HermitianMatrix a = gen::gue(k, s);
    const HermitianMatrix b = gen::gue(k, s);
    const double op = orbit_distance(a, b, Metric::op);
    const double hs = orbit_distance(a, b, Metric::hs);
    for (int i = 0; i < 200; ++i) {
      const HermitianMatrix d = difference(a, conjugate(b, haar_unitary(k, s)));
      REQUIRE(op_norm(d) >= op - 1e-12);
      REQUIRE(hs_norm(d) >= hs - 1e-12);
    }
  }
}

TEST_CASE("orbit balls", "[orbits]") {
  RngStream s(34, 0);
  const HermitianTuple c{HermitianMatrix::diagonal({0, 1})};
  REQUIRE(orbit_ball_contains(c, HermitianTuple{HermitianMatrix::diagonal({0.05, 1.0})}, 0.1, Metric::op, 10, s));
  REQUIRE_FALSE(orbit_ball_contains(c, HermitianTuple{HermitianMatrix::diagonal({0, 2})}, 0.5, Metric::op, 10, s));

  const HermitianTuple pair{gen::gue(3, s), gen::gue(3, s)};
  REQUIRE(orbit_ball_contains(pair, pair, 1e-6, Metric::op, 1, s));
  REQUIRE(orbit_ball_contains(pair, pair, 1e-6, Metric::hs, 0, s));

  // A conjugated copy is found by the refinement.
  const HermitianTuple rotated = conjugate(pair, haar_unitary(3, s));
  REQUIRE(tuple_orbit_distance_upper(pair, rotated, Metric::hs, 50, s) < 0.05);
  REQUIRE(tuple_distance(pair, rotated, Metric::hs) >= tuple_orbit_distance_upper(pair, rotated, Metric::hs, 0, s));

  REQUIRE_THROWS_AS(orbit_ball_contains(pair, c, 0.1, Metric::op, 1, s), DimensionMismatch);
  REQUIRE_THROWS_AS(tuple_distance(pair, c, Metric::op), DimensionMismatch);
}

TEST_CASE("greedy packing and covering", "[orbits]") {
  const std::vector<double> pts{0, 0.3, 0.7, 1.0};
  REQUIRE(greedy_packing(std::span<const double>(pts), abs_dist, 0.5) == std::vector<std::size_t>{0, 2});
  const std::vector<double> one{4.2};
  REQUIRE(greedy_packing(std::span<const double>(one), abs_dist, 0.5) == std::vector<std::size_t>{0});
  REQUIRE(greedy_covering(std::span<const double>(one), abs_dist, 0.5).size() == 1u);

  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  const auto centers = greedy_covering(std::span<const double>(grid), abs_dist, 0.25);
  REQUIRE(centers == std::vector<std::size_t>{0, 3, 6, 9});

  const std::vector<double> tight{0, 0.1, 0.2, 0.05};
  REQUIRE(greedy_covering(std::span<const double>(tight), abs_dist, 0.5).size() == 1u);
}

TEST_CASE("net and packing sandwich on orbit samples", "[orbits]") {
  RngStream s(35, 0);
  const HermitianMatrix model = HermitianMatrix::diagonal({0, 1, 1});
  std::vector<HermitianMatrix> samples;
  for (int i = 0; i < 400; ++i) samples.push_back(conjugate(model, haar_unitary(3, s)));
  const std::span<const HermitianMatrix> view(samples);
  auto op = [](const HermitianMatrix& a, const HermitianMatrix& b) { return op_norm(difference(a, b)); };
  auto hs = [](const HermitianMatrix& a, const HermitianMatrix& b) { return hs_norm(difference(a, b)); };
  for (double w : {0.8, 0.5, 0.3}) {
    const auto cov = greedy_covering(view, op, w).size();
    const auto pack = greedy_packing(view, op, w).size();
    const auto cov_half = greedy_covering(view, op, w / 2).size();
    REQUIRE(cov <= pack);
    REQUIRE(pack <= cov_half);
    REQUIRE(greedy_covering(view, hs, w).size() <= cov);
  }
}

TEST_CASE("exact orbit covering", "[orbits]") {
  const RealVector two{0, 1};
  const RealVector three{0, 1, 2};
  REQUIRE(exact_orbit_covering_finite_spectrum(two, 4, 0.5) == 3u);
  REQUIRE(exact_orbit_covering_finite_spectrum(three, 30, 0.9) == 406u);
  REQUIRE(exact_orbit_covering_finite_spectrum(two, 4, 10) == 1u);
  REQUIRE(exact_orbit_covering_finite_spectrum(RealVector{5}, 9, 0.1) == 1u);
  REQUIRE_THROWS_AS(exact_orbit_covering_finite_spectrum(three, 2, 0.5), InfeasibleRequest);
  REQUIRE_THROWS_AS(exact_orbit_covering_finite_spectrum(RealVector{1, 0}, 4, 0.5), ConfigError);

  for (int k = 3; k <= 60; ++k) {
    REQUIRE(exact_orbit_covering_finite_spectrum(three, k, 0.99) == oracle::pascal(k - 1, 2));
    REQUIRE(log_exact_orbit_covering_finite_spectrum(three, k, 0.5) ==
            Approx(std::log(static_cast<double>(oracle::pascal(k - 1, 2)))));
  }
  // log form stays finite where the count itself overflows.
  const RealVector many{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25};
  REQUIRE(std::isfinite(log_exact_orbit_covering_finite_spectrum(many, 1000, 0.5)));
  REQUIRE_THROWS_AS(exact_orbit_covering_finite_spectrum(many, 1000, 0.5), InfeasibleRequest);

  // Radii between the gap and the diameter: subset enumeration oracle.
  const std::vector<std::pair<RealVector, int>> cases = {
      {{0, 1}, 5}, {{0, 1}, 7}, {{0, 1, 2}, 5}, {{0, 1, 3}, 5}, {{0, 0.5, 2}, 6}, {{0, 1, 2, 3}, 6}};
  for (const auto& [sigma, k] : cases) {
    for (double w : {0.6, 1.2, 1.7, 2.5}) {
      INFO("k=" << k << " omega=" << w);
      REQUIRE(exact_orbit_covering_finite_spectrum(sigma, k, w) == oracle::min_orbit_cover(sigma, k, w));
    }
  }
}

TEST_CASE("analytic lower bounds", "[orbits]") {
  BoundParams p{5, 2, 3, 2, 0.25, 1.0};
  REQUIRE(volume_bound_exponent(p) == 34.0);
  REQUIRE(volume_lower_bound_log(p) == Approx(-25.0 * std::log(1.0) - 34.0 * std::log(4.0)));

  BoundParams eq{6, 2, 2, 3, 1.0, 8.0};
  REQUIRE(volume_bound_exponent(eq) == 18.0);
  REQUIRE(volume_lower_bound_log(eq) == Approx(-18.0 * std::log(8.0)));

  double prev = volume_lower_bound_log(p);
  for (double c1 : {1.5, 2.0, 4.0, 10.0}) {
    p.C1 = c1;
    const double v = volume_lower_bound_log(p);
    REQUIRE(v < prev);
    prev = v;
  }
  p.C1 = 1.0;
  p.delta = 0.0;
  REQUIRE_THROWS_AS(volume_lower_bound_log(p), ConfigError);
  REQUIRE_THROWS_AS(volume_lower_bound_log(BoundParams{6, 2, 3, 2, 0.25, 1.0}), ConfigError);

  const std::vector<int> sizes{2, 1, 1};
  REQUIRE(partition_bound_exponent(sizes) == 24.0);
  const std::vector<int> no_rest{2, 3, 0};
  REQUIRE(partition_bound_exponent(no_rest) == 2.0 * (4 + 9));
  REQUIRE(partition_lower_bound_log(sizes, 4, 0.25, 1.0) == Approx(-24.0 * std::log(4.0)));
  REQUIRE_THROWS_AS(partition_lower_bound_log(sizes, 5, 0.25, 1.0), ConfigError);
  const std::vector<int> lone{4};
  REQUIRE_THROWS_AS(partition_bound_exponent(lone), ConfigError);
}

TEST_CASE("hermitian coordinates", "[orbits]") {
  RngStream s(36, 0);
  const HermitianMatrix a = gen::gue(4, s);
  const RealVector c = hermitian_coordinates(a);
  REQUIRE(c.size() == 16u);
  double sq = 0.0;
  for (double x : c) sq += x * x;
  REQUIRE(std::sqrt(sq / 4.0) == Approx(hs_norm(a)).epsilon(1e-12));
  REQUIRE((from_hermitian_coordinates(c, 4).entries() - a.entries()).norm() < 1e-14);
}

TEST_CASE("monte carlo orbit packing", "[orbits]") {
  OrbitPackingRequest req;
  req.model = HermitianMatrix::diagonal({0, 1});
  req.omegas = {0.4, 0.2};
  req.budget = 3000;
  req.seed = 99;
  req.bucket_net = RealVector{0, 1};
  req.bucket_omega = 0.1;
  const OrbitPackingResult one = monte_carlo_orbit_packing(req);
  REQUIRE(one.samples == 3000u);
  REQUIRE(one.flagged == 0u);
  REQUIRE(one.packing[0] <= one.packing[1]);
  for (std::size_t i = 0; i < 2; ++i) {
    REQUIRE(one.packing[i] >= 1u);
    REQUIRE(one.packing[i] <= one.covering_half[i]);
  }
  for (unsigned w : {2u, 4u, 8u}) {
    req.workers = w;
    const OrbitPackingResult again = monte_carlo_orbit_packing(req);
    REQUIRE(again.packing == one.packing);
    REQUIRE(again.covering_half == one.covering_half);
  }

  // Against the generic greedy pass on the same samples.
  std::vector<HermitianMatrix> samples;
  for (std::size_t b = 0; b * kSamplesPerStream < req.budget; ++b) {
    RngStream st(req.seed, b);
    for (std::size_t i = 0; i < kSamplesPerStream && samples.size() < req.budget; ++i) {
      samples.push_back(conjugate(req.model, haar_unitary(2, st)));
    }
  }
  auto hs = [](const HermitianMatrix& a, const HermitianMatrix& b) { return hs_norm(difference(a, b)); };
  REQUIRE(greedy_packing(std::span<const HermitianMatrix>(samples), hs, 0.4).size() == one.packing[0]);

  // Seeds give counts within 10% of each other at k=2, omega=0.4.
  req.budget = 10000;
  req.workers = 4;
  req.omegas = {0.4};
  std::vector<double> counts;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    req.seed = seed;
    counts.push_back(static_cast<double>(monte_carlo_orbit_packing(req).packing[0]));
  }
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  REQUIRE(*hi <= 1.1 * *lo + 1.0);

  req.metric = Metric::op;
  req.model = HermitianMatrix::diagonal({0, 1, 1});
  req.budget = 2000;
  const auto op_res = monte_carlo_orbit_packing(req);
  REQUIRE(op_res.packing[0] >= 1u);
  req.omegas = {};
  REQUIRE_THROWS_AS(monte_carlo_orbit_packing(req), ConfigError);
}
