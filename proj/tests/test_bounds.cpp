#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <vector>

#include "dyson/bounds.hpp"
#include "dyson/rng.hpp"

using namespace dyson;

namespace {

// Literal transcription of the level-p penalty term, kept deliberately naive
// (materializes b_p) as a cross-check of the regrouped production form.
double naive_term(double alpha, double c, double h, double inv_beta, int p) {
  const double bp = std::pow(2.0, (2.0 - alpha) * p);
  const double entropy = std::log(1.0 + std::sqrt(2.0 * std::numbers::pi * std::numbers::e));
  return 1.0 / (c * bp) + inv_beta / bp * std::log(2.0 * std::sqrt(c * bp)) +
         h * std::pow(2.0, (alpha - 1.5) * p) * (std::log(2.0 * std::sqrt(c * bp)) + entropy);
}

}  // namespace

TEST_CASE("partition size brackets the square root") {
  // b_1 = 1 when alpha = 2, so x is directly sqrt(c).
  const ThermoParams th{1.0, 0.0, FieldDist::gaussian};
  const HierarchyParams flat{2.0, 1};
  CHECK(make_partition(flat, th, BoundParams{6.25, 0.0}, 1).parts == 3);  // x = 2.5
  CHECK(make_partition(flat, th, BoundParams{16.0, 0.0}, 1).parts == 5);  // x = 4
  CHECK(make_partition(flat, th, BoundParams{0.5, 0.0}, 1).parts == 1);

  const HierarchyParams lat{1.2, 3};
  const IntervalPartition p = make_partition(lat, th, BoundParams{10.0, 0.0}, 3);
  CHECK(p.parts == 8);  // x = sqrt(10 * 2^{2.4}) = 7.265...
  CHECK(p.level == 3);

  CounterRng rng(31, 0, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const HierarchyParams l{1.05 + 0.9 * rng.next_unit(), 1 + static_cast<int>(rng.next_u64() % 8)};
    const ThermoParams t{0.1 + 5.0 * rng.next_unit(), 0.0, FieldDist::gaussian};
    const BoundParams bp{0.1 + 20.0 * rng.next_unit(), 3.0 * rng.next_unit()};
    const int level = 1 + static_cast<int>(rng.next_u64() % l.depth);
    const double x = std::sqrt(bp.c * std::pow(t.beta, bp.d) * l.bn(level));
    const IntervalPartition part = make_partition(l, t, bp, level);
    CHECK(static_cast<double>(part.parts) > x);
    CHECK(static_cast<double>(part.parts) <= 1.0 + x + 1e-9);
  }
}

TEST_CASE("every spin lands in exactly one near-even part") {
  for (int level = 1; level <= 8; ++level) {
    const std::int64_t half = std::int64_t{1} << (level - 1);
    for (std::int64_t r = 1; r <= 64; ++r) {
      const IntervalPartition part{level, r};
      std::vector<std::int64_t> count(r, 0);
      for (std::int64_t s = -half; s <= half; ++s) {
        const std::int64_t k = part.part_of_spin(s);
        REQUIRE(k >= 0);
        REQUIRE(k < r);
        ++count[k];
        // The bucket is consistent with the real-interval geometry.
        CHECK(static_cast<double>(s) >= part.part_left(k) - 1e-9);
        if (k + 1 < r) CHECK(static_cast<double>(s) < part.part_right(k) + 1e-9);
      }
      std::int64_t lo = count[0], hi = count[0];
      for (std::int64_t v : count) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      CHECK(hi - lo <= 1);
    }
  }
  CHECK_THROWS_AS((IntervalPartition{3, 4}.part_of_spin(5)), std::out_of_range);
}

TEST_CASE("interior boundaries close on the left") {
  // Width-2 parts over [-4, 4]: S = 0 starts the third part.
  const IntervalPartition part{3, 4};
  CHECK(part.part_of_spin(-4) == 0);
  CHECK(part.part_of_spin(-2) == 1);
  CHECK(part.part_of_spin(0) == 2);
  CHECK(part.part_of_spin(2) == 3);
  CHECK(part.part_of_spin(4) == 3);  // right endpoint folds into the last part
  CHECK(part.width() == doctest::Approx(2.0));
}

TEST_CASE("partition construction rejects bad inputs") {
  const ThermoParams th{1.0, 0.0, FieldDist::gaussian};
  const HierarchyParams lat{1.2, 3};
  CHECK_THROWS_AS(make_partition(lat, th, BoundParams{-1.0, 0.0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_partition(lat, th, BoundParams{1.0, -0.5}, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_partition(lat, th, BoundParams{1.0, 0.0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_partition(lat, th, BoundParams{1.0, 0.0}, 4), std::invalid_argument);
  CHECK_THROWS_AS(
      make_partition(lat, ThermoParams{0.0, 0.0, FieldDist::gaussian}, BoundParams{1.0, 1.0}, 3),
      std::invalid_argument);
  // Couplings decayed to zero: b_N underflows, construction must refuse.
  CHECK_THROWS_AS(make_partition(HierarchyParams{1e4, 3}, th, BoundParams{1.0, 0.0}, 3),
                  std::invalid_argument);
}

TEST_CASE("closed form at the zero-temperature zero-field corner") {
  const double a2 = std::exp2(1.1);
  const double expect = 1.0 - a2 / (10.0 * (4.0 - a2));
  CHECK(theorem1_bound(BoundPoint{1.1, 10.0, 0.0, 0.0}) ==
        doctest::Approx(expect).epsilon(1e-14));
  CHECK(expect == doctest::Approx(0.88454).epsilon(1e-4));
}

TEST_CASE("closed form enforces its hypotheses by name") {
  CHECK_THROWS_WITH_AS(theorem1_bound(BoundPoint{1.5, 10.0, 0.0, 0.0}),
                       doctest::Contains("alpha"), std::domain_error);
  CHECK_THROWS_WITH_AS(theorem1_bound(BoundPoint{1.0, 10.0, 0.0, 0.0}),
                       doctest::Contains("alpha"), std::domain_error);
  CHECK_THROWS_WITH_AS(theorem1_bound(BoundPoint{1.4, -1.0, 0.0, 0.0}),
                       doctest::Contains("c must"), std::domain_error);
  CHECK_THROWS_WITH_AS(theorem1_bound(BoundPoint{1.4, 0.6, 0.0, 0.0}),
                       doctest::Contains("sqrt(c 2^(2-alpha))"), std::domain_error);
  CHECK_THROWS_WITH_AS(theorem1_bound(BoundPoint{1.4, 10.0, -0.1, 0.0}),
                       doctest::Contains("h must"), std::domain_error);
  CHECK_THROWS_WITH_AS(theorem1_bound(BoundPoint{1.4, 10.0, 0.1, -0.2}),
                       doctest::Contains("inv_beta"), std::domain_error);
}

TEST_CASE("bound decreases in field strength and temperature") {
  for (double alpha : {1.1, 1.3, 1.49}) {
    double prev = theorem1_bound(BoundPoint{alpha, 10.0, 0.0, 0.0});
    for (double h : {0.01, 0.05, 0.2, 1.0}) {
      const double v = theorem1_bound(BoundPoint{alpha, 10.0, h, 0.0});
      CHECK(v < prev);
      prev = v;
    }
    prev = theorem1_bound(BoundPoint{alpha, 10.0, 0.02, 0.0});
    for (double ib : {0.01, 0.1, 0.5, 2.0}) {
      const double v = theorem1_bound(BoundPoint{alpha, 10.0, 0.02, ib});
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("series terms match the naive transcription") {
  CounterRng rng(32, 0, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const BoundPoint pt{1.05 + 0.44 * rng.next_unit(), 1.0 + 20.0 * rng.next_unit(),
                          0.3 * rng.next_unit(), 0.5 * rng.next_unit()};
    const int p = 1 + static_cast<int>(rng.next_u64() % 40);
    CHECK(series_term(pt, p) ==
          doctest::Approx(naive_term(pt.alpha, pt.c, pt.h, pt.inv_beta, p)).epsilon(1e-12));
  }
}

TEST_CASE("series terms survive extreme depths without overflow") {
  const BoundPoint pt{1.49, 10.0, 0.1, 0.1};
  for (std::int64_t p : {1000LL, 100000LL, 2000000LL}) {
    const double t = series_term(pt, p);
    CHECK(std::isfinite(t));
    CHECK(t >= 0.0);
  }
}

TEST_CASE("zero-temperature zero-field series is geometric") {
  for (double alpha : {1.1, 1.3, 1.49}) {
    const double a2 = std::exp2(alpha);
    const BoundPoint pt{alpha, 7.0, 0.0, 0.0};
    CHECK(series_sum(pt) == doctest::Approx(a2 / (4.0 - a2) / 7.0).epsilon(1e-12));
  }
}

TEST_CASE("closed form equals one minus the summed series") {
  for (double alpha : {1.1, 1.3, 1.49})
    for (double h : {0.0, 0.02})
      for (double ib : {0.0, 0.1, 1.0}) {
        const BoundPoint pt{alpha, 10.0, h, ib};
        CHECK(std::abs(theorem1_bound(pt) - (1.0 - series_sum(pt))) <= 1e-10);
      }
}

TEST_CASE("terms decay fast enough to certify convergence") {
  // t_p * 2^{p(3/2-alpha)} is bounded at h = 0 and grows at most linearly in
  // p otherwise (the field term carries a log b_p factor).
  for (double alpha : {1.2, 1.45}) {
    const BoundPoint flat{alpha, 10.0, 0.0, 0.3};
    double peak = 0.0, peak_early = 0.0;
    for (int p = 1; p <= 2000; ++p) {
      const double v = series_term(flat, p) * std::exp2((1.5 - alpha) * p);
      peak = std::max(peak, v);
      if (p <= 20) peak_early = std::max(peak_early, v);
    }
    CHECK(peak == peak_early);

    const BoundPoint field{alpha, 10.0, 0.2, 0.3};
    double envelope = 0.0;
    for (int p = 1; p <= 20; ++p)
      envelope = std::max(envelope,
                          series_term(field, p) * std::exp2((1.5 - alpha) * p) / (1.0 + p));
    for (int p = 21; p <= 2000; ++p) {
      const double v = series_term(field, p) * std::exp2((1.5 - alpha) * p);
      CHECK(v <= envelope * (1.0 + p) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("partial sums interpolate between one and the closed form") {
  const BoundPoint pt{1.2, 10.0, 0.02, 0.05};
  CHECK(partial_sum_bound(pt, 0) == 1.0);
  double prev = 1.0;
  for (int n = 1; n <= 12; ++n) {
    const double v = partial_sum_bound(pt, n);
    CHECK(v < prev);
    CHECK(v >= theorem1_bound(pt));
    prev = v;
  }
  CHECK(partial_sum_bound(pt, 2000) == doctest::Approx(1.0 - series_sum(pt)).epsilon(1e-12));
}

TEST_CASE("recurrence penalty reduces to the unit-constant form") {
  // c = 1, d = 1 collapses the constant to (1 + log(1 + sqrt(beta b_N))) / (beta b_N).
  for (double alpha : {1.1, 1.3, 1.49})
    for (double beta : {0.5, 2.0, 10.0})
      for (int level : {1, 3, 6}) {
        const HierarchyParams lat{alpha, level};
        const ThermoParams th{beta, 0.0, FieldDist::gaussian};
        const double bb = beta * lat.bn(level);
        const double expect = (1.0 + std::log(1.0 + std::sqrt(bb))) / bb;
        CHECK(recurrence_penalty_constant(lat, th, BoundParams{1.0, 1.0}, level) ==
              doctest::Approx(expect).epsilon(1e-12));
      }
  CHECK_THROWS_WITH_AS(
      recurrence_penalty_constant(HierarchyParams{1.2, 2}, ThermoParams{0.0, 0.0, FieldDist::gaussian},
                                  BoundParams{1.0, 0.0}, 2),
      doctest::Contains("beta"), std::domain_error);
}

TEST_CASE("region scan is row-major and sign-consistent") {
  const std::vector<double> hs{0.0, 0.03, 0.06};
  const std::vector<double> ibs{0.0, 0.1};
  const std::vector<RegionPoint> pts = region_scan(1.2, 10.0, hs, ibs);
  REQUIRE(pts.size() == 6);
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = 0; j < ibs.size(); ++j) {
      const RegionPoint& p = pts[i * ibs.size() + j];
      CHECK(p.h == hs[i]);
      CHECK(p.inv_beta == ibs[j]);
      CHECK(p.bound == doctest::Approx(theorem1_bound(BoundPoint{1.2, 10.0, p.h, p.inv_beta}))
                           .epsilon(1e-15));
      CHECK(p.positive == (p.bound > 0.0));
    }
}

TEST_CASE("positive region is downward closed on the grid") {
  std::vector<double> hs, ibs;
  for (int i = 0; i < 16; ++i) {
    hs.push_back(0.1 * i / 15.0);
    ibs.push_back(0.2 * i / 15.0);
  }
  for (double alpha : {1.1, 1.49}) {
    const std::vector<RegionPoint> pts = region_scan(alpha, 10.0, hs, ibs);
    CHECK(pts[0].positive);  // corner is inside
    for (std::size_t i = 0; i < hs.size(); ++i)
      for (std::size_t j = 0; j < ibs.size(); ++j) {
        if (!pts[i * ibs.size() + j].positive) continue;
        if (i > 0) CHECK(pts[(i - 1) * ibs.size() + j].positive);
        if (j > 0) CHECK(pts[i * ibs.size() + j - 1].positive);
      }
  }
}
