#include "horseshoe/lyapunov.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "horseshoe/cone.hpp"
#include "horseshoe/map.hpp"
#include "horseshoe/orbit.hpp"
#include "horseshoe/periodic.hpp"
#include "test_util.hpp"

using namespace horseshoe;
using testutil::near;

namespace {

MapParams defaults() { return MapParams{}; }

// point on the numerical fold-image leaf at horizontal offset 10^-j from the
// vertex; y is computed with the same arithmetic the preimage test uses, so
// the fold preimage exists exactly
Point leaf_point(const MapParams& pr, int j) {
  const double x = pr.q + std::pow(10.0, -j);
  return {x, leaf_rise(pr, {x, 0.0})};
}

}  // namespace

TEST_CASE("growth thresholds at the default parameters") {
  const MapParams pr = defaults();
  const Thresholds th = thresholds(pr);

  CHECK(th.sigma1 == corner_growth_rate(pr));
  CHECK(th.sigma1 > 2.0116);
  CHECK(th.sigma1 < 2.0117);

  // sqrt(sigma) = 2 beats the corner rate, and 1/sqrt(lambda) = 2 beats the
  // stable cone rate ~3.466, so both tilde rates are exactly 2 and 1/2
  CHECK(th.sigma_tilde == 2.0);
  CHECK(th.lambda_tilde == 0.5);
  CHECK(near(th.gap_hi, std::log(2.0), 1e-15));
  CHECK(near(th.gap_lo, -std::log(2.0), 1e-15));
  CHECK(th.gap_lo < 0.0);
  CHECK(th.gap_hi > 0.0);
}

TEST_CASE("threshold scaling across parameter families") {
  // whenever lambda = 1/sigma and the sqrt branches win both minima, the
  // rates are reciprocal
  for (double s : {4.0, 5.0, 6.0, 8.0}) {
    MapParams pr = defaults();
    pr.sigma = s;
    pr.lambda = 1.0 / s;
    const Thresholds th = thresholds(pr);
    CHECK(near(th.sigma_tilde * th.lambda_tilde, 1.0, 1e-12));
    CHECK(near(th.gap_hi + th.gap_lo, 0.0, 1e-12));
  }

  // for large sigma the corner rate ~ sigma/2 loses to sqrt(sigma)
  MapParams pr = defaults();
  pr.sigma = 64.0;
  const Thresholds th = thresholds(pr);
  CHECK(th.sigma_tilde == std::sqrt(64.0));
  CHECK(th.sigma1 > 32.0);

  // sigma_tilde never decreases along an increasing sigma scan
  double last = 0.0;
  for (double s = 3.0; s <= 100.0; s += 0.5) {
    MapParams ps = defaults();
    ps.sigma = s;
    const double st = thresholds(ps).sigma_tilde;
    CHECK(st >= last);
    CHECK(st > 1.0);
    last = st;
  }
}

TEST_CASE("periodic exponents reuse the orbit multipliers") {
  const MapParams pr = defaults();
  const Thresholds th = thresholds(pr);

  const PeriodicOrbit fp = find_orbit(pr, {RegionId::R1});
  REQUIRE(fp.status == FindStatus::ok);
  const ExponentEstimate est = exponents_periodic(fp);
  CHECK(est.status == LyapStatus::ok);
  CHECK(est.method == ExponentMethod::periodic_exact);
  CHECK(est.n_forward == 1);
  CHECK(est.chi_u == fp.exp_u);
  CHECK(est.chi_s == fp.exp_s);
  CHECK(near(est.chi_u, std::log(4.0), 1e-15));
  CHECK(near(est.chi_s, -std::log(4.0), 1e-15));
  CHECK(gap_check(est, th));

  const PeriodicOrbit two = find_orbit(pr, {RegionId::R1, RegionId::R3});
  REQUIRE(two.status == FindStatus::ok);
  const ExponentEstimate est2 = exponents_periodic(two);
  CHECK(est2.n_forward == 2);
  CHECK(near(est2.chi_u, std::log(4.0), 1e-14));
  CHECK(gap_check(est2, th));

  // every realized orbit through period 3 sits outside the gap
  const Census c = run_census(pr, 3);
  for (const PeriodicOrbit& orb : c.orbits) {
    const ExponentEstimate e = exponents_periodic(orb);
    CHECK(e.chi_s < 0.0);
    CHECK(e.chi_u > 0.0);
    CHECK(gap_check(e, th));
  }
}

TEST_CASE("gap check uses the closed complement") {
  const Thresholds th = thresholds(defaults());
  ExponentEstimate est;

  est.chi_u = std::log(4.0);
  est.chi_s = -std::log(4.0);
  CHECK(gap_check(est, th));

  // an exponent inside the open gap fails
  est.chi_s = 0.1;
  est.chi_u = 1.0;
  CHECK(!gap_check(est, th));

  // boundary equality passes on both sides
  est.chi_s = th.gap_lo;
  est.chi_u = th.gap_hi;
  CHECK(gap_check(est, th));

  est.chi_u = th.gap_hi - 1e-12;
  CHECK(!gap_check(est, th));
  est.chi_u = th.gap_hi;
  est.chi_s = th.gap_lo + 1e-12;
  CHECK(!gap_check(est, th));
}

TEST_CASE("invariant directions from cone contraction") {
  const MapParams pr = defaults();

  // at the hyperbolic fixed point the axes are the coordinate directions
  const Vec2 vu = unstable_axis(pr, {0.0, 0.0});
  CHECK(vu.x == 0.0);
  CHECK(vu.y == 1.0);
  const Vec2 vs = stable_axis(pr, {0.0, 0.0});
  CHECK(vs.x == 1.0);
  CHECK(vs.y == 0.0);

  // along a fold-image leaf the unstable direction is the leaf tangent:
  // the image of a vertical vector under the fold jacobian
  const Point p1 = leaf_point(pr, 1);
  const Vec2 t1 = unstable_axis(pr, p1);
  CHECK(near(t1.x / t1.y, 4.0 / 12.8, 1e-10));

  // the direction stabilizes well below 1e-10 between depths 40 and 50
  const std::vector<Point> probes = {
      p1, leaf_point(pr, 3), {0.7, 0.01}, {0.5, 0.45}, {0.1, 0.0}};
  for (const Point& p : probes) {
    const Vec2 a = unstable_axis(pr, p, 40);
    const Vec2 b = unstable_axis(pr, p, 50);
    CHECK(std::abs(a.x - b.x) + std::abs(a.y - b.y) < 1e-10);
    const Vec2 c = stable_axis(pr, p, 40);
    const Vec2 d = stable_axis(pr, p, 50);
    CHECK(std::abs(c.x - d.x) + std::abs(c.y - d.y) < 1e-10);
  }
}

TEST_CASE("forward exponents at linear fixed points") {
  const MapParams pr = defaults();
  const Thresholds th = thresholds(pr);

  const ExponentEstimate a = exponents_forward(pr, {0.0, 0.0}, 1000);
  CHECK(a.status == LyapStatus::ok);
  CHECK(a.method == ExponentMethod::cone_vector);
  CHECK(a.n_forward == 1000);
  CHECK(a.n_backward == 1000);
  CHECK(near(a.chi_u, std::log(4.0), 1e-13));
  CHECK(near(a.chi_s, -std::log(4.0), 1e-13));
  CHECK(a.witnesses.empty());
  CHECK(a.c_z == 1.0);
  CHECK(gap_check(a, th));

  const ExponentEstimate b = exponents_forward(pr, {1.0, 1.0}, 1000);
  CHECK(b.status == LyapStatus::ok);
  CHECK(near(b.chi_u, std::log(4.0), 1e-13));
  CHECK(near(b.chi_s, -std::log(4.0), 1e-13));

  // renormalization interval does not move the estimate
  const ExponentEstimate c = exponents_forward(pr, {0.0, 0.0}, 1000, 50);
  CHECK(near(a.chi_u, c.chi_u, 1e-12));
  CHECK(near(a.chi_s, c.chi_s, 1e-12));
}

TEST_CASE("forward exponents on the stable manifold of the origin") {
  const MapParams pr = defaults();

  // y = 0, x in (0, lambda): the forward orbit contracts into the origin and
  // a vertical vector grows at the full rate log sigma
  const ExponentEstimate est = exponents_forward(pr, {0.1, 0.0}, 400);
  CHECK(est.status == LyapStatus::ok);
  CHECK(est.n_forward == 400);
  CHECK(near(est.chi_u, std::log(4.0), 1e-13));

  // the backward chain dies after one step (the preimage of its preimage
  // leaves the square), so the stable estimate uses that one step
  CHECK(est.n_backward == 1);
  CHECK(near(est.chi_s, -std::log(4.0), 1e-13));
}

TEST_CASE("forward exponents witness well excursions") {
  const MapParams pr = defaults();

  // starts inside the well, leaves the bottom strip at step 3, escapes the
  // strips entirely at step 6
  const Point p{0.7, 0.01};
  REQUIRE(in_W(pr, p));
  const ExponentEstimate est = exponents_forward(pr, p, 40);
  CHECK(est.status == LyapStatus::ok);
  CHECK(est.n_forward == 6);
  REQUIRE(est.witnesses.size() == 1);
  CHECK(est.witnesses[0] == 3);

  // all six steps are diagonal with vertical growth 4, so the ratio at the
  // witness time is (4/2)^3
  CHECK(near(est.c_z, 8.0, 1e-12));
  CHECK(near(est.chi_u, std::log(4.0), 1e-13));

  // the backward chain climbs toward the (1,1) corner and never ends
  CHECK(est.n_backward == 40);
  CHECK(near(est.chi_s, -std::log(4.0), 1e-13));

  // immediate escape reports escaped rather than a junk estimate
  const ExponentEstimate gone = exponents_forward(pr, {0.62, 0.07}, 40);
  CHECK(gone.status == LyapStatus::escaped);
  CHECK(gone.n_forward < 5);

  // the tangency orbit itself carries no usable direction
  const ExponentEstimate tang = exponents_forward(pr, {pr.q, 0.0}, 40);
  CHECK(tang.status == LyapStatus::tangency_orbit);
}

TEST_CASE("forward estimates agree with periodic exponents") {
  const MapParams pr = defaults();

  // affine cycles have piecewise constant jacobians, so the agreement is
  // exact as long as the drifting orbit keeps its itinerary
  const PeriodicOrbit two = find_orbit(pr, {RegionId::R1, RegionId::R3});
  REQUIRE(two.status == FindStatus::ok);
  const ExponentEstimate fw = exponents_forward(pr, two.points[0], 20);
  CHECK(fw.status == LyapStatus::ok);
  CHECK(fw.n_forward == 20);
  CHECK(near(fw.chi_u, two.exp_u, 1e-6));
  CHECK(near(fw.chi_s, two.exp_s, 1e-6));

  // the fold cycle is strongly unstable, so the horizon stays short enough
  // that the drift off the cycle cannot pollute the average
  const PeriodicOrbit fold = find_orbit(pr, {RegionId::R1, RegionId::R4});
  REQUIRE(fold.status == FindStatus::ok);
  const ExponentEstimate ff = exponents_forward(pr, fold.points[0], 10);
  CHECK(ff.status == LyapStatus::ok);
  CHECK(near(ff.chi_u, fold.exp_u, 1e-6));
  CHECK(near(ff.chi_s, fold.exp_s, 1e-6));
}

TEST_CASE("nonuniformity profile along the fold vertex approach") {
  const MapParams pr = defaults();

  std::vector<Point> pts;
  pts.push_back({0.0, 0.0});
  for (int j = 1; j <= 6; ++j) pts.push_back(leaf_point(pr, j));
  pts.push_back({pr.q, 0.0});

  const std::vector<ProfileEntry> prof = nonuniformity_profile(pr, pts, 100);
  REQUIRE(prof.size() == 8);

  // the fixed point grows at rate 4 against threshold 2, worst at n = 1
  CHECK(prof[0].status == LyapStatus::ok);
  CHECK(near(prof[0].c_x, 2.0, 1e-12));

  // frozen leading constants of the leaf family
  CHECK(near(prof[1].c_x, 1.90932, 1e-3));
  CHECK(near(prof[2].c_x, 0.62108, 1e-3));

  // approaching the tangency the constant decays strictly and ends tiny
  for (int j = 1; j <= 6; ++j) {
    CHECK(prof[j].status == LyapStatus::ok);
    CHECK(prof[j].c_x > 0.0);
    if (j > 1) CHECK(prof[j].c_x < prof[j - 1].c_x);
  }
  CHECK(prof[5].c_x < 0.01);
  CHECK(prof[6].c_x < 0.01);

  // the vertex itself lies on the tangency orbit
  CHECK(prof[7].status == LyapStatus::tangency_orbit);
}

TEST_CASE("status and method names") {
  CHECK(lyap_status_name(LyapStatus::ok) == std::string("ok"));
  CHECK(lyap_status_name(LyapStatus::escaped) == std::string("escaped"));
  CHECK(lyap_status_name(LyapStatus::tangency_orbit) ==
        std::string("tangency_orbit"));
  CHECK(exponent_method_name(ExponentMethod::periodic_exact) ==
        std::string("periodic-exact"));
  CHECK(exponent_method_name(ExponentMethod::cone_vector) ==
        std::string("cone-vector"));
}
