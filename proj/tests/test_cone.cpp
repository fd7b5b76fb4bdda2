#include <cmath>
#include <random>

#include "doctest.h"
#include "horseshoe/cone.hpp"
#include "horseshoe/map.hpp"
#include "test_util.hpp"

using namespace horseshoe;
using testutil::near;
using testutil::u01;

namespace {

const double sqrt3 = 1.7320508075688772;

// a random strip point whose next `depth` iterates stay inside the strips
bool survives_forward(const MapParams& pr, Point p, int depth) {
  for (int i = 0; i < depth; ++i) {
    auto s = step(pr, p);
    if (s.status != MapStatus::ok) return false;
    p = s.p;
  }
  return true;
}

}  // namespace

TEST_CASE("standard cone and membership") {
  Cone c = standard_cone();
  CHECK(near(c.u_lo, -sqrt3, 1e-15));
  CHECK(near(c.u_hi, sqrt3, 1e-15));
  CHECK(cone_contains(c, {0.0, 1.0}));
  CHECK(cone_contains(c, {0.0, -1.0}));
  CHECK(cone_contains(c, {1.0, 1.0}));
  CHECK(!cone_contains(c, {2.0, 1.0}));
  CHECK(!cone_contains(c, {1.0, 0.0}));  // horizontal is in no cone
  CHECK(inclusion_margin({-0.5, 0.5}, c) > 1.2);
  CHECK(inclusion_margin(c, {-0.5, 0.5}) < 0.0);
}

TEST_CASE("leaf angles and classes") {
  MapParams pr;
  // image of an R1 point: leaf is vertical
  auto a1 = angle_a(pr, {0.125, 0.5});
  CHECK(a1.status == ConeStatus::ok);
  CHECK(near(a1.angle, 1.5707963267948966, 1e-15));
  auto c1 = lrv_class(pr, {0.125, 0.5});
  CHECK(c1.cls == LeafClass::L);

  // fold-image point with |x - q| = 0.10: leaf slope 3.2, class R
  auto a2 = angle_a(pr, {0.82, 0.035});
  CHECK(a2.status == ConeStatus::ok);
  CHECK(near(std::tan(a2.angle), 3.2, 1e-12));
  auto c2 = lrv_class(pr, {0.82, 0.035});
  CHECK(c2.cls == LeafClass::R);

  // fold-image point with |x - q| = 0.05: leaf slope 1.6, class V
  auto c3 = lrv_class(pr, {0.77, 0.015});
  CHECK(c3.status == ConeStatus::ok);
  CHECK(c3.cls == LeafClass::V);
  CHECK(near(std::tan(c3.angle), 1.6, 1e-12));

  CHECK(angle_a(pr, {0.72, 0.0}).status == ConeStatus::tangency_point);
  CHECK(angle_a(pr, {0.3, 0.5}).status == ConeStatus::not_in_image);
  CHECK(lrv_class(pr, {0.3, 0.5}).status == ConeStatus::not_in_image);
}

TEST_CASE("v cone width formula") {
  MapParams pr;
  // rise 1/c gives half width 3/2
  CHECK(near(v_cone_half_width(pr, 1.0 / 16.0), 1.5, 1e-15));
  // rise 0.04 (slope 1.6) gives half width 1.875
  CHECK(near(v_cone_half_width(pr, 0.04), 1.875, 1e-15));
  // the point with rise exactly 1/c has leaf slope 2 > sqrt3: class R, so
  // its cone is the standard cone, not the width-3/2 cone
  Point p{0.7825, 0.0375};
  REQUIRE(in_fold_image(pr, p));
  CHECK(near(leaf_rise(pr, p), 1.0 / 16.0, 1e-15));
  CHECK(lrv_class(pr, p).cls == LeafClass::R);
  auto cr = cone_at(pr, p);
  CHECK(cr.status == ConeStatus::ok);
  CHECK(near(cr.cone.u_hi, sqrt3, 1e-15));
}

TEST_CASE("cone at fold-image points") {
  MapParams pr;
  auto r = cone_at(pr, {0.82, 0.035});  // class R
  CHECK(r.status == ConeStatus::ok);
  CHECK(near(r.cone.u_lo, -sqrt3, 1e-15));
  CHECK(near(r.cone.u_hi, sqrt3, 1e-15));

  auto v = cone_at(pr, {0.77, 0.015});  // class V, width 1.875
  CHECK(v.status == ConeStatus::ok);
  CHECK(near(v.cone.u_lo, -1.875, 1e-12));
  CHECK(near(v.cone.u_hi, 1.875, 1e-12));

  CHECK(cone_at(pr, {0.72, 0.0}).status == ConeStatus::tangency_orbit);
  CHECK(cone_at(pr, {0.18, 0.0}).status == ConeStatus::tangency_orbit);
  CHECK(cone_at(pr, {0.0, 0.185}).status == ConeStatus::tangency_orbit);
}

TEST_CASE("cone extension along backward chains") {
  MapParams pr;
  // (0.15, 0.4) is the image of the fold-image point (0.6, 0.1), class R:
  // the cone is the standard cone scaled once, widened by 1.01
  auto k1 = cone_at(pr, {0.15, 0.4});
  CHECK(k1.status == ConeStatus::ok);
  CHECK(near(k1.cone.u_hi, sqrt3 * 1.01 / 16.0, 1e-14));
  CHECK(near(k1.cone.u_lo, -sqrt3 * 1.01 / 16.0, 1e-14));

  // (0.1925, 0.06) is the image of (0.77, 0.015), class V with width 1.875
  auto kv = cone_at(pr, {0.1925, 0.06});
  CHECK(kv.status == ConeStatus::ok);
  CHECK(near(kv.cone.u_hi, 1.875 * 1.01 / 16.0, 1e-12));

  // three linear steps above the fold-image ancestor (0.8, 0.1015625)
  auto k3 = cone_at(pr, {0.125, 0.1});
  CHECK(k3.status == ConeStatus::ok);
  CHECK(near(k3.cone.u_hi, sqrt3 * 1.01 / 4096.0, 1e-15));
}

TEST_CASE("cone restriction before a fold visit") {
  MapParams pr;
  double yc = pr.y_c();

  // next step enters the fold image through the fold with small positive
  // shear beta: the standard cone loses its steep positive slopes
  Point p{0.0, 0.741};
  double beta = 2.0 * pr.c * pr.alpha * pr.alpha * (p.y - yc);
  auto cut = cone_at(pr, p);
  CHECK(cut.status == ConeStatus::ok);
  CHECK(near(cut.cone.u_lo, -sqrt3, 1e-15));
  CHECK(near(cut.cone.u_hi, (beta - beta / 3.0) / pr.lambda, 1e-12));
  CHECK(cut.cone.u_hi < sqrt3);

  // mirrored for negative shear
  Point m{0.0, 0.739};
  double betam = 2.0 * pr.c * pr.alpha * pr.alpha * (m.y - yc);
  auto mcut = cone_at(pr, m);
  CHECK(mcut.status == ConeStatus::ok);
  CHECK(near(mcut.cone.u_hi, sqrt3, 1e-15));
  CHECK(near(mcut.cone.u_lo, (betam - betam / 3.0) / pr.lambda, 1e-12));

  // far enough from the critical line the restriction clears the cone
  auto none = cone_at(pr, {0.0, 0.743});
  CHECK(none.status == ConeStatus::ok);
  CHECK(near(none.cone.u_hi, sqrt3, 1e-15));

  // a linear step into the fold image never restricts
  auto lin = cone_at(pr, {0.5, 0.45});
  CHECK(lin.status == ConeStatus::ok);
  CHECK(near(lin.cone.u_hi, sqrt3, 1e-15));
  CHECK(near(lin.cone.u_lo, -sqrt3, 1e-15));
}

TEST_CASE("cone at points that never meet the fold image") {
  MapParams pr;
  auto c0 = cone_at(pr, {0.0, 0.0});
  CHECK(c0.status == ConeStatus::ok);
  CHECK(near(c0.cone.u_hi, sqrt3, 1e-15));
  auto c1 = cone_at(pr, {1.0, 1.0});
  CHECK(c1.status == ConeStatus::ok);
  CHECK(near(c1.cone.u_lo, -sqrt3, 1e-15));
  auto c2 = cone_at(pr, {0.3, 0.5});  // orbit falls onto y = 0 and stays
  CHECK(c2.status == ConeStatus::ok);
  CHECK(near(c2.cone.u_hi, sqrt3, 1e-15));
}

TEST_CASE("transport through diagonal and fold derivatives") {
  MapParams pr;
  auto lin = transport(standard_cone(), jacobian_at(pr, {0.5, 0.125}).j);
  CHECK(lin.status == ConeStatus::ok);
  CHECK(near(lin.cone.u_lo, -sqrt3 / 16.0, 1e-15));
  CHECK(near(lin.cone.u_hi, sqrt3 / 16.0, 1e-15));

  // orientation-reversing diagonal gives the same slope interval
  MapParams rev;
  rev.r5_orientation = R5Orientation::reversing;
  auto r = transport(standard_cone(), jacobian_at(rev, {1.0, 1.0}).j);
  CHECK(r.status == ConeStatus::ok);
  CHECK(near(r.cone.u_lo, -sqrt3 / 16.0, 1e-15));
  CHECK(near(r.cone.u_hi, sqrt3 / 16.0, 1e-15));

  // the vertical at the fold vertex line lands on the horizontal
  auto cap = transport({0.0, 0.0}, jacobian_at(pr, {0.0, 0.74}).j);
  CHECK(cap.status == ConeStatus::horizontal_capture);

  // narrow cone through the fold derivative at (0.5, 0.78)
  auto j = jacobian_at(pr, {0.5, 0.78}).j;
  auto f = transport({-0.1, 0.1}, j);
  CHECK(f.status == ConeStatus::ok);
  double lo = (j.m11 * -0.1 + j.m12) / (j.m21 * -0.1 + j.m22);
  double hi = (j.m11 * 0.1 + j.m12) / (j.m21 * 0.1 + j.m22);
  CHECK(near(f.cone.u_lo, std::min(lo, hi), 1e-15));
  CHECK(near(f.cone.u_hi, std::max(lo, hi), 1e-15));
  CHECK(f.cone.u_lo > 0.19);
  CHECK(f.cone.u_hi < 0.20);
}

TEST_CASE("transport maps member directions into the image cone") {
  std::mt19937_64 rng(2024);
  int tried = 0;
  while (tried < 1000) {
    Jacobian j{4.0 * u01(rng) - 2.0, 4.0 * u01(rng) - 2.0,
               4.0 * u01(rng) - 2.0, 4.0 * u01(rng) - 2.0};
    if (std::abs(j.det()) < 1e-3) continue;
    double a = 4.0 * u01(rng) - 2.0;
    double b = 4.0 * u01(rng) - 2.0;
    Cone c{std::min(a, b), std::max(a, b)};
    auto t = transport(c, j);
    if (t.status != ConeStatus::ok) continue;
    ++tried;
    for (int k = 0; k < 100; ++k) {
      double u = c.u_lo + (c.u_hi - c.u_lo) * u01(rng);
      double vy = u01(rng) < 0.5 ? 1.0 : -1.0;
      Vec2 w = apply(j, {u * vy, vy});
      REQUIRE(w.y != 0.0);
      double uw = w.x / w.y;
      double slack = 1e-9 * std::max({1.0, std::abs(t.cone.u_lo),
                                      std::abs(t.cone.u_hi)});
      REQUIRE(uw >= t.cone.u_lo - slack);
      REQUIRE(uw <= t.cone.u_hi + slack);
    }
  }
}

TEST_CASE("one-step cone field invariance along surviving orbits") {
  MapParams pr;
  std::mt19937_64 rng(99);
  int pairs = 0;
  while (pairs < 800) {
    Point p{u01(rng), u01(rng)};
    if (region_of(pr, p) == RegionId::Escape ||
        region_of(pr, p) == RegionId::OutsideQ)
      continue;
    if (!survives_forward(pr, p, 10)) continue;
    Point z = p;
    for (int t = 0; t < 5; ++t) {
      auto here = cone_at(pr, z);
      auto nxt = step(pr, z);
      REQUIRE(nxt.status == MapStatus::ok);
      auto there = cone_at(pr, nxt.p);
      if (here.status == ConeStatus::ok && there.status == ConeStatus::ok) {
        auto moved = transport(here.cone, jacobian_at(pr, z).j);
        REQUIRE(moved.status == ConeStatus::ok);
        double scale = std::max({1.0, std::abs(there.cone.u_lo),
                                 std::abs(there.cone.u_hi)});
        REQUIRE(inclusion_margin(moved.cone, there.cone) >= -1e-12 * scale);
        ++pairs;
      }
      z = nxt.p;
    }
  }
}

TEST_CASE("growth rate of the extremal standard direction") {
  MapParams pr;
  double s1 = corner_growth_rate(pr);
  CHECK(near(s1, 2.0116846175, 1e-9));
  CHECK(near(4.0 * s1 * s1, 3.0 * pr.lambda * pr.lambda + pr.sigma * pr.sigma,
             1e-12));
  // the rate is realized by (sqrt3, 1) under a linear step
  Vec2 v{sqrt3, 1.0};
  Vec2 w = apply(jacobian_at(pr, {0.5, 0.45}).j, v);
  CHECK(near(norm(w) / norm(v), s1, 1e-14));
}

TEST_CASE("half-angle contraction of steep slopes") {
  // for angles a in (0, pi/3), arctan(tan(a)/3) < a/2
  for (int k = 0; k < 1000; ++k) {
    double a = (1.0471975511965976 * (k + 0.5)) / 1000.0;
    CHECK(std::atan(std::tan(a) / 3.0) < 0.5 * a);
  }
}

TEST_CASE("inclusion slack threshold") {
  MapParams pr;
  CHECK(near(min_c_for_inclusion(), 2.25, 1e-15));

  auto bad = inclusion_slack_scan(pr, 2.24);
  REQUIRE(!bad.empty());
  for (const auto& v : bad) {
    CHECK(v.eta >= 0.99);
    CHECK(v.lhs >= v.rhs);
  }
  CHECK(inclusion_slack_scan(pr, 2.26).empty());
  CHECK(inclusion_slack_scan(pr, pr.c).empty());
}

TEST_CASE("return inclusion on a one-step return") {
  MapParams pr;
  auto rep = check_return_inclusion(pr, {0.88, 0.4});
  REQUIRE(rep.status == InclusionStatus::ok);
  CHECK(rep.n == 1);
  CHECK(rep.start_class == LeafClass::R);
  CHECK(rep.end_class == LeafClass::V);
  CHECK(near(rep.end.x, 0.67, 1e-12));
  CHECK(near(rep.end.y, 0.0, 1e-12));
  CHECK(near(rep.image_cone.u_hi, sqrt3 / 16.0, 1e-12));
  CHECK(near(rep.target_cone.u_hi, 1.875, 1e-10));
  CHECK(near(rep.margin, 1.875 - sqrt3 / 16.0, 1e-10));
  CHECK(rep.pass_margin);
  CHECK(near(rep.ratio_n, 0.0625, 1e-15));
  CHECK(near(rep.rhs_leaf, 8.192 / 9.0, 1e-10));
  CHECK(rep.pass_leaf);
}

TEST_CASE("return inclusion on a seven-step return") {
  MapParams pr;
  auto rep = check_return_inclusion(pr, {0.56, 0.4005});
  REQUIRE(rep.status == InclusionStatus::ok);
  CHECK(rep.n == 7);
  CHECK(rep.start_class == LeafClass::R);
  CHECK(rep.end_class == LeafClass::R);
  CHECK(rep.pass_margin);
  CHECK(rep.pass_leaf);
  CHECK(rep.margin > 1.7);  // image cone has shrunk by (lambda/sigma)^7
  CHECK(near(rep.ratio_n, std::pow(0.0625, 7), 1e-20));
}

TEST_CASE("return inclusion error modes") {
  MapParams pr;
  CHECK(check_return_inclusion(pr, {0.3, 0.5}).status ==
        InclusionStatus::not_on_fold_image);
  CHECK(check_return_inclusion(pr, {0.72, 0.0}).status ==
        InclusionStatus::tangency_orbit);
  auto esc = check_return_inclusion(pr, {0.62, 0.07});
  CHECK(esc.status == InclusionStatus::escaped);
  auto bud = check_return_inclusion(pr, {0.56, 0.4}, 80);
  CHECK(bud.status == InclusionStatus::budget_exceeded);
}
