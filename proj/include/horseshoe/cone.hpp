#pragma once

#include <vector>

#include "horseshoe/map.hpp"

namespace horseshoe {

// slope of the standard cone boundary: |v1/v2| <= sqrt(3), i.e. angle >= pi/3
inline constexpr double k_std_slope = 1.7320508075688772;

enum class ConeStatus {
  ok,
  tangency_point,      // leaf angle undefined at the fold vertex (q, 0)
  tangency_orbit,      // cone field undefined within tol of the tangency orbit
  not_in_image,        // point lies in no region image, leaf class undefined
  horizontal_capture,  // transported cone would cross the horizontal axis
};

const char* cone_status_name(ConeStatus s);

// cone of directions v with v2 != 0 and v1/v2 in [u_lo, u_hi]
struct Cone {
  double u_lo = 0.0;
  double u_hi = 0.0;
};

Cone standard_cone();
bool cone_contains(const Cone& c, const Vec2& v);
// min over both ends of how far inner sits inside outer; >= 0 iff inner subset
double inclusion_margin(const Cone& inner, const Cone& outer);

// half width 3 / (2 sqrt(c * rise)) of the cone attached to a leaf point
// whose leaf rise (height above the leaf vertex level) is `rise`
double v_cone_half_width(const MapParams& pr, double rise);

enum class LeafClass { L, R, V };
const char* leaf_class_name(LeafClass c);

struct AngleResult {
  ConeStatus status = ConeStatus::ok;
  double angle = 0.0;  // radians in (0, pi/2]
};

// angle between the horizontal and the leaf through p: pi/2 on linear-branch
// images, arctan(2 c |x - q|) on the fold image (fold preferred on overlaps)
AngleResult angle_a(const MapParams& pr, const Point& p);

struct ClassResult {
  ConeStatus status = ConeStatus::ok;
  LeafClass cls = LeafClass::L;
  double angle = 0.0;
};

// L iff angle == pi/2, V iff angle <= pi/3 (boundary included), else R
ClassResult lrv_class(const MapParams& pr, const Point& p);

struct ConeResult {
  ConeStatus status = ConeStatus::ok;
  Cone cone;
};

// cone field of the invariant construction:
//   - fold-image points: standard cone (R class) or widened leaf cone (V class)
//   - points reaching the fold image backward through unique linear preimages:
//     the transported class cone, widened by factor 1.01
//   - points reaching the fold image only forward, at step i: the standard cone
//     intersected with the pullback of the class cone there
//   - points that never meet the fold image: the standard cone
ConeResult cone_at(const MapParams& pr, const Point& p, int back_horizon = 1000,
                   int fwd_horizon = 1000);

// image of a cone under the Mobius action of j on slopes; fails with
// horizontal_capture when the image would wrap across the horizontal
ConeResult transport(const Cone& c, const Jacobian& j);

// growth rate of the extremal standard-cone direction (sqrt3, 1) under
// diag(lambda, sigma): sqrt(3 lambda^2 + sigma^2) / 2
double corner_growth_rate(const MapParams& pr);

// smallest fold strength for which the one-return cone inclusion certificate
// closes: sup over eta in (0,1] of eta^(-ln lambda / ln sigma) equals 1, so the
// inclusion needs 4c/9 > 1
double min_c_for_inclusion();

struct SlackViolation {
  double eta = 0.0;
  double lhs = 0.0;  // eta^(-ln lambda / ln sigma)
  double rhs = 0.0;  // 4c/9
};

// scan a log grid of start heights for failures of the inclusion slack
// inequality eta^(-ln lambda / ln sigma) < 4c/9
std::vector<SlackViolation> inclusion_slack_scan(const MapParams& pr,
                                                 double c_value,
                                                 double eta_min = 1e-6,
                                                 int points_per_decade = 100);

enum class InclusionStatus {
  ok,
  not_on_fold_image,   // start point violates the precondition
  tangency_orbit,      // cone undefined at start or end
  horizontal_capture,  // transported cone degenerated mid orbit
  escaped,             // orbit left the strips before returning
  budget_exceeded,     // no return within max_iter
};

const char* inclusion_status_name(InclusionStatus s);

struct InclusionReport {
  InclusionStatus status = InclusionStatus::ok;
  Point start;
  Point end;
  LeafClass start_class = LeafClass::V;
  LeafClass end_class = LeafClass::V;
  int n = 0;  // return time
  Cone start_cone;
  Cone image_cone;   // start cone pushed through the n-step derivative chain
  Cone target_cone;  // class cone at the return point
  double margin = 0.0;
  double ratio_n = 0.0;    // (lambda/sigma)^n
  double rhs_leaf = 0.0;   // 4 c sqrt(rise_end * rise_start) / 9
  bool pass_margin = false;
  bool pass_leaf = false;
};

// follow the first return of a fold-image point and test that the transported
// class cone lands strictly inside the class cone at the return point
InclusionReport check_return_inclusion(const MapParams& pr, const Point& p,
                                       int max_iter = 1000);

}  // namespace horseshoe
