#include "horseshoe/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace horseshoe {

namespace {

constexpr double k_half_pi = 1.5707963267948966;

// class cone at a fold-image point: standard for R, widened leaf cone for V
ConeResult class_cone(const MapParams& pr, const Point& p) {
  double rise = leaf_rise(pr, p);
  if (rise <= 0.0) return {ConeStatus::tangency_orbit, {}};
  if (leaf_slope(pr, p) <= k_std_slope) {
    double w = v_cone_half_width(pr, rise);
    return {ConeStatus::ok, {-w, w}};
  }
  return {ConeStatus::ok, standard_cone()};
}

bool has_linear_preimage(const MapParams& pr, const Point& p) {
  for (const auto& pre : step_back_all(pr, p))
    if (pre.from != RegionId::R4) return true;
  return false;
}

}  // namespace

const char* cone_status_name(ConeStatus s) {
  switch (s) {
    case ConeStatus::ok: return "ok";
    case ConeStatus::tangency_point: return "tangency_point";
    case ConeStatus::tangency_orbit: return "tangency_orbit";
    case ConeStatus::not_in_image: return "not_in_image";
    case ConeStatus::horizontal_capture: return "horizontal_capture";
  }
  return "unknown";
}

const char* leaf_class_name(LeafClass c) {
  switch (c) {
    case LeafClass::L: return "L";
    case LeafClass::R: return "R";
    case LeafClass::V: return "V";
  }
  return "unknown";
}

const char* inclusion_status_name(InclusionStatus s) {
  switch (s) {
    case InclusionStatus::ok: return "ok";
    case InclusionStatus::not_on_fold_image: return "not_on_fold_image";
    case InclusionStatus::tangency_orbit: return "tangency_orbit";
    case InclusionStatus::horizontal_capture: return "horizontal_capture";
    case InclusionStatus::escaped: return "escaped";
    case InclusionStatus::budget_exceeded: return "budget_exceeded";
  }
  return "unknown";
}

Cone standard_cone() { return {-k_std_slope, k_std_slope}; }

bool cone_contains(const Cone& c, const Vec2& v) {
  if (v.y == 0.0) return false;
  double u = v.x / v.y;
  return u >= c.u_lo && u <= c.u_hi;
}

double inclusion_margin(const Cone& inner, const Cone& outer) {
  return std::min(outer.u_hi - inner.u_hi, inner.u_lo - outer.u_lo);
}

double v_cone_half_width(const MapParams& pr, double rise) {
  return 3.0 / (2.0 * std::sqrt(pr.c * rise));
}

AngleResult angle_a(const MapParams& pr, const Point& p) {
  if (in_fold_image(pr, p)) {
    if (leaf_rise(pr, p) <= 0.0) return {ConeStatus::tangency_point, 0.0};
    return {ConeStatus::ok, std::atan(leaf_slope(pr, p))};
  }
  if (has_linear_preimage(pr, p)) return {ConeStatus::ok, k_half_pi};
  return {ConeStatus::not_in_image, 0.0};
}

ClassResult lrv_class(const MapParams& pr, const Point& p) {
  if (in_fold_image(pr, p)) {
    if (leaf_rise(pr, p) <= 0.0)
      return {ConeStatus::tangency_point, LeafClass::V, 0.0};
    double slope = leaf_slope(pr, p);
    LeafClass cls = slope <= k_std_slope ? LeafClass::V : LeafClass::R;
    return {ConeStatus::ok, cls, std::atan(slope)};
  }
  if (has_linear_preimage(pr, p))
    return {ConeStatus::ok, LeafClass::L, k_half_pi};
  return {ConeStatus::not_in_image, LeafClass::L, 0.0};
}

ConeResult cone_at(const MapParams& pr, const Point& p, int back_horizon,
                   int fwd_horizon) {
  if (near_tangency_orbit(pr, p)) return {ConeStatus::tangency_orbit, {}};
  if (in_fold_image(pr, p)) return class_cone(pr, p);

  // backward: walk unique preimages to the nearest fold-image ancestor;
  // every branch on the way is linear (the walk stops at fold-image points),
  // so the k-step chain derivative scales slopes by (lambda/sigma)^k exactly
  Point z = p;
  for (int k = 1; k <= back_horizon; ++k) {
    auto back = step_back(pr, z);
    if (back.status != MapStatus::ok) break;  // no ancestor or ambiguous chain
    z = back.p;
    if (in_fold_image(pr, z)) {
      auto base = class_cone(pr, z);
      if (base.status != ConeStatus::ok) return base;
      double r = std::pow(pr.lambda / pr.sigma, k);
      // deep chains underflow; keep a representable sliver around vertical
      if (r <= 0.0) r = std::numeric_limits<double>::min();
      double f = 1.01 * r;
      return {ConeStatus::ok, {base.cone.u_lo * f, base.cone.u_hi * f}};
    }
  }

  // forward: intersect the standard cone with the pullback of the class cone
  // at the first fold-image visit; only a final fold step restricts, and only
  // on the side of the fold derivative's vertical shear
  z = p;
  for (int i = 1; i <= fwd_horizon; ++i) {
    RegionId reg = region_of(pr, z);
    auto next = step(pr, z);
    if (next.status != MapStatus::ok) break;  // orbit leaves the strips
    if (in_fold_image(pr, next.p)) {
      if (reg != RegionId::R4) break;  // linear arrivals never cut
      auto target = class_cone(pr, next.p);
      if (target.status != ConeStatus::ok) break;  // vertex arrival
      double beta = 2.0 * pr.c * pr.alpha * pr.alpha * (z.y - pr.y_c());
      if (beta == 0.0) break;
      double w = std::max(std::abs(target.cone.u_lo),
                          std::abs(target.cone.u_hi));
      double aw = pr.alpha / w;
      double s = std::pow(pr.sigma / pr.lambda, i - 1);
      Cone cut = standard_cone();
      if (beta > 0.0)
        cut.u_hi = std::min(cut.u_hi, s * (beta - aw) / pr.lambda);
      else
        cut.u_lo = std::max(cut.u_lo, s * (beta + aw) / pr.lambda);
      return {ConeStatus::ok, cut};
    }
    z = next.p;
  }
  return {ConeStatus::ok, standard_cone()};
}

ConeResult transport(const Cone& c, const Jacobian& j) {
  double g_lo = j.m21 * c.u_lo + j.m22;
  double g_hi = j.m21 * c.u_hi + j.m22;
  if (g_lo == 0.0 || g_hi == 0.0 || (g_lo > 0.0) != (g_hi > 0.0))
    return {ConeStatus::horizontal_capture, {}};
  double f_lo = (j.m11 * c.u_lo + j.m12) / g_lo;
  double f_hi = (j.m11 * c.u_hi + j.m12) / g_hi;
  return {ConeStatus::ok, {std::min(f_lo, f_hi), std::max(f_lo, f_hi)}};
}

double corner_growth_rate(const MapParams& pr) {
  return std::hypot(pr.lambda * k_std_slope, pr.sigma) / 2.0;
}

double min_c_for_inclusion() { return 9.0 / 4.0; }

std::vector<SlackViolation> inclusion_slack_scan(const MapParams& pr,
                                                 double c_value,
                                                 double eta_min,
                                                 int points_per_decade) {
  std::vector<SlackViolation> out;
  double rhs = 4.0 * c_value / 9.0;
  double expo = -std::log(pr.lambda) / std::log(pr.sigma);
  double lg_min = std::log10(eta_min);
  int n = static_cast<int>(std::round(-lg_min * points_per_decade));
  for (int k = 0; k <= n; ++k) {
    double eta = std::pow(10.0, lg_min * (1.0 - static_cast<double>(k) / n));
    double lhs = std::pow(eta, expo);
    if (!(lhs < rhs)) out.push_back({eta, lhs, rhs});
  }
  return out;
}

InclusionReport check_return_inclusion(const MapParams& pr, const Point& p,
                                       int max_iter) {
  InclusionReport rep;
  rep.start = p;
  if (!in_fold_image(pr, p)) {
    rep.status = InclusionStatus::not_on_fold_image;
    return rep;
  }
  auto start_cls = lrv_class(pr, p);
  auto start_cone = cone_at(pr, p);
  if (start_cls.status != ConeStatus::ok ||
      start_cone.status != ConeStatus::ok) {
    rep.status = InclusionStatus::tangency_orbit;
    return rep;
  }
  rep.start_class = start_cls.cls;
  rep.start_cone = start_cone.cone;

  Cone carried = start_cone.cone;
  Point z = p;
  for (int i = 1; i <= max_iter; ++i) {
    auto next = step(pr, z);
    if (next.status != MapStatus::ok) {
      rep.status = InclusionStatus::escaped;
      rep.n = i - 1;
      return rep;
    }
    auto moved = transport(carried, jacobian_at(pr, z).j);
    if (moved.status != ConeStatus::ok) {
      rep.status = InclusionStatus::horizontal_capture;
      rep.n = i;
      return rep;
    }
    carried = moved.cone;
    z = next.p;
    if (in_fold_image(pr, z)) {
      rep.n = i;
      rep.end = z;
      auto end_cls = lrv_class(pr, z);
      auto target = cone_at(pr, z);
      if (end_cls.status != ConeStatus::ok ||
          target.status != ConeStatus::ok) {
        rep.status = InclusionStatus::tangency_orbit;
        return rep;
      }
      rep.end_class = end_cls.cls;
      rep.image_cone = carried;
      rep.target_cone = target.cone;
      rep.margin = inclusion_margin(carried, target.cone);
      rep.pass_margin = rep.margin > 0.0;
      rep.ratio_n = std::pow(pr.lambda / pr.sigma, i);
      double rise0 = leaf_rise(pr, p);
      double rise_n = leaf_rise(pr, z);
      rep.rhs_leaf = 4.0 * pr.c * std::sqrt(rise_n * rise0) / 9.0;
      rep.pass_leaf = rep.ratio_n < rep.rhs_leaf;
      rep.status = InclusionStatus::ok;
      return rep;
    }
  }
  rep.status = InclusionStatus::budget_exceeded;
  rep.n = max_iter;
  return rep;
}

}  // namespace horseshoe
