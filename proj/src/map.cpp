#include "horseshoe/map.hpp"

#include <cmath>
#include <cstdio>

namespace horseshoe {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string MapParams::fingerprint() const {
  std::string s;
  s += fmt17(lambda);
  s += "|" + fmt17(sigma);
  s += "|" + fmt17(c);
  s += "|" + fmt17(q);
  s += "|" + fmt17(alpha);
  s += "|" + fmt17(y3);
  s += "|" + fmt17(d3);
  s += "|" + fmt17(y4a);
  s += "|" + fmt17(y4b);
  s += "|";
  s += (r5_orientation == R5Orientation::preserving) ? "preserving" : "reversing";
  return s;
}

std::vector<std::string> validate(const MapParams& pr) {
  std::vector<std::string> errs;
  if (!(pr.sigma > 3.0)) errs.push_back("sigma > 3 violated");
  if (!(pr.lambda > 0.0 && pr.lambda < 1.0 / 3.0)) errs.push_back("lambda < 1/3 violated");
  if (!(pr.q > 2.0 / 3.0 && pr.q < 1.0)) errs.push_back("q in (2/3, 1) violated");
  if (!(pr.alpha >= pr.sigma)) errs.push_back("alpha >= sigma violated");
  double cmin = std::max(std::max(9.0 / 4.0, 39.0 / 4.0), pr.sigma);
  if (!(pr.c > cmin)) errs.push_back("c > max(9/4, 39/4, sigma) violated");
  // strips closed, pairwise disjoint, increasing, inside [0,1]
  bool strips_ok = pr.sigma > 0.0 && 1.0 / pr.sigma < pr.y3 &&
                   pr.y3 + 1.0 / pr.sigma < pr.y4a && pr.y4a < pr.y4b &&
                   pr.y4b < pr.r5_bottom();
  if (!strips_ok) errs.push_back("region y-intervals pairwise disjoint and increasing violated");
  double h = pr.fold_half_width();
  if (!(pr.q - h >= 0.0 && pr.q + h <= 1.0)) errs.push_back("fold image inside [0,1] violated");
  bool r3_img_ok = pr.d3 >= 0.0 && pr.d3 + pr.lambda < 1.0 - pr.lambda;
  if (!r3_img_ok) errs.push_back("R3 image strip disjoint from R5 image strip violated");
  return errs;
}

double norm(const Vec2& v) { return std::hypot(v.x, v.y); }

const char* region_name(RegionId r) {
  switch (r) {
    case RegionId::R1: return "R1";
    case RegionId::R3: return "R3";
    case RegionId::R4: return "R4";
    case RegionId::R5: return "R5";
    case RegionId::Escape: return "Escape";
    case RegionId::OutsideQ: return "OutsideQ";
  }
  return "?";
}

Vec2 apply(const Jacobian& j, const Vec2& v) {
  return {j.m11 * v.x + j.m12 * v.y, j.m21 * v.x + j.m22 * v.y};
}

Vec2 solve(const Jacobian& j, const Vec2& v) {
  double d = j.det();
  return {(j.m22 * v.x - j.m12 * v.y) / d, (-j.m21 * v.x + j.m11 * v.y) / d};
}

Jacobian mul(const Jacobian& a, const Jacobian& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

RegionId region_of(const MapParams& pr, const Point& p) {
  if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0) return RegionId::OutsideQ;
  if (p.y >= pr.r5_bottom()) return RegionId::R5;
  if (p.y >= pr.y4a && p.y <= pr.y4b) return RegionId::R4;
  if (p.y >= pr.y3 && p.y <= pr.y3 + 1.0 / pr.sigma) return RegionId::R3;
  if (p.y <= 1.0 / pr.sigma) return RegionId::R1;
  return RegionId::Escape;
}

StepResult step(const MapParams& pr, const Point& p) {
  switch (region_of(pr, p)) {
    case RegionId::R1:
      return {MapStatus::ok, {pr.lambda * p.x, pr.sigma * p.y}};
    case RegionId::R3:
      return {MapStatus::ok, {pr.lambda * p.x + pr.d3, pr.sigma * (p.y - pr.y3)}};
    case RegionId::R4: {
      double dy = p.y - pr.y_c();
      double a2 = pr.alpha * pr.alpha;
      return {MapStatus::ok,
              {pr.q + pr.alpha * dy, pr.c * a2 * dy * dy - pr.lambda * p.x}};
    }
    case RegionId::R5:
      if (pr.r5_orientation == R5Orientation::preserving)
        return {MapStatus::ok,
                {pr.lambda * p.x + (1.0 - pr.lambda), pr.sigma * p.y - (pr.sigma - 1.0)}};
      return {MapStatus::ok, {1.0 - pr.lambda * p.x, pr.sigma * (1.0 - p.y)}};
    default:
      return {MapStatus::not_in_domain, p};
  }
}

JacobianResult jacobian_at(const MapParams& pr, const Point& p) {
  switch (region_of(pr, p)) {
    case RegionId::R1:
    case RegionId::R3:
      return {MapStatus::ok, {pr.lambda, 0.0, 0.0, pr.sigma}};
    case RegionId::R4: {
      double dy = p.y - pr.y_c();
      return {MapStatus::ok,
              {0.0, pr.alpha, -pr.lambda, 2.0 * pr.c * pr.alpha * pr.alpha * dy}};
    }
    case RegionId::R5:
      if (pr.r5_orientation == R5Orientation::preserving)
        return {MapStatus::ok, {pr.lambda, 0.0, 0.0, pr.sigma}};
      return {MapStatus::ok, {-pr.lambda, 0.0, 0.0, -pr.sigma}};
    default:
      return {MapStatus::not_in_domain, {}};
  }
}

bool in_fold_image(const MapParams& pr, const Point& p) {
  // the fold image is a subset of the square; arcs with y < 0 have left Q
  if (p.y < 0.0 || p.y > 1.0) return false;
  double h = pr.fold_half_width();
  if (std::abs(p.x - pr.q) > h) return false;
  double d = p.x - pr.q;
  double x0 = (pr.c * d * d - p.y) / pr.lambda;
  return x0 >= 0.0 && x0 <= 1.0;
}

double fold_preimage_x(const MapParams& pr, const Point& p) {
  double d = p.x - pr.q;
  return (pr.c * d * d - p.y) / pr.lambda;
}

double leaf_rise(const MapParams& pr, const Point& p) {
  double d = p.x - pr.q;
  return pr.c * d * d;
}

double leaf_slope(const MapParams& pr, const Point& p) {
  return 2.0 * pr.c * std::abs(p.x - pr.q);
}

std::vector<Preimage> step_back_all(const MapParams& pr, const Point& p) {
  std::vector<Preimage> out;
  if (p.x < 0.0 || p.x > 1.0) return out;
  // R1 image: [0, lambda] x [0, 1]
  if (p.x >= 0.0 && p.x <= pr.lambda && p.y >= 0.0 && p.y <= 1.0)
    out.push_back({RegionId::R1, {p.x / pr.lambda, p.y / pr.sigma}});
  // R3 image: [d3, d3 + lambda] x [0, 1]
  if (p.x >= pr.d3 && p.x <= pr.d3 + pr.lambda && p.y >= 0.0 && p.y <= 1.0)
    out.push_back({RegionId::R3, {(p.x - pr.d3) / pr.lambda, p.y / pr.sigma + pr.y3}});
  // R5 image: [1 - lambda, 1] x ([1/3..] if preserving, [0, 2/(3)] if reversing)
  if (pr.r5_orientation == R5Orientation::preserving) {
    double ylo = pr.sigma * pr.r5_bottom() - (pr.sigma - 1.0);
    if (p.x >= 1.0 - pr.lambda && p.x <= 1.0 && p.y >= ylo && p.y <= 1.0)
      out.push_back({RegionId::R5,
                     {(p.x - (1.0 - pr.lambda)) / pr.lambda, (p.y + pr.sigma - 1.0) / pr.sigma}});
  } else {
    double yhi = pr.sigma * (1.0 - pr.r5_bottom());
    if (p.x >= 1.0 - pr.lambda && p.x <= 1.0 && p.y >= 0.0 && p.y <= yhi)
      out.push_back({RegionId::R5, {(1.0 - p.x) / pr.lambda, 1.0 - p.y / pr.sigma}});
  }
  // fold image
  if (in_fold_image(pr, p)) {
    double y = pr.y_c() + (p.x - pr.q) / pr.alpha;
    out.push_back({RegionId::R4, {fold_preimage_x(pr, p), y}});
  }
  return out;
}

StepResult step_back(const MapParams& pr, const Point& p) {
  auto pre = step_back_all(pr, p);
  if (pre.empty()) return {MapStatus::no_preimage, p};
  if (pre.size() > 1) return {MapStatus::ambiguous_preimage, p};
  return {MapStatus::ok, pre[0].p};
}

bool near_tangency_orbit(const MapParams& pr, const Point& p, double tol) {
  // forward orbit of the tangency point: (lambda^i q, 0)
  double x = pr.q;
  while (x > 2.0 * tol) {
    if (std::hypot(p.x - x, p.y) < tol) return true;
    x *= pr.lambda;
  }
  // backward orbit: (0, y_c sigma^{-j}), plus the pre-vertex (0, y_c) itself
  double y = pr.y_c();
  while (y > 2.0 * tol) {
    if (std::hypot(p.x, p.y - y) < tol) return true;
    y /= pr.sigma;
  }
  return false;
}

}  // namespace horseshoe
