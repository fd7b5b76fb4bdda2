#include "horseshoe/orbit.hpp"

#include <cmath>

#include "horseshoe/cone.hpp"

namespace horseshoe {

const char* orbit_status_name(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::ok: return "ok";
    case OrbitStatus::escaped: return "escaped";
    case OrbitStatus::budget_exceeded: return "budget_exceeded";
    case OrbitStatus::on_stable_manifold: return "on_stable_manifold";
    case OrbitStatus::cone_violation: return "cone_violation";
    case OrbitStatus::in_w_tilde: return "in_w_tilde";
  }
  return "?";
}

ReturnRecord first_return(const MapParams& pr, const Point& p, int max_iter) {
  ReturnRecord rec;
  rec.start = p;
  rec.eta = p.y;
  Point z = p;
  Point prev = p;
  for (int i = 1; i <= max_iter; ++i) {
    StepResult next = step(pr, z);
    if (next.status != MapStatus::ok) {
      rec.status = OrbitStatus::escaped;
      rec.n = i - 1;
      return rec;
    }
    prev = z;
    z = next.p;
    if (!in_fold_image(pr, z)) continue;

    rec.n = i;
    rec.end = z;
    rec.xi_prev = prev.x;
    rec.rise_start = leaf_rise(pr, p);
    rec.rise_end = leaf_rise(pr, z);
    const double ls = std::log(pr.sigma);
    const double ll = std::log(pr.lambda);
    rec.bound_return_time =
        std::max(std::log(1.0 / rec.eta) / ls, std::log(1.0 / rec.xi_prev) / -ll);
    rec.ratio_n = std::pow(pr.lambda / pr.sigma, i);
    rec.rhs_eta = std::pow(rec.eta, 1.0 - ll / ls);
    rec.rhs_xi = std::pow(pr.lambda * rec.xi_prev, 1.0 - ls / ll);
    rec.rhs_xi_alt = std::pow(pr.lambda * rec.xi_prev, 1.0 - ll / ls);
    rec.rhs_leaf = 4.0 * pr.c * std::sqrt(rec.rise_end * rec.rise_start) / 9.0;
    rec.pass_return_time = static_cast<double>(i) >= rec.bound_return_time;
    rec.pass_eta = rec.ratio_n < rec.rhs_eta;
    rec.pass_leaf = rec.ratio_n < rec.rhs_leaf;
    rec.obs_xi = rec.ratio_n < rec.rhs_xi;
    rec.obs_xi_alt = rec.ratio_n < rec.rhs_xi_alt;
    rec.status = OrbitStatus::ok;
    return rec;
  }
  rec.status = OrbitStatus::budget_exceeded;
  rec.n = max_iter;
  return rec;
}

bool in_W(const MapParams& pr, const Point& p) {
  const double dx = p.x - pr.q;
  const double r = 1.0 / pr.c;
  return dx * dx + p.y * p.y < r * r;
}

bool in_W_tilde(const MapParams& pr, const Point& p, int j_max) {
  // every ladder copy lives in the bottom strip; the height test binds at j=0
  if (p.y < 0.0 || p.y > 1.0 / pr.sigma) return false;
  if (p.x < 0.0 || p.x > 1.0) return false;
  const double r2 = 1.0 / (pr.c * pr.c);
  double xj = p.x;
  double yj = p.y;
  for (int j = 0; j <= j_max; ++j) {
    if (j > 0) {
      xj /= pr.lambda;
      yj /= pr.sigma;
      if (xj > 1.0) return false;  // xj is increasing: later rungs leave Q too
    }
    const double dx = xj - pr.q;
    if (dx * dx + yj * yj < r2) return true;
  }
  return false;
}

EscapeRecord escape_time(const MapParams& pr, const Point& p) {
  EscapeRecord rec;
  if (p.y == 0.0) {
    rec.status = OrbitStatus::on_stable_manifold;
    return rec;
  }
  const double third = 1.0 / 3.0;
  double y = p.y;
  int n = 0;
  while (n < 100000) {
    y *= pr.sigma;
    ++n;
    if (y > third) break;
  }
  rec.n = n;
  rec.bound = -std::log(3.0 * p.y) / std::log(pr.sigma);
  rec.status = OrbitStatus::ok;
  return rec;
}

ExcursionRecord excursion_growth(const MapParams& pr, const Point& p,
                                 const Vec2& v) {
  ExcursionRecord rec;
  rec.start = p;
  rec.v = v;
  if (p.y <= 0.0) {
    rec.status = OrbitStatus::on_stable_manifold;
    return rec;
  }
  if (v.y == 0.0) {
    rec.status = OrbitStatus::cone_violation;
    return rec;
  }
  // the wide well cone is checked first: it subsumes cone_at on most of W and
  // avoids tangency-orbit dead ends right at the fold vertex
  const double u = v.x / v.y;
  const double w_cone = 3.0 / (2.0 * std::sqrt(pr.c * p.y));
  bool admissible = std::fabs(u) <= w_cone;
  if (!admissible) {
    ConeResult ca = cone_at(pr, p);
    admissible = ca.status == ConeStatus::ok && cone_contains(ca.cone, v);
  }
  if (!admissible) {
    rec.status = OrbitStatus::cone_violation;
    return rec;
  }
  EscapeRecord esc = escape_time(pr, p);
  rec.n = esc.n;
  Point z = p;
  Vec2 w = v;
  for (int i = 0; i < esc.n; ++i) {
    if (region_of(pr, z) != RegionId::R1) {
      // the ladder left the bottom strip early (gap between 1/sigma and 1/3)
      rec.status = OrbitStatus::escaped;
      return rec;
    }
    w = apply(jacobian_at(pr, z).j, w);
    z = step(pr, z).p;
  }
  rec.growth = norm(w) / norm(v);
  rec.vertical_growth = norm(w) / std::fabs(v.y);
  rec.bound_vertical = std::pow(pr.sigma, rec.n);
  rec.bound_ratio = std::pow(pr.sigma, 0.5 * rec.n);
  rec.pass_vertical = rec.vertical_growth >= rec.bound_vertical * (1.0 - 1e-12);
  rec.pass_ratio = rec.growth >= rec.bound_ratio * (1.0 - 1e-12);
  rec.status = OrbitStatus::ok;
  return rec;
}

StepGrowth step_growth_outside(const MapParams& pr, const Point& p,
                               const Vec2& v, int j_max) {
  StepGrowth g;
  g.threshold = corner_growth_rate(pr);
  if (in_W_tilde(pr, p, j_max)) {
    g.status = OrbitStatus::in_w_tilde;
    return g;
  }
  ConeResult ca = cone_at(pr, p);
  if (ca.status != ConeStatus::ok || !cone_contains(ca.cone, v)) {
    g.status = OrbitStatus::cone_violation;
    return g;
  }
  JacobianResult j = jacobian_at(pr, p);
  if (j.status != MapStatus::ok) {
    g.status = OrbitStatus::escaped;
    return g;
  }
  g.ratio = norm(apply(j.j, v)) / norm(v);
  g.pass = g.ratio > g.threshold * (1.0 - 1e-12);
  g.status = OrbitStatus::ok;
  return g;
}

}  // namespace horseshoe
