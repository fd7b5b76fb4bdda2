#include "horseshoe/lyapunov.hpp"

#include <algorithm>
#include <cmath>

#include "horseshoe/cone.hpp"
#include "horseshoe/orbit.hpp"

namespace horseshoe {

namespace {

// an orbit must survive this many forward steps before an exponent estimate
// is reported at all; shorter runs carry no usable averaging
constexpr long k_min_forward = 5;

// pick the next point of a backward chain: the fold preimage when the point
// has one, otherwise the unique linear preimage
bool back_step(const MapParams& pr, Point& z) {
  const std::vector<Preimage> pres = step_back_all(pr, z);
  if (pres.empty()) return false;
  const Preimage* pick = &pres[0];
  for (const Preimage& pe : pres) {
    if (pe.from == RegionId::R4) {
      pick = &pe;
      break;
    }
  }
  z = pick->p;
  return true;
}

void normalize_sign(Vec2& v) {
  if (v.y < 0.0 || (v.y == 0.0 && v.x < 0.0)) {
    v.x = -v.x;
    v.y = -v.y;
  }
}

}  // namespace

Thresholds thresholds(const MapParams& pr) {
  Thresholds th;
  th.sigma1 = corner_growth_rate(pr);
  th.sigma_tilde = std::min(std::sqrt(pr.sigma), th.sigma1);
  // contraction seen by stable-cone vectors: the vertical part can only
  // shrink the inverse growth by the cone opening, hence the sqrt(3)/2 factor
  const double rho_s =
      std::sqrt(1.0 / (pr.lambda * pr.lambda) +
                1.0 / (3.0 * pr.sigma * pr.sigma)) *
      (std::sqrt(3.0) / 2.0);
  th.lambda_tilde = 1.0 / std::min(1.0 / std::sqrt(pr.lambda), rho_s);
  th.gap_lo = std::log(th.lambda_tilde);
  th.gap_hi = std::log(th.sigma_tilde);
  return th;
}

const char* lyap_status_name(LyapStatus s) {
  switch (s) {
    case LyapStatus::ok: return "ok";
    case LyapStatus::escaped: return "escaped";
    case LyapStatus::tangency_orbit: return "tangency_orbit";
  }
  return "unknown";
}

const char* exponent_method_name(ExponentMethod m) {
  switch (m) {
    case ExponentMethod::periodic_exact: return "periodic-exact";
    case ExponentMethod::cone_vector: return "cone-vector";
  }
  return "unknown";
}

ExponentEstimate exponents_periodic(const PeriodicOrbit& orb) {
  ExponentEstimate est;
  est.method = ExponentMethod::periodic_exact;
  if (orb.status != FindStatus::ok || orb.points.empty()) {
    est.status = LyapStatus::escaped;
    return est;
  }
  est.p = orb.points[0];
  est.n_forward = static_cast<long>(orb.points.size());
  est.n_backward = est.n_forward;
  est.chi_u = orb.exp_u;
  est.chi_s = orb.exp_s;
  return est;
}

bool gap_check(const ExponentEstimate& est, const Thresholds& th) {
  return est.chi_s <= th.gap_lo && est.chi_u >= th.gap_hi;
}

Vec2 unstable_axis(const MapParams& pr, const Point& p, int depth) {
  std::vector<Point> chain;
  chain.reserve(static_cast<size_t>(depth));
  Point z = p;
  for (int i = 0; i < depth; ++i) {
    if (!back_step(pr, z)) break;
    chain.push_back(z);
  }
  Vec2 v{0.0, 1.0};
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const JacobianResult jr = jacobian_at(pr, *it);
    if (jr.status != MapStatus::ok) break;  // preimages sit in the strips
    v = apply(jr.j, v);
    const double nv = norm(v);
    v.x /= nv;
    v.y /= nv;
  }
  normalize_sign(v);
  return v;
}

Vec2 stable_axis(const MapParams& pr, const Point& p, int depth) {
  std::vector<Jacobian> js;
  js.reserve(static_cast<size_t>(depth));
  Point z = p;
  for (int i = 0; i < depth; ++i) {
    const JacobianResult jr = jacobian_at(pr, z);
    if (jr.status != MapStatus::ok) break;
    const StepResult sr = step(pr, z);
    if (sr.status != MapStatus::ok) break;
    js.push_back(jr.j);
    z = sr.p;
  }
  Vec2 w{1.0, 0.0};
  for (auto it = js.rbegin(); it != js.rend(); ++it) {
    w = solve(*it, w);
    const double nw = norm(w);
    w.x /= nw;
    w.y /= nw;
  }
  normalize_sign(w);
  return w;
}

ExponentEstimate exponents_forward(const MapParams& pr, const Point& p,
                                   long n, int renorm) {
  ExponentEstimate est;
  est.p = p;
  if (near_tangency_orbit(pr, p)) {
    est.status = LyapStatus::tangency_orbit;
    return est;
  }
  const Thresholds th = thresholds(pr);
  const double log_st = std::log(th.sigma_tilde);

  Vec2 v = unstable_axis(pr, p);
  Point z = p;
  double flushed = 0.0;   // log growth already divided out of v
  double total = 0.0;     // log growth after the latest step
  bool seen_well = in_W(pr, p);
  RegionId prev = region_of(pr, z);
  bool have_gap = false;
  double min_gap = 0.0;
  long m = 0;
  for (long i = 1; i <= n; ++i) {
    const JacobianResult jr = jacobian_at(pr, z);
    if (jr.status != MapStatus::ok) break;
    const StepResult sr = step(pr, z);
    if (sr.status != MapStatus::ok) break;
    v = apply(jr.j, v);
    z = sr.p;
    m = i;
    const double nv = norm(v);
    total = flushed + std::log(nv);
    const RegionId cur = region_of(pr, z);
    if (seen_well && prev == RegionId::R1 && cur != RegionId::R1) {
      est.witnesses.push_back(i);
      const double gap = total - static_cast<double>(i) * log_st;
      min_gap = have_gap ? std::min(min_gap, gap) : gap;
      have_gap = true;
      seen_well = false;
    }
    prev = cur;
    if (in_W(pr, z)) seen_well = true;
    if (renorm > 0 && i % renorm == 0) {
      flushed = total;
      v.x /= nv;
      v.y /= nv;
    }
  }
  if (m < k_min_forward) {
    est.status = LyapStatus::escaped;
    est.n_forward = m;
    return est;
  }
  est.n_forward = m;
  est.chi_u = total / static_cast<double>(m);
  est.c_z = have_gap ? std::exp(min_gap) : 1.0;

  Vec2 w = stable_axis(pr, p);
  Point zb = p;
  double flushed_b = 0.0;
  double total_b = 0.0;
  long mb = 0;
  for (long i = 1; i <= n; ++i) {
    if (!back_step(pr, zb)) break;
    const JacobianResult jr = jacobian_at(pr, zb);
    if (jr.status != MapStatus::ok) break;
    w = solve(jr.j, w);
    mb = i;
    const double nw = norm(w);
    total_b = flushed_b + std::log(nw);
    if (renorm > 0 && i % renorm == 0) {
      flushed_b = total_b;
      w.x /= nw;
      w.y /= nw;
    }
  }
  est.n_backward = mb;
  // backward growth of the stable axis is forward contraction
  est.chi_s = mb > 0 ? -total_b / static_cast<double>(mb) : 0.0;
  return est;
}

std::vector<ProfileEntry> nonuniformity_profile(const MapParams& pr,
                                                const std::vector<Point>& pts,
                                                long n_max) {
  std::vector<ProfileEntry> out;
  out.reserve(pts.size());
  const Thresholds th = thresholds(pr);
  const double log_st = std::log(th.sigma_tilde);
  for (const Point& p : pts) {
    ProfileEntry e;
    e.p = p;
    if (near_tangency_orbit(pr, p)) {
      e.status = LyapStatus::tangency_orbit;
      out.push_back(e);
      continue;
    }
    Vec2 v = unstable_axis(pr, p);
    Point z = p;
    double flushed = 0.0;
    double best = 0.0;
    bool have = false;
    long m = 0;
    for (long i = 1; i <= n_max; ++i) {
      const JacobianResult jr = jacobian_at(pr, z);
      if (jr.status != MapStatus::ok) break;
      const StepResult sr = step(pr, z);
      if (sr.status != MapStatus::ok) break;
      v = apply(jr.j, v);
      z = sr.p;
      m = i;
      const double nv = norm(v);
      const double gap = flushed + std::log(nv) -
                         static_cast<double>(i) * log_st;
      best = have ? std::min(best, gap) : gap;
      have = true;
      if (i % 10 == 0) {
        flushed += std::log(nv);
        v.x /= nv;
        v.y /= nv;
      }
    }
    if (!have) {
      e.status = LyapStatus::escaped;
    } else {
      e.n = m;
      e.c_x = std::exp(best);
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace horseshoe
