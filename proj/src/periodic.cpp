#include "horseshoe/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace horseshoe {

namespace {

constexpr double k_box_pad = 1e-12;       // absolute inflation per propagation
constexpr double k_region_margin = 1e-9;  // interior clearance for acceptance
constexpr double k_residual_tol = 1e-10;
// closure gaps below this mark a candidate root; the k-fold expansion keeps
// honest gaps of long words far above rounding noise, so the per-point
// polish and its per-step residual make the final call
constexpr double k_candidate = 1e-6;

struct YBand {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_edge = false;  // endpoint lies on the boundary of the square
  bool hi_edge = false;
};

YBand region_band(const MapParams& pr, RegionId r) {
  switch (r) {
    case RegionId::R1:
      return {0.0, 1.0 / pr.sigma, true, false};
    case RegionId::R3:
      return {pr.y3, pr.y3 + 1.0 / pr.sigma, false, false};
    case RegionId::R4:
      return {pr.y4a, pr.y4b, false, false};
    case RegionId::R5:
      return {pr.r5_bottom(), 1.0, false, true};
    default:
      return {};
  }
}

struct YRange {
  double lo = 0.0;
  double hi = 0.0;
};

// y-extent of the image of a whole region strip
YRange image_y_range(const MapParams& pr, RegionId r) {
  switch (r) {
    case RegionId::R1:
    case RegionId::R3:
      return {0.0, 1.0};
    case RegionId::R4:
      return {-pr.lambda, pr.fold_peak()};
    case RegionId::R5:
      if (pr.r5_orientation == R5Orientation::preserving) {
        return {pr.sigma * pr.r5_bottom() - (pr.sigma - 1.0), 1.0};
      }
      return {0.0, pr.sigma * (1.0 - pr.r5_bottom())};
    default:
      return {};
  }
}

bool canonical_int(const std::vector<int>& w) {
  const std::size_t k = w.size();
  for (std::size_t s = 1; s < k; ++s) {
    for (std::size_t i = 0; i < k; ++i) {
      const int a = w[(s + i) % k];
      if (a != w[i]) {
        if (a < w[i]) return false;  // strictly smaller rotation exists
        break;
      }
    }
  }
  return true;
}

bool primitive_int(const std::vector<int>& w) {
  const std::size_t k = w.size();
  for (std::size_t d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    bool rep = true;
    for (std::size_t i = d; i < k && rep; ++i) rep = w[i] == w[i % d];
    if (rep) return false;
  }
  return true;
}

void emit_words(const TransitionTable& tt, int k, int pos, std::vector<int>* w,
                std::vector<Word>* out) {
  if (pos == k) {
    if (!tt.adm[(*w)[k - 1]][(*w)[0]]) return;
    if (!canonical_int(*w) || !primitive_int(*w)) return;
    Word word(k);
    for (int i = 0; i < k; ++i) word[i] = symbol_region((*w)[i]);
    out->push_back(std::move(word));
    return;
  }
  const int first = pos == 0 ? 0 : (*w)[0];
  for (int c = first; c < 4; ++c) {
    if (pos > 0 && !tt.adm[(*w)[pos - 1]][c]) continue;
    (*w)[pos] = c;
    emit_words(tt, k, pos + 1, w, out);
  }
}

// axis-aligned rectangles for the per-position constraint propagation
struct Box {
  double xlo = 0.0, xhi = 0.0, ylo = 0.0, yhi = 0.0;
  bool empty() const { return !(xlo <= xhi && ylo <= yhi); }
};

Box intersect_box(const Box& a, const Box& b) {
  return {std::max(a.xlo, b.xlo), std::min(a.xhi, b.xhi),
          std::max(a.ylo, b.ylo), std::min(a.yhi, b.yhi)};
}

Box pad_box(Box b) {
  b.xlo -= k_box_pad;
  b.xhi += k_box_pad;
  b.ylo -= k_box_pad;
  b.yhi += k_box_pad;
  return b;
}

double box_change(const Box& a, const Box& b) {
  return std::max(std::max(std::fabs(a.xlo - b.xlo), std::fabs(a.xhi - b.xhi)),
                  std::max(std::fabs(a.ylo - b.ylo), std::fabs(a.yhi - b.yhi)));
}

// range of t^2 over [lo, hi]
void sq_range(double lo, double hi, double* out_lo, double* out_hi) {
  const double a = lo * lo;
  const double b = hi * hi;
  if (lo <= 0.0 && 0.0 <= hi) {
    *out_lo = 0.0;
    *out_hi = std::max(a, b);
  } else {
    *out_lo = std::min(a, b);
    *out_hi = std::max(a, b);
  }
}

Box forward_box(const MapParams& pr, RegionId r, const Box& b) {
  switch (r) {
    case RegionId::R1:
      return {pr.lambda * b.xlo, pr.lambda * b.xhi, pr.sigma * b.ylo,
              pr.sigma * b.yhi};
    case RegionId::R3:
      return {pr.lambda * b.xlo + pr.d3, pr.lambda * b.xhi + pr.d3,
              pr.sigma * (b.ylo - pr.y3), pr.sigma * (b.yhi - pr.y3)};
    case RegionId::R4: {
      const double a2 = pr.alpha * pr.alpha;
      const double dlo = b.ylo - pr.y_c();
      const double dhi = b.yhi - pr.y_c();
      double slo = 0.0, shi = 0.0;
      sq_range(dlo, dhi, &slo, &shi);
      return {pr.q + pr.alpha * dlo, pr.q + pr.alpha * dhi,
              pr.c * a2 * slo - pr.lambda * b.xhi,
              pr.c * a2 * shi - pr.lambda * b.xlo};
    }
    case RegionId::R5:
      if (pr.r5_orientation == R5Orientation::preserving) {
        return {pr.lambda * b.xlo + (1.0 - pr.lambda),
                pr.lambda * b.xhi + (1.0 - pr.lambda),
                pr.sigma * b.ylo - (pr.sigma - 1.0),
                pr.sigma * b.yhi - (pr.sigma - 1.0)};
      }
      return {1.0 - pr.lambda * b.xhi, 1.0 - pr.lambda * b.xlo,
              pr.sigma * (1.0 - b.yhi), pr.sigma * (1.0 - b.ylo)};
    default:
      return {1.0, -1.0, 1.0, -1.0};
  }
}

Box backward_box(const MapParams& pr, RegionId r, const Box& b) {
  switch (r) {
    case RegionId::R1:
      return {b.xlo / pr.lambda, b.xhi / pr.lambda, b.ylo / pr.sigma,
              b.yhi / pr.sigma};
    case RegionId::R3:
      return {(b.xlo - pr.d3) / pr.lambda, (b.xhi - pr.d3) / pr.lambda,
              b.ylo / pr.sigma + pr.y3, b.yhi / pr.sigma + pr.y3};
    case RegionId::R4: {
      // x' pins the fold offset, so the preimage band is exact
      const double a2 = pr.alpha * pr.alpha;
      const double dlo = (b.xlo - pr.q) / pr.alpha;
      const double dhi = (b.xhi - pr.q) / pr.alpha;
      double slo = 0.0, shi = 0.0;
      sq_range(dlo, dhi, &slo, &shi);
      return {(pr.c * a2 * slo - b.yhi) / pr.lambda,
              (pr.c * a2 * shi - b.ylo) / pr.lambda, pr.y_c() + dlo,
              pr.y_c() + dhi};
    }
    case RegionId::R5:
      if (pr.r5_orientation == R5Orientation::preserving) {
        return {(b.xlo - (1.0 - pr.lambda)) / pr.lambda,
                (b.xhi - (1.0 - pr.lambda)) / pr.lambda,
                (b.ylo + (pr.sigma - 1.0)) / pr.sigma,
                (b.yhi + (pr.sigma - 1.0)) / pr.sigma};
    }
      return {(1.0 - b.xhi) / pr.lambda, (1.0 - b.xlo) / pr.lambda,
              1.0 - b.yhi / pr.sigma, 1.0 - b.ylo / pr.sigma};
    default:
      return {1.0, -1.0, 1.0, -1.0};
  }
}

// forward/backward constraint sweeps over per-position region boxes; false
// means some position emptied, so the word carries no in-region cycle
bool refine_boxes(const MapParams& pr, const Word& w, std::vector<Box>* boxes) {
  const int k = static_cast<int>(w.size());
  boxes->clear();
  boxes->reserve(k);
  for (RegionId r : w) {
    const YBand band = region_band(pr, r);
    boxes->push_back({0.0, 1.0, band.lo, band.hi});
  }
  for (int round = 0; round < 200; ++round) {
    double change = 0.0;
    for (int i = 0; i < k; ++i) {
      const int nxt = (i + 1) % k;
      const Box nb = intersect_box(
          (*boxes)[nxt], pad_box(forward_box(pr, w[i], (*boxes)[i])));
      if (nb.empty()) return false;
      change = std::max(change, box_change(nb, (*boxes)[nxt]));
      (*boxes)[nxt] = nb;
    }
    for (int i = k - 1; i >= 0; --i) {
      const int nxt = (i + 1) % k;
      const Box nb = intersect_box(
          (*boxes)[i], pad_box(backward_box(pr, w[i], (*boxes)[nxt])));
      if (nb.empty()) return false;
      change = std::max(change, box_change(nb, (*boxes)[i]));
      (*boxes)[i] = nb;
    }
    if (change < 1e-14) break;
  }
  return true;
}

struct Shoot {
  Point z;
  Jacobian m;
};

Shoot shoot_cycle(const MapParams& pr, const Word& w, const Point& p) {
  Shoot s{p, {1.0, 0.0, 0.0, 1.0}};
  for (RegionId r : w) {
    s.m = mul(jacobian_sym(pr, r, s.z), s.m);
    s.z = step_sym(pr, r, s.z);
  }
  return s;
}

double cycle_gap(const MapParams& pr, const Word& w, const Point& p) {
  Point z = p;
  for (RegionId r : w) z = step_sym(pr, r, z);
  return std::hypot(z.x - p.x, z.y - p.y);
}

// damped Newton on p - Phi^k(p); returns the residual reached
double newton_run(const MapParams& pr, const Word& w, Point* p, int max_iter) {
  Point cur = *p;
  double res = cycle_gap(pr, w, cur);
  for (int it = 0; it < max_iter && res > 1e-14; ++it) {
    const Shoot s = shoot_cycle(pr, w, cur);
    const Jacobian jm{s.m.m11 - 1.0, s.m.m12, s.m.m21, s.m.m22 - 1.0};
    if (std::fabs(jm.det()) < 1e-250) break;
    const Vec2 d = solve(jm, {cur.x - s.z.x, cur.y - s.z.y});
    double t = 1.0;
    bool moved = false;
    for (int h = 0; h < 30; ++h) {
      const Point cand{cur.x + t * d.x, cur.y + t * d.y};
      const double cres = cycle_gap(pr, w, cand);
      if (cres < res) {
        cur = cand;
        res = cres;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  *p = cur;
  return res;
}

// fixed point of the affine composition x' = a x + b, componentwise
Point affine_fixed_point(const MapParams& pr, const Word& w) {
  double ax = 1.0, bx = 0.0, ay = 1.0, by = 0.0;
  for (RegionId r : w) {
    double ca = pr.lambda, cb = 0.0, da = pr.sigma, db = 0.0;
    switch (r) {
      case RegionId::R3:
        cb = pr.d3;
        db = -pr.sigma * pr.y3;
        break;
      case RegionId::R5:
        if (pr.r5_orientation == R5Orientation::preserving) {
          cb = 1.0 - pr.lambda;
          db = -(pr.sigma - 1.0);
        } else {
          ca = -pr.lambda;
          cb = 1.0;
          da = -pr.sigma;
          db = pr.sigma;
        }
        break;
      default:
        break;
    }
    ax = ca * ax;
    bx = ca * bx + cb;
    ay = da * ay;
    by = da * by + db;
  }
  return {bx / (1.0 - ax), by / (1.0 - ay)};
}

// in-place LU with partial pivoting; solves a x = b into x
bool lu_solve(int n, std::vector<double>* a, const std::vector<double>& b,
              std::vector<double>* x) {
  std::vector<double>& m = *a;
  *x = b;
  std::vector<int> piv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) piv[i] = i;
  for (int col = 0; col < n; ++col) {
    int best = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::fabs(m[r * n + col]) > std::fabs(m[best * n + col])) best = r;
    }
    if (m[best * n + col] == 0.0) return false;
    if (best != col) {
      for (int c = 0; c < n; ++c) std::swap(m[best * n + c], m[col * n + c]);
      std::swap((*x)[best], (*x)[col]);
    }
    const double inv = 1.0 / m[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double l = m[r * n + col] * inv;
      if (l == 0.0) continue;
      m[r * n + col] = 0.0;
      for (int c = col + 1; c < n; ++c) m[r * n + c] -= l * m[col * n + c];
      (*x)[r] -= l * (*x)[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = (*x)[r];
    for (int c = r + 1; c < n; ++c) s -= m[r * n + c] * (*x)[c];
    (*x)[r] = s / m[r * n + r];
  }
  return true;
}

double max_step_defect(const MapParams& pr, const Word& w,
                       const std::vector<Point>& pts) {
  const int k = static_cast<int>(w.size());
  double worst = 0.0;
  for (int i = 0; i < k; ++i) {
    const Point z = step_sym(pr, w[i], pts[i]);
    const Point& nxt = pts[(i + 1) % k];
    worst = std::max(worst, std::hypot(z.x - nxt.x, z.y - nxt.y));
  }
  return worst;
}

// damped Gauss-Newton on the stacked one-step defects; the block-cyclic
// system keeps every residual and matrix entry one step wide, so the k-fold
// expansion never amplifies them and the points converge to rounding level
// in both the stable and unstable directions
void multiple_shoot(const MapParams& pr, const Word& w,
                    std::vector<Point>* pts) {
  const int k = static_cast<int>(w.size());
  const int n = 2 * k;
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  std::vector<double> f(static_cast<std::size_t>(n));
  std::vector<double> d;
  double res = max_step_defect(pr, w, *pts);
  for (int it = 0; it < 60 && res > 1e-14; ++it) {
    std::fill(a.begin(), a.end(), 0.0);
    for (int i = 0; i < k; ++i) {
      const Jacobian j = jacobian_sym(pr, w[i], (*pts)[i]);
      const Point z = step_sym(pr, w[i], (*pts)[i]);
      const int r = 2 * i;
      const int cn = 2 * ((i + 1) % k);
      a[static_cast<std::size_t>(r) * n + r] = j.m11;
      a[static_cast<std::size_t>(r) * n + r + 1] = j.m12;
      a[static_cast<std::size_t>(r + 1) * n + r] = j.m21;
      a[static_cast<std::size_t>(r + 1) * n + r + 1] = j.m22;
      a[static_cast<std::size_t>(r) * n + cn] -= 1.0;
      a[static_cast<std::size_t>(r + 1) * n + cn + 1] -= 1.0;
      const Point& nxt = (*pts)[(i + 1) % k];
      f[r] = z.x - nxt.x;
      f[r + 1] = z.y - nxt.y;
    }
    if (!lu_solve(n, &a, f, &d)) return;
    double t = 1.0;
    bool moved = false;
    for (int h = 0; h < 30; ++h) {
      std::vector<Point> cand(*pts);
      for (int i = 0; i < k; ++i) {
        cand[i].x -= t * d[2 * i];
        cand[i].y -= t * d[2 * i + 1];
      }
      const double cres = max_step_defect(pr, w, cand);
      if (cres < res) {
        *pts = std::move(cand);
        res = cres;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
}

// one cycle point per phase: affine words solve each rotation in closed
// form; fold words seed the chain forward and refine all points jointly
std::vector<Point> polish_cycle(const MapParams& pr, const Word& w,
                                const Point& p0, bool has_fold) {
  const int k = static_cast<int>(w.size());
  std::vector<Point> pts(static_cast<std::size_t>(k));
  pts[0] = p0;
  if (has_fold) {
    for (int i = 1; i < k; ++i) pts[i] = step_sym(pr, w[i - 1], pts[i - 1]);
    multiple_shoot(pr, w, &pts);
    return pts;
  }
  Word rot = w;
  for (int i = 1; i < k; ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    pts[i] = affine_fixed_point(pr, rot);
  }
  return pts;
}

// validate a polished cycle: in-region with margin, region-dispatched step
// residual under tolerance, then eigendata of the cycle Jacobian
PeriodicOrbit assemble(const MapParams& pr, const Word& w,
                       std::vector<Point> pts) {
  PeriodicOrbit orb;
  orb.word = w;
  const int k = static_cast<int>(w.size());
  for (int i = 0; i < k; ++i) {
    if (!in_region_margin(pr, w[i], pts[i], k_region_margin) ||
        region_of(pr, pts[i]) != w[i]) {
      return orb;  // root of the branch formulas outside its region
    }
  }
  double resid = 0.0;
  for (int i = 0; i < k; ++i) {
    const StepResult sr = step(pr, pts[i]);
    if (sr.status != MapStatus::ok) return orb;
    const Point& nxt = pts[(i + 1) % k];
    resid = std::max(resid, std::hypot(sr.p.x - nxt.x, sr.p.y - nxt.y));
  }
  if (!(resid < k_residual_tol)) return orb;

  Jacobian m{1.0, 0.0, 0.0, 1.0};
  for (int i = 0; i < k; ++i) m = mul(jacobian_sym(pr, w[i], pts[i]), m);
  const double tr = m.m11 + m.m22;
  const double det = m.det();
  const double disc = tr * tr - 4.0 * det;
  orb.points = std::move(pts);
  orb.residual = resid;
  if (disc < 0.0) {
    orb.status = FindStatus::complex_pair;
    return orb;
  }
  double mu_u = 0.5 * (tr + std::copysign(std::sqrt(disc), tr));
  double mu_s = mu_u == 0.0 ? 0.0 : det / mu_u;
  if (std::fabs(mu_u) < std::fabs(mu_s)) std::swap(mu_u, mu_s);
  orb.mu_u = mu_u;
  orb.mu_s = mu_s;
  orb.exp_u = std::log(std::fabs(mu_u)) / k;
  orb.exp_s = std::log(std::fabs(mu_s)) / k;
  orb.status = FindStatus::ok;
  return orb;
}

struct SeedSearch {
  double best_res = std::numeric_limits<double>::infinity();
  bool rejected_root = false;  // converged, but outside the itinerary regions
};

// closure defect of a cycle under the bare branch formulas
double sym_cycle_residual(const MapParams& pr, const Word& w,
                          const std::vector<Point>& pts) {
  const int k = static_cast<int>(w.size());
  double resid = 0.0;
  for (int i = 0; i < k; ++i) {
    const Point z = step_sym(pr, w[i], pts[i]);
    const Point& nxt = pts[(i + 1) % k];
    resid = std::max(resid, std::hypot(z.x - nxt.x, z.y - nxt.y));
  }
  return resid;
}

// returns true and fills *out when a seed both converges and validates
bool try_seed(const MapParams& pr, const Word& w, Point seed, int max_iter,
              SeedSearch* st, PeriodicOrbit* out) {
  const double res = newton_run(pr, w, &seed, max_iter);
  st->best_res = std::min(st->best_res, res);
  if (res >= k_candidate) return false;
  std::vector<Point> pts = polish_cycle(pr, w, seed, true);
  const double symres = sym_cycle_residual(pr, w, pts);
  PeriodicOrbit orb = assemble(pr, w, std::move(pts));
  if (orb.status == FindStatus::ok || orb.status == FindStatus::complex_pair) {
    *out = std::move(orb);
    return true;
  }
  // a true root of the branch system that fails the strip constraints rules
  // the word out; anything else is just a seed that went nowhere
  if (symres < k_residual_tol) st->rejected_root = true;
  return false;
}

FindStatus classify_failure(const SeedSearch& st) {
  if (st.rejected_root) return FindStatus::not_realized;
  if (st.best_res < 1e-6) return FindStatus::newton_budget;
  return FindStatus::not_realized;
}

}  // namespace

int symbol_index(RegionId r) {
  switch (r) {
    case RegionId::R1:
      return 0;
    case RegionId::R3:
      return 1;
    case RegionId::R4:
      return 2;
    case RegionId::R5:
      return 3;
    default:
      return -1;
  }
}

RegionId symbol_region(int i) {
  constexpr RegionId order[4] = {RegionId::R1, RegionId::R3, RegionId::R4,
                                 RegionId::R5};
  return order[i & 3];
}

TransitionTable transition_table(const MapParams& pr) {
  TransitionTable tt;
  for (int a = 0; a < 4; ++a) {
    const YRange img = image_y_range(pr, symbol_region(a));
    for (int b = 0; b < 4; ++b) {
      const YBand band = region_band(pr, symbol_region(b));
      const double lo = std::max(img.lo, band.lo);
      const double hi = std::min(img.hi, band.hi);
      tt.adm[a][b] = hi - lo > 0.0;
    }
  }
  return tt;
}

std::string word_name(const Word& w) {
  std::string s;
  for (RegionId r : w) s += region_name(r);
  return s;
}

Word canonical_rotation(const Word& w) {
  const std::size_t k = w.size();
  std::vector<int> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = symbol_index(w[i]);
  std::size_t best = 0;
  for (std::size_t s = 1; s < k; ++s) {
    for (std::size_t i = 0; i < k; ++i) {
      const int a = idx[(s + i) % k];
      const int b = idx[(best + i) % k];
      if (a != b) {
        if (a < b) best = s;
        break;
      }
    }
  }
  Word out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = w[(best + i) % k];
  return out;
}

bool is_primitive(const Word& w) {
  std::vector<int> idx(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) idx[i] = symbol_index(w[i]);
  return primitive_int(idx);
}

std::vector<Word> enumerate_itineraries(const MapParams& pr, int max_period) {
  std::vector<Word> out;
  const TransitionTable tt = transition_table(pr);
  std::vector<int> w;
  for (int k = 1; k <= max_period; ++k) {
    w.assign(static_cast<std::size_t>(k), 0);
    emit_words(tt, k, 0, &w, &out);
  }
  return out;
}

Point step_sym(const MapParams& pr, RegionId r, const Point& p) {
  switch (r) {
    case RegionId::R1:
      return {pr.lambda * p.x, pr.sigma * p.y};
    case RegionId::R3:
      return {pr.lambda * p.x + pr.d3, pr.sigma * (p.y - pr.y3)};
    case RegionId::R4: {
      const double dy = p.y - pr.y_c();
      const double a2 = pr.alpha * pr.alpha;
      return {pr.q + pr.alpha * dy, pr.c * a2 * dy * dy - pr.lambda * p.x};
    }
    case RegionId::R5:
      if (pr.r5_orientation == R5Orientation::preserving) {
        return {pr.lambda * p.x + (1.0 - pr.lambda),
                pr.sigma * p.y - (pr.sigma - 1.0)};
      }
      return {1.0 - pr.lambda * p.x, pr.sigma * (1.0 - p.y)};
    default:
      return p;
  }
}

Jacobian jacobian_sym(const MapParams& pr, RegionId r, const Point& p) {
  switch (r) {
    case RegionId::R4: {
      const double dy = p.y - pr.y_c();
      return {0.0, pr.alpha, -pr.lambda, 2.0 * pr.c * pr.alpha * pr.alpha * dy};
    }
    case RegionId::R5:
      if (pr.r5_orientation == R5Orientation::reversing)
        return {-pr.lambda, 0.0, 0.0, -pr.sigma};
      [[fallthrough]];
    default:
      return {pr.lambda, 0.0, 0.0, pr.sigma};
  }
}

bool in_region_margin(const MapParams& pr, RegionId r, const Point& p,
                      double margin) {
  const YBand band = region_band(pr, r);
  if (!(band.lo < band.hi)) return false;
  if (!(p.x >= 0.0 && p.x <= 1.0)) return false;
  const double lo = band.lo_edge ? band.lo : band.lo + margin;
  const double hi = band.hi_edge ? band.hi : band.hi - margin;
  return p.y >= lo && p.y <= hi;
}

const char* find_status_name(FindStatus s) {
  switch (s) {
    case FindStatus::ok:
      return "ok";
    case FindStatus::not_realized:
      return "not_realized";
    case FindStatus::newton_budget:
      return "newton_budget";
    case FindStatus::complex_pair:
      return "complex_pair";
  }
  return "unknown";
}

PeriodicOrbit find_orbit(const MapParams& pr, const Word& w) {
  PeriodicOrbit orb;
  orb.word = w;
  if (w.empty()) return orb;

  const bool has_fold =
      std::find(w.begin(), w.end(), RegionId::R4) != w.end();
  if (!has_fold) {
    const Point p0 = affine_fixed_point(pr, w);
    return assemble(pr, w, polish_cycle(pr, w, p0, false));
  }

  std::vector<Box> boxes;
  if (!refine_boxes(pr, w, &boxes)) return orb;  // not_realized

  const Box& b0 = boxes[0];
  const double xm = 0.5 * (b0.xlo + b0.xhi);
  const double ym = 0.5 * (b0.ylo + b0.yhi);
  const double xr = 0.25 * (b0.xhi - b0.xlo);
  const double yr = 0.25 * (b0.yhi - b0.ylo);
  const Point seeds[5] = {{xm, ym},
                          {xm - xr, ym - yr},
                          {xm - xr, ym + yr},
                          {xm + xr, ym - yr},
                          {xm + xr, ym + yr}};
  SeedSearch st;
  for (const Point& seed : seeds) {
    if (try_seed(pr, w, seed, 200, &st, &orb)) return orb;
  }
  // denser sweep of the refined box before giving up on the word
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const Point seed{b0.xlo + (i + 0.5) / 8.0 * (b0.xhi - b0.xlo),
                       b0.ylo + (j + 0.5) / 8.0 * (b0.yhi - b0.ylo)};
      if (try_seed(pr, w, seed, 60, &st, &orb)) return orb;
    }
  }
  orb.status = classify_failure(st);
  return orb;
}

PeriodicOrbit find_orbit_newton(const MapParams& pr, const Word& w) {
  PeriodicOrbit orb;
  orb.word = w;
  if (w.empty()) return orb;
  const YBand band = region_band(pr, w[0]);
  SeedSearch st;
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      const Point seed{(i + 0.5) / 16.0,
                       band.lo + (j + 0.5) / 16.0 * (band.hi - band.lo)};
      if (try_seed(pr, w, seed, 200, &st, &orb)) return orb;
    }
  }
  orb.status = classify_failure(st);
  return orb;
}

Census run_census(const MapParams& pr, int max_period) {
  Census cs;
  const std::vector<Word> words = enumerate_itineraries(pr, max_period);
  cs.words_examined = static_cast<long>(words.size());
  for (const Word& w : words) {
    PeriodicOrbit orb = find_orbit(pr, w);
    switch (orb.status) {
      case FindStatus::ok:
        cs.orbits.push_back(std::move(orb));
        break;
      case FindStatus::not_realized:
        ++cs.not_realized;
        break;
      case FindStatus::newton_budget:
        ++cs.newton_budget;
        break;
      case FindStatus::complex_pair:
        ++cs.anomalies;
        break;
    }
  }
  return cs;
}

HyperbolicityReport certify_uniform_hyperbolicity(
    const std::vector<PeriodicOrbit>& orbits, double sigma_star,
    double lambda_star) {
  HyperbolicityReport rep;
  rep.all_pass = true;
  rep.best_sigma_star = std::numeric_limits<double>::infinity();
  rep.best_lambda_star = 0.0;
  for (const PeriodicOrbit& orb : orbits) {
    const int k = static_cast<int>(orb.word.size());
    const double au = std::fabs(orb.mu_u);
    const double as = std::fabs(orb.mu_s);
    OrbitCertificate row;
    row.word = orb.word;
    row.period = k;
    row.margin_u = au - std::pow(sigma_star, k);
    row.margin_s = std::pow(lambda_star, k) - as;
    row.pass = row.margin_u >= 0.0 && row.margin_s >= 0.0;
    rep.all_pass = rep.all_pass && row.pass;
    rep.best_sigma_star = std::min(rep.best_sigma_star, std::pow(au, 1.0 / k));
    rep.best_lambda_star =
        std::max(rep.best_lambda_star, std::pow(as, 1.0 / k));
    rep.rows.push_back(std::move(row));
  }
  if (orbits.empty()) rep.best_sigma_star = 0.0;
  return rep;
}

}  // namespace horseshoe
