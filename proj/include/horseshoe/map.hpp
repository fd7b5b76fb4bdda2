#pragma once

#include <string>
#include <vector>

namespace horseshoe {

enum class R5Orientation { preserving, reversing };

// Parameters of the piecewise map on the unit square Q = [0,1]^2.
// Four horizontal strips carry the dynamics: R1 = [0,1]x[0,1/sigma],
// R3 = [0,1]x[y3, y3+1/sigma], R4 = [0,1]x[y4a, y4b] (the fold strip),
// R5 = [0,1]x[1-2/(3 sigma), 1]. Bands between strips escape.
struct MapParams {
  double lambda = 0.25;  // horizontal contraction
  double sigma = 4.0;    // vertical expansion
  double c = 16.0;       // fold curvature
  double q = 0.72;       // fold vertex abscissa
  double alpha = 4.0;    // fold horizontal speed
  double y3 = 0.40;      // bottom of R3
  double d3 = 0.45;      // horizontal offset of the R3 image
  double y4a = 0.70;     // bottom of R4
  double y4b = 0.78;     // top of R4
  R5Orientation r5_orientation = R5Orientation::preserving;

  double y_c() const { return 0.5 * (y4a + y4b); }
  // half of the fold image's horizontal extent: alpha*(y4b-y4a)/2
  double fold_half_width() const { return alpha * 0.5 * (y4b - y4a); }
  // top of the fold image's y-range: c * fold_half_width^2
  double fold_peak() const {
    double h = fold_half_width();
    return c * h * h;
  }
  double r5_bottom() const { return 1.0 - 2.0 / (3.0 * sigma); }

  // decimal rendering of all fields joined by "|"; stamps every output file
  std::string fingerprint() const;
};

// empty vector = valid; otherwise one message per violated constraint
std::vector<std::string> validate(const MapParams& pr);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double norm(const Vec2& v);

enum class RegionId { R1, R3, R4, R5, Escape, OutsideQ };

const char* region_name(RegionId r);

struct Jacobian {
  double m11 = 0.0, m12 = 0.0;
  double m21 = 0.0, m22 = 0.0;
  double det() const { return m11 * m22 - m12 * m21; }
};

Vec2 apply(const Jacobian& j, const Vec2& v);
Vec2 solve(const Jacobian& j, const Vec2& v);  // j^{-1} v
Jacobian mul(const Jacobian& a, const Jacobian& b);

enum class MapStatus { ok, not_in_domain, no_preimage, ambiguous_preimage };

struct StepResult {
  MapStatus status = MapStatus::ok;
  Point p;
};

struct JacobianResult {
  MapStatus status = MapStatus::ok;
  Jacobian j;
};

// strip containing p.y; strips are closed and pairwise disjoint for valid
// params, classified top-down so the upper strip wins if two ever touch
RegionId region_of(const MapParams& pr, const Point& p);

// one forward step; not_in_domain when region_of is Escape/OutsideQ
StepResult step(const MapParams& pr, const Point& p);

// derivative at p: diag(lambda, sigma) on R1/R3/R5-preserving,
// diag(-lambda, -sigma) on R5-reversing,
// [[0, alpha], [-lambda, 2 c alpha^2 (y - y_c)]] on R4
JacobianResult jacobian_at(const MapParams& pr, const Point& p);

struct Preimage {
  RegionId from = RegionId::Escape;
  Point p;
};

// every preimage of p across all strip images (0, 1, or 2 entries;
// linear image x-bands are pairwise disjoint so at most one linear branch)
std::vector<Preimage> step_back_all(const MapParams& pr, const Point& p);

// unique preimage or no_preimage / ambiguous_preimage
StepResult step_back(const MapParams& pr, const Point& p);

// membership in the fold image: |x - q| <= fold_half_width and the fold
// preimage abscissa (c (x-q)^2 - y) / lambda lies in [0, 1]
bool in_fold_image(const MapParams& pr, const Point& p);

// abscissa of the vertical line whose fold image (the parabola
// y = c (x-q)^2 - lambda x0) passes through p
double fold_preimage_x(const MapParams& pr, const Point& p);

// height of p above its parabola vertex: y + lambda*x0 = c (x-q)^2
double leaf_rise(const MapParams& pr, const Point& p);

// |dy/dx| of the parabola through p: 2 c |x - q| = 2 sqrt(c * leaf_rise)
double leaf_slope(const MapParams& pr, const Point& p);

// true if p lies within tol of the forward/backward orbit of the fold
// tangency (q, 0): points (lambda^i q, 0) and (0, y_c sigma^{-j}); orbit
// points smaller than 2*tol are skipped so the fixed point (0,0), which
// the orbit merely accumulates on, is never captured
bool near_tangency_orbit(const MapParams& pr, const Point& p, double tol = 1e-12);

}  // namespace horseshoe
