#pragma once

#include "horseshoe/map.hpp"

namespace horseshoe {

enum class OrbitStatus {
  ok,
  escaped,             // orbit left the strips
  budget_exceeded,     // no event within the iteration budget
  on_stable_manifold,  // y = 0 never escapes the bottom strip
  cone_violation,      // direction outside the admissible cone
  in_w_tilde,          // point violates the outside-the-well precondition
};

const char* orbit_status_name(OrbitStatus s);

// first return of a fold-image point to the fold image, with the return-time
// and contraction-ratio readings attached
struct ReturnRecord {
  OrbitStatus status = OrbitStatus::ok;
  Point start;
  Point end;
  int n = 0;
  double eta = 0.0;      // start height
  double xi_prev = 0.0;  // abscissa of the iterate before the return
  double rise_start = 0.0;
  double rise_end = 0.0;
  // max{ ln(1/eta)/ln(sigma), ln(1/xi_prev)/ln(1/lambda) }
  double bound_return_time = 0.0;
  double ratio_n = 0.0;  // (lambda/sigma)^n
  double rhs_eta = 0.0;  // eta^(1 - ln lambda / ln sigma)
  // two exponent readings for the xi-based bound; recorded, not adjudicated
  double rhs_xi = 0.0;      // (lambda xi_prev)^(1 - ln sigma / ln lambda)
  double rhs_xi_alt = 0.0;  // (lambda xi_prev)^(1 - ln lambda / ln sigma)
  double rhs_leaf = 0.0;    // 4 c sqrt(rise_end * rise_start) / 9
  bool pass_return_time = false;
  bool pass_eta = false;
  bool pass_leaf = false;
  bool obs_xi = false;
  bool obs_xi_alt = false;
};

// pre: in_fold_image(pr, p); iterates until the orbit re-enters the fold
// image, escapes, or exhausts max_iter
ReturnRecord first_return(const MapParams& pr, const Point& p,
                          int max_iter = 1000);

// open disc of radius 1/c around the tangency (q, 0)
bool in_W(const MapParams& pr, const Point& p);

// union of the backward R1-ladder copies of the disc: some j <= j_max has
// (x lambda^-j - q)^2 + (y sigma^-j)^2 < 1/c^2 with the ladder inside R1
bool in_W_tilde(const MapParams& pr, const Point& p, int j_max = 60);

struct EscapeRecord {
  OrbitStatus status = OrbitStatus::ok;
  int n = 0;          // smallest n with sigma^n y > 1/3
  double bound = 0.0; // -log(3 y) / log(sigma)
};

// pre: 0 < p.y (typically a point of W); pure ladder arithmetic
EscapeRecord escape_time(const MapParams& pr, const Point& p);

// vector growth along the escape of a well point: the n-step derivative is
// diag(lambda^n, sigma^n) while the orbit stays in the bottom strip
struct ExcursionRecord {
  OrbitStatus status = OrbitStatus::ok;
  Point start;
  Vec2 v;
  int n = 0;
  double growth = 0.0;           // |D^n v| / |v|
  double vertical_growth = 0.0;  // |D^n v| / |v2|
  double bound_vertical = 0.0;   // sigma^n
  double bound_ratio = 0.0;      // sigma^(n/2)
  bool pass_vertical = false;
  bool pass_ratio = false;
};

// pre: in_W(pr, p), p.y > 0, and v admissible: inside the wide well cone
// |v1/v2| <= 3/(2 sqrt(c y)) or inside cone_at(p)
ExcursionRecord excursion_growth(const MapParams& pr, const Point& p,
                                 const Vec2& v);

// one-step expansion of a cone direction away from the well copies
struct StepGrowth {
  OrbitStatus status = OrbitStatus::ok;
  double ratio = 0.0;      // |DPhi v| / |v|
  double threshold = 0.0;  // corner_growth_rate
  bool pass = false;
};

// pre: p outside in_W_tilde and v inside cone_at(p)
StepGrowth step_growth_outside(const MapParams& pr, const Point& p,
                               const Vec2& v, int j_max = 60);

}  // namespace horseshoe
