#pragma once

#include <vector>

#include "horseshoe/map.hpp"
#include "horseshoe/periodic.hpp"

namespace horseshoe {

// Certified expansion/contraction rates and the exponent gap they bound.
// sigma1 is the worst-case one-step growth factor for cone vectors outside
// the well, sigma_tilde <= sigma1 the per-step rate used in gap statements,
// lambda_tilde < 1 the matching contraction rate.  The open interval
// (gap_lo, gap_hi) = (log lambda_tilde, log sigma_tilde) contains 0 and no
// Lyapunov exponent of the invariant set should fall inside it.
struct Thresholds {
  double sigma1 = 0.0;
  double sigma_tilde = 0.0;
  double lambda_tilde = 0.0;
  double gap_lo = 0.0;
  double gap_hi = 0.0;
};

Thresholds thresholds(const MapParams& pr);

enum class LyapStatus { ok, escaped, tangency_orbit };

const char* lyap_status_name(LyapStatus s);

enum class ExponentMethod { periodic_exact, cone_vector };

const char* exponent_method_name(ExponentMethod m);

// Finite-time Lyapunov exponent estimate at a point, in nats per iterate.
// For method periodic_exact the values are log|mu|/k and the horizons equal
// the period.  For method cone_vector, chi_u comes from pushing the unstable
// axis forward n_forward steps and chi_s from pulling the stable axis
// backward n_backward steps; both horizons are the achieved ones, which may
// fall short of the request when the orbit leaves the strips or runs out of
// preimages.  witnesses collects the times at which the forward orbit leaves
// the bottom strip after visiting the well around the fold vertex, and c_z
// is the smallest ratio |v_n| / (sigma_tilde^n |v_0|) over those times (1 if
// there are none): the empirical constant in the subsequence growth bound.
struct ExponentEstimate {
  LyapStatus status = LyapStatus::ok;
  Point p{};
  long n_forward = 0;
  long n_backward = 0;
  double chi_u = 0.0;
  double chi_s = 0.0;
  ExponentMethod method = ExponentMethod::cone_vector;
  std::vector<long> witnesses;
  double c_z = 1.0;
};

// Exact exponents of a periodic orbit: (log|mu_u|/k, log|mu_s|/k).
ExponentEstimate exponents_periodic(const PeriodicOrbit& orb);

// True iff the estimate lies in the closed complement of the open gap:
// chi_s <= gap_lo and chi_u >= gap_hi.  Boundary equality passes.
bool gap_check(const ExponentEstimate& est, const Thresholds& th);

// Unit vector along the unstable direction at p, approximated by pushing a
// vertical vector forward along a depth-step backward chain ending at p
// (fold preimages preferred when the chain branches).  The direction
// stabilizes geometrically in the depth; 50 steps give ~1e-10.
Vec2 unstable_axis(const MapParams& pr, const Point& p, int depth = 50);

// Unit vector along the stable direction at p, approximated by pulling a
// horizontal vector backward along the forward orbit of p.
Vec2 stable_axis(const MapParams& pr, const Point& p, int depth = 50);

// Finite-time exponents at p over horizon n with periodic renormalization of
// the transported vectors every renorm steps.  Escapes before 5 forward
// steps report status escaped; a backward chain may legitimately be shorter
// than requested (n_backward records what was achieved, 0 if no preimage).
ExponentEstimate exponents_forward(const MapParams& pr, const Point& p,
                                   long n, int renorm = 10);

// Worst ratio |D_Phi^n v_u| / sigma_tilde^n over 1 <= n <= horizon: the
// empirical non-uniformity constant at p.  Positive whenever the orbit
// survives at least one step; it shrinks toward 0 as p approaches the
// tangency orbit.
struct ProfileEntry {
  LyapStatus status = LyapStatus::ok;
  Point p{};
  long n = 0;
  double c_x = 0.0;
};

std::vector<ProfileEntry> nonuniformity_profile(const MapParams& pr,
                                                const std::vector<Point>& pts,
                                                long n_max);

}  // namespace horseshoe
