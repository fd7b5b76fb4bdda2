#pragma once

#include <array>
#include <string>
#include <vector>

#include "horseshoe/map.hpp"

namespace horseshoe {

// symbol order R1 < R3 < R4 < R5 for canonical forms; -1 for non-symbols
int symbol_index(RegionId r);
RegionId symbol_region(int i);

// adm[a][b] true iff the y-range of the image of region a overlaps the
// y-interval of region b with positive length
struct TransitionTable {
  std::array<std::array<bool, 4>, 4> adm{};
};

TransitionTable transition_table(const MapParams& pr);

using Word = std::vector<RegionId>;

std::string word_name(const Word& w);

// lexicographically minimal rotation under the symbol order
Word canonical_rotation(const Word& w);

// not a proper power of a shorter word
bool is_primitive(const Word& w);

// all primitive admissible cyclic words of period 1..max_period, one
// canonical representative per cyclic class, sorted by period then
// lexicographically; non-primitive words are rotations of shorter orbits and
// would duplicate their points
std::vector<Word> enumerate_itineraries(const MapParams& pr, int max_period);

// branch formulas applied regardless of where p lies, so Newton iterates stay
// smooth across region boundaries; identical to step on in-region points
Point step_sym(const MapParams& pr, RegionId r, const Point& p);
Jacobian jacobian_sym(const MapParams& pr, RegionId r, const Point& p);

// strict interior membership by `margin`, except that interval edges lying on
// the boundary of the square allow equality (the corner fixed points)
bool in_region_margin(const MapParams& pr, RegionId r, const Point& p,
                      double margin);

enum class FindStatus {
  ok,
  not_realized,   // admissible word, no in-region solution found
  newton_budget,  // a near-solution did not converge within the budget
  complex_pair,   // eigenvalues of the period map are not real
};

const char* find_status_name(FindStatus s);

struct PeriodicOrbit {
  FindStatus status = FindStatus::not_realized;
  Word word;
  std::vector<Point> points;  // points[0] lies in the region of word[0]
  double mu_u = 0.0;          // eigenvalues of the ordered Jacobian product
  double mu_s = 0.0;
  double residual = 0.0;  // max over the cycle of |step(p_i) - p_{i+1}|
  double exp_u = 0.0;     // log|mu_u| / k
  double exp_s = 0.0;
};

// affine words (no R4) in closed form; fold words by damped Newton seeded
// from interval-propagated per-position boxes
PeriodicOrbit find_orbit(const MapParams& pr, const Word& w);

// bare damped Newton multi-started from a 16x16 seed grid in the first
// region; slower but independent of the interval machinery
PeriodicOrbit find_orbit_newton(const MapParams& pr, const Word& w);

struct Census {
  std::vector<PeriodicOrbit> orbits;  // realized, in enumeration order
  long words_examined = 0;
  long not_realized = 0;
  long newton_budget = 0;
  long anomalies = 0;  // complex eigenvalue pairs
};

Census run_census(const MapParams& pr, int max_period);

struct OrbitCertificate {
  Word word;
  int period = 0;
  double margin_u = 0.0;  // |mu_u| - sigma_star^k
  double margin_s = 0.0;  // lambda_star^k - |mu_s|
  bool pass = false;
};

struct HyperbolicityReport {
  std::vector<OrbitCertificate> rows;
  double best_sigma_star = 0.0;   // min over orbits of |mu_u|^(1/k)
  double best_lambda_star = 0.0;  // max over orbits of |mu_s|^(1/k)
  bool all_pass = false;
};

// per-orbit margins against |mu_u| >= sigma_star^k and |mu_s| <= lambda_star^k,
// plus the sharpest uniform pair certified by the whole set
HyperbolicityReport certify_uniform_hyperbolicity(
    const std::vector<PeriodicOrbit>& orbits, double sigma_star,
    double lambda_star);

}  // namespace horseshoe
