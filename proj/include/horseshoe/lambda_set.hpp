#pragma once

#include <vector>

#include "horseshoe/cone.hpp"
#include "horseshoe/map.hpp"
#include "horseshoe/rng.hpp"

namespace horseshoe {

// the forward orbit stays inside the strips for n steps
bool survives_forward(const MapParams& pr, const Point& p, int n);

// some backward branch of length n stays inside the strips; the search
// expands at most *node_budget preimage nodes and reports survival when the
// budget runs out, so a tight budget can only over-approximate
bool survives_backward(const MapParams& pr, const Point& p, int n,
                       long* node_budget);

// two-sided survival with a fresh backward budget
bool survives(const MapParams& pr, const Point& p, int n,
              long node_budget = 100000);

// probe points of an adaptive dyadic cover of the invariant set: starting
// from Q, a cell is kept when one of its five probes (corners and center)
// survives a depth that grows like level/2 both ways, kept cells are split in
// four, and the surviving probes of the finest level are returned, deduplicated
std::vector<Point> lambda_cloud(const MapParams& pr, int level);

struct PoolEntry {
  Point p;
  Cone cone;          // transported along the sampled orbit
  int age = 0;        // steps since the fold-image start
  int lookahead = 0;  // further forward survival known when recorded
};

// points harvested from forward orbits of sampled fold-image starts, each
// carrying the cone transported from the start (reseeded from cone_at after a
// capture); every entry survives at least `lookahead` more steps
std::vector<PoolEntry> orbit_pool(const MapParams& pr, Rng& rng, int target,
                                  int max_orbit_len = 400, int lookahead = 5);

}  // namespace horseshoe
