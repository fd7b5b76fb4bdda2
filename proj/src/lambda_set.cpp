#include "horseshoe/lambda_set.hpp"

#include <algorithm>
#include <cmath>

namespace horseshoe {

bool survives_forward(const MapParams& pr, const Point& p, int n) {
  Point z = p;
  for (int i = 0; i < n; ++i) {
    StepResult r = step(pr, z);
    if (r.status != MapStatus::ok) return false;
    z = r.p;
  }
  return true;
}

bool survives_backward(const MapParams& pr, const Point& p, int n,
                       long* node_budget) {
  if (n <= 0) return true;
  if (*node_budget <= 0) return true;  // inconclusive counts as alive
  --*node_budget;
  for (const Preimage& pre : step_back_all(pr, p)) {
    if (survives_backward(pr, pre.p, n - 1, node_budget)) return true;
  }
  return false;
}

bool survives(const MapParams& pr, const Point& p, int n, long node_budget) {
  if (!survives_forward(pr, p, n)) return false;
  long budget = node_budget;
  return survives_backward(pr, p, n, &budget);
}

namespace {

struct Cell {
  double x0, y0, size;
};

}  // namespace

namespace {

// a probe within 2^-L of the invariant set survives roughly L/2 steps each
// way (both expansion rates are 4), so deeper tests would drop genuine cells
int probe_depth(int level) { return std::max(2, (level - 2) / 2); }

}  // namespace

std::vector<Point> lambda_cloud(const MapParams& pr, int level) {
  std::vector<Cell> cells{Cell{0.0, 0.0, 1.0}};
  for (int lv = 0; lv < level; ++lv) {
    const int depth = probe_depth(lv);
    std::vector<Cell> next;
    for (const Cell& c : cells) {
      const Point probes[5] = {
          {c.x0, c.y0},
          {c.x0 + c.size, c.y0},
          {c.x0, c.y0 + c.size},
          {c.x0 + c.size, c.y0 + c.size},
          {c.x0 + 0.5 * c.size, c.y0 + 0.5 * c.size},
      };
      bool keep = false;
      for (const Point& p : probes) {
        if (survives(pr, p, depth, 20000)) {
          keep = true;
          break;
        }
      }
      if (!keep) continue;
      const double h = 0.5 * c.size;
      next.push_back(Cell{c.x0, c.y0, h});
      next.push_back(Cell{c.x0 + h, c.y0, h});
      next.push_back(Cell{c.x0, c.y0 + h, h});
      next.push_back(Cell{c.x0 + h, c.y0 + h, h});
    }
    cells = std::move(next);
  }

  const int depth = probe_depth(level);
  std::vector<Point> out;
  for (const Cell& c : cells) {
    const Point probes[5] = {
        {c.x0, c.y0},
        {c.x0 + c.size, c.y0},
        {c.x0, c.y0 + c.size},
        {c.x0 + c.size, c.y0 + c.size},
        {c.x0 + 0.5 * c.size, c.y0 + 0.5 * c.size},
    };
    for (const Point& p : probes) {
      if (survives(pr, p, depth, 20000)) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Point& a, const Point& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            out.end());
  return out;
}

std::vector<PoolEntry> orbit_pool(const MapParams& pr, Rng& rng, int target,
                                  int max_orbit_len, int lookahead) {
  std::vector<PoolEntry> pool;
  const double h = pr.fold_half_width();
  long guard = 400L * target;
  while (static_cast<int>(pool.size()) < target && guard-- > 0) {
    const double x = pr.q + h * (2.0 * rng.u01() - 1.0);
    const double y = pr.c * (x - pr.q) * (x - pr.q) - pr.lambda * rng.u01();
    if (y < 0.0) continue;
    const Point start{x, y};
    ConeResult seed = cone_at(pr, start);
    if (seed.status != ConeStatus::ok) continue;

    std::vector<Point> orbit{start};
    std::vector<Cone> cones{seed.cone};
    Point z = start;
    Cone k = seed.cone;
    for (int t = 0; t < max_orbit_len; ++t) {
      JacobianResult j = jacobian_at(pr, z);
      StepResult nx = step(pr, z);
      if (j.status != MapStatus::ok || nx.status != MapStatus::ok) break;
      ConeResult moved = transport(k, j.j);
      z = nx.p;
      if (moved.status == ConeStatus::ok) {
        k = moved.cone;
      } else {
        ConeResult reseed = cone_at(pr, z);
        if (reseed.status != ConeStatus::ok) break;
        k = reseed.cone;
      }
      orbit.push_back(z);
      cones.push_back(k);
    }

    const int last = static_cast<int>(orbit.size()) - 1;
    for (int i = 0; i + lookahead <= last; ++i) {
      if (static_cast<int>(pool.size()) >= target) break;
      pool.push_back(PoolEntry{orbit[i], cones[i], i, last - i});
    }
  }
  return pool;
}

}  // namespace horseshoe
