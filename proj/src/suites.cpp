#include "horseshoe/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "horseshoe/cone.hpp"
#include "horseshoe/lambda_set.hpp"
#include "horseshoe/orbit.hpp"
#include "horseshoe/rng.hpp"

namespace horseshoe {

namespace {

constexpr double k_residual_gate = 1e-10;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// per-suite rng streams stay distinct and reproducible under one seed
Rng suite_rng(const RunConfig& cfg, std::uint64_t salt) {
  return Rng(cfg.seed ^ (salt * 0x9e3779b97f4a7c15ULL));
}

// backward-survival half of the invariant-set membership filter; forward
// depth beyond the pool lookahead is vacuous in double precision
bool survives_backward_30(const MapParams& pr, const Point& p) {
  long nodes = 100000;
  return survives_backward(pr, p, 30, &nodes);
}

struct RunState {
  std::optional<Census> census;
};

const Census& ensure_census(const RunConfig& cfg, RunState& st) {
  if (!st.census) st.census = run_census(cfg.params, cfg.max_period);
  return *st.census;
}

// random start on the numerical fold-image leaf family with positive height
Point sample_fold_start(const MapParams& pr, Rng& rng) {
  const double h = pr.fold_half_width();
  for (;;) {
    const double x = pr.q + h * (2.0 * rng.u01() - 1.0);
    const double d = x - pr.q;
    const double y = pr.c * d * d - pr.lambda * rng.u01();
    const Point p{x, y};
    if (y <= 0.0 || y > 1.0) continue;
    if (!in_fold_image(pr, p)) continue;
    if (near_tangency_orbit(pr, p)) continue;
    return p;
  }
}

Point sample_well_point(const MapParams& pr, Rng& rng) {
  for (;;) {
    const double r = std::sqrt(rng.u01()) / pr.c;
    const double th = 3.14159265358979324 * rng.u01();
    const Point p{pr.q + r * std::cos(th), r * std::sin(th)};
    if (p.y <= 0.0) continue;
    if (!in_W(pr, p)) continue;
    if (near_tangency_orbit(pr, p)) continue;
    return p;
  }
}

void track_min(double* cur, double v, bool* have) {
  if (!*have || v < *cur) {
    *cur = v;
    *have = true;
  }
}

SuiteResult run_validate(const RunConfig& cfg) {
  SuiteResult r;
  r.name = "validate";
  const std::vector<std::string> bad = validate(cfg.params);
  r.samples = 1;
  r.violations = static_cast<long>(bad.size());
  r.pass = bad.empty();
  r.worst_margin = bad.empty() ? 0.0 : -1.0;
  r.note = bad.empty() ? "parameters satisfy every constraint" : bad[0];
  return r;
}

SuiteResult run_returns(const RunConfig& cfg, const std::string& dir) {
  SuiteResult r;
  r.name = "verify-returns";
  Rng rng = suite_rng(cfg, 1);
  std::ofstream csv(dir + "/returns.csv");
  csv << "start_x,start_y,n,eta,xi_prev,bound_return_time,ratio_n,rhs_eta,"
         "rhs_leaf,pass_return_time,pass_eta,pass_leaf\n";
  double worst = 0.0;
  bool have = false;
  long done = 0;
  long attempts = 0;
  const long cap = 60 * cfg.samples_returns;
  int max_n = 0;
  while (done < cfg.samples_returns && attempts < cap) {
    ++attempts;
    const Point p = sample_fold_start(cfg.params, rng);
    const ReturnRecord rec = first_return(cfg.params, p, cfg.max_iter);
    if (rec.status != OrbitStatus::ok) continue;
    ++done;
    max_n = std::max(max_n, rec.n);
    if (!rec.pass_return_time || !rec.pass_eta || !rec.pass_leaf) {
      ++r.violations;
    }
    // slack of the return-time inequality, in iterates
    track_min(&worst, static_cast<double>(rec.n) - rec.bound_return_time,
              &have);
    csv << fmt(rec.start.x) << ',' << fmt(rec.start.y) << ',' << rec.n << ','
        << fmt(rec.eta) << ',' << fmt(rec.xi_prev) << ','
        << fmt(rec.bound_return_time) << ',' << fmt(rec.ratio_n) << ','
        << fmt(rec.rhs_eta) << ',' << fmt(rec.rhs_leaf) << ','
        << (rec.pass_return_time ? 1 : 0) << ',' << (rec.pass_eta ? 1 : 0)
        << ',' << (rec.pass_leaf ? 1 : 0) << '\n';
  }
  r.samples = done;
  r.worst_margin = have ? worst : 0.0;
  r.pass = r.violations == 0 && done >= cfg.samples_returns;
  std::ostringstream note;
  note << done << " first returns, max return time " << max_n;
  r.note = note.str();
  return r;
}

SuiteResult run_cones(const RunConfig& cfg, const std::string& dir) {
  SuiteResult r;
  r.name = "verify-cones";
  Rng rng = suite_rng(cfg, 2);
  std::ofstream csv(dir + "/inclusions.csv");
  csv << "start_x,start_y,end_x,end_y,n,margin,ratio_n,rhs_leaf,pass_margin,"
         "pass_leaf\n";
  double worst = 0.0;
  bool have = false;
  long done = 0;
  long attempts = 0;
  const long cap = 60 * cfg.samples_cones;
  while (done < cfg.samples_cones && attempts < cap) {
    ++attempts;
    const Point p = sample_fold_start(cfg.params, rng);
    const InclusionReport rep =
        check_return_inclusion(cfg.params, p, cfg.max_iter);
    if (rep.status != InclusionStatus::ok) continue;
    ++done;
    if (!rep.pass_margin || !rep.pass_leaf) ++r.violations;
    track_min(&worst, rep.margin, &have);
    csv << fmt(rep.start.x) << ',' << fmt(rep.start.y) << ','
        << fmt(rep.end.x) << ',' << fmt(rep.end.y) << ',' << rep.n << ','
        << fmt(rep.margin) << ',' << fmt(rep.ratio_n) << ','
        << fmt(rep.rhs_leaf) << ',' << (rep.pass_margin ? 1 : 0) << ','
        << (rep.pass_leaf ? 1 : 0) << '\n';
  }
  // sharpness scan of the slack inequality at the configured fold strength:
  // any failure here marks parameters below the certified threshold
  const std::vector<SlackViolation> scan =
      inclusion_slack_scan(cfg.params, cfg.params.c);
  r.violations += static_cast<long>(scan.size());
  r.samples = done;
  r.worst_margin = have ? worst : 0.0;
  r.pass = r.violations == 0 && done >= cfg.samples_cones;
  std::ostringstream note;
  note << done << " return inclusions, slack scan violations " << scan.size();
  r.note = note.str();
  return r;
}

SuiteResult run_escape(const RunConfig& cfg, const std::string& dir) {
  SuiteResult r;
  r.name = "verify-escape";
  Rng rng = suite_rng(cfg, 3);
  std::ofstream csv(dir + "/escape_growth.csv");
  csv << "x,y,escape_n,escape_bound,min_vertical_margin,min_ratio_margin\n";
  double worst = 0.0;
  bool have = false;
  long done = 0;
  long early_exits = 0;
  while (done < cfg.samples_escape) {
    const Point p = sample_well_point(cfg.params, rng);
    const EscapeRecord esc = escape_time(cfg.params, p);
    if (esc.status != OrbitStatus::ok) continue;
    // the growth record needs the whole ladder inside the bottom strip; a
    // point whose ladder hops into the escape gap is outside the hypothesis
    const ExcursionRecord probe =
        excursion_growth(cfg.params, p, {0.0, 1.0});
    if (probe.status == OrbitStatus::escaped) {
      ++early_exits;
      continue;
    }
    if (probe.status != OrbitStatus::ok) {
      ++r.violations;
      continue;
    }
    ++done;
    if (static_cast<double>(esc.n) < esc.bound) ++r.violations;
    track_min(&worst, static_cast<double>(esc.n) / esc.bound - 1.0, &have);
    const double half = v_cone_half_width(cfg.params, p.y);
    double min_v = 0.0;
    double min_g = 0.0;
    bool have_dir = false;
    for (int k = 0; k < cfg.directions; ++k) {
      const double u = half * (2.0 * rng.u01() - 1.0);
      const ExcursionRecord ex = excursion_growth(cfg.params, p, {u, 1.0});
      if (ex.status != OrbitStatus::ok) {
        ++r.violations;
        continue;
      }
      if (!ex.pass_vertical || !ex.pass_ratio) ++r.violations;
      const double mv = ex.vertical_growth / ex.bound_vertical - 1.0;
      const double mg = ex.growth / ex.bound_ratio - 1.0;
      if (!have_dir || mv < min_v) min_v = mv;
      if (!have_dir || mg < min_g) min_g = mg;
      have_dir = true;
      track_min(&worst, mv, &have);
      track_min(&worst, mg, &have);
    }
    csv << fmt(p.x) << ',' << fmt(p.y) << ',' << esc.n << ',' << fmt(esc.bound)
        << ',' << fmt(min_v) << ',' << fmt(min_g) << '\n';
  }

  // one-step cone growth away from the widened well; tested points must be
  // backward survivors (depth 30), the implementable half of the two-sided
  // survival that defines the invariant-set approximation, plus the pool's
  // own forward lookahead.  the growth bound additionally presupposes that
  // the cone at the point sits inside the standard cone: near the tangency
  // the leaf cones open wider than the standard cone and their edge
  // directions grow slower than the corner rate, so wide-cone points are
  // excluded from the population and counted in the note
  std::ofstream out_csv(dir + "/outside_growth.csv");
  out_csv << "x,y,age,worst_ratio,threshold,pass\n";
  long outside_done = 0;
  long outside_viol = 0;
  long outside_rejected = 0;
  long wide_excluded = 0;
  while (outside_done < cfg.samples_outside) {
    const int want = static_cast<int>(
        std::min<long>(cfg.samples_outside - outside_done + 64, 4096));
    const std::vector<PoolEntry> pool =
        orbit_pool(cfg.params, rng, want, 400, 5);
    if (pool.empty()) break;
    for (const PoolEntry& e : pool) {
      if (outside_done >= cfg.samples_outside) break;
      if (in_W_tilde(cfg.params, e.p, cfg.j_max)) continue;
      if (!survives_backward_30(cfg.params, e.p)) {
        ++outside_rejected;
        continue;
      }
      const ConeResult cr = cone_at(cfg.params, e.p);
      if (cr.status != ConeStatus::ok) continue;
      if (inclusion_margin(cr.cone, standard_cone()) < 0.0) {
        ++wide_excluded;
        continue;
      }
      ++outside_done;
      double worst_ratio = 0.0;
      double threshold = 0.0;
      bool ok_all = true;
      bool first = true;
      for (int k = 0; k < cfg.directions; ++k) {
        const double u =
            cr.cone.u_lo + (cr.cone.u_hi - cr.cone.u_lo) * rng.u01();
        const StepGrowth g =
            step_growth_outside(cfg.params, e.p, {u, 1.0}, cfg.j_max);
        threshold = g.threshold;
        if (g.status != OrbitStatus::ok || !g.pass) ok_all = false;
        if (first || g.ratio < worst_ratio) worst_ratio = g.ratio;
        first = false;
        if (g.status == OrbitStatus::ok) {
          track_min(&worst,
                    g.ratio / (g.threshold * (1.0 - 1e-12)) - 1.0, &have);
        }
      }
      if (!ok_all) ++outside_viol;
      out_csv << fmt(e.p.x) << ',' << fmt(e.p.y) << ',' << e.age << ','
              << fmt(worst_ratio) << ',' << fmt(threshold) << ','
              << (ok_all ? 1 : 0) << '\n';
    }
  }
  r.violations += outside_viol;
  r.samples = done + outside_done;
  r.worst_margin = have ? worst : 0.0;
  r.pass = r.violations == 0 && done >= cfg.samples_escape &&
           outside_done >= cfg.samples_outside;
  std::ostringstream note;
  note << done << " well points (" << early_exits << " early strip exits), "
       << outside_done << " outside points (" << outside_rejected
       << " failed the backward filter, " << wide_excluded
       << " wide-cone excluded), directions " << cfg.directions;
  r.note = note.str();
  return r;
}

SuiteResult run_periodic(const RunConfig& cfg, const std::string& dir,
                         RunState& st, const Thresholds& th) {
  SuiteResult r;
  r.name = "periodic";
  const Census& c = ensure_census(cfg, st);
  std::ofstream csv(dir + "/census.csv");
  csv << "word,period,x0,y0,mu_u,mu_s,residual,exp_u,exp_s\n";
  double worst_res = 0.0;
  for (const PeriodicOrbit& orb : c.orbits) {
    if (orb.residual > worst_res) worst_res = orb.residual;
    if (orb.residual >= k_residual_gate) ++r.violations;
    csv << word_name(orb.word) << ',' << orb.points.size() << ','
        << fmt(orb.points[0].x) << ',' << fmt(orb.points[0].y) << ','
        << fmt(orb.mu_u) << ',' << fmt(orb.mu_s) << ',' << fmt(orb.residual)
        << ',' << fmt(orb.exp_u) << ',' << fmt(orb.exp_s) << '\n';
  }
  r.violations += c.newton_budget + c.anomalies;
  const HyperbolicityReport rep =
      certify_uniform_hyperbolicity(c.orbits, th.sigma_tilde,
                                    th.lambda_tilde);
  for (const OrbitCertificate& row : rep.rows) {
    if (!row.pass) ++r.violations;
  }
  r.samples = static_cast<long>(c.orbits.size());
  // normalized per-iterate slack of the uniform rates over the whole census
  r.worst_margin = std::min(rep.best_sigma_star - th.sigma_tilde,
                            th.lambda_tilde - rep.best_lambda_star);
  r.pass = r.violations == 0 && rep.all_pass;
  std::ostringstream note;
  note << c.orbits.size() << " orbits to period " << cfg.max_period
       << ", worst residual " << std::scientific << std::setprecision(2)
       << worst_res;
  r.note = note.str();
  return r;
}

SuiteResult run_lyapunov(const RunConfig& cfg, const std::string& dir,
                         RunState& st, const Thresholds& th,
                         Certificate& cert) {
  SuiteResult r;
  r.name = "lyapunov";
  const Census& c = ensure_census(cfg, st);
  std::ofstream csv(dir + "/exponents.csv");
  csv << "word,period,chi_u,chi_s,outside_gap\n";
  double min_u = 0.0;
  double max_s = 0.0;
  bool first = true;
  long gap_fail = 0;
  for (const PeriodicOrbit& orb : c.orbits) {
    const ExponentEstimate est = exponents_periodic(orb);
    const bool ok = gap_check(est, th);
    if (!ok) ++gap_fail;
    if (first || est.chi_u < min_u) min_u = est.chi_u;
    if (first || est.chi_s > max_s) max_s = est.chi_s;
    first = false;
    csv << word_name(orb.word) << ',' << orb.points.size() << ','
        << fmt(est.chi_u) << ',' << fmt(est.chi_s) << ',' << (ok ? 1 : 0)
        << '\n';
  }
  r.violations += gap_fail;

  // finite-time estimates must reproduce the exact exponents on known cycles
  const std::vector<std::pair<Word, long>> probes = {
      {{RegionId::R1}, 40},
      {{RegionId::R1, RegionId::R3}, 20},
      {{RegionId::R1, RegionId::R4}, 10}};
  for (const auto& [w, horizon] : probes) {
    const PeriodicOrbit orb = find_orbit(cfg.params, w);
    if (orb.status != FindStatus::ok) {
      ++r.violations;
      continue;
    }
    const ExponentEstimate fw =
        exponents_forward(cfg.params, orb.points[0], horizon);
    if (fw.status != LyapStatus::ok ||
        std::abs(fw.chi_u - orb.exp_u) > 1e-6 ||
        std::abs(fw.chi_s - orb.exp_s) > 1e-6) {
      ++r.violations;
    }
  }

  r.samples = static_cast<long>(c.orbits.size());
  r.worst_margin = c.orbits.empty()
                       ? 0.0
                       : std::min(min_u - th.gap_hi, th.gap_lo - max_s);
  r.pass = r.violations == 0 && !c.orbits.empty();
  cert.has_census = true;
  cert.census_orbits = static_cast<long>(c.orbits.size());
  cert.census_words = c.words_examined;
  cert.min_exp_u = min_u;
  cert.max_exp_s = max_s;
  cert.gap_pass = gap_fail == 0 && !c.orbits.empty();
  std::ostringstream note;
  note << "exponent range [" << std::fixed << std::setprecision(5) << max_s
       << ", " << min_u << "] vs gap edges";
  r.note = note.str();
  return r;
}

std::vector<Point> profile_points(const MapParams& pr) {
  std::vector<Point> pts;
  for (int j = 1; j <= 6; ++j) {
    const double x = pr.q + std::pow(10.0, -j);
    const double d = x - pr.q;
    pts.push_back({x, pr.c * d * d});
  }
  return pts;
}

void write_profile_csv(const std::vector<ProfileEntry>& prof,
                       const std::string& path) {
  std::ofstream csv(path);
  csv << "j,dist_to_vertex,x,y,n,c_x,status\n";
  for (size_t i = 0; i < prof.size(); ++i) {
    const ProfileEntry& e = prof[i];
    csv << (i + 1) << ',' << fmt(std::pow(10.0, -static_cast<int>(i) - 1))
        << ',' << fmt(e.p.x) << ',' << fmt(e.p.y) << ',' << e.n << ','
        << fmt(e.c_x) << ',' << lyap_status_name(e.status) << '\n';
  }
}

SuiteResult run_nonuniformity(const RunConfig& cfg, const std::string& dir) {
  SuiteResult r;
  r.name = "nonuniformity";
  const std::vector<Point> pts = profile_points(cfg.params);
  const std::vector<ProfileEntry> prof =
      nonuniformity_profile(cfg.params, pts, cfg.profile_n);
  write_profile_csv(prof, dir + "/profile.csv");
  double min_cx = 0.0;
  bool first = true;
  for (size_t i = 0; i < prof.size(); ++i) {
    if (prof[i].status != LyapStatus::ok || prof[i].c_x <= 0.0) {
      ++r.violations;
      continue;
    }
    if (i > 0 && prof[i].c_x >= prof[i - 1].c_x) ++r.violations;
    if (first || prof[i].c_x < min_cx) min_cx = prof[i].c_x;
    first = false;
  }
  if (first || min_cx >= 0.01) ++r.violations;
  r.samples = static_cast<long>(prof.size());
  r.worst_margin = first ? -1.0 : 0.01 - min_cx;
  r.pass = r.violations == 0;
  std::ostringstream note;
  note << "profile tail c_x " << std::scientific << std::setprecision(2)
       << (first ? 0.0 : min_cx) << " after strict decay";
  r.note = note.str();
  return r;
}

}  // namespace

double suite_budget(const std::string& name) {
  if (name == "verify-cones") return 120.0;
  if (name == "verify-escape") return 120.0;
  if (name == "periodic") return 600.0;
  if (name == "lyapunov") return 600.0;
  return 60.0;
}

Certificate run_suites(const RunConfig& cfg) {
  Certificate cert;
  cert.tool_version = k_tool_version;
  cert.params_fingerprint = cfg.params.fingerprint();
  cert.seed = cfg.seed;
  cert.th = thresholds(cfg.params);
  std::filesystem::create_directories(cfg.out_dir);

  RunState st;
  cert.overall_pass = true;
  for (const std::string& name : suite_names()) {
    const bool selected =
        cfg.suites.empty() ||
        std::find(cfg.suites.begin(), cfg.suites.end(), name) !=
            cfg.suites.end();
    SuiteResult r;
    r.name = name;
    if (selected) {
      const auto t0 = std::chrono::steady_clock::now();
      if (name == "validate") r = run_validate(cfg);
      else if (name == "verify-cones") r = run_cones(cfg, cfg.out_dir);
      else if (name == "verify-returns") r = run_returns(cfg, cfg.out_dir);
      else if (name == "verify-escape") r = run_escape(cfg, cfg.out_dir);
      else if (name == "periodic")
        r = run_periodic(cfg, cfg.out_dir, st, cert.th);
      else if (name == "lyapunov")
        r = run_lyapunov(cfg, cfg.out_dir, st, cert.th, cert);
      else r = run_nonuniformity(cfg, cfg.out_dir);
      const auto t1 = std::chrono::steady_clock::now();
      r.ran = true;
      r.seconds = std::chrono::duration<double>(t1 - t0).count();
      r.over_budget = r.seconds > suite_budget(name);
      if (r.over_budget) cert.over_budget = true;
      if (!r.pass) cert.overall_pass = false;
    } else {
      r.note = "not run";
    }
    cert.suites.push_back(r);
  }

  std::ofstream out(cfg.out_dir + "/certificate.json");
  out << certificate_json(cert);
  return cert;
}

std::string certificate_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["tool_version"] = cert.tool_version;
  j["params"] = cert.params_fingerprint;
  j["seed"] = cert.seed;
  j["thresholds"] = {{"sigma1", cert.th.sigma1},
                     {"sigma_tilde", cert.th.sigma_tilde},
                     {"lambda_tilde", cert.th.lambda_tilde},
                     {"gap_lo", cert.th.gap_lo},
                     {"gap_hi", cert.th.gap_hi}};
  j["suites"] = nlohmann::ordered_json::array();
  for (const SuiteResult& r : cert.suites) {
    nlohmann::ordered_json s;
    s["name"] = r.name;
    if (r.ran) {
      s["verdict"] = r.pass ? "pass" : "fail";
      s["samples"] = r.samples;
      s["violations"] = r.violations;
      s["worst_margin"] = r.worst_margin;
      s["note"] = r.note;
    } else {
      s["verdict"] = "not run";
    }
    j["suites"].push_back(s);
  }
  if (cert.has_census) {
    j["census"] = {{"orbits", cert.census_orbits},
                   {"words_examined", cert.census_words},
                   {"min_unstable_exponent", cert.min_exp_u},
                   {"max_stable_exponent", cert.max_exp_s},
                   {"gap_verdict", cert.gap_pass ? "pass" : "fail"}};
  } else {
    j["census"] = nullptr;
  }
  j["overall"] = cert.overall_pass ? "pass" : "fail";
  j["budget_exceeded"] = cert.over_budget;
  return j.dump(2) + "\n";
}

void print_summary(const Certificate& cert, std::ostream& os) {
  os << cert.tool_version << "  params " << cert.params_fingerprint
     << "  seed " << cert.seed << '\n';
  os << "thresholds: sigma1 " << fmt(cert.th.sigma1) << ", sigma_tilde "
     << fmt(cert.th.sigma_tilde) << ", lambda_tilde "
     << fmt(cert.th.lambda_tilde) << '\n';
  os << std::left << std::setw(16) << "suite" << std::setw(9) << "verdict"
     << std::right << std::setw(9) << "samples" << std::setw(8) << "viol"
     << std::setw(14) << "worst margin" << std::setw(9) << "seconds"
     << "  note" << '\n';
  for (const SuiteResult& r : cert.suites) {
    std::ostringstream margin;
    std::ostringstream secs;
    if (r.ran) {
      margin << std::scientific << std::setprecision(2) << r.worst_margin;
      secs << std::fixed << std::setprecision(1) << r.seconds;
    }
    os << std::left << std::setw(16) << r.name << std::setw(9)
       << (r.ran ? (r.pass ? "pass" : "FAIL") : "not run") << std::right
       << std::setw(9) << (r.ran ? std::to_string(r.samples) : "") << std::setw(8)
       << (r.ran ? std::to_string(r.violations) : "") << std::setw(14)
       << margin.str() << std::setw(9) << secs.str() << "  " << r.note
       << '\n';
  }
  if (cert.has_census) {
    os << "census: " << cert.census_orbits << " orbits, exponents within ["
       << fmt(cert.max_exp_s) << ", " << fmt(cert.min_exp_u)
       << "] of the gap edges, gap verdict "
       << (cert.gap_pass ? "pass" : "fail") << '\n';
  }
  os << "overall: " << (cert.overall_pass ? "pass" : "FAIL");
  if (cert.over_budget) os << " (budget exceeded)";
  os << '\n';
}

bool emit_plot_data(const RunConfig& cfg, std::string* error) {
  const MapParams& pr = cfg.params;
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) {
    if (error) *error = "cannot create " + cfg.out_dir;
    return false;
  }
  auto open = [&](const std::string& name, std::ofstream& f) {
    f.open(cfg.out_dir + "/" + name);
    if (!f) {
      if (error) *error = "cannot write " + cfg.out_dir + "/" + name;
      return false;
    }
    return true;
  };

  // invariant-set approximation
  {
    std::ofstream f;
    if (!open("lambda_cloud.csv", f)) return false;
    f << "x,y\n";
    for (const Point& p : lambda_cloud(pr, 9)) {
      f << fmt(p.x) << ',' << fmt(p.y) << '\n';
    }
  }

  // region image boundaries as closed polylines
  {
    std::ofstream f;
    if (!open("region_images.csv", f)) return false;
    f << "region,x,y\n";
    auto rect = [&](const char* name, double x0, double x1, double y0,
                    double y1) {
      const int m = 50;
      auto edge = [&](double ax, double ay, double bx, double by) {
        for (int i = 0; i < m; ++i) {
          const double t = static_cast<double>(i) / m;
          f << name << ',' << fmt(ax + t * (bx - ax)) << ','
            << fmt(ay + t * (by - ay)) << '\n';
        }
      };
      edge(x0, y0, x1, y0);
      edge(x1, y0, x1, y1);
      edge(x1, y1, x0, y1);
      edge(x0, y1, x0, y0);
      f << name << ',' << fmt(x0) << ',' << fmt(y0) << '\n';
    };
    rect("R1", 0.0, pr.lambda, 0.0, 1.0);
    rect("R3", pr.d3, pr.d3 + pr.lambda, 0.0, 1.0);
    if (pr.r5_orientation == R5Orientation::preserving) {
      rect("R5", 1.0 - pr.lambda, 1.0,
           pr.sigma * pr.r5_bottom() - (pr.sigma - 1.0), 1.0);
    } else {
      rect("R5", 1.0 - pr.lambda, 1.0, 0.0,
           pr.sigma * (1.0 - pr.r5_bottom()));
    }
    // fold image: upper arc (x0 = 0), cap, lower arc (x0 = 1), cap
    const double h = pr.fold_half_width();
    const int m = 200;
    for (int i = 0; i <= m; ++i) {
      const double d = -h + 2.0 * h * static_cast<double>(i) / m;
      f << "R4," << fmt(pr.q + d) << ',' << fmt(pr.c * d * d) << '\n';
    }
    for (int i = m; i >= 0; --i) {
      const double d = -h + 2.0 * h * static_cast<double>(i) / m;
      f << "R4," << fmt(pr.q + d) << ','
        << fmt(pr.c * d * d - pr.lambda) << '\n';
    }
    f << "R4," << fmt(pr.q - h) << ',' << fmt(pr.c * h * h) << '\n';
  }

  // parabola overlay: image of the vertical line x = x0 through the fold
  {
    std::ofstream f;
    if (!open("fold_parabolas.csv", f)) return false;
    f << "x0,x,y\n";
    const double h = pr.fold_half_width();
    const int m = 200;
    for (int k = 0; k <= 10; ++k) {
      const double x0 = static_cast<double>(k) / 10.0;
      for (int i = 0; i <= m; ++i) {
        const double d = -h + 2.0 * h * static_cast<double>(i) / m;
        const double x = pr.q + d;
        f << fmt(x0) << ',' << fmt(x) << ','
          << fmt(pr.c * d * d - pr.lambda * x0) << '\n';
      }
    }
  }

  // cone axes over a coarse invariant-set cover
  {
    std::ofstream f;
    if (!open("cone_axes.csv", f)) return false;
    f << "x,y,ux,uy,leaf_class\n";
    for (const Point& p : lambda_cloud(pr, 7)) {
      const ConeResult cr = cone_at(pr, p);
      if (cr.status != ConeStatus::ok) continue;
      const double mid = 0.5 * (cr.cone.u_lo + cr.cone.u_hi);
      const double nn = std::sqrt(mid * mid + 1.0);
      const ClassResult cls = lrv_class(pr, p);
      f << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(mid / nn) << ','
        << fmt(1.0 / nn) << ','
        << (cls.status == ConeStatus::ok ? leaf_class_name(cls.cls) : "none")
        << '\n';
    }
  }

  // non-uniformity profile toward the tangency
  {
    const std::vector<ProfileEntry> prof =
        nonuniformity_profile(pr, profile_points(pr), cfg.profile_n);
    write_profile_csv(prof, cfg.out_dir + "/profile.csv");
  }
  return true;
}

}  // namespace horseshoe
