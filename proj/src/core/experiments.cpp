#include "core/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "core/rng.hpp"

namespace hsd::mc {

namespace {

constexpr int kModelRes = 1024;    // model-region polygon resolution
constexpr double kInclTol = 1e-9;  // vertex-membership slack (geometric)
// the same slack pushed through the depth map; |grad depth| <= sqrt(2) for
// every planar family here
constexpr double kDepthTol = 2e-9;

double qnan() { return std::numeric_limits<double>::quiet_NaN(); }

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& key) {
  size_t idx = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &idx);
  } catch (const std::exception&) {
    idx = 0;
  }
  if (v.empty() || idx != v.size())
    throw std::invalid_argument("config: bad number for " + key + ": '" + v + "'");
  return x;
}

long parse_long(const std::string& v, const std::string& key) {
  size_t idx = 0;
  long x = 0;
  try {
    x = std::stol(v, &idx);
  } catch (const std::exception&) {
    idx = 0;
  }
  if (v.empty() || idx != v.size())
    throw std::invalid_argument("config: bad integer for " + key + ": '" + v + "'");
  return x;
}

uint64_t parse_u64(const std::string& v, const std::string& key) {
  size_t idx = 0;
  uint64_t x = 0;
  try {
    x = std::stoull(v, &idx);
  } catch (const std::exception&) {
    idx = 0;
  }
  // stoull quietly wraps "-1"; a seed must be a plain unsigned literal
  if (v.empty() || idx != v.size() || v.find('-') != std::string::npos)
    throw std::invalid_argument("config: bad seed for " + key + ": '" + v + "'");
  return x;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return qnan();
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

WeightLaw weight_law_from_tag(const std::string& tag) {
  if (tag == "const1") return WeightLaw::Const1;
  if (tag == "exp1") return WeightLaw::Exp1;
  if (tag == "pois1") return WeightLaw::Pois1;
  if (tag == "bern02") return WeightLaw::Bern02;
  throw std::invalid_argument("unknown weight law: " + tag);
}

const char* weight_law_tag(WeightLaw w) {
  switch (w) {
    case WeightLaw::Const1: return "const1";
    case WeightLaw::Exp1: return "exp1";
    case WeightLaw::Pois1: return "pois1";
    case WeightLaw::Bern02: return "bern02";
  }
  return "?";
}

double weight_second_moment(WeightLaw w) { return w == WeightLaw::Const1 ? 1.0 : 2.0; }

double draw_weight(WeightLaw w, std::mt19937_64& g) {
  switch (w) {
    case WeightLaw::Const1: return 1.0;
    case WeightLaw::Exp1: return rng::exponential1(g);
    case WeightLaw::Pois1: return static_cast<double>(rng::poisson1(g));
    case WeightLaw::Bern02: return rng::uniform01(g) < 0.5 ? 0.0 : 2.0;
  }
  return 1.0;
}

void ExperimentConfig::validate() const {
  dist::ModelDistribution::from_tag(distribution);  // throws on an unknown tag
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::invalid_argument("config: alpha outside (0, 1/2)");
  if (n_min < 3) throw std::invalid_argument("config: n_min < 3");
  if (n_max < n_min) throw std::invalid_argument("config: n_max < n_min");
  if (!(n_ratio > 1.0001))
    throw std::invalid_argument("config: n_ratio must exceed 1.0001");
  if (replications < 1) throw std::invalid_argument("config: replications < 1");
  if (!(p >= 1.0 && p < 2.0)) throw std::invalid_argument("config: p outside [1,2)");
  if (mode != "exact" && mode != "grid")
    throw std::invalid_argument("config: mode must be exact or grid");
  if (grid_size < 4) throw std::invalid_argument("config: grid_size < 4");
  for (double g : gamma_mults)
    if (!(g > 0.0))
      throw std::invalid_argument("config: gamma multipliers must be positive");
}

std::vector<long> ExperimentConfig::schedule() const {
  std::vector<long> out;
  for (int k = 0;; ++k) {
    const long nk =
        std::llround(static_cast<double>(n_min) * std::pow(n_ratio, k));
    if (nk >= n_max) break;
    if (out.empty() || nk > out.back()) out.push_back(nk);
  }
  out.push_back(n_max);
  return out;
}

void apply_config_entry(ExperimentConfig& cfg, const std::string& rawk,
                        const std::string& rawv) {
  const std::string key = trim(rawk), value = trim(rawv);
  if (key == "distribution") {
    cfg.distribution = value;
  } else if (key == "alpha") {
    cfg.alpha = parse_double(value, key);
  } else if (key == "weights") {
    cfg.weights = weight_law_from_tag(value);
  } else if (key == "n_min") {
    cfg.n_min = parse_long(value, key);
  } else if (key == "n_max") {
    cfg.n_max = parse_long(value, key);
  } else if (key == "n_ratio") {
    cfg.n_ratio = parse_double(value, key);
  } else if (key == "replications") {
    cfg.replications = static_cast<int>(parse_long(value, key));
  } else if (key == "seed") {
    cfg.seed = parse_u64(value, key);
  } else if (key == "p") {
    cfg.p = parse_double(value, key);
  } else if (key == "mode") {
    cfg.mode = value;
  } else if (key == "grid_size") {
    cfg.grid_size = static_cast<int>(parse_long(value, key));
  } else if (key == "gamma_mults") {
    std::vector<double> gs;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
      gs.push_back(parse_double(trim(item), key));
    if (gs.empty()) throw std::invalid_argument("config: empty gamma_mults");
    cfg.gamma_mults = std::move(gs);
  } else {
    throw std::invalid_argument("config: unknown key: '" + key + "'");
  }
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value, got: '" + line + "'");
    apply_config_entry(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

namespace {

std::atomic<int> g_max_threads{0};

}  // namespace

void set_max_threads(int k) { g_max_threads.store(k > 0 ? k : 0); }

int max_threads() {
  const int k = g_max_threads.load();
  if (k > 0) return k;
  const unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(h);
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  const int k = std::min(max_threads(), count);
  if (k <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (int t = 0; t < k; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          {
            std::lock_guard<std::mutex> lk(err_mu);
            if (!err) err = std::current_exception();
          }
          next.store(count);  // stop handing out work
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

namespace {

struct GammaPlan {
  double gamma;
  std::vector<geom::ConvexRegion> lower;  // per schedule index; empty if trivial
  std::vector<char> lower_trivial;        // alpha + gamma*lambda_n >= 1/2
  std::vector<double> beta_hi;            // <= 0 means the upper side is the plane
};

RecordSet run_impl(const std::string& kind, const ExperimentConfig& cfg) {
  if (kind != "slln" && kind != "mz" && kind != "inclusion" && kind != "lil")
    throw std::invalid_argument("unknown experiment kind: " + kind);
  cfg.validate();
  const dist::ModelDistribution d = dist::ModelDistribution::from_tag(cfg.distribution);
  if (!d.planar()) throw std::invalid_argument("experiments need a planar distribution");

  const std::vector<long> ns = cfg.schedule();
  const int S = static_cast<int>(ns.size());
  const int R = cfg.replications;
  std::vector<double> lam(S);
  for (int i = 0; i < S; ++i) lam[i] = asy::lambda_n(ns[i]);

  const geom::ConvexRegion model = d.region(cfg.alpha, kModelRes);
  const double M = weight_second_moment(cfg.weights);
  const bool inclusion = kind == "inclusion";
  const bool mz = kind == "mz";
  const bool slln = kind == "slln";

  std::vector<GammaPlan> plans;
  std::vector<double> gammas;
  if (inclusion) {
    const double env = asy::envelope(M, cfg.alpha);
    for (double m : cfg.gamma_mults) {
      GammaPlan pl;
      pl.gamma = m * env;
      pl.lower.resize(S);
      pl.lower_trivial.assign(S, 0);
      pl.beta_hi.assign(S, 0.0);
      for (int i = 0; i < S; ++i) {
        const double blo = cfg.alpha + pl.gamma * lam[i];
        if (blo >= 0.5)
          pl.lower_trivial[i] = 1;
        else
          pl.lower[i] = d.region(blo, kModelRes);
        pl.beta_hi[i] = cfg.alpha - pl.gamma * lam[i];
      }
      gammas.push_back(pl.gamma);
      plans.push_back(std::move(pl));
    }
  }

  RecordSet rs;
  rs.experiment = kind;
  rs.config = cfg;
  rs.gammas = gammas;
  rs.records.resize(static_cast<size_t>(R) * S);

  parallel_for(R, [&](int rep) {
    auto gpts = rng::make_stream(cfg.seed, static_cast<uint64_t>(rep), 1);
    auto gw = rng::make_stream(cfg.seed, static_cast<uint64_t>(rep), 2);
    std::vector<Vec2> pts;
    std::vector<double> ws;
    pts.reserve(ns.back());
    ws.reserve(ns.back());
    double runmax = qnan();
    for (int si = 0; si < S; ++si) {
      const long n = ns[si];
      while (static_cast<long>(pts.size()) < n) {
        pts.push_back(d.draw(gpts));
        ws.push_back(draw_weight(cfg.weights, gw));
      }
      const auto t0 = std::chrono::steady_clock::now();
      emp::WeightedSample s(pts, ws);  // copies; cheap next to the sweep itself
      const bool exact = cfg.mode == "exact" && n <= 3000;
      const geom::ConvexRegion reg = exact
          ? emp::emp_region(s, cfg.alpha)
          : emp::emp_region_grid(s, cfg.alpha, cfg.grid_size);
      TrajectoryRecord& rec = rs.records[static_cast<size_t>(rep) * S + si];
      rec.rep = rep;
      rec.n = n;
      rec.lambda_n = lam[si];
      rec.exact_mode = exact;
      rec.rho_h = reg.empty() ? qnan() : geom::hausdorff_distance(reg, model);
      double stat = qnan();
      if (!std::isnan(rec.rho_h)) {
        if (mz)
          stat = std::pow(static_cast<double>(n), (cfg.p - 1.0) / cfg.p) * rec.rho_h;
        else if (slln)
          stat = rec.rho_h;
        else
          stat = rec.rho_h / lam[si];
      }
      rec.stat = stat;
      if (!std::isnan(stat)) runmax = std::isnan(runmax) ? stat : std::max(runmax, stat);
      rec.running_max = runmax;
      if (inclusion) {
        const int G = static_cast<int>(plans.size());
        rec.incl_lo.resize(G);
        rec.incl_hi.resize(G);
        for (int g = 0; g < G; ++g) {
          const GammaPlan& pl = plans[g];
          int lo;
          if (pl.lower_trivial[si]) {
            lo = 1;  // empty model region is contained in anything
          } else if (reg.empty()) {
            lo = 0;
          } else {
            lo = 1;
            for (const Vec2& v : pl.lower[si].vertices())
              if (!geom::contains_log(reg, v, kInclTol)) {
                lo = 0;
                break;
              }
          }
          int hi = 1;  // beta <= 0: the upper region is the whole plane
          if (pl.beta_hi[si] > 0.0 && !reg.empty()) {
            for (const Vec2& v : reg.vertices())
              if (d.depth(v) < pl.beta_hi[si] - kDepthTol) {
                hi = 0;
                break;
              }
          }
          rec.incl_lo[g] = lo;
          rec.incl_hi[g] = hi;
        }
      }
      rec.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    }
  });
  return rs;
}

}  // namespace

RecordSet run_slln(const ExperimentConfig& cfg) { return run_impl("slln", cfg); }
RecordSet run_mz(const ExperimentConfig& cfg) { return run_impl("mz", cfg); }
RecordSet run_inclusion(const ExperimentConfig& cfg) { return run_impl("inclusion", cfg); }
RecordSet run_lil_metric(const ExperimentConfig& cfg) { return run_impl("lil", cfg); }
RecordSet run_experiment(const std::string& kind, const ExperimentConfig& cfg) {
  return run_impl(kind, cfg);
}

std::vector<MedianPoint> median_stat_by_n(const RecordSet& rs) {
  std::vector<long> order;
  std::map<long, std::vector<double>> by;
  for (const auto& r : rs.records) {
    auto it = by.find(r.n);
    if (it == by.end()) {
      order.push_back(r.n);
      it = by.emplace(r.n, std::vector<double>{}).first;
    }
    if (!std::isnan(r.stat)) it->second.push_back(r.stat);
  }
  std::vector<MedianPoint> out;
  out.reserve(order.size());
  for (long n : order) {
    auto& v = by[n];
    out.push_back({n, median_of(v), static_cast<int>(v.size())});
  }
  return out;
}

InclusionSummary summarize_inclusion(const RecordSet& rs) {
  if (rs.experiment != "inclusion")
    throw std::invalid_argument("summarize_inclusion: not an inclusion record set");
  const int G = static_cast<int>(rs.gammas.size());
  const std::vector<long> ns = rs.config.schedule();
  const int S = static_cast<int>(ns.size());
  const int R = rs.config.replications;
  if (rs.records.size() != static_cast<size_t>(R) * S)
    throw std::invalid_argument("summarize_inclusion: record count mismatch");
  InclusionSummary sum;
  sum.gamma = rs.gammas;
  sum.tail_failure_rate.assign(G, 0.0);
  sum.rep_failure_rate.assign(G, 0.0);
  const int tail_start = S / 2;
  for (int g = 0; g < G; ++g) {
    long tail_fail = 0, tail_total = 0, reps_fail = 0;
    for (int rep = 0; rep < R; ++rep) {
      bool any = false;
      for (int si = 0; si < S; ++si) {
        const auto& r = rs.records[static_cast<size_t>(rep) * S + si];
        const bool fail = r.incl_lo[g] == 0 || r.incl_hi[g] == 0;
        any = any || fail;
        if (si >= tail_start) {
          ++tail_total;
          if (fail) ++tail_fail;
        }
      }
      if (any) ++reps_fail;
    }
    sum.tail_failure_rate[g] = static_cast<double>(tail_fail) / tail_total;
    sum.rep_failure_rate[g] = static_cast<double>(reps_fail) / R;
  }
  return sum;
}

LILSummary summarize_lil(const RecordSet& rs) {
  if (rs.experiment != "lil")
    throw std::invalid_argument("summarize_lil: not a lil record set");
  const std::vector<long> ns = rs.config.schedule();
  const int S = static_cast<int>(ns.size());
  const int R = rs.config.replications;
  if (rs.records.size() != static_cast<size_t>(R) * S)
    throw std::invalid_argument("summarize_lil: record count mismatch");
  LILSummary sum;
  sum.final_max.resize(R);
  std::vector<double> finals;
  for (int rep = 0; rep < R; ++rep) {
    const double v = rs.records[static_cast<size_t>(rep) * S + S - 1].running_max;
    sum.final_max[rep] = v;
    if (!std::isnan(v)) finals.push_back(v);
  }
  sum.median_final = median_of(std::move(finals));
  sum.constant = asy::lil_constant(dist::ModelDistribution::from_tag(rs.config.distribution),
                                   rs.config.alpha, weight_second_moment(rs.config.weights));
  sum.median_ratio = sum.median_final / sum.constant.lower;
  return sum;
}

std::string records_to_csv(const RecordSet& rs) {
  std::string out = "rep,n,rho_h,lambda_n,stat,running_max";
  const int G = static_cast<int>(rs.gammas.size());
  for (int g = 1; g <= G; ++g)
    out += ",incl_lo_" + std::to_string(g) + ",incl_hi_" + std::to_string(g);
  out += ",mode,wall_ms\n";
  for (const auto& r : rs.records) {
    out += std::to_string(r.rep) + "," + std::to_string(r.n);
    for (double v : {r.rho_h, r.lambda_n, r.stat, r.running_max}) {
      out += ",";
      if (!std::isnan(v)) out += fmt17(v);
    }
    for (int g = 0; g < G; ++g) {
      out += ",";
      if (g < static_cast<int>(r.incl_lo.size())) out += std::to_string(r.incl_lo[g]);
      out += ",";
      if (g < static_cast<int>(r.incl_hi.size())) out += std::to_string(r.incl_hi[g]);
    }
    char wb[40];
    std::snprintf(wb, sizeof wb, "%.3f", r.wall_ms);
    out += std::string(",") + (r.exact_mode ? "exact" : "grid") + "," + wb + "\n";
  }
  return out;
}

std::string records_to_json(const RecordSet& rs) {
  const auto num = [](double v) {
    return std::isnan(v) ? std::string("null") : fmt17(v);
  };
  std::string out = "[";
  bool first = true;
  for (const auto& r : rs.records) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "  {\"rep\":" + std::to_string(r.rep) + ",\"n\":" + std::to_string(r.n) +
           ",\"rho_h\":" + num(r.rho_h) + ",\"lambda_n\":" + num(r.lambda_n) +
           ",\"stat\":" + num(r.stat) + ",\"running_max\":" + num(r.running_max);
    if (!r.incl_lo.empty()) {
      out += ",\"incl_lo\":[";
      for (size_t g = 0; g < r.incl_lo.size(); ++g)
        out += (g ? "," : "") + std::to_string(r.incl_lo[g]);
      out += "],\"incl_hi\":[";
      for (size_t g = 0; g < r.incl_hi.size(); ++g)
        out += (g ? "," : "") + std::to_string(r.incl_hi[g]);
      out += "]";
    }
    char wb[40];
    std::snprintf(wb, sizeof wb, "%.3f", r.wall_ms);
    out += std::string(",\"mode\":\"") + (r.exact_mode ? "exact" : "grid") +
           "\",\"wall_ms\":" + wb + "}";
  }
  out += "\n]\n";
  return out;
}

RecordSet records_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_array())
    throw std::invalid_argument("records json: expected a top-level array");
  RecordSet rs;
  size_t gmax = 0;
  for (const auto& o : j) {
    TrajectoryRecord r;
    r.rep = o.at("rep").get<int>();
    r.n = o.at("n").get<long>();
    const auto getd = [&o](const char* k) {
      const auto& v = o.at(k);
      return v.is_null() ? qnan() : v.get<double>();
    };
    r.rho_h = getd("rho_h");
    r.lambda_n = getd("lambda_n");
    r.stat = getd("stat");
    r.running_max = getd("running_max");
    if (o.contains("incl_lo")) {
      r.incl_lo = o.at("incl_lo").get<std::vector<int>>();
      r.incl_hi = o.at("incl_hi").get<std::vector<int>>();
      gmax = std::max(gmax, r.incl_lo.size());
    }
    r.exact_mode = o.at("mode").get<std::string>() == "exact";
    r.wall_ms = getd("wall_ms");
    rs.records.push_back(std::move(r));
  }
  rs.gammas.assign(gmax, qnan());  // values are not serialized with the records
  return rs;
}

std::string output_dir(const std::string& base, const RecordSet& rs) {
  char a[40];
  std::snprintf(a, sizeof a, "%g", rs.config.alpha);
  return base + "/" + rs.experiment + "/" + rs.config.distribution + "/" + a;
}

std::string write_records(const RecordSet& rs, const std::string& base,
                          const std::string& format) {
  if (format != "csv" && format != "json")
    throw std::invalid_argument("write_records: format must be csv or json");
  const std::string dir = output_dir(base, rs);
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/records." + format;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_records: cannot open " + path);
  out << (format == "csv" ? records_to_csv(rs) : records_to_json(rs));
  out.close();
  if (!out) throw std::runtime_error("write_records: write failed: " + path);
  return path;
}

}  // namespace hsd::mc
