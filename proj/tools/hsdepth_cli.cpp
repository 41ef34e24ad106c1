// Command-line frontend for the halfspace-depth library; everything goes
// through the public C interface.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hsdepth/hsdepth.h"

namespace {

// usage/validation problems exit 2, runtime failures exit 1
[[noreturn]] void die(hsd_status st) {
  std::cerr << "error: " << hsd_last_error() << "\n";
  std::exit(st == HSD_ERR_INVALID ? 2 : 1);
}

void check(hsd_status st) {
  if (st != HSD_OK) die(st);
}

[[noreturn]] void die_io(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(1);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die_io("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) die_io("cannot open " + out_path);
  out << text;
  if (!out) die_io("write failed: " + out_path);
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Dist {
  hsd_dist* h = nullptr;
  explicit Dist(const std::string& tag) { check(hsd_dist_create(tag.c_str(), &h)); }
  ~Dist() { hsd_dist_free(h); }
  Dist(const Dist&) = delete;
  Dist& operator=(const Dist&) = delete;
};

struct Sample {
  hsd_sample* h = nullptr;
  explicit Sample(hsd_sample* s) : h(s) {}
  ~Sample() { hsd_sample_free(h); }
  Sample(const Sample&) = delete;
  Sample& operator=(const Sample&) = delete;
};

struct Region {
  hsd_region* h = nullptr;
  explicit Region(hsd_region* r) : h(r) {}
  ~Region() { hsd_region_free(h); }
  Region(const Region&) = delete;
  Region& operator=(const Region&) = delete;
};

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { hsd_string_free(s); }
};

// a sample comes from a CSV file or is drawn synthetically from a model
struct SampleFlags {
  std::string file;
  std::string dist;
  int n = 0;
  uint64_t seed = 1;
  uint64_t rep = 0;
  std::string weights = "const1";

  void attach(CLI::App* cmd) {
    cmd->add_option("--sample", file, "sample CSV file (header x,y,w)");
    cmd->add_option("--n", n, "synthetic sample size");
    cmd->add_option("--seed", seed, "synthetic sample seed");
    cmd->add_option("--rep", rep, "synthetic sample replication id");
    cmd->add_option("--weights", weights,
                    "synthetic weight law: const1|exp1|pois1|bern02");
  }

  hsd_sample* acquire(const std::string& dist_tag) const {
    hsd_sample* s = nullptr;
    if (!file.empty()) {
      const std::string text = slurp(file);
      check(hsd_sample_from_csv(text.c_str(), &s));
      return s;
    }
    if (n <= 0) {
      std::cerr << "error: need --sample FILE or --n N (with a distribution)\n";
      std::exit(2);
    }
    if (dist_tag.empty()) {
      std::cerr << "error: synthetic samples need --dist\n";
      std::exit(2);
    }
    Dist d(dist_tag);
    check(hsd_sample_draw(d.h, weights.c_str(), n, seed, rep, &s));
    return s;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact bivariate halfspace-depth trimmed regions and their asymptotics"};
  app.require_subcommand(1);

  // ---- depth ----
  auto* c_depth = app.add_subcommand("depth", "depth of a point (model or empirical)");
  std::string depth_dist;
  double depth_x = 0, depth_y = 0;
  SampleFlags depth_sf;
  c_depth->add_option("--dist", depth_dist, "distribution tag");
  c_depth->add_option("--x", depth_x, "point x")->required();
  c_depth->add_option("--y", depth_y, "point y")->required();
  c_depth->add_option("--sample", depth_sf.file, "sample CSV for empirical depth");
  c_depth->callback([&] {
    double v = 0;
    if (!depth_sf.file.empty()) {
      Sample s(depth_sf.acquire(""));
      check(hsd_emp_depth(s.h, depth_x, depth_y, &v));
    } else if (!depth_dist.empty()) {
      Dist d(depth_dist);
      check(hsd_dist_depth(d.h, depth_x, depth_y, &v));
    } else {
      std::cerr << "error: depth needs --dist or --sample\n";
      std::exit(2);
    }
    std::cout << fmt12(v) << "\n";
  });

  // ---- region ----
  auto* c_region = app.add_subcommand("region", "model trimmed region as JSON");
  std::string region_dist, region_out;
  double region_alpha = 0;
  int region_res = 1024;
  c_region->add_option("--dist", region_dist)->required();
  c_region->add_option("--alpha", region_alpha, "depth level in (0, 1/2)")->required();
  c_region->add_option("--resolution", region_res, "boundary resolution");
  c_region->add_option("--out", region_out, "output file (default stdout)");
  c_region->callback([&] {
    Dist d(region_dist);
    hsd_region* r = nullptr;
    check(hsd_dist_region(d.h, region_alpha, region_res, &r));
    Region reg(r);
    OwnedString js;
    check(hsd_region_to_json(reg.h, &js.s));
    emit(js.s, region_out);
  });

  // ---- emp-region ----
  auto* c_emp = app.add_subcommand("emp-region", "empirical trimmed region as JSON");
  std::string emp_dist, emp_mode = "exact", emp_out;
  double emp_alpha = 0;
  int emp_grid = 2048;
  SampleFlags emp_sf;
  c_emp->add_option("--dist", emp_dist, "distribution for synthetic samples");
  emp_sf.attach(c_emp);
  c_emp->add_option("--alpha", emp_alpha, "depth level")->required();
  c_emp->add_option("--mode", emp_mode, "exact|grid")->check(CLI::IsMember({"exact", "grid"}));
  c_emp->add_option("--grid-size", emp_grid, "directions in grid mode");
  c_emp->add_option("--out", emp_out, "output file (default stdout)");
  c_emp->callback([&] {
    Sample s(emp_sf.acquire(emp_dist));
    hsd_region* r = nullptr;
    if (emp_mode == "exact")
      check(hsd_emp_region(s.h, emp_alpha, &r));
    else
      check(hsd_emp_region_grid(s.h, emp_alpha, emp_grid, &r));
    Region reg(r);
    OwnedString js;
    check(hsd_region_to_json(reg.h, &js.s));
    emit(js.s, emp_out);
  });

  // ---- hausdorff ----
  auto* c_hd = app.add_subcommand("hausdorff", "Hausdorff distance of two region JSON files");
  std::string hd_a, hd_b;
  c_hd->add_option("--a", hd_a, "region JSON file")->required();
  c_hd->add_option("--b", hd_b, "region JSON file")->required();
  c_hd->callback([&] {
    hsd_region *ra = nullptr, *rb = nullptr;
    check(hsd_region_from_json(slurp(hd_a).c_str(), &ra));
    Region a(ra);
    check(hsd_region_from_json(slurp(hd_b).c_str(), &rb));
    Region b(rb);
    double v = 0;
    check(hsd_region_hausdorff(a.h, b.h, &v));
    std::cout << fmt12(v) << "\n";
  });

  // ---- deviation ----
  auto* c_dev = app.add_subcommand("deviation",
                                   "sup |empirical - model mass| over halfplanes");
  std::string dev_dist;
  int dev_extra = 256;
  SampleFlags dev_sf;
  c_dev->add_option("--dist", dev_dist, "model distribution")->required();
  dev_sf.attach(c_dev);
  c_dev->add_option("--extra-dirs", dev_extra, "extra uniform scan directions");
  c_dev->callback([&] {
    Dist d(dev_dist);
    Sample s(dev_sf.acquire(dev_dist));
    double value = 0, ux = 0, uy = 0, t = 0;
    check(hsd_sup_deviation(s.h, d.h, dev_extra, &value, &ux, &uy, &t));
    std::cout << "{\"value\": " << fmt12(value) << ", \"direction\": [" << fmt12(ux)
              << ", " << fmt12(uy) << "], \"offset\": " << fmt12(t) << "}\n";
  });

  // ---- constants ----
  auto* c_const = app.add_subcommand("constants", "limsup constant and its pieces");
  std::string const_dist;
  double const_alpha = 0, const_m = 1.0;
  c_const->add_option("--dist", const_dist)->required();
  c_const->add_option("--alpha", const_alpha)->required();
  c_const->add_option("--M", const_m, "weight second moment (default 1)");
  c_const->callback([&] {
    Dist d(const_dist);
    double lo = 0, hi = 0, minr = 0;
    check(hsd_lil_constant(d.h, const_alpha, const_m, &lo, &hi, &minr));
    std::cout << "{\"distribution\": \"" << const_dist << "\", \"alpha\": "
              << fmt12(const_alpha) << ", \"M\": " << fmt12(const_m) << ", \"constant\": ";
    if (lo == hi)
      std::cout << fmt12(lo);
    else
      std::cout << "[" << fmt12(lo) << ", " << fmt12(hi) << "]";
    std::cout << ", \"min_radon\": " << fmt12(minr) << "}\n";
  });

  // ---- rate ----
  auto* c_rate = app.add_subcommand("rate", "finite-difference Hausdorff rate of the region map");
  std::string rate_dist;
  double rate_alpha = 0, rate_t = 0;
  int rate_res = 2048;
  c_rate->add_option("--dist", rate_dist)->required();
  c_rate->add_option("--alpha", rate_alpha)->required();
  c_rate->add_option("--t", rate_t, "level perturbation (nonzero)")->required();
  c_rate->add_option("--resolution", rate_res, "region resolution");
  c_rate->callback([&] {
    Dist d(rate_dist);
    double v = 0;
    check(hsd_hausdorff_rate(d.h, rate_alpha, rate_t, rate_res, &v));
    std::cout << fmt12(v) << "\n";
  });

  // ---- experiment ----
  auto* c_exp = app.add_subcommand("experiment", "run a Monte Carlo experiment and persist records");
  std::string exp_kind, exp_config, exp_out = "out", exp_format = "csv";
  int exp_threads = 0;
  c_exp->add_option("kind", exp_kind, "slln|mz|inclusion|lil")->required();
  c_exp->add_option("--config", exp_config, "key = value config file");
  c_exp->add_option("--out", exp_out, "output base directory");
  c_exp->add_option("--format", exp_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  c_exp->add_option("--threads", exp_threads, "worker cap (0 = hardware)");
  // flag overrides, applied after the config file (last setting wins)
  std::vector<std::pair<std::string, std::string>> ov(12);
  const char* keys[12] = {"distribution", "alpha",        "weights", "n_min",
                          "n_max",        "n_ratio",      "replications", "seed",
                          "gamma_mults",  "p",            "mode",    "grid_size"};
  const char* flags[12] = {"--dist",  "--alpha",   "--weights", "--n-min",
                           "--n-max", "--n-ratio", "--reps",    "--seed",
                           "--gamma-mults", "--p", "--mode",    "--grid-size"};
  for (int i = 0; i < 12; ++i) {
    ov[i].first = keys[i];
    c_exp->add_option(flags[i], ov[i].second, std::string("config override: ") + keys[i]);
  }
  c_exp->callback([&] {
    hsd_set_max_threads(exp_threads);
    std::string config = exp_config.empty() ? std::string() : slurp(exp_config);
    for (const auto& [key, val] : ov)
      if (!val.empty()) config += "\n" + key + " = " + val;
    hsd_records* rec = nullptr;
    check(hsd_experiment_run(exp_kind.c_str(), config.c_str(), &rec));
    OwnedString path, summary;
    const hsd_status wst = hsd_records_write(rec, exp_out.c_str(), exp_format.c_str(), &path.s);
    if (wst != HSD_OK) {
      hsd_records_free(rec);
      die(wst);
    }
    const hsd_status sst = hsd_records_summary_json(rec, &summary.s);
    hsd_records_free(rec);
    check(sst);
    std::cerr << "wrote " << path.s << "\n";
    std::cout << summary.s;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message
    return 2;
  }
  return 0;
}
