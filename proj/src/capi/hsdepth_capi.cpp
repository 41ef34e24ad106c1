#include "hsdepth/hsdepth.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core/asymptotics.hpp"
#include "core/distributions.hpp"
#include "core/empirical.hpp"
#include "core/experiments.hpp"
#include "core/geometry.hpp"
#include "core/io.hpp"
#include "core/rng.hpp"

struct hsd_dist {
  hsd::dist::ModelDistribution m;
};
struct hsd_region {
  hsd::geom::ConvexRegion r;
};
struct hsd_sample {
  hsd::emp::WeightedSample s;
};
struct hsd_records {
  hsd::mc::RecordSet rs;
};

namespace {

thread_local std::string g_last_error;

hsd_status fail(hsd_status code, const char* what) {
  g_last_error = what ? what : "";
  return code;
}

hsd_status null_arg() { return fail(HSD_ERR_INVALID, "null pointer argument"); }

template <typename F>
hsd_status guarded(F&& f) {
  try {
    f();
    return HSD_OK;
  } catch (const hsd::geom::EmptyRegionError& e) {
    return fail(HSD_ERR_EMPTY, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(HSD_ERR_INVALID, e.what());
  } catch (const std::domain_error& e) {
    return fail(HSD_ERR_INVALID, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HSD_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(HSD_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(HSD_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num_or_null(double v) {
  return std::isnan(v) ? std::string("null") : fmt17(v);
}

std::string summary_json(const hsd::mc::RecordSet& rs) {
  std::string out;
  if (rs.experiment == "slln" || rs.experiment == "mz") {
    const auto med = hsd::mc::median_stat_by_n(rs);
    out = "{\"experiment\": \"" + rs.experiment + "\", \"medians\": [";
    for (size_t i = 0; i < med.size(); ++i) {
      if (i) out += ", ";
      out += "{\"n\": " + std::to_string(med[i].n) + ", \"stat\": " +
             num_or_null(med[i].median) + ", \"count\": " + std::to_string(med[i].count) + "}";
    }
    out += "]}\n";
  } else if (rs.experiment == "inclusion") {
    const auto sum = hsd::mc::summarize_inclusion(rs);
    const auto arr = [](const std::vector<double>& v) {
      std::string s = "[";
      for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num_or_null(v[i]);
      return s + "]";
    };
    out = "{\"experiment\": \"inclusion\", \"gamma\": " + arr(sum.gamma) +
          ", \"tail_failure_rate\": " + arr(sum.tail_failure_rate) +
          ", \"rep_failure_rate\": " + arr(sum.rep_failure_rate) + "}\n";
  } else if (rs.experiment == "lil") {
    const auto sum = hsd::mc::summarize_lil(rs);
    out = "{\"experiment\": \"lil\", \"final_max\": [";
    for (size_t i = 0; i < sum.final_max.size(); ++i)
      out += (i ? ", " : "") + num_or_null(sum.final_max[i]);
    out += "], \"median_final\": " + num_or_null(sum.median_final) + ", \"constant\": ";
    if (sum.constant.exact)
      out += fmt17(sum.constant.lower);
    else
      out += "[" + fmt17(sum.constant.lower) + ", " + fmt17(sum.constant.upper) + "]";
    out += ", \"median_ratio\": " + num_or_null(sum.median_ratio) + "}\n";
  } else {
    throw std::invalid_argument("summary: unknown experiment kind: " + rs.experiment);
  }
  return out;
}

}  // namespace

extern "C" {

const char* hsd_last_error(void) { return g_last_error.c_str(); }

void hsd_string_free(char* s) { std::free(s); }

void hsd_set_max_threads(int k) { hsd::mc::set_max_threads(k); }

hsd_status hsd_dist_create(const char* tag, hsd_dist** out) {
  if (!tag || !out) return null_arg();
  return guarded([&] {
    *out = new hsd_dist{hsd::dist::ModelDistribution::from_tag(tag)};
  });
}

void hsd_dist_free(hsd_dist* d) { delete d; }

hsd_status hsd_dist_depth(const hsd_dist* d, double x, double y, double* out) {
  if (!d || !out) return null_arg();
  return guarded([&] { *out = d->m.depth({x, y}); });
}

hsd_status hsd_dist_halfspace_mass(const hsd_dist* d, double ux, double uy,
                                   double t, double* out) {
  if (!d || !out) return null_arg();
  return guarded([&] {
    // {<z,u> <= t} == {<z,u/|u|> <= t/|u|}: the threshold scales with the
    // normal, or non-unit input would silently shift the halfplane
    const hsd::geom::UnitDirection u(ux, uy);
    *out = d->m.halfspace_mass({u, t / std::hypot(ux, uy)});
  });
}

hsd_status hsd_dist_region(const hsd_dist* d, double alpha, int resolution,
                           hsd_region** out) {
  if (!d || !out) return null_arg();
  return guarded([&] { *out = new hsd_region{d->m.region(alpha, resolution)}; });
}

hsd_status hsd_dist_radon(const hsd_dist* d, double x, double y, double ux,
                          double uy, double* out) {
  if (!d || !out) return null_arg();
  return guarded([&] {
    *out = d->m.radon({x, y}, hsd::geom::UnitDirection(ux, uy));
  });
}

hsd_status hsd_dist_min_boundary_radon(const hsd_dist* d, double alpha,
                                       double* out) {
  if (!d || !out) return null_arg();
  return guarded([&] { *out = d->m.min_boundary_radon(alpha); });
}

hsd_status hsd_varpi(const hsd_dist* d, double x, double y, double r, int sign,
                     double* out) {
  if (!d || !out) return null_arg();
  return guarded([&] { *out = hsd::asy::varpi(d->m, {x, y}, r, sign); });
}

hsd_status hsd_hausdorff_rate(const hsd_dist* d, double alpha, double t,
                              int resolution, double* out) {
  if (!d || !out) return null_arg();
  return guarded([&] { *out = hsd::asy::hausdorff_rate(d->m, alpha, t, resolution); });
}

hsd_status hsd_lil_constant(const hsd_dist* d, double alpha, double M,
                            double* lo, double* hi, double* min_radon) {
  if (!d || !lo || !hi || !min_radon) return null_arg();
  return guarded([&] {
    const auto c = hsd::asy::lil_constant(d->m, alpha, M);
    *lo = c.lower;
    *hi = c.upper;
    *min_radon = c.min_radon;
  });
}

void hsd_region_free(hsd_region* r) { delete r; }

hsd_status hsd_region_size(const hsd_region* r, int* out) {
  if (!r || !out) return null_arg();
  *out = static_cast<int>(r->r.vertices().size());
  return HSD_OK;
}

hsd_status hsd_region_vertex(const hsd_region* r, int i, double* x, double* y) {
  if (!r || !x || !y) return null_arg();
  if (i < 0 || i >= static_cast<int>(r->r.vertices().size()))
    return fail(HSD_ERR_INVALID, "vertex index out of range");
  *x = r->r.vertices()[i].x;
  *y = r->r.vertices()[i].y;
  return HSD_OK;
}

hsd_status hsd_region_contains(const hsd_region* r, double x, double y,
                               double tol, int* out) {
  if (!r || !out) return null_arg();
  return guarded([&] { *out = hsd::geom::contains(r->r, {x, y}, tol) ? 1 : 0; });
}

hsd_status hsd_region_hausdorff(const hsd_region* a, const hsd_region* b,
                                double* out) {
  if (!a || !b || !out) return null_arg();
  return guarded([&] { *out = hsd::geom::hausdorff_distance(a->r, b->r); });
}

hsd_status hsd_region_to_json(const hsd_region* r, char** out) {
  if (!r || !out) return null_arg();
  return guarded([&] { *out = dup_string(hsd::io::region_to_json(r->r)); });
}

hsd_status hsd_region_from_json(const char* text, hsd_region** out) {
  if (!text || !out) return null_arg();
  return guarded([&] { *out = new hsd_region{hsd::io::region_from_json(text)}; });
}

hsd_status hsd_sample_create(const double* xs, const double* ys,
                             const double* ws, int n, hsd_sample** out) {
  if (!xs || !ys || !out) return null_arg();
  return guarded([&] {
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    std::vector<hsd::Vec2> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = {xs[i], ys[i]};
    if (ws) {
      std::vector<double> w(ws, ws + n);
      *out = new hsd_sample{hsd::emp::WeightedSample(std::move(pts), std::move(w))};
    } else {
      *out = new hsd_sample{hsd::emp::WeightedSample(std::move(pts))};
    }
  });
}

void hsd_sample_free(hsd_sample* s) { delete s; }

hsd_status hsd_sample_size(const hsd_sample* s, int* out) {
  if (!s || !out) return null_arg();
  *out = s->s.n();
  return HSD_OK;
}

hsd_status hsd_sample_draw(const hsd_dist* d, const char* weight_law, int n,
                           uint64_t seed, uint64_t rep, hsd_sample** out) {
  if (!d || !weight_law || !out) return null_arg();
  return guarded([&] {
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    const auto law = hsd::mc::weight_law_from_tag(weight_law);
    auto gp = hsd::rng::make_stream(seed, rep, 1);
    auto gw = hsd::rng::make_stream(seed, rep, 2);
    std::vector<hsd::Vec2> pts;
    std::vector<double> ws;
    pts.reserve(n);
    ws.reserve(n);
    for (int i = 0; i < n; ++i) {
      pts.push_back(d->m.draw(gp));
      ws.push_back(hsd::mc::draw_weight(law, gw));
    }
    *out = new hsd_sample{hsd::emp::WeightedSample(std::move(pts), std::move(ws))};
  });
}

hsd_status hsd_sample_from_csv(const char* text, hsd_sample** out) {
  if (!text || !out) return null_arg();
  return guarded([&] { *out = new hsd_sample{hsd::io::sample_from_csv(text)}; });
}

hsd_status hsd_sample_to_csv(const hsd_sample* s, char** out) {
  if (!s || !out) return null_arg();
  return guarded([&] { *out = dup_string(hsd::io::sample_to_csv(s->s)); });
}

hsd_status hsd_emp_depth(const hsd_sample* s, double x, double y, double* out) {
  if (!s || !out) return null_arg();
  return guarded([&] { *out = hsd::emp::emp_depth(s->s, {x, y}); });
}

hsd_status hsd_emp_region(const hsd_sample* s, double alpha, hsd_region** out) {
  if (!s || !out) return null_arg();
  return guarded([&] { *out = new hsd_region{hsd::emp::emp_region(s->s, alpha)}; });
}

hsd_status hsd_emp_region_grid(const hsd_sample* s, double alpha, int grid_size,
                               hsd_region** out) {
  if (!s || !out) return null_arg();
  return guarded([&] {
    *out = new hsd_region{hsd::emp::emp_region_grid(s->s, alpha, grid_size)};
  });
}

hsd_status hsd_sup_deviation(const hsd_sample* s, const hsd_dist* d,
                             int extra_dirs, double* value, double* ux,
                             double* uy, double* t) {
  if (!s || !d || !value || !ux || !uy || !t) return null_arg();
  return guarded([&] {
    const auto r = hsd::emp::sup_deviation(s->s, d->m, extra_dirs);
    *value = r.value;
    *ux = r.argmax.u.ux;
    *uy = r.argmax.u.uy;
    *t = r.argmax.t;
  });
}

hsd_status hsd_experiment_run(const char* kind, const char* config,
                              hsd_records** out) {
  if (!kind || !config || !out) return null_arg();
  return guarded([&] {
    const auto cfg = hsd::mc::parse_config(config);
    *out = new hsd_records{hsd::mc::run_experiment(kind, cfg)};
  });
}

void hsd_records_free(hsd_records* r) { delete r; }

hsd_status hsd_records_count(const hsd_records* r, int* out) {
  if (!r || !out) return null_arg();
  *out = static_cast<int>(r->rs.records.size());
  return HSD_OK;
}

hsd_status hsd_records_to_csv(const hsd_records* r, char** out) {
  if (!r || !out) return null_arg();
  return guarded([&] { *out = dup_string(hsd::mc::records_to_csv(r->rs)); });
}

hsd_status hsd_records_to_json(const hsd_records* r, char** out) {
  if (!r || !out) return null_arg();
  return guarded([&] { *out = dup_string(hsd::mc::records_to_json(r->rs)); });
}

hsd_status hsd_records_summary_json(const hsd_records* r, char** out) {
  if (!r || !out) return null_arg();
  return guarded([&] { *out = dup_string(summary_json(r->rs)); });
}

hsd_status hsd_records_write(const hsd_records* r, const char* base,
                             const char* format, char** path_out) {
  if (!r || !base || !format) return null_arg();
  return guarded([&] {
    const std::string path = hsd::mc::write_records(r->rs, base, format);
    if (path_out) *path_out = dup_string(path);
  });
}

}  // extern "C"
