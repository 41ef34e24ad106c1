#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "core/asymptotics.hpp"
#include "core/distributions.hpp"
#include "core/empirical.hpp"

namespace hsd::mc {

// Weight laws with unit mean; second moment M determines the deviation
// envelope.  bern02 is a fair coin on {0, 2}.
enum class WeightLaw { Const1, Exp1, Pois1, Bern02 };

WeightLaw weight_law_from_tag(const std::string& tag);  // const1|exp1|pois1|bern02
const char* weight_law_tag(WeightLaw w);
double weight_second_moment(WeightLaw w);
double draw_weight(WeightLaw w, std::mt19937_64& g);

// Run configuration, parsed from "key = value" lines ('#' starts a comment).
// The sample-size schedule is geometric from n_min to n_max inclusive.
struct ExperimentConfig {
  std::string distribution = "square";
  double alpha = 0.25;
  WeightLaw weights = WeightLaw::Const1;
  long n_min = 100;
  long n_max = 100000;
  double n_ratio = 1.7782794100389228;  // 10^(1/4)
  int replications = 10;
  uint64_t seed = 1;
  std::vector<double> gamma_mults = {0.5, 1.5};  // multiples of envelope(M, alpha)
  double p = 1.5;                                // polynomial rate exponent
  std::string mode = "grid";                     // exact | grid
  int grid_size = 2048;

  void validate() const;
  std::vector<long> schedule() const;
};

ExperimentConfig parse_config(const std::string& text);
// Single override, same keys as the config text; throws on unknown keys.
void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value);

// One (replication, n) cell of a trajectory.  An empty empirical region makes
// rho_h/stat NaN; band sides that degenerate (empty inner region, whole-plane
// outer region) count as satisfied.
struct TrajectoryRecord {
  int rep;
  long n;
  double rho_h;        // Hausdorff distance to the model region
  double lambda_n;
  double stat;         // experiment statistic (see run_* below)
  double running_max;  // running max of stat within the replication
  std::vector<int> incl_lo;  // per gamma: model region at alpha+gamma*lambda_n
                             // contained in the empirical region? (1/0)
  std::vector<int> incl_hi;  // per gamma: empirical region contained in the
                             // model region at alpha-gamma*lambda_n? (1/0)
  bool exact_mode;
  double wall_ms;
};

struct RecordSet {
  std::string experiment;  // slln | mz | inclusion | lil
  ExperimentConfig config;
  std::vector<double> gammas;  // resolved gamma values (inclusion only)
  std::vector<TrajectoryRecord> records;  // replication-major, schedule order
};

// Shared protocol: per replication r the points use stream (seed, r, lane 1)
// and the weights stream (seed, r, lane 2), so samples are nested prefixes
// along the schedule and switching the weight law never perturbs the points.
// Regions use the direction grid unless mode=exact and n <= 3000.
//
// Statistics: slln rho_H; mz n^{(p-1)/p} rho_H; inclusion and lil rho_H/lambda_n.
RecordSet run_slln(const ExperimentConfig& cfg);
RecordSet run_mz(const ExperimentConfig& cfg);
RecordSet run_inclusion(const ExperimentConfig& cfg);
RecordSet run_lil_metric(const ExperimentConfig& cfg);
RecordSet run_experiment(const std::string& kind, const ExperimentConfig& cfg);

struct MedianPoint {
  long n;
  double median;  // of stat over replications with data
  int count;
};
std::vector<MedianPoint> median_stat_by_n(const RecordSet& rs);

struct InclusionSummary {
  std::vector<double> gamma;
  std::vector<double> tail_failure_rate;  // fraction of failed records over the
                                          // upper half of the schedule
  std::vector<double> rep_failure_rate;   // fraction of replications with any failure
};
InclusionSummary summarize_inclusion(const RecordSet& rs);

struct LILSummary {
  std::vector<double> final_max;  // per replication, at the last schedule entry
  double median_final;
  asy::LILConstant constant;
  double median_ratio;  // median_final / constant.lower
};
LILSummary summarize_lil(const RecordSet& rs);

// Serialization.  CSV has one header line; JSON is an array of objects.
// Doubles are written with %.17g (NaN: empty CSV field / JSON null).
std::string records_to_csv(const RecordSet& rs);
std::string records_to_json(const RecordSet& rs);
RecordSet records_from_json(const std::string& text);  // records only

// base/{experiment}/{dist}/{alpha}; created on write
std::string output_dir(const std::string& base, const RecordSet& rs);
// writes records.csv or records.json under output_dir, returns the file path
std::string write_records(const RecordSet& rs, const std::string& base,
                          const std::string& format);

// Worker cap for the replication loop; 0 restores the hardware default.
void set_max_threads(int k);
int max_threads();
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace hsd::mc
