#ifndef MODELBALL_SUITE_HPP
#define MODELBALL_SUITE_HPP

#include "modelball/report.hpp"

#include <string>
#include <vector>

namespace modelball {

// Run configuration parsed from line-oriented key=value text.  `canonical`
// keeps the sorted, normalized assignments that were actually supplied; the
// config hash is the FNV-1a digest of that text.
struct SuiteConfig {
  std::string suite = "cheng-yau";

  // Geometry.
  std::string profile = "euclidean";
  double kappa = 1.0;
  double alpha = 0.5;
  double cone_scale = 0.25;
  std::string profile_file;
  int n = 2;
  double R = 1.0;
  int segments = 512;
  std::string spacing = "uniform";

  // Elliptic side.
  int K_max = 64;
  int ntheta = 512;
  double eval_rmax_frac = 0.70;
  std::string boundary = "poisson";
  double pole_angle = 0.0;
  double a0 = 1.0, a1 = 0.3, b2 = 0.0;
  std::string boundary_file;
  double h_fd_frac = 1.0 / 256.0;

  // Parabolic side.
  int steps = 1024;
  double t0 = 0.05;
  double t_end = 0.3;
  std::string bc = "dirichlet";
  std::string u0 = "kernel";
  double t1_frac = 0.25, t2_frac = 1.0;
  double x1_frac = 0.1, x2_frac = 0.3;

  // Green probes and RNG.
  double green_r = 0.5;
  unsigned long long seed = 1u;

  std::string canonical;
  std::string hash() const;
};

SuiteConfig parse_config(const std::string& text);
SuiteConfig load_config(const std::string& path);

// Applies a single key=value override (used by sweeps).
void apply_override(SuiteConfig& config, const std::string& key, double value);

std::vector<std::string> suite_names();

struct Artifact {
  std::string name;  // file name (relative), listed in RunRecord::artifacts
  std::string csv;
};

struct SuiteRun {
  RunRecord record;
  std::vector<Artifact> artifacts;
};

SuiteRun run_suite(const SuiteConfig& config);

struct SweepResult {
  std::string param;
  std::string metric_id;
  std::vector<double> values;
  std::vector<double> metric;
  std::vector<double> distortion;  // polar distortion per value
  bool monotone_increasing = false;
  double loglog_exponent = 0.0;  // least-squares slope, 0 when undefined
  std::vector<RunRecord> records;
};

SweepResult sweep_family(const SuiteConfig& base, const std::string& param,
                         const std::vector<double>& values);

std::string to_json(const SweepResult& sweep);
std::string to_csv(const SweepResult& sweep);

// Serializes to `format` ("json" or "csv"); when out_dir is nonempty, writes
// the document and any artifacts there.  Returns the document text.
std::string emit_report(const SuiteRun& run, const std::string& format,
                        const std::string& out_dir);
std::string emit_report(const SweepResult& sweep, const std::string& format,
                        const std::string& out_dir);

}  // namespace modelball

#endif
