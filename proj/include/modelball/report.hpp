#ifndef MODELBALL_REPORT_HPP
#define MODELBALL_REPORT_HPP

#include "modelball/common.hpp"

#include <string>
#include <vector>

namespace modelball {

// Named deficit summary: pointwise sup, its radial location, volume average,
// and the count of grid points violating the underlying inequality beyond the
// stated tolerance.
struct DeficitReport {
  std::string id;
  double sup = 0.0;
  double sup_at = 0.0;
  double mean = 0.0;
  long violations = 0;
  double tol = 0.0;
};

struct CheckOutcome {
  std::string id;
  bool pass = true;
  bool caveat = false;  // recorded but not asserted (hypotheses unmet)
  double value = 0.0;
  double threshold = 0.0;
  std::string note;
};

struct RunRecord {
  std::string suite;
  std::string theorem;       // header naming the verified estimate
  std::string config_hash;   // FNV-1a of the canonical config text
  std::vector<CheckOutcome> outcomes;
  std::vector<DeficitReport> reports;
  std::vector<std::string> artifacts;
  std::vector<std::string> caveats;
  bool passed = true;
  double wall_ms = 0.0;      // console only; never serialized

  CheckOutcome& check(const std::string& id, bool pass, double value,
                      double threshold, const std::string& note = "");
  // A theorem check evaluated outside its hypotheses: the value is recorded
  // and the outcome flagged, but the suite verdict does not depend on it.
  CheckOutcome& advisory(const std::string& id, bool pass, double value,
                         double threshold, const std::string& note = "");
};

// Round to 12 significant digits so serialized artifacts are byte-stable.
double round12(double x);
std::string fmt12(double x);

std::string to_json(const RunRecord& record);
std::string to_json(const std::vector<RunRecord>& records);
std::string to_csv(const std::vector<RunRecord>& records);

}  // namespace modelball

#endif
