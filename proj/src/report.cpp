#include "modelball/report.hpp"

#include <cstdio>
#include <cstdlib>

#include <nlohmann/json.hpp>

namespace modelball {

using ordered_json = nlohmann::ordered_json;

CheckOutcome& RunRecord::check(const std::string& id, bool pass, double value,
                               double threshold, const std::string& note) {
  outcomes.push_back(CheckOutcome{id, pass, false, value, threshold, note});
  if (!pass) passed = false;
  return outcomes.back();
}

CheckOutcome& RunRecord::advisory(const std::string& id, bool pass,
                                  double value, double threshold,
                                  const std::string& note) {
  outcomes.push_back(CheckOutcome{id, pass, true, value, threshold, note});
  return outcomes.back();
}

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(fmt12(x).c_str(), nullptr);
}

namespace {

ordered_json report_json(const DeficitReport& r) {
  ordered_json j;
  j["id"] = r.id;
  j["sup"] = round12(r.sup);
  j["sup_at"] = round12(r.sup_at);
  j["mean"] = round12(r.mean);
  j["violations"] = r.violations;
  j["tol"] = round12(r.tol);
  return j;
}

ordered_json record_json(const RunRecord& rec) {
  ordered_json j;
  j["suite"] = rec.suite;
  j["theorem"] = rec.theorem;
  j["config_hash"] = rec.config_hash;
  j["passed"] = rec.passed;
  ordered_json checks = ordered_json::array();
  for (const auto& c : rec.outcomes) {
    ordered_json cj;
    cj["id"] = c.id;
    cj["pass"] = c.pass;
    if (c.caveat) cj["caveat"] = true;
    cj["value"] = round12(c.value);
    cj["threshold"] = round12(c.threshold);
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  ordered_json reports = ordered_json::array();
  for (const auto& r : rec.reports) reports.push_back(report_json(r));
  j["reports"] = reports;
  if (!rec.caveats.empty()) j["caveats"] = rec.caveats;
  if (!rec.artifacts.empty()) j["artifacts"] = rec.artifacts;
  return j;
}

}  // namespace

std::string to_json(const RunRecord& record) {
  return record_json(record).dump(2) + "\n";
}

std::string to_json(const std::vector<RunRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : records) arr.push_back(record_json(r));
  return arr.dump(2) + "\n";
}

std::string to_csv(const std::vector<RunRecord>& records) {
  std::string out =
      "suite,config_hash,kind,id,pass,value,threshold,note\n";
  for (const auto& rec : records) {
    for (const auto& c : rec.outcomes) {
      out += rec.suite + "," + rec.config_hash + "," +
             (c.caveat ? "advisory" : "check") + "," + c.id + "," +
             (c.pass ? "1" : "0") + "," + fmt12(round12(c.value)) + "," +
             fmt12(round12(c.threshold)) + "," + c.note + "\n";
    }
    for (const auto& r : rec.reports) {
      out += rec.suite + "," + rec.config_hash + ",report," + r.id + "," +
             (r.violations == 0 ? "1" : "0") + "," + fmt12(round12(r.sup)) +
             "," + fmt12(round12(r.tol)) + ",mean=" + fmt12(round12(r.mean)) +
             ";sup_at=" + fmt12(round12(r.sup_at)) +
             ";violations=" + std::to_string(r.violations) + "\n";
    }
  }
  return out;
}

}  // namespace modelball
