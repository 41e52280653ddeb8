#include "chaincalc/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "chaincalc/group.hpp"

namespace chaincalc {

namespace {

using nlohmann::json;

bool wants(const std::vector<std::string>& sections, const char* name) {
  if (sections.empty()) return true;
  return std::find(sections.begin(), sections.end(), name) != sections.end();
}

std::string verdict_kind(const DiscriminantVerdict& v) {
  switch (v.kind) {
    case DiscriminantVerdict::Kind::Finite:
      return "finite";
    case DiscriminantVerdict::Kind::LowerBound:
      return "lowerBound";
    default:
      return "trivial";
  }
}

json str_array(const std::vector<Int>& xs) {
  json a = json::array();
  for (const Int& x : xs) a.push_back(x.get_str());
  return a;
}

json bool_array(const std::vector<bool>& xs) {
  json a = json::array();
  for (bool b : xs) a.push_back(b);
  return a;
}

json elem_array(const GroupContext& ctx, const std::vector<GroupElement>& xs) {
  json a = json::array();
  for (const GroupElement& g : xs) a.push_back(elem_str(ctx, g));
  return a;
}

// aligned table: right-pad each cell to its column width
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> widths;
  for (const auto& r : rows)
    for (size_t c = 0; c < r.size(); c++) {
      if (widths.size() <= c) widths.push_back(0);
      widths[c] = std::max(widths[c], r[c].size());
    }
  std::ostringstream os;
  for (const auto& r : rows) {
    std::string line;
    for (size_t c = 0; c < r.size(); c++) {
      line += r[c];
      if (c + 1 < r.size())
        line += std::string(widths[c] - r[c].size() + 2, ' ');
    }
    os << line << "\n";
  }
  return os.str();
}

std::string yn(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string machine_report(const GroupContext& ctx, const ChainReport& rep,
                           const std::vector<std::string>& sections) {
  json j;
  j["schema"] = "1";
  j["name"] = rep.name;
  j["family"] = rep.family;
  j["depth"] = std::to_string(rep.depth);
  j["probeDepth"] = std::to_string(rep.probeDepth);
  j["anyCapped"] = rep.anyCapped;
  if (wants(sections, "levels")) {
    json arr = json::array();
    for (const LevelReport& l : rep.levels) {
      json o;
      o["level"] = std::to_string(l.level);
      o["index"] = l.index.get_str();
      o["coreIndex"] = l.coreIndex.get_str();
      o["discriminantSize"] = l.discriminantSize.get_str();
      o["stableSize"] = l.stableSize.get_str();
      o["plateau"] = l.plateau;
      o["normalForm"] = l.normalForm;
      o["bondingSurjective"] = l.bondingSurjective;
      o["bondingInjective"] = l.bondingInjective;
      o["capped"] = l.capped;
      arr.push_back(o);
    }
    j["levels"] = arr;
  }
  if (wants(sections, "verdict")) {
    json v;
    v["kind"] = verdict_kind(rep.verdict);
    v["size"] = rep.verdict.size.get_str();
    v["base"] = std::to_string(rep.verdict.base);
    v["rendered"] = verdict_str(rep.verdict);
    j["verdict"] = v;
  }
  if (wants(sections, "stable")) {
    json s;
    s["sizes"] = str_array(rep.verdict.stableSizes);
    s["plateaus"] = bool_array(rep.verdict.plateaus);
    j["stable"] = s;
  }
  if (wants(sections, "flags")) {
    json f;
    f["regular"] = rep.flags.regular;
    f["weaklyNormalAtDepth"] = std::to_string(rep.flags.weaklyNormalAtDepth);
    f["virtuallyRegularBase"] =
        rep.flags.virtuallyRegularBase
            ? std::to_string(*rep.flags.virtuallyRegularBase)
            : std::string("none");
    f["normalFormAll"] = rep.flags.normalFormAll;
    f["normalFormAt"] = bool_array(rep.flags.normalFormAt);
    j["flags"] = f;
  }
  if (wants(sections, "kernel")) {
    json k;
    k["samples"] = std::to_string(rep.kernel.samples);
    k["candidates"] = elem_array(ctx, rep.kernel.candidates);
    k["candidateSurvives"] = bool_array(rep.kernel.candidateSurvives);
    k["survivors"] = elem_array(ctx, rep.kernel.survivors);
    j["kernel"] = k;
  }
  if (wants(sections, "factorization")) {
    json f;
    f["checked"] = rep.factorizationChecked;
    f["at"] = bool_array(rep.factorizationAt);
    j["factorization"] = f;
  }
  return j.dump(2) + "\n";
}

std::string human_report(const GroupContext& ctx, const ChainReport& rep,
                         const std::vector<std::string>& sections) {
  std::ostringstream os;
  os << "chain " << rep.name << " (" << rep.family << "), depth " << rep.depth
     << ", probe " << rep.probeDepth;
  if (rep.anyCapped) os << ", capped";
  os << "\n";
  if (wants(sections, "levels")) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"level", "index", "coreIndex", "|D|", "|S|", "plateau",
                    "nf", "surj", "inj", "capped"});
    for (const LevelReport& l : rep.levels)
      rows.push_back({std::to_string(l.level), l.index.get_str(),
                      l.coreIndex.get_str(), l.discriminantSize.get_str(),
                      l.stableSize.get_str(), yn(l.plateau), yn(l.normalForm),
                      yn(l.bondingSurjective), yn(l.bondingInjective),
                      yn(l.capped)});
    os << render_table(rows);
  }
  if (wants(sections, "verdict"))
    os << "verdict: " << verdict_str(rep.verdict) << "\n";
  if (wants(sections, "stable")) {
    os << "stable sizes:";
    for (const Int& s : rep.verdict.stableSizes) os << " " << s.get_str();
    os << "\n";
  }
  if (wants(sections, "flags")) {
    os << "flags: regular=" << yn(rep.flags.regular)
       << " weaklyNormalAt=" << rep.flags.weaklyNormalAtDepth
       << " virtRegularBase="
       << (rep.flags.virtuallyRegularBase
               ? std::to_string(*rep.flags.virtuallyRegularBase)
               : std::string("none"))
       << " normalFormAll=" << yn(rep.flags.normalFormAll) << "\n";
  }
  if (wants(sections, "factorization") && rep.factorizationChecked) {
    os << "kernel factorization per level:";
    for (bool b : rep.factorizationAt) os << " " << (b ? "T" : "F");
    os << "\n";
  }
  if (wants(sections, "kernel") &&
      (rep.kernel.samples > 0 || !rep.kernel.candidates.empty())) {
    os << "kernel probe: samples=" << rep.kernel.samples
       << " survivors=" << rep.kernel.survivors.size() << "\n";
    for (size_t i = 0; i < rep.kernel.candidates.size(); i++)
      os << "  candidate " << elem_str(ctx, rep.kernel.candidates[i]) << ": "
         << (rep.kernel.candidateSurvives[i] ? "survives" : "leaves the chain")
         << "\n";
    for (const GroupElement& g : rep.kernel.survivors)
      os << "  survivor " << elem_str(ctx, g) << "\n";
  }
  return os.str();
}

std::string machine_regression(const RegressionResult& r) {
  json j;
  j["schema"] = "1";
  j["entry"] = r.entry;
  j["depth"] = std::to_string(r.depth);
  j["probeDepth"] = std::to_string(r.probeDepth);
  j["allPassed"] = r.allPassed;
  json arr = json::array();
  for (const ClaimOutcome& c : r.claims) {
    json o;
    o["claim"] = c.claim;
    o["expected"] = c.expected;
    o["basis"] = c.basis;
    o["observed"] = c.observed;
    o["status"] = c.status;
    arr.push_back(o);
  }
  j["claims"] = arr;
  return j.dump(2) + "\n";
}

}  // namespace chaincalc
