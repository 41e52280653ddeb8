#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "chaincalc/catalog.hpp"
#include "chaincalc/chains.hpp"
#include "chaincalc/cosets.hpp"
#include "chaincalc/errors.hpp"
#include "chaincalc/group.hpp"
#include "chaincalc/odometer.hpp"
#include "chaincalc/report.hpp"
#include "chaincalc/spec_doc.hpp"

using namespace chaincalc;

namespace {

struct CommonFlags {
  int depth = -1;
  int probeDepth = -1;
  long cosetCap = -1;
  long permCap = -1;
  long long cellCap = -1;
  std::vector<std::string> sets;
  std::string out;
  std::string format = "human";
};

void add_common(CLI::App* cmd, CommonFlags& f, bool withFormat = true) {
  cmd->add_option("--depth", f.depth, "analysis depth (levels below the top)");
  cmd->add_option("--probe-depth", f.probeDepth,
                  "extra levels probed past the analysis depth");
  cmd->add_option("--coset-cap", f.cosetCap, "coset enumeration cap");
  cmd->add_option("--perm-cap", f.permCap, "permutation closure cap");
  cmd->add_option("--cell-cap", f.cellCap, "table cell cap");
  cmd->add_option("--set", f.sets, "parameter override, k=v, repeatable");
  cmd->add_option("--out", f.out, "write output to a file instead of stdout");
  if (withFormat)
    cmd->add_option("--format", f.format, "human or machine")
        ->check(CLI::IsMember({"human", "machine"}));
}

Caps flag_caps(const CommonFlags& f, Caps c) {
  if (f.cosetCap > 0) c.cosetCap = f.cosetCap;
  if (f.permCap > 0) c.permCap = f.permCap;
  if (f.cellCap > 0) c.cellCap = f.cellCap;
  return c;
}

std::map<std::string, Int> parse_sets(const std::vector<std::string>& sets) {
  std::map<std::string, Int> out;
  for (const std::string& s : sets) {
    size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
      validation_error("--set expects k=v, got '" + s + "'");
    try {
      out[s.substr(0, eq)] = Int(s.substr(eq + 1));
    } catch (const std::invalid_argument&) {
      validation_error("--set value for '" + s.substr(0, eq) +
                       "' is not an integer");
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) validation_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) validation_error("cannot write '" + out + "'");
  f << text;
}

ChainSpecDocument load_spec(const std::string& path,
                            const std::vector<std::string>& sets) {
  ChainSpecDocument doc = parse_spec(read_file(path));
  for (const auto& [k, v] : parse_sets(sets)) {
    bool found = false;
    for (auto& [n, old] : doc.chain.params)
      if (n == k) {
        old = v;
        found = true;
      }
    if (!found) doc.chain.params.emplace_back(k, v);
  }
  return doc;
}

int effective_depth(const ChainSpecDocument& doc, const CommonFlags& f) {
  return f.depth >= 0 ? f.depth : analysis_depth(doc);
}

int effective_probe(const ChainSpecDocument& doc, const CommonFlags& f,
                    int depth) {
  int probe = f.probeDepth >= 0
                  ? depth + f.probeDepth
                  : (doc.analysis.probeDepth >= 0 ? doc.analysis.probeDepth
                                                  : depth + 2);
  if (doc.chain.isExplicit)
    probe = std::min(probe, (int)doc.chain.levels.size());
  if (probe < depth)
    validation_error("probe depth " + std::to_string(probe) +
                     " is below the analysis depth " + std::to_string(depth));
  return probe;
}

AnalyzeOptions spec_options(const ChainSpecDocument& doc,
                            const GroupContext& ctx) {
  AnalyzeOptions opt;
  opt.strict = true;
  if (!doc.analysis.kernelGens.empty()) {
    std::vector<GroupElement> gens;
    for (const std::string& w : doc.analysis.kernelGens)
      gens.push_back(eval_word(ctx, w));
    opt.kernelGens = std::move(gens);
  }
  opt.kernelSamples = doc.analysis.kernelSamples;
  return opt;
}

// report chains under the spec file's stem rather than a fixed tag
GroupChain spec_chain(const ChainSpecDocument& doc, int levels,
                      const std::string& path) {
  GroupChain chain = build_chain(doc, levels);
  chain.provenance = std::filesystem::path(path).stem().string();
  return chain;
}

int cmd_analyze(const std::string& spec, const CommonFlags& f) {
  ChainSpecDocument doc = load_spec(spec, f.sets);
  int depth = effective_depth(doc, f);
  int probe = effective_probe(doc, f, depth);
  Caps caps = flag_caps(f, analysis_caps(doc, default_caps()));
  GroupChain chain = spec_chain(doc, probe, spec);
  AnalyzeOptions opt = spec_options(doc, chain.ctx);
  ChainReport rep = analyze_chain(chain, depth, probe, caps, opt);
  write_output(f.out, f.format == "machine"
                          ? machine_report(chain.ctx, rep, doc.analysis.reports)
                          : human_report(chain.ctx, rep, doc.analysis.reports));
  return 0;
}

int cmd_catalog(const std::string& name, const CommonFlags& f) {
  if (name.empty()) {
    std::ostringstream os;
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"name", "family", "depth", "params", "summary"});
    for (const CatalogEntry& e : catalog_entries()) {
      std::string params;
      for (const auto& [k, v] : e.defaults)
        params += (params.empty() ? "" : " ") + k + "=" + v.get_str();
      rows.push_back({e.name, e.family, std::to_string(e.defaultDepth),
                      params.empty() ? "-" : params, e.summary});
    }
    for (const auto& r : rows) {
      for (size_t c = 0; c < r.size(); c++)
        os << r[c] << (c + 1 < r.size() ? "  " : "");
      os << "\n";
    }
    write_output(f.out, os.str());
    return 0;
  }
  Caps caps = flag_caps(f, default_caps());
  RegressionResult r =
      run_regression(name, parse_sets(f.sets), f.depth, caps);
  write_output(f.out, f.format == "machine" ? machine_regression(r)
                                            : regression_str(r));
  return r.allPassed ? 0 : 1;
}

int cmd_tree(const std::string& spec, const CommonFlags& f, bool dot) {
  ChainSpecDocument doc = load_spec(spec, f.sets);
  int depth = effective_depth(doc, f);
  Caps caps = flag_caps(f, analysis_caps(doc, default_caps()));
  GroupChain chain = spec_chain(doc, depth, spec);
  std::vector<CosetTable> tables = chain_tables(chain, depth, caps);
  TreeDocument td = export_tree(tables, depth);
  write_output(f.out, dot ? td.dot() : td.text());
  return 0;
}

int cmd_kernel(const std::string& spec, const CommonFlags& f, int samples,
               const std::vector<std::string>& candidateWords) {
  ChainSpecDocument doc = load_spec(spec, f.sets);
  int depth = effective_depth(doc, f);
  int probe = effective_probe(doc, f, depth);
  GroupChain chain = spec_chain(doc, probe, spec);
  std::vector<std::string> words =
      candidateWords.empty() ? doc.analysis.kernelGens : candidateWords;
  std::vector<GroupElement> candidates;
  for (const std::string& w : words)
    candidates.push_back(eval_word(chain.ctx, w));
  int n = samples >= 0 ? samples : doc.analysis.kernelSamples;
  KernelProbe probeResult = kernel_probe(chain, candidates, n, 12345);
  if (f.format == "machine") {
    nlohmann::json j;
    j["schema"] = "1";
    j["depth"] = std::to_string(chain.depth());
    j["samples"] = std::to_string(probeResult.samples);
    nlohmann::json cs = nlohmann::json::array();
    for (const GroupElement& g : probeResult.candidates)
      cs.push_back(elem_str(chain.ctx, g));
    j["candidates"] = cs;
    nlohmann::json sv = nlohmann::json::array();
    for (bool b : probeResult.candidateSurvives) sv.push_back(b);
    j["candidateSurvives"] = sv;
    nlohmann::json ss = nlohmann::json::array();
    for (const GroupElement& g : probeResult.survivors)
      ss.push_back(elem_str(chain.ctx, g));
    j["survivors"] = ss;
    write_output(f.out, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream os;
  os << "kernel probe through level " << chain.depth() << ", samples "
     << probeResult.samples << "\n";
  for (size_t i = 0; i < probeResult.candidates.size(); i++)
    os << "  candidate " << elem_str(chain.ctx, probeResult.candidates[i])
       << ": "
       << (probeResult.candidateSurvives[i] ? "survives" : "leaves the chain")
       << "\n";
  for (const GroupElement& g : probeResult.survivors)
    os << "  survivor " << elem_str(chain.ctx, g) << "\n";
  write_output(f.out, os.str());
  return 0;
}

int cmd_conjugate(const std::string& spec, const CommonFlags& f,
                  const std::string& point) {
  ChainSpecDocument doc = load_spec(spec, f.sets);
  int depth = effective_depth(doc, f);
  int probe = effective_probe(doc, f, depth);
  GroupChain chain = spec_chain(doc, probe, spec);

  std::vector<std::string> words;
  std::stringstream ss(point);
  std::string w;
  while (std::getline(ss, w, ';'))
    if (!w.empty()) words.push_back(w);
  if (words.empty()) validation_error("--point needs at least one word");

  GroupChain conj;
  AnalyzeOptions opt = spec_options(doc, chain.ctx);
  if (words.size() == 1) {
    GroupElement g = eval_word(chain.ctx, words[0]);
    conj = conjugate_chain(chain, g);
    // the kernel moves with the basepoint
    if (opt.kernelGens) {
      for (GroupElement& k : *opt.kernelGens)
        k = multiply(chain.ctx, multiply(chain.ctx, g, k),
                     inverse(chain.ctx, g));
    }
  } else {
    // level-wise representatives; the last one extends downward
    std::vector<SubgroupData> levels;
    for (int i = 0; i <= chain.depth(); i++) {
      const std::string& word =
          words[std::min((size_t)i, words.size() - 1)];
      GroupElement g = eval_word(chain.ctx, word);
      levels.push_back(conjugate_subgroup(chain.ctx, chain.levels[i], g));
    }
    conj = make_chain(chain.ctx, levels, chain.provenance + ".conj");
    opt.kernelGens.reset();
  }
  Caps caps = flag_caps(f, analysis_caps(doc, default_caps()));
  ChainReport rep = analyze_chain(conj, depth, probe, caps, opt);
  write_output(f.out, f.format == "machine"
                          ? machine_report(conj.ctx, rep, doc.analysis.reports)
                          : human_report(conj.ctx, rep, doc.analysis.reports));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic for descending chains of finite-index "
               "subgroups: cores, discriminants, stability, coset trees"};
  app.require_subcommand(1);

  CommonFlags fa, fc, ft, fk, fj;
  std::string specPath, catalogName, point;
  int kernelSamples = -1;
  std::vector<std::string> kernelCandidates;
  bool dot = false;

  CLI::App* analyze =
      app.add_subcommand("analyze", "analyze a chain specification file");
  analyze->add_option("spec", specPath, "chain spec file")->required();
  add_common(analyze, fa);

  CLI::App* catalogCmd = app.add_subcommand(
      "catalog", "list built-in examples or run one against its expectations");
  catalogCmd->add_option("name", catalogName, "catalog entry name");
  add_common(catalogCmd, fc);

  CLI::App* tree =
      app.add_subcommand("tree", "export the coset tree of a chain");
  tree->add_option("spec", specPath, "chain spec file")->required();
  tree->add_flag("--dot", dot, "emit DOT instead of the vertex/edge text");
  add_common(tree, ft, false);

  CLI::App* kernel = app.add_subcommand(
      "kernel", "probe which elements survive to the bottom of the chain");
  kernel->add_option("spec", specPath, "chain spec file")->required();
  kernel->add_option("--samples", kernelSamples, "random elements to try");
  kernel->add_option("--candidate", kernelCandidates,
                     "candidate word, repeatable");
  add_common(kernel, fk);

  CLI::App* conjugate = app.add_subcommand(
      "conjugate", "re-analyze the chain conjugated at another tree point");
  conjugate->add_option("spec", specPath, "chain spec file")->required();
  conjugate
      ->add_option("--point", point,
                   "word, or semicolon-separated per-level words")
      ->required();
  add_common(conjugate, fj);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(specPath, fa);
    if (app.got_subcommand(catalogCmd)) return cmd_catalog(catalogName, fc);
    if (app.got_subcommand(tree)) return cmd_tree(specPath, ft, dot);
    if (app.got_subcommand(kernel))
      return cmd_kernel(specPath, fk, kernelSamples, kernelCandidates);
    if (app.got_subcommand(conjugate))
      return cmd_conjugate(specPath, fj, point);
  } catch (const ChainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Resource ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
