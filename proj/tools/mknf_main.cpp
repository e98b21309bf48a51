// Command-line front end: parse a knowledge base, then check a partition,
// enumerate models, run the well-founded computation, list head-cuts, or
// compare the engine against the partial-stable oracle.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mknf/mknf.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitModel = 0;
constexpr int kExitNoModel = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ordered_json atoms_json(const mknf::AtomList& atoms) {
  ordered_json arr = ordered_json::array();
  for (const mknf::Atom& a : atoms) arr.push_back(a.name);
  return arr;
}

mknf::AtomList difference(const mknf::AtomList& xs, const mknf::AtomList& ys) {
  mknf::AtomList out;
  for (const mknf::Atom& a : xs) {
    if (!mknf::contains(ys, a)) out.push_back(a);
  }
  return out;
}

ordered_json partition_json(const mknf::KnowledgeBase& kb, const mknf::Partition& part) {
  return ordered_json{{"true", atoms_json(part.t_set)},
                      {"undef", atoms_json(difference(part.p_set, part.t_set))},
                      {"false", atoms_json(difference(kb.ka, part.p_set))}};
}

std::string atoms_text(const mknf::AtomList& atoms) {
  std::ostringstream os;
  os << '{';
  mknf::render_atoms(atoms, os, ", ");
  os << '}';
  return os.str();
}

struct Options {
  std::string kb_path;
  std::string partition_path;
  std::string pair_path;
  std::string format = "human";
  std::size_t ka_cap = 12;
  std::size_t sig_cap = 16;
  unsigned jobs = 1;
};

void add_common(CLI::App* cmd, Options& opt, bool needs_partition, bool takes_pair) {
  cmd->add_option("--kb", opt.kb_path, "knowledge base file")->required();
  if (needs_partition) cmd->add_option("--partition", opt.partition_path, "partition file")->required();
  if (takes_pair) cmd->add_option("--pair", opt.pair_path, "lattice pair file (partition format: T = lo, P = hi)");
  cmd->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"human", "json"}));
  cmd->add_option("--ka-cap", opt.ka_cap, "max KA size for enumeration")->check(CLI::PositiveNumber);
  cmd->add_option("--sig-cap", opt.sig_cap, "max signature size for model enumeration")->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", opt.jobs, "worker threads (0 = auto)")->envname("MKNF_JOBS");
}

int cmd_check(const Options& opt) {
  mknf::KnowledgeBase kb = mknf::parse_kb(read_file(opt.kb_path));
  mknf::Partition part = mknf::parse_partition(read_file(opt.partition_path));
  mknf::CheckVerdict v = mknf::check_model(kb, part);
  if (opt.format == "json") {
    ordered_json out{{"status", mknf::to_string(v.status)}, {"cuts_checked", v.cuts_checked}};
    if (!v.saturation.saturated) {
      out["clause"] = v.saturation.clause;
      if (v.saturation.witness) out["witness"] = v.saturation.witness->name;
    }
    if (v.failing_cut) {
      out["failing_cut"] = v.failing_cut->to_string();
      out["failing_lfp"] = atoms_json(v.failing_lfp);
    }
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "status: " << mknf::to_string(v.status) << "\n";
    std::cout << "cuts checked: " << v.cuts_checked << "\n";
    if (!v.saturation.saturated) {
      std::cout << "saturation clause violated: " << v.saturation.clause;
      if (v.saturation.witness) std::cout << " (witness " << v.saturation.witness->name << ")";
      std::cout << "\n";
    }
    if (v.failing_cut) {
      std::cout << "failing head-cut: " << v.failing_cut->to_string() << "\n";
      std::cout << "its fixpoint: " << atoms_text(v.failing_lfp) << "\n";
    }
  }
  return v.status == mknf::CheckStatus::Model ? kExitModel : kExitNoModel;
}

int cmd_models(const Options& opt) {
  mknf::KnowledgeBase kb = mknf::parse_kb(read_file(opt.kb_path));
  std::vector<mknf::Partition> models = mknf::enumerate_models(kb, opt.ka_cap, opt.jobs);
  std::uint64_t candidates = 1;
  for (std::size_t i = 0; i < kb.ka.size(); ++i) candidates *= 3;
  if (opt.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const mknf::Partition& part : models) arr.push_back(partition_json(kb, part));
    ordered_json out{{"models", arr}, {"candidates_checked", candidates}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << models.size() << " model(s), " << candidates << " candidate(s) checked\n";
    for (const mknf::Partition& part : models) {
      std::cout << "  true=" << atoms_text(part.t_set)
                << " undef=" << atoms_text(difference(part.p_set, part.t_set))
                << " false=" << atoms_text(difference(kb.ka, part.p_set)) << "\n";
    }
  }
  return kExitModel;
}

int cmd_wellfounded(const Options& opt) {
  mknf::KnowledgeBase kb = mknf::parse_kb(read_file(opt.kb_path));
  if (!kb.is_normal()) throw std::invalid_argument("well-founded computation requires a normal knowledge base");
  mknf::LatticePair wf = mknf::well_founded(kb);
  bool wf_model = wf.consistent() && mknf::check_model_normal(kb, wf);
  ordered_json out{{"lo", atoms_json(wf.lo)}, {"hi", atoms_json(wf.hi)}, {"is_model", wf_model}};
  if (opt.format == "human") {
    std::cout << "well-founded pair: (" << atoms_text(wf.lo) << ", " << atoms_text(wf.hi) << ")\n";
    std::cout << "passes model check: " << (wf_model ? "yes" : "no") << "\n";
  }
  if (!opt.pair_path.empty()) {
    mknf::Partition raw = mknf::parse_partition(read_file(opt.pair_path));
    mknf::LatticePair pair{raw.t_set, raw.p_set};
    bool stable = mknf::stable_revision(kb, pair) == pair;
    bool model = pair.consistent() && mknf::check_model_normal(kb, pair);
    out["pair"] = ordered_json{{"lo", atoms_json(pair.lo)},
                               {"hi", atoms_json(pair.hi)},
                               {"stable_fixpoint", stable},
                               {"is_model", model}};
    if (opt.format == "human") {
      std::cout << "queried pair: (" << atoms_text(pair.lo) << ", " << atoms_text(pair.hi) << ")\n";
      std::cout << "stable fixpoint: " << (stable ? "yes" : "no") << "\n";
      std::cout << "passes model check: " << (model ? "yes" : "no") << "\n";
    }
  }
  if (opt.format == "json") std::cout << out.dump() << "\n";
  return kExitModel;
}

int cmd_headcuts(const Options& opt) {
  mknf::KnowledgeBase kb = mknf::parse_kb(read_file(opt.kb_path));
  mknf::Partition part = mknf::parse_partition(read_file(opt.partition_path));
  mknf::SaturationReport rep = mknf::is_saturated(kb, part);
  if (!rep.saturated) {
    if (opt.format == "json") {
      ordered_json out{{"saturated", false}, {"clause", rep.clause}};
      if (rep.witness) out["witness"] = rep.witness->name;
      std::cout << out.dump() << "\n";
    } else {
      std::cout << "not saturated: clause " << rep.clause;
      if (rep.witness) std::cout << " (witness " << rep.witness->name << ")";
      std::cout << "\n";
    }
    return kExitNoModel;
  }
  std::vector<mknf::HeadCut> cuts = mknf::enumerate_headcuts(kb, part).to_vector();
  if (opt.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const mknf::HeadCut& c : cuts) arr.push_back(c.to_string());
    std::cout << ordered_json{{"saturated", true}, {"headcuts", arr}}.dump() << "\n";
  } else {
    if (cuts.empty()) {
      std::cout << "EMPTY\n";
    } else {
      for (const mknf::HeadCut& c : cuts) std::cout << c.to_string() << "\n";
    }
  }
  return kExitModel;
}

int cmd_oracle(const Options& opt) {
  mknf::KnowledgeBase kb = mknf::parse_kb(read_file(opt.kb_path));
  if (!kb.ontology.empty()) throw std::invalid_argument("oracle comparison requires an empty ontology");
  std::vector<mknf::Partition> engine = mknf::enumerate_models(kb, opt.ka_cap, opt.jobs);
  std::vector<mknf::Partition> oracle = mknf::partial_stable_bruteforce(kb, opt.ka_cap);
  auto contains_part = [](const std::vector<mknf::Partition>& xs, const mknf::Partition& p) {
    for (const mknf::Partition& x : xs) {
      if (x == p) return true;
    }
    return false;
  };
  std::vector<mknf::Partition> only_engine, only_oracle;
  for (const mknf::Partition& p : engine) {
    if (!contains_part(oracle, p)) only_engine.push_back(p);
  }
  for (const mknf::Partition& p : oracle) {
    if (!contains_part(engine, p)) only_oracle.push_back(p);
  }
  bool agree = only_engine.empty() && only_oracle.empty();
  if (opt.format == "json") {
    auto render = [](const std::vector<mknf::Partition>& ps) {
      ordered_json arr = ordered_json::array();
      for (const mknf::Partition& p : ps)
        arr.push_back(ordered_json{{"T", atoms_json(p.t_set)}, {"P", atoms_json(p.p_set)}});
      return arr;
    };
    std::cout << ordered_json{{"agree", agree},
                              {"engine_count", engine.size()},
                              {"oracle_count", oracle.size()},
                              {"engine_only", render(only_engine)},
                              {"oracle_only", render(only_oracle)}}
                     .dump()
              << "\n";
  } else {
    if (agree) {
      std::cout << "AGREE (" << engine.size() << " model(s))\n";
    } else {
      std::cout << "DISAGREE\n";
      for (const mknf::Partition& p : only_engine)
        std::cout << "  engine only: (" << atoms_text(p.t_set) << ", " << atoms_text(p.p_set) << ")\n";
      for (const mknf::Partition& p : only_oracle)
        std::cout << "  oracle only: (" << atoms_text(p.t_set) << ", " << atoms_text(p.p_set) << ")\n";
    }
  }
  return agree ? kExitModel : kExitNoModel;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-valued MKNF model checker and enumerator"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* check = app.add_subcommand("check", "decide whether a partition is induced by an MKNF model");
  add_common(check, opt, true, false);
  CLI::App* models = app.add_subcommand("models", "enumerate all model partitions");
  add_common(models, opt, false, false);
  CLI::App* wellfounded = app.add_subcommand("wellfounded", "well-founded pair of a normal knowledge base");
  add_common(wellfounded, opt, false, true);
  CLI::App* headcuts = app.add_subcommand("headcuts", "list the head-cuts of a saturated partition");
  add_common(headcuts, opt, true, false);
  CLI::App* oracle = app.add_subcommand("oracle", "compare the engine against the partial-stable oracle");
  add_common(oracle, opt, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (check->parsed()) return cmd_check(opt);
    if (models->parsed()) return cmd_models(opt);
    if (wellfounded->parsed()) return cmd_wellfounded(opt);
    if (headcuts->parsed()) return cmd_headcuts(opt);
    return cmd_oracle(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
