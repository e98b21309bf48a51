// Acceptance gate: one pass/fail line per criterion. Usage:
//   mknf_acceptance <path-to-mknf-binary> <path-to-data-dir>
// Exits nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mknf/mknf.hpp"
#include "random_kb.hpp"

using namespace mknf;
using mknf_tests::KbGenConfig;

namespace {

std::string g_bin;
std::string g_data;
int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  auto start = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("criterion %2d [%s] %.2fs  %s%s%s\n", number, ok ? "PASS" : "FAIL", secs, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

KnowledgeBase load_kb(const std::string& name) { return parse_kb(read_file(g_data + "/" + name)); }
Partition load_part(const std::string& name) { return parse_partition(read_file(g_data + "/" + name)); }

Atom at(const char* n) { return Atom{n}; }
AtomList atoms(std::initializer_list<const char*> names) {
  AtomList out;
  for (const char* n : names) out.push_back(Atom{n});
  return out;
}

HeadCut cut(std::initializer_list<std::pair<int, const char*>> pairs) {
  HeadCut c;
  for (const auto& [rid, name] : pairs) c.pairs.emplace(rid, Atom{name});
  return c;
}

bool same_cut_set(std::vector<HeadCut> got, std::vector<HeadCut> want) {
  if (got.size() != want.size()) return false;
  for (const HeadCut& w : want) {
    bool found = false;
    for (const HeadCut& g : got) {
      if (g == w) found = true;
    }
    if (!found) return false;
  }
  return true;
}

bool contains_partition(const std::vector<Partition>& xs, const Partition& p) {
  for (const Partition& x : xs) {
    if (x == p) return true;
  }
  return false;
}

bool same_partition_set(const std::vector<Partition>& xs, const std::vector<Partition>& ys) {
  if (xs.size() != ys.size()) return false;
  for (const Partition& p : xs) {
    if (!contains_partition(ys, p)) return false;
  }
  return true;
}

Partition candidate(const KnowledgeBase& kb, std::uint64_t counter) {
  Partition part;
  for (const Atom& a : kb.ka) {
    std::uint64_t digit = counter % 3;
    counter /= 3;
    if (digit >= 1) part.p_set.push_back(a);
    if (digit == 2) part.t_set.push_back(a);
  }
  return part;
}

std::uint64_t candidate_count(const KnowledgeBase& kb) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < kb.ka.size(); ++i) total *= 3;
  return total;
}

const std::array<const char*, 7> kExampleKbs = {
    "example1.kb", "example2_o1.kb", "example2_o2.kb", "example3.kb",
    "example4.kb", "example5.kb",    "liuyou.kb",
};

// --- criteria -------------------------------------------------------------

bool crit1_golden_headcuts(std::string& detail) {
  KnowledgeBase kb = load_kb("example1.kb");
  auto h = [&](const char* part) { return enumerate_headcuts(kb, load_part(part)).to_vector(); };
  std::vector<HeadCut> one_a_or_b = {cut({{1, "a"}}), cut({{1, "b"}})};
  if (!same_cut_set(h("example1_t1p1.part"), one_a_or_b)) return detail = "(T1,P1) cut set", false;
  if (!same_cut_set(h("example1_t2p2.part"), one_a_or_b)) return detail = "(T2,P2) cut set", false;
  if (!same_cut_set(h("example1_t3p3.part"), {cut({{1, "a"}, {2, "x"}}), cut({{1, "b"}, {2, "x"}})}))
    return detail = "(T3,P3) cut set", false;
  if (!h("example1_t4p4.part").empty()) return detail = "(T4,P4) should be empty", false;
  return true;
}

bool crit2_golden_lfp(std::string& detail) {
  Partition part{atoms({"a", "b"}), atoms({"a", "b", "c", "d", "z"})};
  HeadCut r = cut({{1, "a"}, {2, "c"}, {3, "z"}});
  KnowledgeBase k1 = load_kb("example2_o1.kb");
  AtomList lfp1 = lfp_q(k1, part, r);
  if (!set_equal(lfp1, atoms({"z", "a", "c", "d"})) || contains(lfp1, at("b")))
    return detail = "first ontology lfp", false;
  KnowledgeBase k2 = load_kb("example2_o2.kb");
  if (!set_equal(lfp_q(k2, part, r), atoms({"z", "a", "c", "b", "d"})))
    return detail = "second ontology lfp", false;
  return true;
}

bool crit3_golden_check(std::string& detail) {
  KnowledgeBase kb = load_kb("example3.kb");
  if (check_model(kb, load_part("example3_tp.part")).status != CheckStatus::Model)
    return detail = "({a},{a,b,c}) should be a model", false;
  CheckVerdict v = check_model(kb, load_part("example3_tp_prime.part"));
  if (v.status != CheckStatus::FixpointMismatch) return detail = "({a,c},...) verdict", false;
  if (!set_equal(v.failing_lfp, atoms({"a", "b"}))) return detail = "({a,c},...) lfp", false;
  return true;
}

bool crit4_golden_five_rule(std::string& detail) {
  KnowledgeBase kb = load_kb("example4.kb");
  Partition part = load_part("example4.part");
  auto cuts = enumerate_headcuts(kb, part).to_vector();
  if (!same_cut_set(cuts, {cut({{1, "a"}, {2, "a"}, {3, "b"}, {4, "c"}, {5, "d"}}),
                           cut({{1, "b"}, {2, "a"}, {3, "b"}, {4, "c"}, {5, "d"}})}))
    return detail = "cut set", false;
  for (const HeadCut& c : cuts) {
    if (!set_equal(lfp_q(kb, part, c), part.p_set)) return detail = "lfp should equal P", false;
  }
  if (check_model(kb, part).status != CheckStatus::Model) return detail = "verdict", false;
  return true;
}

bool crit5_golden_guarded(std::string& detail) {
  KnowledgeBase kb = load_kb("example5.kb");
  Partition t1p1 = load_part("example5_t1p1.part");
  auto cuts = enumerate_headcuts(kb, t1p1).to_vector();
  if (cuts.size() != 4) return detail = "(T1,P1) cut count", false;
  for (const HeadCut& c : cuts) {
    AtomList want = c.pairs.at(1) == at("a") ? atoms({"a", "x", "y"}) : atoms({"b", "x", "y"});
    if (!set_equal(lfp_q(kb, t1p1, c), want)) return detail = "(T1,P1) lfp for " + c.to_string(), false;
  }
  if (check_model(kb, t1p1).status != CheckStatus::FixpointMismatch) return detail = "(T1,P1) verdict", false;
  CheckVerdict v2 = check_model(kb, load_part("example5_t2p2.part"));
  if (v2.status != CheckStatus::NotSaturated || !v2.saturation.witness || *v2.saturation.witness != at("b"))
    return detail = "(T2,P2) verdict/witness", false;
  Partition t3p3 = load_part("example5_t3p3.part");
  auto cuts3 = enumerate_headcuts(kb, t3p3).to_vector();
  if (cuts3.size() != 2) return detail = "(T3,P3) cut count", false;
  for (const HeadCut& c : cuts3) {
    if (!set_equal(lfp_q(kb, t3p3, c), t3p3.p_set)) return detail = "(T3,P3) lfp", false;
  }
  if (check_model(kb, t3p3).status != CheckStatus::Model) return detail = "(T3,P3) verdict", false;
  return true;
}

bool crit6_liuyou(std::string& detail) {
  KnowledgeBase kb = load_kb("liuyou.kb");
  LatticePair tp{atoms({"a", "b", "c"}), atoms({"a", "b", "c", "d", "e"})};
  if (!(stable_revision(kb, tp) == tp)) return detail = "not a stable fixpoint", false;
  if (!check_model_normal(kb, tp)) return detail = "side condition", false;
  return true;
}

bool emptiness_matches_satisfaction(const KnowledgeBase& kb, std::string& detail) {
  std::uint64_t total = candidate_count(kb);
  for (std::uint64_t c = 0; c < total; ++c) {
    Partition part = candidate(kb, c);
    if (!is_saturated(kb, part).saturated) continue;
    bool empty_h = enumerate_headcuts(kb, part).to_vector().empty();
    if (empty_h != !satisfies_program(kb, part)) {
      detail = "mismatch at " + render_partition(part);
      return false;
    }
  }
  return true;
}

bool crit7_emptiness(std::string& detail) {
  for (const char* name : kExampleKbs) {
    KnowledgeBase kb = load_kb(name);
    if (!emptiness_matches_satisfaction(kb, detail)) return detail = std::string(name) + ": " + detail, false;
  }
  std::mt19937 rng(70701);
  KbGenConfig cfg;  // <= 5 atoms, <= 5 rules, head width <= 3, empty ontology
  for (int i = 0; i < 200; ++i) {
    KnowledgeBase kb = mknf_tests::random_kb(rng, cfg);
    if (!emptiness_matches_satisfaction(kb, detail)) return detail = "random kb " + std::to_string(i) + ": " + detail, false;
  }
  return true;
}

/// All single rules over {a, b}: nonempty head, any positive/negative bodies.
std::vector<Rule> all_two_atom_rules() {
  AtomList pool = atoms({"a", "b"});
  std::vector<AtomList> subsets;
  for (int m = 0; m < 4; ++m) {
    AtomList s;
    if (m & 1) s.push_back(pool[0]);
    if (m & 2) s.push_back(pool[1]);
    subsets.push_back(s);
  }
  std::vector<Rule> rules;
  for (const AtomList& head : subsets) {
    if (head.empty()) continue;
    for (const AtomList& pos : subsets) {
      for (const AtomList& neg : subsets) rules.push_back(Rule{0, head, pos, neg});
    }
  }
  return rules;
}

std::vector<KnowledgeBase> exhaustive_corpus() {
  std::vector<KnowledgeBase> corpus;
  std::vector<Rule> rules = all_two_atom_rules();
  corpus.push_back(make_kb({}, {}));
  for (const Rule& r : rules) corpus.push_back(make_kb({}, {r}));
  for (const Rule& r1 : rules) {
    for (const Rule& r2 : rules) corpus.push_back(make_kb({}, {r1, r2}));
  }
  return corpus;
}

std::vector<KnowledgeBase> random_corpus_500() {
  std::mt19937 rng(80802);
  KbGenConfig cfg;
  cfg.max_atoms = 6;
  cfg.max_rules = 6;
  std::vector<KnowledgeBase> corpus;
  for (int i = 0; i < 500; ++i) corpus.push_back(mknf_tests::random_kb(rng, cfg));
  return corpus;
}

bool crit8_partial_stable(std::string& detail) {
  std::size_t idx = 0;
  for (const KnowledgeBase& kb : exhaustive_corpus()) {
    if (!same_partition_set(enumerate_models(kb), partial_stable_bruteforce(kb)))
      return detail = "exhaustive corpus entry " + std::to_string(idx), false;
    ++idx;
  }
  idx = 0;
  for (const KnowledgeBase& kb : random_corpus_500()) {
    if (!same_partition_set(enumerate_models(kb), partial_stable_bruteforce(kb)))
      return detail = "random corpus entry " + std::to_string(idx), false;
    ++idx;
  }
  return true;
}

bool two_valued_matches(const KnowledgeBase& kb) {
  std::vector<AtomList> via_check;
  for (std::uint64_t s = 0; s < (std::uint64_t(1) << kb.ka.size()); ++s) {
    AtomList set;
    for (std::size_t k = 0; k < kb.ka.size(); ++k) {
      if ((s >> k) & 1) set.push_back(kb.ka[k]);
    }
    if (check_model(kb, Partition{set, set}).status == CheckStatus::Model) via_check.push_back(set);
  }
  std::vector<AtomList> oracle = two_valued_stable_bruteforce(kb);
  if (via_check.size() != oracle.size()) return false;
  for (std::size_t k = 0; k < oracle.size(); ++k) {
    if (!set_equal(via_check[k], oracle[k])) return false;
  }
  return true;
}

bool crit9_two_valued(std::string& detail) {
  std::size_t idx = 0;
  for (const KnowledgeBase& kb : exhaustive_corpus()) {
    if (!two_valued_matches(kb)) return detail = "exhaustive corpus entry " + std::to_string(idx), false;
    ++idx;
  }
  idx = 0;
  for (const KnowledgeBase& kb : random_corpus_500()) {
    if (!two_valued_matches(kb)) return detail = "random corpus entry " + std::to_string(idx), false;
    ++idx;
  }
  return true;
}

bool cross_check_holds(const KnowledgeBase& kb, std::string& detail) {
  std::uint64_t total = candidate_count(kb);
  for (std::uint64_t c = 0; c < total; ++c) {
    Partition part = candidate(kb, c);
    if (!cross_check(kb, part).agree()) {
      detail = "disagreement at " + render_partition(part);
      return false;
    }
  }
  return true;
}

bool crit10_cross_check(std::string& detail) {
  for (const char* name : kExampleKbs) {
    KnowledgeBase kb = load_kb(name);
    if (!cross_check_holds(kb, detail)) return detail = std::string(name) + ": " + detail, false;
  }
  std::mt19937 rng(101010);
  KbGenConfig cfg;
  cfg.max_atoms = 5;
  cfg.max_rules = 4;
  cfg.with_ontology = true;
  cfg.max_ont_atoms = 3;
  for (int i = 0; i < 100; ++i) {
    KnowledgeBase kb = mknf_tests::random_kb(rng, cfg);
    if (!cross_check_holds(kb, detail)) {
      return detail = "random kb " + std::to_string(i) + ": " + detail, false;
    }
  }
  return true;
}

bool crit11_monotonicity(std::string& detail) {
  std::mt19937 rng(111111);
  KbGenConfig cfg;
  cfg.with_ontology = true;
  cfg.max_atoms = 4;
  int done = 0;
  while (done < 1000) {
    KnowledgeBase kb = mknf_tests::random_kb(rng, cfg);
    Partition part = mknf_tests::random_partition(rng, kb);
    if (!is_saturated(kb, part).saturated) continue;
    auto cuts = enumerate_headcuts(kb, part).to_vector();
    if (cuts.empty()) continue;
    const HeadCut& hc = cuts[static_cast<std::size_t>(mknf_tests::pick(rng, 0, static_cast<int>(cuts.size()) - 1))];
    AtomList s = mknf_tests::random_subset(rng, kb.ka);
    AtomList s2 = s;
    for (const Atom& a : mknf_tests::random_subset(rng, kb.ka)) insert_unique(s2, a);
    if (!subset_of(q_step(kb, part, hc, s), q_step(kb, part, hc, s2))) {
      detail = "q_step inclusion violated";
      return false;
    }
    ++done;
  }
  KbGenConfig normal_cfg;
  normal_cfg.with_ontology = true;
  normal_cfg.max_atoms = 4;
  normal_cfg.max_head = 1;
  for (int i = 0; i < 1000; ++i) {
    KnowledgeBase kb = mknf_tests::random_kb(rng, normal_cfg);
    AtomList lo1 = mknf_tests::random_subset(rng, kb.ka);
    AtomList hi1 = mknf_tests::random_subset(rng, kb.ka);
    AtomList lo2 = lo1;
    for (const Atom& a : mknf_tests::random_subset(rng, kb.ka)) insert_unique(lo2, a);
    AtomList hi2 = mknf_tests::random_subset(rng, hi1);
    LatticePair p{lo1, hi1}, q{lo2, hi2};
    if (!leq_p(phi(kb, p), phi(kb, q))) return detail = "phi monotonicity violated", false;
    if (!leq_p(stable_revision(kb, p), stable_revision(kb, q)))
      return detail = "stable_revision monotonicity violated", false;
  }
  return true;
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  int rc = pclose(pipe);
  status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return out;
}

bool crit12_determinism(std::string& detail) {
  for (const char* name : kExampleKbs) {
    int s1 = 0, s8 = 0;
    std::string base = g_bin + " models --format json --kb " + g_data + "/" + name;
    std::string out1 = run_capture(base + " --jobs 1", s1);
    std::string out8 = run_capture(base + " --jobs 8", s8);
    if (s1 != 0 || s8 != 0) return detail = std::string(name) + ": nonzero exit", false;
    if (out1 != out8) return detail = std::string(name) + ": output differs across jobs", false;
    if (out1.empty()) return detail = std::string(name) + ": empty output", false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: mknf_acceptance <mknf-binary> <data-dir>\n";
    return 2;
  }
  g_bin = argv[1];
  g_data = argv[2];

  criterion(1, "golden head-cut sets for the two-rule KB", crit1_golden_headcuts);
  criterion(2, "golden fixpoints under both conditional ontologies", crit2_golden_lfp);
  criterion(3, "golden verdicts for the guarded-chain KB", crit3_golden_check);
  criterion(4, "golden head-cuts and fixpoints for the five-rule KB", crit4_golden_five_rule);
  criterion(5, "golden verdicts for the guarded-disjunction KB", crit5_golden_guarded);
  criterion(6, "stable fixpoint and side condition for the normal-KB example", crit6_liuyou);
  criterion(7, "head-cut emptiness tracks direct satisfaction", crit7_emptiness);
  criterion(8, "model enumeration equals the partial-stable oracle", crit8_partial_stable);
  criterion(9, "two-valued collapse equals the reduct oracle", crit9_two_valued);
  criterion(10, "head-cut and approximator characterizations agree", crit10_cross_check);
  criterion(11, "operator monotonicity properties", crit11_monotonicity);
  criterion(12, "byte-identical json output across --jobs settings", crit12_determinism);

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return 1;
}
