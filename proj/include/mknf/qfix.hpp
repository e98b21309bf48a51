#ifndef MKNF_QFIX_HPP
#define MKNF_QFIX_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "mknf/entailment.hpp"
#include "mknf/headcut.hpp"
#include "mknf/partition.hpp"
#include "mknf/syntax.hpp"

namespace mknf {

enum class CheckStatus { Model, NotSaturated, EmptyH, FixpointMismatch };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Model: return "Model";
    case CheckStatus::NotSaturated: return "NotSaturated";
    case CheckStatus::EmptyH: return "EmptyH";
    default: return "FixpointMismatch";
  }
}

/// Result of model checking a partition. On FixpointMismatch, `failing_cut`
/// and `failing_lfp` identify the first head-cut whose fixpoint misses P.
/// `true_atom_from_undefined` flags derivations where a true atom first
/// appeared in a round whose rule body was not fully true yet; see lfp notes.
struct CheckVerdict {
  CheckStatus status = CheckStatus::Model;
  SaturationReport saturation;
  std::optional<HeadCut> failing_cut;
  AtomList failing_lfp;
  std::size_t cuts_checked = 0;
  bool true_atom_from_undefined = false;
};

namespace detail {

/// One application of the derivation operator for a head-cut: rule firing
/// over S, plus ontology consequences. True atoms may only be justified from
/// the true part of S.
inline Mask q_step_masks(KbIndex& idx, Mask t, Mask p,
                         const std::vector<std::pair<int, int>>& cut, Mask s) {
  Mask out = 0;
  for (const auto& [ri, h] : cut) {
    if ((idx.rules()[static_cast<std::size_t>(ri)].pos & ~s) == 0) out |= KbIndex::bit(h);
  }
  out |= idx.entailed(s & t) & t;
  out |= idx.entailed(s) & (p & ~t);
  return out;
}

struct LfpResult {
  Mask lfp = 0;
  bool true_atom_from_undefined = false;
};

/// Least fixpoint of the derivation operator by round-based iteration from
/// the empty set.
inline LfpResult lfp_q_masks(KbIndex& idx, Mask t, Mask p,
                             const std::vector<std::pair<int, int>>& cut) {
  LfpResult res;
  Mask s = 0;
  for (;;) {
    Mask next = q_step_masks(idx, t, p, cut, s);
    if (next == s) break;
    // Diagnostic: a true atom whose justifying rule body was satisfied only
    // with the help of undefined atoms in this round.
    for (const auto& [ri, h] : cut) {
      const RuleMasks& r = idx.rules()[static_cast<std::size_t>(ri)];
      if (((t >> h) & 1) && !((s >> h) & 1) && ((next >> h) & 1) && (r.pos & ~s) == 0 && (r.pos & ~(s & t)) != 0) {
        res.true_atom_from_undefined = true;
      }
    }
    s = next;
  }
  res.lfp = s;
  return res;
}

inline CheckVerdict check_model_masks(KbIndex& idx, Mask t, Mask p) {
  CheckVerdict verdict;
  verdict.saturation = saturation_report(idx, t, p);
  if (!verdict.saturation.saturated) {
    verdict.status = CheckStatus::NotSaturated;
    return verdict;
  }
  CutSpace space = cut_space(idx, t, p);
  if (space.empty) {
    verdict.status = CheckStatus::EmptyH;
    return verdict;
  }
  for (CutEnumerator en(space); !en.done(); en.next()) {
    auto cut = en.current();
    LfpResult res = lfp_q_masks(idx, t, p, cut);
    ++verdict.cuts_checked;
    verdict.true_atom_from_undefined |= res.true_atom_from_undefined;
    if (res.lfp != p) {
      verdict.status = CheckStatus::FixpointMismatch;
      verdict.failing_cut = to_headcut(idx, cut);
      verdict.failing_lfp = idx.atoms(res.lfp);
      return verdict;
    }
    if ((t & ~res.lfp) != 0) throw std::logic_error("fixpoint reached P but missed a true atom");
  }
  verdict.status = CheckStatus::Model;
  return verdict;
}

}  // namespace detail

/// One derivation step for head-cut `cut` from the atom set `s`.
inline AtomList q_step(const KnowledgeBase& kb, const Partition& part, const HeadCut& cut, const AtomList& s) {
  validate_partition(kb, part);
  detail::KbIndex idx(kb);
  std::vector<std::pair<int, int>> c;
  for (const auto& [rid, atom] : cut.pairs) {
    if (rid < 1 || static_cast<std::size_t>(rid) > kb.program.size())
      throw std::invalid_argument("head-cut refers to unknown rule " + std::to_string(rid));
    int h = idx.ka_index(atom);
    if (h < 0) throw std::invalid_argument("head-cut atom '" + atom.name + "' is not a K-atom");
    c.emplace_back(rid - 1, h);
  }
  return idx.atoms(detail::q_step_masks(idx, idx.mask(part.t_set), idx.mask(part.p_set), c, idx.mask(s)));
}

/// Least fixpoint of the derivation operator from the empty set.
inline AtomList lfp_q(const KnowledgeBase& kb, const Partition& part, const HeadCut& cut) {
  validate_partition(kb, part);
  detail::KbIndex idx(kb);
  std::vector<std::pair<int, int>> c;
  for (const auto& [rid, atom] : cut.pairs) {
    if (rid < 1 || static_cast<std::size_t>(rid) > kb.program.size())
      throw std::invalid_argument("head-cut refers to unknown rule " + std::to_string(rid));
    int h = idx.ka_index(atom);
    if (h < 0) throw std::invalid_argument("head-cut atom '" + atom.name + "' is not a K-atom");
    c.emplace_back(rid - 1, h);
  }
  return idx.atoms(detail::lfp_q_masks(idx, idx.mask(part.t_set), idx.mask(part.p_set), c).lfp);
}

/// Decides whether some three-valued MKNF model induces the partition: the
/// partition must be saturated, admit at least one head-cut, and every
/// head-cut's fixpoint must equal P.
inline CheckVerdict check_model(const KnowledgeBase& kb, const Partition& part) {
  validate_partition(kb, part);
  detail::KbIndex idx(kb);
  return detail::check_model_masks(idx, idx.mask(part.t_set), idx.mask(part.p_set));
}

namespace detail {

inline std::uint64_t pow3(std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= 3;
  return r;
}

/// Candidate partition for a base-3 counter value: digit i (counting from
/// the least significant) assigns KA atom i, with 0 = false, 1 = undefined,
/// 2 = true.
inline void candidate_masks(std::uint64_t counter, std::size_t n, Mask& t, Mask& p) {
  t = 0;
  p = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t digit = counter % 3;
    counter /= 3;
    if (digit >= 1) p |= KbIndex::bit(static_cast<int>(i));
    if (digit == 2) t |= KbIndex::bit(static_cast<int>(i));
  }
}

}  // namespace detail

/// All partitions over KA induced by some MKNF model, in base-3 counter
/// order over the KA declaration order. `jobs` only shards the candidate
/// space; the result is identical for any value.
inline std::vector<Partition> enumerate_models(const KnowledgeBase& kb, std::size_t ka_cap = 12,
                                               unsigned jobs = 1) {
  std::size_t n = kb.ka.size();
  if (n > ka_cap) {
    throw CapExceeded("KA size " + std::to_string(n) + " exceeds cap " + std::to_string(ka_cap));
  }
  std::uint64_t total = detail::pow3(n);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, std::max<std::uint64_t>(total, 1)));

  std::vector<std::vector<Partition>> shard_results(jobs);
  auto worker = [&](unsigned w) {
    detail::KbIndex idx(kb);
    std::uint64_t lo = total * w / jobs;
    std::uint64_t hi = total * (w + 1) / jobs;
    for (std::uint64_t c = lo; c < hi; ++c) {
      detail::Mask t, p;
      detail::candidate_masks(c, n, t, p);
      if (detail::check_model_masks(idx, t, p).status == CheckStatus::Model) {
        shard_results[w].push_back(Partition{idx.atoms(t), idx.atoms(p)});
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto& th : threads) th.join();
  }
  std::vector<Partition> out;
  for (auto& shard : shard_results) {
    out.insert(out.end(), shard.begin(), shard.end());
  }
  return out;
}

/// The normal knowledge bases induced by the total head-cuts, in head-cut
/// enumeration order.
inline std::vector<KnowledgeBase> induced_normal_kbs(const KnowledgeBase& kb) {
  std::vector<KnowledgeBase> out;
  for (const HeadCut& cut : total_headcuts(kb)) {
    AtomList choices;
    for (const Rule& r : kb.program) choices.push_back(cut.pairs.at(r.id));
    out.push_back(induced_normal_kb(kb, choices));
  }
  return out;
}

/// Whether the model inducing `part` is also a model of the induced normal
/// knowledge base: some head-cut of the partition must be contained in the
/// normal program's head choices.
inline bool model_of_induced_normal(const KnowledgeBase& kb, const Partition& part,
                                    const KnowledgeBase& normal_kb) {
  if (normal_kb.program.size() != kb.program.size())
    throw std::invalid_argument("normal knowledge base does not match the program");
  for (const HeadCut& cut : enumerate_headcuts(kb, part)) {
    bool contained = true;
    for (const auto& [rid, atom] : cut.pairs) {
      const Rule& nr = normal_kb.program[static_cast<std::size_t>(rid) - 1];
      if (nr.head.size() != 1 || nr.head[0] != atom) {
        contained = false;
        break;
      }
    }
    if (contained) return true;
  }
  return false;
}

}  // namespace mknf

#endif
