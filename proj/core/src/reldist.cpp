#include "tdist/reldist.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "tdist/error.hpp"
#include "tdist/scc.hpp"

namespace tdist {

DistanceResult DistanceResult::attained(long long v) {
  DistanceResult r;
  r.value = v;
  return r;
}

DistanceResult DistanceResult::empty_domain() {
  DistanceResult r;
  r.value = 0;
  r.reason = Reason::EmptyDomain;
  r.detail = "the function side has an empty domain";
  return r;
}

DistanceResult DistanceResult::infinite(Reason reason, std::string detail) {
  DistanceResult r;
  r.reason = reason;
  r.detail = std::move(detail);
  return r;
}

const char* reason_name(DistanceResult::Reason r) {
  switch (r) {
    case DistanceResult::Reason::Attained: return "attained-k";
    case DistanceResult::Reason::EmptyDomain: return "empty-domain";
    case DistanceResult::Reason::DomainMismatch: return "domain-mismatch";
    case DistanceResult::Reason::NonConjugateLoops: return "non-conjugate-path";
  }
  return "?";
}

namespace {

void check_inputs(const Transducer& f, const std::vector<Transducer>& comps) {
  if (!f.sequential && f.num_states > 0)
    throw Error(Errc::NonSequentialComponent, "the function side must be sequential");
  if (f.tape_count != 1)
    throw Error(Errc::ArityMismatch, "the function side must be single-tape");
  if (comps.empty())
    throw Error(Errc::InvalidInput, "the relation side needs a component");
  for (const auto& c : comps) {
    if (!c.sequential && c.num_states > 0)
      throw Error(Errc::NonSequentialComponent,
                  "relation components must be sequential");
    if (c.tape_count != 1)
      throw Error(Errc::ArityMismatch, "relation components must be single-tape");
    if (!(c.input_alphabet == f.input_alphabet))
      throw Error(Errc::AlphabetMismatch,
                  "function and components must share the input alphabet");
  }
}

// Product with a caller-chosen final policy, trimmed, with the finality of
// the m relation components carried along.
ClassProduct product_with_policy(
    const Transducer& f, const std::vector<Transducer>& comps,
    const std::function<bool(const std::vector<bool>&)>& policy) {
  std::vector<Transducer> machines;
  machines.reserve(comps.size() + 1);
  machines.push_back(complete(f));
  for (const auto& c : comps) machines.push_back(complete(c));

  std::vector<std::vector<bool>> fin;
  Transducer prod = stack_product(machines, policy, &fin);
  std::vector<StateId> kept;
  ClassProduct out;
  out.machine = trim(prod, &kept);
  out.component_final.reserve(kept.size());
  for (StateId old : kept) {
    const auto& fv = fin[static_cast<std::size_t>(old)];
    out.component_final.emplace_back(fv.begin() + 1, fv.end());
  }
  return out;
}

}  // namespace

ValidTapes valid_tapes_of(const ClassProduct& p) {
  ValidTapes vt;
  for (const auto& [q, out] : p.machine.finals) {
    (void)out;
    std::vector<int> tapes;
    const auto& fv = p.component_final[static_cast<std::size_t>(q)];
    for (std::size_t i = 0; i < fv.size(); ++i)
      if (fv[i]) tapes.push_back(static_cast<int>(i) + 1);
    vt.emplace(q, std::move(tapes));
  }
  return vt;
}

ClassProduct global_product(const Transducer& f,
                            const std::vector<Transducer>& comps) {
  check_inputs(f, comps);
  return product_with_policy(
      f, comps, [](const std::vector<bool>& fv) { return fv[0]; });
}

std::vector<PartitionClass> partition_classes(
    const Transducer& f, const std::vector<Transducer>& comps) {
  check_inputs(f, comps);
  std::size_t m = comps.size();

  std::vector<Dfa> dfas;
  dfas.push_back(determinize(domain_nfa(f)));
  for (const auto& c : comps) dfas.push_back(determinize(domain_nfa(c)));

  // one reachability pass over the joint product of the domain automata
  std::map<std::vector<StateId>, StateId> ids;
  std::vector<std::vector<StateId>> tuples;
  auto intern = [&](std::vector<StateId> t) {
    auto it = ids.find(t);
    if (it != ids.end()) return it->second;
    StateId id = static_cast<StateId>(tuples.size());
    ids.emplace(t, id);
    tuples.push_back(std::move(t));
    return id;
  };
  std::vector<StateId> start;
  for (const auto& d : dfas) start.push_back(d.initial);
  intern(std::move(start));

  std::size_t letters = f.input_alphabet.size();
  std::vector<std::vector<StateId>> next;  // product transitions
  for (StateId id = 0; id < static_cast<StateId>(tuples.size()); ++id) {
    next.emplace_back(letters, -1);
    for (Symbol a = 0; a < static_cast<Symbol>(letters); ++a) {
      std::vector<StateId> t(dfas.size());
      for (std::size_t i = 0; i < dfas.size(); ++i)
        t[i] = dfas[i].next[static_cast<std::size_t>(
            tuples[static_cast<std::size_t>(id)][i])][static_cast<std::size_t>(a)];
      next[static_cast<std::size_t>(id)][static_cast<std::size_t>(a)] =
          intern(std::move(t));
    }
  }

  auto mask_of = [&](StateId id) {
    unsigned mask = 0;
    for (std::size_t i = 0; i < m; ++i) {
      StateId q = tuples[static_cast<std::size_t>(id)][i + 1];
      if (dfas[i + 1].accepting[static_cast<std::size_t>(q)]) mask |= 1u << i;
    }
    return mask;
  };
  auto f_accepts = [&](StateId id) {
    StateId q = tuples[static_cast<std::size_t>(id)][0];
    return dfas[0].accepting[static_cast<std::size_t>(q)] != 0;
  };

  std::map<unsigned, std::vector<StateId>> finals_by_mask;
  for (StateId id = 0; id < static_cast<StateId>(tuples.size()); ++id)
    if (f_accepts(id)) {
      unsigned mask = mask_of(id);
      if (mask != 0) finals_by_mask[mask].push_back(id);
    }

  std::vector<PartitionClass> classes;
  for (const auto& [mask, finals] : finals_by_mask) {
    PartitionClass pc;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) pc.members.push_back(static_cast<int>(i) + 1);
    pc.domain.alphabet = f.input_alphabet;
    pc.domain.num_states = static_cast<int>(tuples.size());
    pc.domain.initials = {0};
    pc.domain.finals = finals;
    for (StateId id = 0; id < static_cast<StateId>(tuples.size()); ++id)
      for (Symbol a = 0; a < static_cast<Symbol>(letters); ++a)
        pc.domain.transitions.push_back(
            {id, a, next[static_cast<std::size_t>(id)][static_cast<std::size_t>(a)]});
    pc.domain.finalize();
    classes.push_back(std::move(pc));
  }
  std::sort(classes.begin(), classes.end(),
            [](const PartitionClass& a, const PartitionClass& b) {
              return a.members < b.members;
            });
  return classes;
}

ClassProduct build_class_product(const Transducer& f,
                                 const std::vector<Transducer>& comps,
                                 const std::vector<int>& p) {
  check_inputs(f, comps);
  for (int i : p)
    if (i < 1 || static_cast<std::size_t>(i) > comps.size())
      throw Error(Errc::IndexOutOfRange, "class member out of range");
  auto policy = [&p](const std::vector<bool>& fv) {
    if (!fv[0]) return false;
    for (std::size_t i = 1; i < fv.size(); ++i) {
      bool wanted = std::binary_search(p.begin(), p.end(), static_cast<int>(i));
      if (fv[i] != wanted) return false;
    }
    return true;
  };
  return product_with_policy(f, comps, policy);
}

FinitenessReport finite_relative(const Transducer& f,
                                 const std::vector<Transducer>& comps) {
  check_inputs(f, comps);
  FinitenessReport report;

  std::vector<Nfa> doms;
  for (const auto& c : comps) doms.push_back(domain_nfa(c));
  auto escape = inclusion_witness(domain_nfa(f), union_nfa(doms));
  if (escape) {
    report.finite = false;
    report.domain_ok = false;
    report.domain_witness = std::move(escape);
    return report;
  }

  for (const auto& pc : partition_classes(f, comps)) {
    ClassReport cr;
    cr.members = pc.members;
    ClassProduct prod = build_class_product(f, comps, pc.members);
    SccDecomposition dec = scc_condense(prod.machine);
    for (const SccPath& path : scc_paths(prod.machine, dec)) {
      PathReport pr;
      pr.sccs = path.sccs;
      Transducer sub = path_submachine(prod.machine, dec, path, &pr.states);
      for (int tape : pc.members) {
        if (pair_finite(sub, tape)) {
          pr.witness_tape = tape;
          break;
        }
      }
      if (!pr.witness_tape) cr.ok = false;
      cr.paths.push_back(std::move(pr));
    }
    if (!cr.ok) report.finite = false;
    report.classes.push_back(std::move(cr));
  }
  return report;
}

long long search_value(const std::function<bool(long long)>& pred) {
  std::map<long long, bool> seen;
  auto probe = [&](long long k) {
    bool v = pred(k);
    seen[k] = v;
    bool false_above = false;  // monotone: no true strictly below a false
    for (auto it = seen.rbegin(); it != seen.rend(); ++it) {
      if (it->second && false_above)
        throw Error(Errc::PredicateNotMonotone,
                    "predicate is not monotone near " + std::to_string(k));
      if (!it->second) false_above = true;
    }
    return v;
  };

  if (probe(0)) return 0;
  long long hi = 1;
  const long long limit = 1LL << 40;
  while (!probe(hi)) {
    hi *= 2;
    if (hi > limit)
      throw Error(Errc::InvalidInput, "no bound found below 2^40");
  }
  long long lo = hi / 2;  // pred(lo) known false, pred(hi) true
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    if (probe(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

DistanceResult relative_distance(const Transducer& f,
                                 const std::vector<Transducer>& comps,
                                 Metric metric) {
  check_inputs(f, comps);
  if (language_empty(domain_nfa(f))) return DistanceResult::empty_domain();

  FinitenessReport rep = finite_relative(f, comps);
  if (!rep.domain_ok) {
    DistanceResult r = DistanceResult::infinite(
        DistanceResult::Reason::DomainMismatch,
        "a word of dom(f) is outside the relation's domain");
    r.witness_word = rep.domain_witness;
    return r;
  }
  if (!rep.finite) {
    std::string detail = "non-conjugate loops";
    for (const auto& cr : rep.classes)
      if (!cr.ok) {
        detail = "no tape of class {";
        for (std::size_t i = 0; i < cr.members.size(); ++i)
          detail += (i ? "," : "") + std::to_string(cr.members[i]);
        detail += "} has conjugate loops on every path";
        break;
      }
    return DistanceResult::infinite(DistanceResult::Reason::NonConjugateLoops,
                                    std::move(detail));
  }

  ClassProduct global = global_product(f, comps);
  ValidTapes vt = valid_tapes_of(global);
  long long k = search_value([&](long long cand) {
    return k_bounded(global.machine, vt, cand, metric);
  });
  return DistanceResult::attained(k);
}

}  // namespace tdist
