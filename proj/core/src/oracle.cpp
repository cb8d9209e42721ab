#include "tdist/oracle.hpp"

#include <algorithm>

#include "tdist/error.hpp"

namespace tdist {

namespace {

void collect_runs(const Transducer& m, const InputWord& w, std::size_t pos,
                  StateId q, OutputTuple& acc, std::set<OutputTuple>& out) {
  if (pos == w.size()) {
    if (const OutputTuple* fo = m.final_output(q)) {
      OutputTuple full = acc;
      for (std::size_t i = 0; i < full.size(); ++i) full[i] += (*fo)[i];
      out.insert(std::move(full));
    }
    return;
  }
  for (const auto& t : m.from(q, w[pos])) {
    OutputTuple saved = acc;
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t.outputs[i];
    collect_runs(m, w, pos + 1, t.to, acc, out);
    acc = std::move(saved);
  }
}

void classify(TrendReport& r, int max_len) {
  r.plateau_value = 0;
  for (long long v : r.per_length) r.plateau_value = std::max(r.plateau_value, v);
  std::size_t n = static_cast<std::size_t>(max_len) + 1;
  std::size_t tail = std::max<std::size_t>(2, n / 3);
  r.growing = tail <= n;
  for (std::size_t i = n - tail; i + 1 < n && r.growing; ++i)
    if (r.per_length[i] >= r.per_length[i + 1]) r.growing = false;
}

void note_witness(TrendReport& r, const InputWord& w) {
  r.domain_mismatch = true;
  if (!r.mismatch_witness || w.size() < r.mismatch_witness->size() ||
      (w.size() == r.mismatch_witness->size() && w < *r.mismatch_witness))
    r.mismatch_witness = w;
}

Dfa joint_domain(const std::vector<Transducer>& t,
                 const std::vector<Transducer>& s) {
  std::vector<Nfa> doms;
  for (const auto& m : t) doms.push_back(domain_nfa(m));
  for (const auto& m : s) doms.push_back(domain_nfa(m));
  return determinize(union_nfa(doms));
}

}  // namespace

std::set<OutputTuple> run_outputs(const Transducer& m, const InputWord& w,
                                  std::size_t cap) {
  if (w.size() > cap)
    throw Error(Errc::CapExceeded, "oracle input longer than the cap of " +
                                       std::to_string(cap));
  std::set<OutputTuple> out;
  OutputTuple acc(static_cast<std::size_t>(m.tape_count), "");
  for (StateId q : m.initials) collect_runs(m, w, 0, q, acc, out);
  return out;
}

WordSet union_outputs(const std::vector<Transducer>& parts, const InputWord& w,
                      std::size_t cap) {
  WordSet out;
  for (const auto& p : parts)
    for (const auto& tuple : run_outputs(p, w, cap)) out.insert(tuple.at(0));
  return out;
}

void for_each_accepted(const Dfa& d, int max_len,
                       const std::function<void(const InputWord&)>& fn) {
  std::vector<int> togo = steps_to_accepting(d);
  InputWord word;
  auto walk = [&](auto&& self, StateId q) -> void {
    int remaining = max_len - static_cast<int>(word.size());
    if (togo[static_cast<std::size_t>(q)] > remaining) return;
    if (d.accepting[static_cast<std::size_t>(q)]) fn(word);
    if (remaining == 0) return;
    for (Symbol a = 0; a < static_cast<Symbol>(d.alphabet.size()); ++a) {
      word.push_back(a);
      self(self, d.next[static_cast<std::size_t>(q)][static_cast<std::size_t>(a)]);
      word.pop_back();
    }
  };
  walk(walk, d.initial);
}

TrendReport oracle_distance(const std::vector<Transducer>& t,
                            const std::vector<Transducer>& s, int max_len,
                            Metric m) {
  TrendReport r;
  r.per_length.assign(static_cast<std::size_t>(max_len) + 1, 0);
  std::size_t cap = static_cast<std::size_t>(max_len);
  for_each_accepted(joint_domain(t, s), max_len, [&](const InputWord& w) {
    WordSet left = union_outputs(t, w, cap);
    WordSet right = union_outputs(s, w, cap);
    if (left.empty() != right.empty()) {
      note_witness(r, w);
      return;
    }
    auto h = hausdorff_distance(left, right, m);
    r.per_length[w.size()] = std::max(r.per_length[w.size()], *h);
  });
  classify(r, max_len);
  return r;
}

TrendReport oracle_relative(const Transducer& f,
                            const std::vector<Transducer>& comps, int max_len,
                            Metric m) {
  TrendReport r;
  r.per_length.assign(static_cast<std::size_t>(max_len) + 1, 0);
  std::size_t cap = static_cast<std::size_t>(max_len);
  Dfa dom = determinize(domain_nfa(f));
  for_each_accepted(dom, max_len, [&](const InputWord& w) {
    std::set<OutputTuple> fout = run_outputs(f, w, cap);
    WordSet rout = union_outputs(comps, w, cap);
    if (rout.empty()) {
      note_witness(r, w);
      return;
    }
    long long sup = 0;
    for (const auto& tuple : fout) {
      long long inf = -1;
      for (const auto& cand : rout) {
        long long d = edit_distance(tuple.at(0), cand, m);
        if (inf < 0 || d < inf) inf = d;
      }
      sup = std::max(sup, inf);
    }
    r.per_length[w.size()] = std::max(r.per_length[w.size()], sup);
  });
  classify(r, max_len);
  return r;
}

}  // namespace tdist
