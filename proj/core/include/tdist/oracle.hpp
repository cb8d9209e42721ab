#pragma once

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "tdist/metrics.hpp"
#include "tdist/nfa.hpp"
#include "tdist/transducer.hpp"

namespace tdist {

// Brute-force ground truth, kept deliberately independent of the decision
// procedures: plain run enumeration and per-word set distances.

// Output tuples of every accepting run on w, final outputs appended.
// Throws CapExceeded when |w| > cap.
std::set<OutputTuple> run_outputs(const Transducer& m, const InputWord& w,
                                  std::size_t cap = 64);

// Single-tape union: outputs of every accepting run of every part.
WordSet union_outputs(const std::vector<Transducer>& parts, const InputWord& w,
                      std::size_t cap = 64);

// Every word of the language with |w| <= max_len, in prefix order, with
// dead prefixes pruned. Identical observable result to enumerating all
// words over the alphabet and skipping rejected ones.
void for_each_accepted(const Dfa& d, int max_len,
                       const std::function<void(const InputWord&)>& fn);

struct TrendReport {
  std::vector<long long> per_length;  // index = input length; empty sup is 0
  bool domain_mismatch = false;
  std::optional<InputWord> mismatch_witness;  // shortest, then lexicographic
  bool growing = false;      // last third of lengths strictly increasing
  long long plateau_value = 0;  // max observed; the sup when bounded

  bool infinite_verdict() const { return domain_mismatch || growing; }
};

// Hausdorff distance per input word over the union domains; sup per length.
TrendReport oracle_distance(const std::vector<Transducer>& t,
                            const std::vector<Transducer>& s, int max_len,
                            Metric m);

// Directed variant: f sequential, inner infimum over the union outputs of
// the components; sup over dom(f) per length.
TrendReport oracle_relative(const Transducer& f,
                            const std::vector<Transducer>& comps, int max_len,
                            Metric m);

}  // namespace tdist
