#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tdist/metrics.hpp"
#include "tdist/nfa.hpp"
#include "tdist/transducer.hpp"

namespace tdist {

// Unmatched output suffix carried between letters while aligning tape 0
// against one comparison tape. Left: the suffix belongs to tape 0, Right:
// to the comparison tape. Dead marks a tape that overflowed or ran out of
// budget; Dead is absorbing. The empty leftover is normalized to Left.
struct Leftover {
  enum class Side { Left, Right, Dead };
  Side side = Side::Left;
  std::string word;

  static Leftover dead() { return {Side::Dead, ""}; }
  static Leftover pair(Side s, std::string w);
  bool is_dead() const { return side == Side::Dead; }

  friend auto operator<=>(const Leftover&, const Leftover&) = default;
};

// N * l where N counts states and l is the largest per-transition or
// per-final length difference |len(out0) - len(out_i)| over comparison
// tapes. Leftovers beyond max(delta_max, k) can never be repaid.
long long delta_max(const Transducer& m);

// All one-letter continuations of a partial alignment: X and Y extend the
// leftover by the fresh chunks, a split leaves a new suffix on either side,
// and the cost is the metric distance of the matched parts. Entries costing
// more than budget are dropped; splits longer than cap collapse to
// (Dead, 0). Sorted and deduplicated.
std::vector<std::pair<Leftover, long long>> step_match(const Leftover& l,
                                                       std::string_view chunk0,
                                                       std::string_view chunk_i,
                                                       long long budget,
                                                       long long cap, Metric m);

// Comparison tapes allowed to witness acceptance at each final state.
using ValidTapes = std::map<StateId, std::vector<int>>;

// The boundedness automaton over the input alphabet: states are (machine
// state, per-tape budget, per-tape leftover), built by reachability. A word
// is accepted when some valid tape is alive and its leftover plus final
// outputs fits the remaining budget.
Nfa build_ack(const Transducer& m, const ValidTapes& valid, long long k,
              Metric metric);

// True iff L(A_{C,k}) equals dom(m): every input can be served within k
// edits on some valid tape. Throws BudgetNegative for k < 0.
bool k_bounded(const Transducer& m, const ValidTapes& valid, long long k,
               Metric metric);

}  // namespace tdist
