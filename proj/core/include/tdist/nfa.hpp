#pragma once

#include <optional>
#include <vector>

#include "tdist/alphabet.hpp"
#include "tdist/transducer.hpp"

namespace tdist {

struct NfaTransition {
  StateId from = 0;
  Symbol letter = 0;  // kEpsilonSymbol allowed when the machine opts in
  StateId to = 0;

  friend auto operator<=>(const NfaTransition&, const NfaTransition&) = default;
};

// Nondeterministic finite automaton. Epsilon moves are permitted only here,
// never in transducers, and only when allow_epsilon is set.
struct Nfa {
  Alphabet alphabet;
  int num_states = 0;
  std::vector<StateId> initials;
  std::vector<NfaTransition> transitions;
  std::vector<StateId> finals;
  bool allow_epsilon = false;

  void finalize();
  bool is_final(StateId q) const;
};

// Deterministic complete automaton produced by subset construction. State 0
// is not special; `initial` names the start, every (state, letter) has a
// successor.
struct Dfa {
  Alphabet alphabet;
  int num_states = 0;
  StateId initial = 0;
  std::vector<std::vector<StateId>> next;  // [state][letter]
  std::vector<char> accepting;
};

Dfa determinize(const Nfa& a);
Dfa complement(Dfa d);

bool nfa_accepts(const Nfa& a, const InputWord& w);
bool dfa_accepts(const Dfa& d, const InputWord& w);
bool language_empty(const Nfa& a);

// Input projection: outputs erased, graph and finals kept.
Nfa domain_nfa(const Transducer& m);

// Disjoint union over one shared alphabet.
Nfa union_nfa(const std::vector<Nfa>& parts);

// L(a) subset of / equal to L(b); exact, via determinization of both sides.
bool language_included(const Nfa& a, const Nfa& b);
bool language_equal(const Nfa& a, const Nfa& b);

// Shortest word in L(a) \ L(b), lexicographically least among shortest;
// nullopt when included.
std::optional<InputWord> inclusion_witness(const Nfa& a, const Nfa& b);

// Per state, the least number of letters needed to reach an accepting
// state; num_states+1 marks dead states. Used to prune word enumeration.
std::vector<int> steps_to_accepting(const Dfa& d);

}  // namespace tdist
