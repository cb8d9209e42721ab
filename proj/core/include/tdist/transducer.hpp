#pragma once

#include <compare>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tdist/alphabet.hpp"

namespace tdist {

using OutputTuple = std::vector<std::string>;

struct Transition {
  StateId from = 0;
  Symbol letter = 0;
  StateId to = 0;
  OutputTuple outputs;  // one word per tape

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

// Finite-state transducer with one input tape and tape_count output tapes.
// Real-time: every transition consumes exactly one input letter, epsilon
// input moves do not exist. Final states carry one final output word per
// tape, appended after the run outputs. A machine with zero states (empty
// relation) is a legal value.
//
// Machines are plain values; mutate the fields, then call finalize() once.
// finalize() sorts and dedupes, validates references and arities, and
// computes the sequential/complete/trim flags. All operations below return
// freshly finalized machines.
struct Transducer {
  Alphabet input_alphabet;
  Alphabet output_alphabet;
  int tape_count = 1;
  int num_states = 0;
  std::vector<StateId> initials;
  std::vector<Transition> transitions;
  std::map<StateId, OutputTuple> finals;

  // Computed by finalize().
  bool sequential = false;  // exactly one initial, at most one move per (q, a)
  bool complete = false;    // at least one move per (q, a)
  bool trim = false;        // every state lies on some accepting path

  void finalize();

  bool empty() const { return num_states == 0; }
  bool is_final(StateId q) const { return finals.count(q) != 0; }
  const OutputTuple* final_output(StateId q) const;

  // Transitions leaving q (optionally on one letter). Valid only after
  // finalize(); backed by binary search over the sorted transition list.
  std::span<const Transition> from(StateId q) const;
  std::span<const Transition> from(StateId q, Symbol a) const;

  // Unique move for sequential machines, nullptr when undefined.
  const Transition* step(StateId q, Symbol a) const;
};

// Semantic description of a single machine, as written in the text format.
struct MachineDesc {
  struct State {
    std::string id;
    bool initial = false;
    bool final = false;
    std::string final_output;
  };
  struct Arrow {
    std::string from;
    std::string to;
    std::string letter;
    std::string output;
  };

  std::string name;
  std::string input_letters;
  std::string output_letters;
  std::vector<State> states;
  std::vector<Arrow> arrows;
};

// Builds a single-tape machine from a description. Throws EmptyMachine,
// UndeclaredSymbol, UnknownState, DuplicateName; with require_sequential
// also NonSequentialComponent (several initials) and
// DuplicateTransitionOnSequentialFlag (two moves on one (state, letter)).
Transducer build_machine(const MachineDesc& desc, bool require_sequential = false);

// Restriction to states lying on accepting paths, renumbered to dense ids in
// ascending old order. old_of_new, when given, receives the kept old ids.
Transducer trim(const Transducer& m);
Transducer trim(const Transducer& m, std::vector<StateId>* old_of_new);

// Adds a single non-final sink with epsilon outputs and self loops on every
// letter, and routes every missing (state, letter) there. The relation is
// unchanged. An empty machine becomes the bare sink.
Transducer complete(const Transducer& m);

// Keeps the selected output tapes, in the order given. Underlying automaton
// and domain unchanged.
Transducer project(const Transducer& m, const std::vector<int>& tapes);

// Cartesian product of sequential complete machines over one shared input
// alphabet. Tapes are concatenated in machine order. A product state is
// final when final_policy accepts the per-machine finality vector; final
// outputs of non-final members contribute epsilon words. component_final,
// when given, receives the finality vector of every product state (the
// product is not trimmed here; callers trim and remap through old_of_new).
Transducer stack_product(
    const std::vector<Transducer>& machines,
    const std::function<bool(const std::vector<bool>&)>& final_policy,
    std::vector<std::vector<bool>>* component_final = nullptr);

// Structural isomorphism respecting initials, finals, letters and outputs.
bool isomorphic(const Transducer& a, const Transducer& b);

// Single-initial form for machines with several initial states: a fresh
// initial copies every move leaving an old initial. Preserves the relation
// and unambiguity. Two final initials would make every input of theirs
// ambiguous on the empty word, so that case is rejected.
Transducer merge_initials(const Transducer& m);

// At most one accepting run per input, counting runs distinct when they
// differ in any transition (outputs included).
bool unambiguous(const Transducer& m);

}  // namespace tdist
