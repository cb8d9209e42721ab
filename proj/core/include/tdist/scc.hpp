#pragma once

#include <cstddef>
#include <vector>

#include "tdist/transducer.hpp"

namespace tdist {

// Condensation of the transition graph. Component ids are topologically
// ordered: every transition leaving a component enters one with a larger id.
struct SccDecomposition {
  int comp_count = 0;
  std::vector<int> comp_of;                  // state -> component
  std::vector<std::vector<StateId>> members; // per component, ascending
  std::vector<char> has_cycle;               // component carries a transition
};

SccDecomposition scc_condense(const Transducer& m);

// Alternating sequence of components and bridging transitions: sccs has one
// entry more than bridges, bridges[i] (an index into m.transitions) leads
// from sccs[i] to sccs[i+1]. The first component contains an initial state,
// the last one a final state. Distinct bridge choices give distinct paths.
struct SccPath {
  std::vector<int> sccs;
  std::vector<std::size_t> bridges;
};

// Every path through the condensation, for a trim machine. Deterministic
// order: lexicographic in (component sequence, bridge indices).
std::vector<SccPath> scc_paths(const Transducer& m,
                               const SccDecomposition& dec);
std::vector<SccPath> scc_paths(const Transducer& m);

// Subtransducer keeping only the path's components, their internal
// transitions and the chosen bridges, then trimmed. kept_states, when
// given, receives the surviving states as ids of m.
Transducer path_submachine(const Transducer& m, const SccDecomposition& dec,
                           const SccPath& path,
                           std::vector<StateId>* kept_states = nullptr);

}  // namespace tdist
