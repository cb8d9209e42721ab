#pragma once

#include <vector>

#include "tdist/metrics.hpp"
#include "tdist/reldist.hpp"
#include "tdist/transducer.hpp"

namespace tdist {

// Joint unambiguous-to-multi-sequential reduction for two unions of
// unambiguous components. One deterministic automaton reads symbols that
// pair an input letter with one transition choice per component, while
// subset images track which components still can accept. The stored
// machine carries one output tape per component; a component's own machine
// is its tape with finals cut down to the states where that component is
// final, so rejecting components contribute no output.
struct SyncProduct {
  Transducer machine;  // m+n tapes over the annotated alphabet, trimmed
  int t_count = 0, s_count = 0;
  std::vector<std::vector<bool>> component_final;  // [state][component]
  std::vector<Symbol> letter_of;                   // annotated -> base letter
  Alphabet base_alphabet;

  Transducer t_component(int i) const;  // 0-based, sequential
  Transducer s_component(int j) const;
};

SyncProduct sync_product(const std::vector<Transducer>& t_comps,
                         const std::vector<Transducer>& s_comps);

// max over every component of its relative distance to the opposite union;
// domains already agree by construction.
DistanceResult multiseq_distance(const SyncProduct& sp, Metric metric,
                                 int parallel = 1);

// Distance between two finite-valued unions: Infinite on unequal union
// domains, otherwise the synchronized multi-sequential reduction.
DistanceResult finite_valued_distance(const std::vector<Transducer>& t,
                                      const std::vector<Transducer>& s,
                                      Metric metric, int parallel = 1);

}  // namespace tdist
