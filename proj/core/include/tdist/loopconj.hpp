#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tdist/transducer.hpp"

namespace tdist {

// A concrete loop whose output pair on the inspected tape pair is not
// conjugate. transitions walk from root back to root.
struct LoopWitness {
  StateId root = 0;
  std::vector<std::size_t> transitions;  // indices into the machine
  std::string out0, out1;
};

struct LoopCheckResult {
  bool conjugate = true;
  std::optional<LoopWitness> witness;  // a bad loop, when bounded search found one
  std::optional<int> failing_scc;      // otherwise the component that failed
};

// Decides whether every loop of the trim machine m produces conjugate
// outputs on tapes (0, tape_i). Per cyclic SCC: length balance via a
// potential, then a candidate delay word per state solving u w' = w v over
// every internal transition; candidates come from the conjugacy witnesses
// of one chosen cycle, with length bound |SCC| * maxOut + |u0| + |v0|.
LoopCheckResult loops_conjugate(const Transducer& m, int tape_i);

// Trim, then loops_conjugate; the pipeline's finiteness test for one path
// product and one tape pair.
bool pair_finite(const Transducer& m, int tape_i);

}  // namespace tdist
