#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tdist/kcheck.hpp"
#include "tdist/loopconj.hpp"
#include "tdist/metrics.hpp"
#include "tdist/nfa.hpp"
#include "tdist/transducer.hpp"

namespace tdist {

struct DistanceResult {
  enum class Reason { Attained, EmptyDomain, DomainMismatch, NonConjugateLoops };

  std::optional<long long> value;  // nullopt encodes infinity
  Reason reason = Reason::Attained;
  std::optional<InputWord> witness_word;  // set for DomainMismatch
  std::string detail;

  bool finite() const { return value.has_value(); }
  static DistanceResult attained(long long v);
  static DistanceResult empty_domain();
  static DistanceResult infinite(Reason r, std::string detail);
};

const char* reason_name(DistanceResult::Reason r);

// Words of dom(f) grouped by the exact set P of components defined there.
struct PartitionClass {
  std::vector<int> members;  // P, ascending 1-based component indices
  Nfa domain;                // C_P; never empty
};

// Classes with non-empty domain; disjoint, and their union is the part of
// dom(f) covered by at least one component.
std::vector<PartitionClass> partition_classes(
    const Transducer& f, const std::vector<Transducer>& comps);

// Product of f with every component (all completed first), final exactly
// when f accepts and the accepting components are exactly P. Trimmed;
// component_final keeps, per state, which of the m components is final.
struct ClassProduct {
  Transducer machine;
  std::vector<std::vector<bool>> component_final;
};
ClassProduct build_class_product(const Transducer& f,
                                 const std::vector<Transducer>& comps,
                                 const std::vector<int>& p);

// Same product with the relaxed policy: final exactly when f accepts. The
// boundedness automaton runs on this machine.
ClassProduct global_product(const Transducer& f,
                            const std::vector<Transducer>& comps);

// Comparison tapes that may serve each final product state: those whose
// component is final there, 1-based tape indices.
ValidTapes valid_tapes_of(const ClassProduct& p);

// Finiteness analysis per class and condensation path: a path is good when
// some tape of P has conjugate loops on the path product.
struct PathReport {
  std::vector<int> sccs;            // path components in the class product
  std::vector<StateId> states;      // surviving states, class product ids
  std::optional<int> witness_tape;  // first member of P that certifies
};
struct ClassReport {
  std::vector<int> members;
  std::vector<PathReport> paths;
  bool ok = true;
};
struct FinitenessReport {
  bool finite = true;
  bool domain_ok = true;
  std::optional<InputWord> domain_witness;  // word of dom(f) no component takes
  std::vector<ClassReport> classes;
};
FinitenessReport finite_relative(const Transducer& f,
                                 const std::vector<Transducer>& comps);

// Least k with pred(k) true: probes 0, then powers of two, then binary
// search inside the bracket. Observing true below false anywhere raises
// PredicateNotMonotone.
long long search_value(const std::function<bool(long long)>& pred);

// Directed distance from the sequential function f to the union of the
// sequential components, Infinite on domain escape or non-conjugate loops,
// otherwise the least k accepted by the boundedness automaton of the full
// product.
DistanceResult relative_distance(const Transducer& f,
                                 const std::vector<Transducer>& comps,
                                 Metric metric);

}  // namespace tdist
