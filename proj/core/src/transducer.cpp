#include "tdist/transducer.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "tdist/error.hpp"

namespace tdist {

namespace {

OutputTuple eps_tuple(int tapes) { return OutputTuple(static_cast<std::size_t>(tapes), ""); }

void check_state(StateId q, int num_states, const char* what) {
  if (q < 0 || q >= num_states)
    throw Error(Errc::UnknownState,
                std::string(what) + " refers to state " + std::to_string(q) +
                    " outside 0.." + std::to_string(num_states - 1));
}

}  // namespace

void Transducer::finalize() {
  if (tape_count < 1)
    throw Error(Errc::ArityMismatch, "machine needs at least one tape");
  for (StateId q : initials) check_state(q, num_states, "initial");
  for (const auto& [q, out] : finals) {
    check_state(q, num_states, "final");
    if (static_cast<int>(out.size()) != tape_count)
      throw Error(Errc::ArityMismatch, "final output tuple has wrong arity");
    for (const auto& w : out)
      if (!output_alphabet.covers_word(w))
        throw Error(Errc::UndeclaredSymbol,
                    "final output '" + w + "' uses undeclared letters");
  }
  for (const auto& t : transitions) {
    check_state(t.from, num_states, "transition source");
    check_state(t.to, num_states, "transition target");
    if (t.letter < 0 || static_cast<std::size_t>(t.letter) >= input_alphabet.size())
      throw Error(Errc::UndeclaredSymbol, "transition letter not declared");
    if (static_cast<int>(t.outputs.size()) != tape_count)
      throw Error(Errc::ArityMismatch, "transition output tuple has wrong arity");
    for (const auto& w : t.outputs)
      if (!output_alphabet.covers_word(w))
        throw Error(Errc::UndeclaredSymbol,
                    "transition output '" + w + "' uses undeclared letters");
  }

  std::sort(initials.begin(), initials.end());
  initials.erase(std::unique(initials.begin(), initials.end()), initials.end());
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()),
                    transitions.end());

  sequential = initials.size() == 1;
  for (std::size_t i = 0; i + 1 < transitions.size() && sequential; ++i)
    if (transitions[i].from == transitions[i + 1].from &&
        transitions[i].letter == transitions[i + 1].letter)
      sequential = false;

  complete = true;
  for (StateId q = 0; q < num_states && complete; ++q)
    for (Symbol a = 0; a < static_cast<Symbol>(input_alphabet.size()); ++a)
      if (from(q, a).empty()) {
        complete = false;
        break;
      }

  // trim flag: reachable and co-reachable for every state
  std::vector<char> fwd(static_cast<std::size_t>(num_states), 0);
  std::deque<StateId> work(initials.begin(), initials.end());
  for (StateId q : initials) fwd[static_cast<std::size_t>(q)] = 1;
  while (!work.empty()) {
    StateId q = work.front();
    work.pop_front();
    for (const auto& t : from(q))
      if (!fwd[static_cast<std::size_t>(t.to)]) {
        fwd[static_cast<std::size_t>(t.to)] = 1;
        work.push_back(t.to);
      }
  }
  std::vector<std::vector<StateId>> rev(static_cast<std::size_t>(num_states));
  for (const auto& t : transitions) rev[static_cast<std::size_t>(t.to)].push_back(t.from);
  std::vector<char> bwd(static_cast<std::size_t>(num_states), 0);
  for (const auto& [q, out] : finals) {
    (void)out;
    if (!bwd[static_cast<std::size_t>(q)]) {
      bwd[static_cast<std::size_t>(q)] = 1;
      work.push_back(q);
    }
  }
  while (!work.empty()) {
    StateId q = work.front();
    work.pop_front();
    for (StateId p : rev[static_cast<std::size_t>(q)])
      if (!bwd[static_cast<std::size_t>(p)]) {
        bwd[static_cast<std::size_t>(p)] = 1;
        work.push_back(p);
      }
  }
  trim = true;
  for (StateId q = 0; q < num_states; ++q)
    if (!fwd[static_cast<std::size_t>(q)] || !bwd[static_cast<std::size_t>(q)]) {
      trim = false;
      break;
    }
}

const OutputTuple* Transducer::final_output(StateId q) const {
  auto it = finals.find(q);
  return it == finals.end() ? nullptr : &it->second;
}

std::span<const Transition> Transducer::from(StateId q) const {
  auto lo = std::partition_point(transitions.begin(), transitions.end(),
                                 [q](const Transition& t) { return t.from < q; });
  auto hi = std::partition_point(lo, transitions.end(),
                                 [q](const Transition& t) { return t.from <= q; });
  return {lo, hi};
}

std::span<const Transition> Transducer::from(StateId q, Symbol a) const {
  auto key_less = [](const Transition& t, std::pair<StateId, Symbol> k) {
    return t.from < k.first || (t.from == k.first && t.letter < k.second);
  };
  auto lo = std::partition_point(
      transitions.begin(), transitions.end(),
      [&](const Transition& t) { return key_less(t, {q, a}); });
  auto hi = std::partition_point(lo, transitions.end(), [&](const Transition& t) {
    return t.from == q && t.letter == a;
  });
  return {lo, hi};
}

const Transition* Transducer::step(StateId q, Symbol a) const {
  auto span = from(q, a);
  return span.empty() ? nullptr : &span.front();
}

Transducer build_machine(const MachineDesc& desc, bool require_sequential) {
  if (desc.states.empty())
    throw Error(Errc::EmptyMachine,
                "machine '" + desc.name + "' declares no states");

  Transducer m;
  m.input_alphabet = Alphabet::from_letters(desc.input_letters);
  m.output_alphabet = Alphabet::from_letters(desc.output_letters);
  m.tape_count = 1;
  m.num_states = static_cast<int>(desc.states.size());

  std::map<std::string, StateId> ids;
  for (const auto& s : desc.states) {
    if (ids.count(s.id))
      throw Error(Errc::DuplicateName, "state '" + s.id + "' declared twice");
    StateId q = static_cast<StateId>(ids.size());
    ids.emplace(s.id, q);
    if (s.initial) m.initials.push_back(q);
    if (s.final) m.finals.emplace(q, OutputTuple{s.final_output});
  }

  auto state_of = [&](const std::string& name) {
    auto it = ids.find(name);
    if (it == ids.end())
      throw Error(Errc::UnknownState, "state '" + name + "' not declared");
    return it->second;
  };
  for (const auto& a : desc.arrows) {
    Transition t;
    t.from = state_of(a.from);
    t.to = state_of(a.to);
    t.letter = m.input_alphabet.require(a.letter);
    t.outputs = {a.output};
    m.transitions.push_back(std::move(t));
  }

  m.finalize();

  if (require_sequential && !m.sequential) {
    if (m.initials.size() != 1)
      throw Error(Errc::NonSequentialComponent,
                  "machine '" + desc.name + "' needs exactly one initial state");
    for (std::size_t i = 0; i + 1 < m.transitions.size(); ++i)
      if (m.transitions[i].from == m.transitions[i + 1].from &&
          m.transitions[i].letter == m.transitions[i + 1].letter)
        throw Error(Errc::DuplicateTransitionOnSequentialFlag,
                    "machine '" + desc.name + "' has two moves from state " +
                        std::to_string(m.transitions[i].from) + " on '" +
                        m.input_alphabet.name(m.transitions[i].letter) + "'");
  }
  return m;
}

Transducer trim(const Transducer& m) { return trim(m, nullptr); }

Transducer trim(const Transducer& m, std::vector<StateId>* old_of_new) {
  std::size_t n = static_cast<std::size_t>(m.num_states);
  std::vector<char> fwd(n, 0), bwd(n, 0);
  std::deque<StateId> work;
  for (StateId q : m.initials) {
    fwd[static_cast<std::size_t>(q)] = 1;
    work.push_back(q);
  }
  while (!work.empty()) {
    StateId q = work.front();
    work.pop_front();
    for (const auto& t : m.from(q))
      if (!fwd[static_cast<std::size_t>(t.to)]) {
        fwd[static_cast<std::size_t>(t.to)] = 1;
        work.push_back(t.to);
      }
  }
  std::vector<std::vector<StateId>> rev(n);
  for (const auto& t : m.transitions) rev[static_cast<std::size_t>(t.to)].push_back(t.from);
  for (const auto& [q, out] : m.finals) {
    (void)out;
    if (!bwd[static_cast<std::size_t>(q)]) {
      bwd[static_cast<std::size_t>(q)] = 1;
      work.push_back(q);
    }
  }
  while (!work.empty()) {
    StateId q = work.front();
    work.pop_front();
    for (StateId p : rev[static_cast<std::size_t>(q)])
      if (!bwd[static_cast<std::size_t>(p)]) {
        bwd[static_cast<std::size_t>(p)] = 1;
        work.push_back(p);
      }
  }

  std::vector<StateId> new_of_old(n, -1);
  std::vector<StateId> kept;
  for (std::size_t q = 0; q < n; ++q)
    if (fwd[q] && bwd[q]) {
      new_of_old[q] = static_cast<StateId>(kept.size());
      kept.push_back(static_cast<StateId>(q));
    }
  if (old_of_new) *old_of_new = kept;

  Transducer r;
  r.input_alphabet = m.input_alphabet;
  r.output_alphabet = m.output_alphabet;
  r.tape_count = m.tape_count;
  r.num_states = static_cast<int>(kept.size());
  for (StateId q : m.initials)
    if (new_of_old[static_cast<std::size_t>(q)] >= 0)
      r.initials.push_back(new_of_old[static_cast<std::size_t>(q)]);
  for (const auto& t : m.transitions) {
    StateId f = new_of_old[static_cast<std::size_t>(t.from)];
    StateId g = new_of_old[static_cast<std::size_t>(t.to)];
    if (f >= 0 && g >= 0) r.transitions.push_back({f, t.letter, g, t.outputs});
  }
  for (const auto& [q, out] : m.finals)
    if (new_of_old[static_cast<std::size_t>(q)] >= 0)
      r.finals.emplace(new_of_old[static_cast<std::size_t>(q)], out);
  r.finalize();
  return r;
}

Transducer complete(const Transducer& m) {
  std::size_t letters = m.input_alphabet.size();
  if (m.num_states == 0) {
    Transducer r;
    r.input_alphabet = m.input_alphabet;
    r.output_alphabet = m.output_alphabet;
    r.tape_count = m.tape_count;
    r.num_states = 1;
    r.initials = {0};
    for (Symbol a = 0; a < static_cast<Symbol>(letters); ++a)
      r.transitions.push_back({0, a, 0, eps_tuple(m.tape_count)});
    r.finalize();
    return r;
  }
  if (m.complete) return m;

  Transducer r = m;
  StateId sink = r.num_states++;
  for (StateId q = 0; q < m.num_states; ++q)
    for (Symbol a = 0; a < static_cast<Symbol>(letters); ++a)
      if (m.from(q, a).empty())
        r.transitions.push_back({q, a, sink, eps_tuple(m.tape_count)});
  for (Symbol a = 0; a < static_cast<Symbol>(letters); ++a)
    r.transitions.push_back({sink, a, sink, eps_tuple(m.tape_count)});
  r.finalize();
  return r;
}

Transducer project(const Transducer& m, const std::vector<int>& tapes) {
  if (tapes.empty())
    throw Error(Errc::InvalidInput, "projection needs at least one tape");
  for (int i : tapes)
    if (i < 0 || i >= m.tape_count)
      throw Error(Errc::IndexOutOfRange,
                  "tape " + std::to_string(i) + " outside 0.." +
                      std::to_string(m.tape_count - 1));

  auto pick = [&](const OutputTuple& out) {
    OutputTuple r;
    r.reserve(tapes.size());
    for (int i : tapes) r.push_back(out[static_cast<std::size_t>(i)]);
    return r;
  };

  Transducer r;
  r.input_alphabet = m.input_alphabet;
  r.output_alphabet = m.output_alphabet;
  r.tape_count = static_cast<int>(tapes.size());
  r.num_states = m.num_states;
  r.initials = m.initials;
  for (const auto& t : m.transitions)
    r.transitions.push_back({t.from, t.letter, t.to, pick(t.outputs)});
  for (const auto& [q, out] : m.finals) r.finals.emplace(q, pick(out));
  r.finalize();
  return r;
}

Transducer stack_product(
    const std::vector<Transducer>& machines,
    const std::function<bool(const std::vector<bool>&)>& final_policy,
    std::vector<std::vector<bool>>* component_final) {
  if (machines.empty())
    throw Error(Errc::InvalidInput, "product of zero machines");
  const Alphabet& alpha = machines[0].input_alphabet;
  for (const auto& m : machines) {
    if (!(m.input_alphabet == alpha))
      throw Error(Errc::AlphabetMismatch,
                  "product machines must share the input alphabet");
    if (!m.sequential)
      throw Error(Errc::NonSequentialComponent,
                  "product machines must be sequential");
    if (!m.complete)
      throw Error(Errc::InvalidInput, "product machines must be complete");
  }

  std::size_t k = machines.size();
  Alphabet out_alpha = machines[0].output_alphabet;
  for (std::size_t i = 1; i < k; ++i) {
    const Alphabet& b = machines[i].output_alphabet;
    for (std::size_t s = 0; s < b.size(); ++s)
      if (!out_alpha.find(b.name(static_cast<Symbol>(s))))
        out_alpha.add(b.name(static_cast<Symbol>(s)));
  }

  long long total = 1;
  for (const auto& m : machines) total *= m.num_states;
  int tapes = 0;
  for (const auto& m : machines) tapes += m.tape_count;

  auto decode = [&](long long id) {
    std::vector<StateId> tuple(k);
    for (std::size_t i = k; i-- > 0;) {
      tuple[i] = static_cast<StateId>(id % machines[i].num_states);
      id /= machines[i].num_states;
    }
    return tuple;
  };
  auto encode = [&](const std::vector<StateId>& tuple) {
    long long id = 0;
    for (std::size_t i = 0; i < k; ++i) id = id * machines[i].num_states + tuple[i];
    return static_cast<StateId>(id);
  };

  Transducer r;
  r.input_alphabet = alpha;
  r.output_alphabet = out_alpha;
  r.tape_count = tapes;
  r.num_states = static_cast<int>(total);
  if (component_final) component_final->assign(static_cast<std::size_t>(total), {});

  if (total > 0) {
    std::vector<StateId> init(k);
    for (std::size_t i = 0; i < k; ++i) init[i] = machines[i].initials[0];
    r.initials = {encode(init)};

    for (long long id = 0; id < total; ++id) {
      std::vector<StateId> tuple = decode(id);
      std::vector<bool> fv(k);
      for (std::size_t i = 0; i < k; ++i) fv[i] = machines[i].is_final(tuple[i]);
      if (component_final) (*component_final)[static_cast<std::size_t>(id)] = fv;
      if (final_policy(fv)) {
        OutputTuple out;
        out.reserve(static_cast<std::size_t>(tapes));
        for (std::size_t i = 0; i < k; ++i) {
          const OutputTuple* fo = machines[i].final_output(tuple[i]);
          OutputTuple part = fo ? *fo : eps_tuple(machines[i].tape_count);
          out.insert(out.end(), part.begin(), part.end());
        }
        r.finals.emplace(static_cast<StateId>(id), std::move(out));
      }
      for (Symbol a = 0; a < static_cast<Symbol>(alpha.size()); ++a) {
        std::vector<StateId> target(k);
        OutputTuple out;
        out.reserve(static_cast<std::size_t>(tapes));
        for (std::size_t i = 0; i < k; ++i) {
          const Transition* t = machines[i].step(tuple[i], a);
          target[i] = t->to;
          out.insert(out.end(), t->outputs.begin(), t->outputs.end());
        }
        r.transitions.push_back(
            {static_cast<StateId>(id), a, encode(target), std::move(out)});
      }
    }
  }
  r.finalize();
  return r;
}

namespace {

// Local shape used to prune the isomorphism search.
struct StateSig {
  bool final = false;
  OutputTuple final_out;
  std::vector<std::pair<Symbol, OutputTuple>> out_edges, in_edges;

  friend bool operator==(const StateSig&, const StateSig&) = default;
};

std::vector<StateSig> signatures(const Transducer& m) {
  std::vector<StateSig> sig(static_cast<std::size_t>(m.num_states));
  for (StateId q = 0; q < m.num_states; ++q) {
    sig[static_cast<std::size_t>(q)].final = m.is_final(q);
    if (const OutputTuple* fo = m.final_output(q))
      sig[static_cast<std::size_t>(q)].final_out = *fo;
  }
  for (const auto& t : m.transitions) {
    sig[static_cast<std::size_t>(t.from)].out_edges.emplace_back(t.letter, t.outputs);
    sig[static_cast<std::size_t>(t.to)].in_edges.emplace_back(t.letter, t.outputs);
  }
  for (auto& s : sig) {
    std::sort(s.out_edges.begin(), s.out_edges.end());
    std::sort(s.in_edges.begin(), s.in_edges.end());
  }
  return sig;
}

bool extend_mapping(const Transducer& a, const Transducer& b,
                    const std::vector<StateSig>& siga,
                    const std::vector<StateSig>& sigb, std::vector<StateId>& map,
                    std::vector<char>& used, StateId next) {
  if (next == a.num_states) {
    // full verification: transitions, initials and finals must correspond
    std::vector<Transition> mapped;
    mapped.reserve(a.transitions.size());
    for (const auto& t : a.transitions)
      mapped.push_back({map[static_cast<std::size_t>(t.from)], t.letter,
                        map[static_cast<std::size_t>(t.to)], t.outputs});
    std::sort(mapped.begin(), mapped.end());
    if (mapped != b.transitions) return false;
    std::vector<StateId> init;
    for (StateId q : a.initials) init.push_back(map[static_cast<std::size_t>(q)]);
    std::sort(init.begin(), init.end());
    if (init != b.initials) return false;
    std::map<StateId, OutputTuple> fin;
    for (const auto& [q, out] : a.finals)
      fin.emplace(map[static_cast<std::size_t>(q)], out);
    return fin == b.finals;
  }
  for (StateId c = 0; c < b.num_states; ++c) {
    if (used[static_cast<std::size_t>(c)]) continue;
    if (!(siga[static_cast<std::size_t>(next)] == sigb[static_cast<std::size_t>(c)]))
      continue;
    map[static_cast<std::size_t>(next)] = c;
    used[static_cast<std::size_t>(c)] = 1;
    bool ok = true;
    // edges between already mapped states must agree
    for (const auto& t : a.transitions) {
      if (t.from > next || t.to > next) continue;
      Transition want{map[static_cast<std::size_t>(t.from)], t.letter,
                      map[static_cast<std::size_t>(t.to)], t.outputs};
      bool found = false;
      for (const auto& u : b.from(want.from, want.letter))
        if (u.to == want.to && u.outputs == want.outputs) {
          found = true;
          break;
        }
      if (!found) {
        ok = false;
        break;
      }
    }
    if (ok && extend_mapping(a, b, siga, sigb, map, used, next + 1)) return true;
    used[static_cast<std::size_t>(c)] = 0;
  }
  return false;
}

}  // namespace

bool isomorphic(const Transducer& a, const Transducer& b) {
  if (a.num_states != b.num_states || a.tape_count != b.tape_count) return false;
  if (!(a.input_alphabet == b.input_alphabet)) return false;
  if (!(a.output_alphabet == b.output_alphabet)) return false;
  if (a.transitions.size() != b.transitions.size()) return false;
  if (a.initials.size() != b.initials.size()) return false;
  if (a.finals.size() != b.finals.size()) return false;
  if (a.num_states == 0) return true;

  std::vector<StateSig> siga = signatures(a), sigb = signatures(b);
  std::vector<StateId> map(static_cast<std::size_t>(a.num_states), -1);
  std::vector<char> used(static_cast<std::size_t>(b.num_states), 0);
  return extend_mapping(a, b, siga, sigb, map, used, 0);
}

Transducer merge_initials(const Transducer& m) {
  if (m.initials.size() <= 1) return m;

  StateId final_initial = -1;
  for (StateId q : m.initials)
    if (m.is_final(q)) {
      if (final_initial >= 0)
        throw Error(Errc::AmbiguousComponent,
                    "two initial states accept the empty word");
      final_initial = q;
    }

  Transducer r = m;
  StateId fresh = r.num_states++;
  for (StateId q : m.initials)
    for (const auto& t : m.from(q))
      r.transitions.push_back({fresh, t.letter, t.to, t.outputs});
  r.initials = {fresh};
  if (final_initial >= 0) r.finals.emplace(fresh, m.finals.at(final_initial));
  r.finalize();
  return r;
}

bool unambiguous(const Transducer& m) {
  if (m.num_states == 0) return true;
  std::size_t n = static_cast<std::size_t>(m.num_states);
  // pair states (p, q, diverged); diverged==false implies p == q
  auto code = [n](StateId p, StateId q, bool d) {
    return (static_cast<std::size_t>(p) * n + static_cast<std::size_t>(q)) * 2 +
           (d ? 1 : 0);
  };
  std::vector<char> seen(n * n * 2, 0);
  std::deque<std::tuple<StateId, StateId, bool>> work;
  for (StateId p : m.initials)
    for (StateId q : m.initials) {
      bool d = p != q;
      if (!seen[code(p, q, d)]) {
        seen[code(p, q, d)] = 1;
        work.emplace_back(p, q, d);
      }
    }
  while (!work.empty()) {
    auto [p, q, d] = work.front();
    work.pop_front();
    if (d && m.is_final(p) && m.is_final(q)) return false;
    for (Symbol a = 0; a < static_cast<Symbol>(m.input_alphabet.size()); ++a)
      for (const auto& t1 : m.from(p, a))
        for (const auto& t2 : m.from(q, a)) {
          bool nd = d || !(t1 == t2);
          if (!seen[code(t1.to, t2.to, nd)]) {
            seen[code(t1.to, t2.to, nd)] = 1;
            work.emplace_back(t1.to, t2.to, nd);
          }
        }
  }
  return true;
}

}  // namespace tdist
