#include "tdist/nfa.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "tdist/error.hpp"

namespace tdist {

namespace {

void check_state(StateId q, int num_states) {
  if (q < 0 || q >= num_states)
    throw Error(Errc::UnknownState,
                "automaton refers to state " + std::to_string(q) +
                    " outside 0.." + std::to_string(num_states - 1));
}

using StateSet = std::vector<StateId>;  // sorted, unique

// Outgoing edges bucketed per state, letter edges sorted by letter. Built
// once per algorithm so subset steps touch only the states involved.
struct Adjacency {
  std::vector<std::vector<std::pair<Symbol, StateId>>> out;
  std::vector<std::vector<StateId>> eps;

  explicit Adjacency(const Nfa& a)
      : out(static_cast<std::size_t>(a.num_states)),
        eps(static_cast<std::size_t>(a.num_states)) {
    for (const auto& t : a.transitions) {
      if (t.letter == kEpsilonSymbol)
        eps[static_cast<std::size_t>(t.from)].push_back(t.to);
      else
        out[static_cast<std::size_t>(t.from)].push_back({t.letter, t.to});
    }
    for (auto& v : out) std::sort(v.begin(), v.end());
  }
};

StateSet closure(const Adjacency& adj, StateSet set) {
  std::deque<StateId> work(set.begin(), set.end());
  std::set<StateId> seen(set.begin(), set.end());
  while (!work.empty()) {
    StateId q = work.front();
    work.pop_front();
    for (StateId r : adj.eps[static_cast<std::size_t>(q)])
      if (seen.insert(r).second) work.push_back(r);
  }
  return StateSet(seen.begin(), seen.end());
}

StateSet step_set(const Adjacency& adj, const StateSet& set, Symbol letter) {
  StateSet next;
  for (StateId q : set) {
    const auto& edges = adj.out[static_cast<std::size_t>(q)];
    auto it = std::lower_bound(
        edges.begin(), edges.end(),
        std::pair<Symbol, StateId>{letter, std::numeric_limits<StateId>::min()});
    for (; it != edges.end() && it->first == letter; ++it)
      next.push_back(it->second);
  }
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  return closure(adj, std::move(next));
}

bool any_final(const Nfa& a, const StateSet& set) {
  for (StateId q : set)
    if (a.is_final(q)) return true;
  return false;
}

}  // namespace

void Nfa::finalize() {
  for (StateId q : initials) check_state(q, num_states);
  for (StateId q : finals) check_state(q, num_states);
  for (const auto& t : transitions) {
    check_state(t.from, num_states);
    check_state(t.to, num_states);
    if (t.letter == kEpsilonSymbol) {
      if (!allow_epsilon)
        throw Error(Errc::InvalidInput, "epsilon move in an epsilon-free Nfa");
    } else if (t.letter < 0 ||
               static_cast<std::size_t>(t.letter) >= alphabet.size()) {
      throw Error(Errc::UndeclaredSymbol, "automaton letter not declared");
    }
  }
  std::sort(initials.begin(), initials.end());
  initials.erase(std::unique(initials.begin(), initials.end()), initials.end());
  std::sort(finals.begin(), finals.end());
  finals.erase(std::unique(finals.begin(), finals.end()), finals.end());
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()),
                    transitions.end());
}

bool Nfa::is_final(StateId q) const {
  return std::binary_search(finals.begin(), finals.end(), q);
}

Dfa determinize(const Nfa& a) {
  Dfa d;
  d.alphabet = a.alphabet;
  std::size_t letters = a.alphabet.size();
  Adjacency adj(a);

  std::map<StateSet, StateId> id_of;
  std::vector<StateSet> sets;
  auto intern = [&](StateSet s) {
    auto it = id_of.find(s);
    if (it != id_of.end()) return it->second;
    StateId id = static_cast<StateId>(sets.size());
    id_of.emplace(s, id);
    sets.push_back(std::move(s));
    d.next.emplace_back(letters, -1);
    d.accepting.push_back(any_final(a, sets.back()) ? 1 : 0);
    return id;
  };

  d.initial =
      intern(closure(adj, StateSet(a.initials.begin(), a.initials.end())));
  for (StateId id = 0; id < static_cast<StateId>(sets.size()); ++id)
    for (Symbol x = 0; x < static_cast<Symbol>(letters); ++x) {
      StateSet target = step_set(adj, sets[static_cast<std::size_t>(id)], x);
      d.next[static_cast<std::size_t>(id)][static_cast<std::size_t>(x)] =
          intern(std::move(target));
    }
  d.num_states = static_cast<int>(sets.size());
  return d;
}

Dfa complement(Dfa d) {
  for (auto& f : d.accepting) f = f ? 0 : 1;
  return d;
}

bool nfa_accepts(const Nfa& a, const InputWord& w) {
  Adjacency adj(a);
  StateSet cur = closure(adj, StateSet(a.initials.begin(), a.initials.end()));
  for (Symbol x : w) {
    if (cur.empty()) return false;
    cur = step_set(adj, cur, x);
  }
  return any_final(a, cur);
}

bool dfa_accepts(const Dfa& d, const InputWord& w) {
  StateId q = d.initial;
  for (Symbol x : w) q = d.next[static_cast<std::size_t>(q)][static_cast<std::size_t>(x)];
  return d.accepting[static_cast<std::size_t>(q)] != 0;
}

bool language_empty(const Nfa& a) {
  std::set<StateId> seen(a.initials.begin(), a.initials.end());
  std::deque<StateId> work(a.initials.begin(), a.initials.end());
  while (!work.empty()) {
    StateId q = work.front();
    work.pop_front();
    if (a.is_final(q)) return false;
    for (const auto& t : a.transitions)
      if (t.from == q && seen.insert(t.to).second) work.push_back(t.to);
  }
  return true;
}

Nfa domain_nfa(const Transducer& m) {
  Nfa a;
  a.alphabet = m.input_alphabet;
  a.num_states = m.num_states;
  a.initials = m.initials;
  for (const auto& t : m.transitions)
    a.transitions.push_back({t.from, t.letter, t.to});
  for (const auto& [q, out] : m.finals) {
    (void)out;
    a.finals.push_back(q);
  }
  a.finalize();
  return a;
}

Nfa union_nfa(const std::vector<Nfa>& parts) {
  if (parts.empty()) throw Error(Errc::InvalidInput, "union of zero automata");
  Nfa r;
  r.alphabet = parts[0].alphabet;
  for (const auto& p : parts) {
    if (!(p.alphabet == r.alphabet))
      throw Error(Errc::AlphabetMismatch, "union over distinct alphabets");
    if (p.allow_epsilon) r.allow_epsilon = true;
    StateId base = r.num_states;
    r.num_states += p.num_states;
    for (StateId q : p.initials) r.initials.push_back(base + q);
    for (StateId q : p.finals) r.finals.push_back(base + q);
    for (const auto& t : p.transitions)
      r.transitions.push_back({base + t.from, t.letter, base + t.to});
  }
  r.finalize();
  return r;
}

bool language_included(const Nfa& a, const Nfa& b) {
  return !inclusion_witness(a, b).has_value();
}

bool language_equal(const Nfa& a, const Nfa& b) {
  return language_included(a, b) && language_included(b, a);
}

std::optional<InputWord> inclusion_witness(const Nfa& a, const Nfa& b) {
  if (!(a.alphabet == b.alphabet))
    throw Error(Errc::AlphabetMismatch, "inclusion over distinct alphabets");
  std::size_t letters = a.alphabet.size();
  Adjacency aj(a), bj(b);

  // Lazy product of single states of a with exactly the subsets of b a word
  // can reach; only the jointly reachable part is ever built. The subset
  // component is a function of the word, so the first (final, rejecting)
  // pair popped carries the shortest witness, lexicographically least.
  std::map<StateSet, StateId> id_of;
  std::vector<StateSet> sets;
  std::vector<char> set_final;
  std::vector<std::vector<StateId>> set_next;
  auto intern = [&](StateSet s) {
    auto it = id_of.find(s);
    if (it != id_of.end()) return it->second;
    StateId id = static_cast<StateId>(sets.size());
    id_of.emplace(s, id);
    set_final.push_back(any_final(b, s) ? 1 : 0);
    set_next.emplace_back(letters, -1);
    sets.push_back(std::move(s));
    return id;
  };
  auto subset_step = [&](StateId s, Symbol x) {
    StateId cached =
        set_next[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)];
    if (cached < 0) {
      // intern may grow set_next, so write through fresh indices
      cached = intern(step_set(bj, sets[static_cast<std::size_t>(s)], x));
      set_next[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)] =
          cached;
    }
    return cached;
  };

  struct Item {
    StateId p, s;
    InputWord word;
  };
  std::deque<Item> work;
  std::set<std::pair<StateId, StateId>> seen;
  auto push = [&](StateId p, StateId s, const InputWord& w) {
    // the epsilon closure on the left joins with the same word
    std::deque<StateId> cl{p};
    while (!cl.empty()) {
      StateId q = cl.front();
      cl.pop_front();
      if (!seen.insert({q, s}).second) continue;
      work.push_back({q, s, w});
      for (StateId r : aj.eps[static_cast<std::size_t>(q)]) cl.push_back(r);
    }
  };

  StateId s0 = intern(closure(bj, StateSet(b.initials.begin(), b.initials.end())));
  for (StateId p : a.initials) push(p, s0, {});
  while (!work.empty()) {
    Item it = work.front();
    work.pop_front();
    if (a.is_final(it.p) && !set_final[static_cast<std::size_t>(it.s)])
      return it.word;
    const auto& edges = aj.out[static_cast<std::size_t>(it.p)];
    for (std::size_t i = 0; i < edges.size();) {
      Symbol x = edges[i].first;
      StateId s = subset_step(it.s, x);
      InputWord w = it.word;
      w.push_back(x);
      for (; i < edges.size() && edges[i].first == x; ++i)
        push(edges[i].second, s, w);
    }
  }
  return std::nullopt;
}

std::vector<int> steps_to_accepting(const Dfa& d) {
  const int dead = d.num_states + 1;
  std::vector<int> dist(static_cast<std::size_t>(d.num_states), dead);
  std::deque<StateId> work;
  for (StateId q = 0; q < d.num_states; ++q)
    if (d.accepting[static_cast<std::size_t>(q)]) {
      dist[static_cast<std::size_t>(q)] = 0;
      work.push_back(q);
    }
  // reverse BFS
  std::vector<std::vector<StateId>> rev(static_cast<std::size_t>(d.num_states));
  for (StateId q = 0; q < d.num_states; ++q)
    for (StateId t : d.next[static_cast<std::size_t>(q)])
      rev[static_cast<std::size_t>(t)].push_back(q);
  while (!work.empty()) {
    StateId q = work.front();
    work.pop_front();
    for (StateId p : rev[static_cast<std::size_t>(q)])
      if (dist[static_cast<std::size_t>(p)] == dead) {
        dist[static_cast<std::size_t>(p)] = dist[static_cast<std::size_t>(q)] + 1;
        work.push_back(p);
      }
  }
  return dist;
}

}  // namespace tdist
