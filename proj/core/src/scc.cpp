#include "tdist/scc.hpp"

#include <algorithm>

namespace tdist {

SccDecomposition scc_condense(const Transducer& m) {
  std::size_t n = static_cast<std::size_t>(m.num_states);
  SccDecomposition dec;
  dec.comp_of.assign(n, -1);
  if (n == 0) return dec;

  // iterative Tarjan
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<StateId> stack;
  std::vector<int> raw_comp(n, -1);
  int next_index = 0, raw_count = 0;

  struct Frame {
    StateId q;
    std::size_t edge;  // next outgoing transition offset within from(q)
  };
  for (StateId root = 0; root < m.num_states; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] =
        next_index++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto out = m.from(f.q);
      if (f.edge < out.size()) {
        StateId w = out[f.edge++].to;
        if (index[static_cast<std::size_t>(w)] == -1) {
          index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] =
              next_index++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(f.q)] = std::min(
              low[static_cast<std::size_t>(f.q)], index[static_cast<std::size_t>(w)]);
        }
      } else {
        if (low[static_cast<std::size_t>(f.q)] ==
            index[static_cast<std::size_t>(f.q)]) {
          StateId w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = 0;
            raw_comp[static_cast<std::size_t>(w)] = raw_count;
          } while (w != f.q);
          ++raw_count;
        }
        StateId done = f.q;
        frames.pop_back();
        if (!frames.empty())
          low[static_cast<std::size_t>(frames.back().q)] =
              std::min(low[static_cast<std::size_t>(frames.back().q)],
                       low[static_cast<std::size_t>(done)]);
      }
    }
  }

  // Tarjan emits components in reverse topological order; flip so that
  // edges always go from smaller to larger component id.
  dec.comp_count = raw_count;
  dec.comp_of.resize(n);
  for (std::size_t q = 0; q < n; ++q)
    dec.comp_of[q] = raw_count - 1 - raw_comp[q];
  dec.members.assign(static_cast<std::size_t>(raw_count), {});
  for (StateId q = 0; q < m.num_states; ++q)
    dec.members[static_cast<std::size_t>(dec.comp_of[static_cast<std::size_t>(q)])]
        .push_back(q);
  dec.has_cycle.assign(static_cast<std::size_t>(raw_count), 0);
  for (const auto& t : m.transitions)
    if (dec.comp_of[static_cast<std::size_t>(t.from)] ==
        dec.comp_of[static_cast<std::size_t>(t.to)])
      dec.has_cycle[static_cast<std::size_t>(
          dec.comp_of[static_cast<std::size_t>(t.from)])] = 1;
  return dec;
}

std::vector<SccPath> scc_paths(const Transducer& m,
                               const SccDecomposition& dec) {
  std::vector<SccPath> paths;
  if (m.num_states == 0) return paths;

  std::vector<char> has_initial(static_cast<std::size_t>(dec.comp_count), 0);
  std::vector<char> has_final(static_cast<std::size_t>(dec.comp_count), 0);
  for (StateId q : m.initials)
    has_initial[static_cast<std::size_t>(dec.comp_of[static_cast<std::size_t>(q)])] = 1;
  for (const auto& [q, out] : m.finals) {
    (void)out;
    has_final[static_cast<std::size_t>(dec.comp_of[static_cast<std::size_t>(q)])] = 1;
  }

  // bridges leaving each component, as transition indices
  std::vector<std::vector<std::size_t>> bridges_from(
      static_cast<std::size_t>(dec.comp_count));
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const auto& t = m.transitions[i];
    int cf = dec.comp_of[static_cast<std::size_t>(t.from)];
    int ct = dec.comp_of[static_cast<std::size_t>(t.to)];
    if (cf != ct) bridges_from[static_cast<std::size_t>(cf)].push_back(i);
  }

  SccPath cur;
  auto walk = [&](auto&& self, int comp) -> void {
    cur.sccs.push_back(comp);
    if (has_final[static_cast<std::size_t>(comp)]) paths.push_back(cur);
    for (std::size_t b : bridges_from[static_cast<std::size_t>(comp)]) {
      cur.bridges.push_back(b);
      self(self, dec.comp_of[static_cast<std::size_t>(m.transitions[b].to)]);
      cur.bridges.pop_back();
    }
    cur.sccs.pop_back();
  };
  for (int c = 0; c < dec.comp_count; ++c)
    if (has_initial[static_cast<std::size_t>(c)]) walk(walk, c);

  std::sort(paths.begin(), paths.end(), [](const SccPath& a, const SccPath& b) {
    if (a.sccs != b.sccs) return a.sccs < b.sccs;
    return a.bridges < b.bridges;
  });
  return paths;
}

std::vector<SccPath> scc_paths(const Transducer& m) {
  return scc_paths(m, scc_condense(m));
}

Transducer path_submachine(const Transducer& m, const SccDecomposition& dec,
                           const SccPath& path,
                           std::vector<StateId>* kept_states) {
  std::vector<char> on_path(static_cast<std::size_t>(dec.comp_count), 0);
  for (int c : path.sccs) on_path[static_cast<std::size_t>(c)] = 1;
  std::vector<char> bridge(m.transitions.size(), 0);
  for (std::size_t b : path.bridges) bridge[b] = 1;

  Transducer sub;
  sub.input_alphabet = m.input_alphabet;
  sub.output_alphabet = m.output_alphabet;
  sub.tape_count = m.tape_count;
  sub.num_states = m.num_states;
  for (StateId q : m.initials)
    if (on_path[static_cast<std::size_t>(dec.comp_of[static_cast<std::size_t>(q)])])
      sub.initials.push_back(q);
  for (const auto& [q, out] : m.finals)
    if (on_path[static_cast<std::size_t>(dec.comp_of[static_cast<std::size_t>(q)])])
      sub.finals.emplace(q, out);
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const auto& t = m.transitions[i];
    int cf = dec.comp_of[static_cast<std::size_t>(t.from)];
    int ct = dec.comp_of[static_cast<std::size_t>(t.to)];
    bool internal = cf == ct && on_path[static_cast<std::size_t>(cf)];
    if (internal || bridge[i]) sub.transitions.push_back(t);
  }
  sub.finalize();
  return trim(sub, kept_states);
}

}  // namespace tdist
