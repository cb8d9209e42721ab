#pragma once

// Shared fixtures and reference implementations for the tests. Reference
// code here is deliberately naive and independent of the decision
// procedures it cross-checks.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tdist/error.hpp"
#include "tdist/fst_format.hpp"
#include "tdist/metrics.hpp"
#include "tdist/transducer.hpp"

namespace ts {

inline const std::vector<tdist::Metric> kMetrics{
    tdist::Metric::Lev, tdist::Metric::Lcs, tdist::Metric::Dl};

// ---------------------------------------------------------------------------
// Words

inline std::vector<std::string> all_words(const std::string& letters,
                                          int max_len) {
  std::vector<std::string> out{""};
  std::size_t lo = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t hi = out.size();
    for (std::size_t i = lo; i < hi; ++i)
      for (char c : letters) out.push_back(out[i] + c);
    lo = hi;
  }
  return out;
}

inline tdist::InputWord to_input(const tdist::Alphabet& a, std::string_view w) {
  tdist::InputWord out;
  for (char c : w) out.push_back(a.require(std::string_view(&c, 1)));
  return out;
}

inline std::string from_input(const tdist::Alphabet& a,
                              const tdist::InputWord& w) {
  std::string out;
  for (tdist::Symbol s : w) out += a.name(s);
  return out;
}

// ---------------------------------------------------------------------------
// Reference metrics

// Conjugacy by trying every rotation.
inline bool rotation_conjugate(std::string_view u, std::string_view v) {
  if (u.size() != v.size()) return false;
  if (u.empty()) return true;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (std::string(u.substr(i)) + std::string(u.substr(0, i)) == v)
      return true;
  return false;
}

// Shortest edit script by 0-1 search over the alignment grid, transposition
// edges included for dl in the no-reedit form.
inline long long bfs_edit(std::string_view u, std::string_view v,
                          tdist::Metric m) {
  const std::size_t n = u.size(), k = v.size();
  const long long inf = 1LL << 60;
  std::vector<std::vector<long long>> dist(n + 1,
                                           std::vector<long long>(k + 1, inf));
  std::deque<std::pair<std::size_t, std::size_t>> dq;
  dist[0][0] = 0;
  dq.push_back({0, 0});
  auto relax = [&](std::size_t i, std::size_t j, long long d, bool zero) {
    if (d < dist[i][j]) {
      dist[i][j] = d;
      if (zero)
        dq.push_front({i, j});
      else
        dq.push_back({i, j});
    }
  };
  while (!dq.empty()) {
    auto [i, j] = dq.front();
    dq.pop_front();
    long long d = dist[i][j];
    if (i < n) relax(i + 1, j, d + 1, false);
    if (j < k) relax(i, j + 1, d + 1, false);
    if (i < n && j < k) {
      if (u[i] == v[j])
        relax(i + 1, j + 1, d, true);
      else if (m != tdist::Metric::Lcs)
        relax(i + 1, j + 1, d + 1, false);
    }
    if (m == tdist::Metric::Dl && i + 1 < n && j + 1 < k && u[i] == v[j + 1] &&
        u[i + 1] == v[j])
      relax(i + 2, j + 2, d + 1, false);
  }
  return dist[n][k];
}

// ---------------------------------------------------------------------------
// Machines

// One state, initial and final, one self loop per (letter, output) pair.
inline tdist::Transducer one_state(const std::string& ins,
                                   const std::string& outs,
                                   std::vector<std::pair<char, std::string>> loops,
                                   const std::string& fin = "") {
  tdist::MachineDesc d;
  d.name = "m";
  d.input_letters = ins;
  d.output_letters = outs;
  d.states.push_back({"q0", true, true, fin});
  for (auto& [c, o] : loops) d.arrows.push_back({"q0", "q0", std::string(1, c), o});
  return tdist::build_machine(d);
}

// The sequential function f: sigma u -> sigma^{|u|+1} on non-empty words,
// first letter repeated.
inline tdist::Transducer head_rep() {
  tdist::MachineDesc d;
  d.name = "d";
  d.input_letters = "ab";
  d.output_letters = "ab";
  d.states.push_back({"q1", true, false, ""});
  d.states.push_back({"q2", false, true, ""});
  d.states.push_back({"q3", false, true, ""});
  d.arrows.push_back({"q1", "q2", "a", "a"});
  d.arrows.push_back({"q2", "q2", "a", "a"});
  d.arrows.push_back({"q2", "q2", "b", "a"});
  d.arrows.push_back({"q1", "q3", "b", "b"});
  d.arrows.push_back({"q3", "q3", "a", "b"});
  d.arrows.push_back({"q3", "q3", "b", "b"});
  return tdist::build_machine(d);
}

// u -> a^{|u|} and u -> b^{|u|}, the two sequential pieces of g.
inline tdist::Transducer a_rep() {
  return one_state("ab", "ab", {{'a', "a"}, {'b', "a"}});
}
inline tdist::Transducer b_rep() {
  return one_state("ab", "ab", {{'a', "b"}, {'b', "b"}});
}

// f_a: ua -> au realized with a one-letter delay; final exactly when the
// delayed letter is a. f_b symmetric.
inline tdist::Transducer f_last_part(char end) {
  tdist::MachineDesc d;
  d.name = std::string("f") + end;
  d.input_letters = "ab";
  d.output_letters = "ab";
  d.states.push_back({"q0", true, false, ""});
  d.states.push_back({"qa", false, end == 'a', ""});
  d.states.push_back({"qb", false, end == 'b', ""});
  std::string lead(1, end);
  d.arrows.push_back({"q0", "qa", "a", lead});
  d.arrows.push_back({"q0", "qb", "b", lead});
  d.arrows.push_back({"qa", "qa", "a", "a"});
  d.arrows.push_back({"qa", "qb", "b", "a"});
  d.arrows.push_back({"qb", "qa", "a", "b"});
  d.arrows.push_back({"qb", "qb", "b", "b"});
  return tdist::build_machine(d);
}

// Follows the unique run of a sequential machine; nullopt off the domain.
inline std::optional<std::pair<tdist::StateId, tdist::OutputTuple>> run_once(
    const tdist::Transducer& m, const tdist::InputWord& w) {
  if (m.empty() || m.initials.size() != 1) return std::nullopt;
  tdist::StateId q = m.initials[0];
  tdist::OutputTuple acc(m.tape_count, "");
  for (tdist::Symbol a : w) {
    const tdist::Transition* t = m.step(q, a);
    if (!t) return std::nullopt;
    for (int i = 0; i < m.tape_count; ++i) acc[i] += t->outputs[i];
    q = t->to;
  }
  const tdist::OutputTuple* fin = m.final_output(q);
  if (!fin) return std::nullopt;
  for (int i = 0; i < m.tape_count; ++i) acc[i] += (*fin)[i];
  return std::make_pair(q, acc);
}

// Composes closed walks of at most max_edges transitions and checks every
// output pair (tape 0, tape 1) for conjugacy by rotation.
inline bool closed_walks_conjugate(const tdist::Transducer& m, int max_edges) {
  struct Frame {
    tdist::StateId at;
    std::string u, v;
    int depth;
  };
  for (tdist::StateId root = 0; root < m.num_states; ++root) {
    std::vector<Frame> stack{{root, "", "", 0}};
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      if (f.depth > 0 && f.at == root && !rotation_conjugate(f.u, f.v))
        return false;
      if (f.depth == max_edges) continue;
      for (const tdist::Transition& t : m.from(f.at))
        stack.push_back(
            {t.to, f.u + t.outputs[0], f.v + t.outputs[1], f.depth + 1});
    }
  }
  return true;
}

// Random trim sequential machine over single character alphabets; may come
// back empty, callers retry with another seed.
inline tdist::Transducer random_sequential(std::mt19937& rng, int num_states,
                                           int tapes, int max_out,
                                           const std::string& in_letters,
                                           const std::string& out_letters) {
  tdist::Transducer m;
  m.input_alphabet = tdist::Alphabet::from_letters(in_letters);
  m.output_alphabet = tdist::Alphabet::from_letters(out_letters);
  m.tape_count = tapes;
  m.num_states = num_states;
  m.initials = {0};
  std::uniform_int_distribution<int> state(0, num_states - 1);
  std::uniform_int_distribution<int> len(0, max_out);
  std::uniform_int_distribution<int> letter(0, (int)out_letters.size() - 1);
  std::bernoulli_distribution has_move(0.8), is_final(0.4);
  auto word = [&] {
    std::string w;
    for (int i = len(rng); i > 0; --i) w += out_letters[letter(rng)];
    return w;
  };
  for (tdist::StateId q = 0; q < num_states; ++q) {
    for (tdist::Symbol a = 0; a < (tdist::Symbol)m.input_alphabet.size(); ++a) {
      if (!has_move(rng)) continue;
      tdist::Transition t;
      t.from = q;
      t.letter = a;
      t.to = state(rng);
      for (int i = 0; i < tapes; ++i) t.outputs.push_back(word());
      m.transitions.push_back(t);
    }
    if (is_final(rng)) {
      tdist::OutputTuple fin;
      for (int i = 0; i < tapes; ++i) fin.push_back(word());
      m.finals[q] = fin;
    }
  }
  if (m.finals.empty()) {
    tdist::OutputTuple fin(tapes, "");
    m.finals[state(rng)] = fin;
  }
  m.finalize();
  return tdist::trim(m);
}

// ---------------------------------------------------------------------------
// Documents

inline std::vector<tdist::Transducer> load_union(const std::string& text) {
  std::vector<tdist::Transducer> out;
  for (const tdist::MachineDesc& d : tdist::parse_fst(text).machines)
    out.push_back(tdist::build_machine(d));
  return out;
}

inline tdist::Transducer load_one(const std::string& text) {
  return load_union(text).at(0);
}

// ---------------------------------------------------------------------------
// Golden corpus: finite valued pairs with hand-derived distances.

struct GoldenEntry {
  std::string name;
  std::string left, right;  // documents
  tdist::Metric metric = tdist::Metric::Lev;
  std::optional<long long> expected;  // nullopt encodes infinity
};

inline std::vector<GoldenEntry> golden_corpus() {
  using tdist::Metric;
  auto rep = [](const std::string& name, const std::string& out) {
    return "fst " + name +
           "\ninputs a\noutputs a b\nstate q0 initial final \"\"\nq0 q0 a \"" +
           out + "\"\nend\n";
  };
  const std::string arep = rep("arep", "a");
  const std::string brep = rep("brep", "b");
  const std::string abrep = rep("abrep", "ab");
  const std::string barep = rep("barep", "ba");
  const std::string aarep = rep("aarep", "aa");
  const std::string arep_finb =
      "fst arepb\ninputs a\noutputs a b\nstate q0 initial final \"b\"\n"
      "q0 q0 a \"a\"\nend\n";
  auto first = [](const std::string& name, const std::string& lead) {
    return "fst " + name +
           "\ninputs a\noutputs a b\nstate q0 initial final \"\"\n"
           "state q1 final \"\"\nq0 q1 a \"" +
           lead + "\"\nq1 q1 a \"a\"\nend\n";
  };
  auto astar_bstar = [](const std::string& name, const std::string& oa,
                        const std::string& ob) {
    return "fst " + name +
           "\ninputs a b\noutputs a b\nstate q0 initial final \"\"\n"
           "state q1 final \"\"\nq0 q0 a \"" +
           oa + "\"\nq0 q1 b \"" + ob + "\"\nq1 q1 b \"" + ob + "\"\nend\n";
  };
  auto astar_b = [](const std::string& name, const std::string& ob) {
    return "fst " + name +
           "\ninputs a b\noutputs a b\nstate q0 initial\nstate q1 final \"\"\n"
           "q0 q0 a \"a\"\nq0 q1 b \"" +
           ob + "\"\nend\n";
  };
  auto aplus = [](const std::string& name, const std::string& lead) {
    return "fst " + name +
           "\ninputs a\noutputs a b\nstate q0 initial\nstate q1 final \"\"\n"
           "q0 q1 a \"" +
           lead + "\"\nq1 q1 a \"a\"\nend\n";
  };
  auto ab_cycle = [](const std::string& name, const std::string& oa,
                     const std::string& ob) {
    return "fst " + name +
           "\ninputs a b\noutputs a b\nstate q0 initial final \"\"\n"
           "state q1\nq0 q1 a \"" +
           oa + "\"\nq1 q0 b \"" + ob + "\"\nend\n";
  };
  const std::string none =
      "fst none\ninputs a\noutputs a b\nstate q0 initial\nq0 q0 a \"a\"\nend\n";

  std::vector<GoldenEntry> c;
  c.push_back({"self-unary", arep, arep, Metric::Lev, 0});
  c.push_back({"pair-swap-lev", abrep + "\n" + barep, abrep, Metric::Lev, 2});
  c.push_back({"pair-swap-lcs", abrep + "\n" + barep, abrep, Metric::Lcs, 2});
  c.push_back({"pair-swap-dl", abrep + "\n" + barep, abrep, Metric::Dl, 2});
  c.push_back({"letter-split-lev", arep + "\n" + brep, arep, Metric::Lev,
               std::nullopt});
  c.push_back({"letter-split-lcs", arep + "\n" + brep, arep, Metric::Lcs,
               std::nullopt});
  c.push_back({"letter-split-dl", arep + "\n" + brep, arep, Metric::Dl,
               std::nullopt});
  c.push_back({"first-b-lev", arep, first("firstb", "b"), Metric::Lev, 1});
  c.push_back({"first-b-lcs", arep, first("firstb", "b"), Metric::Lcs, 2});
  c.push_back({"first-bb-lev", arep, first("firstbb", "bb"), Metric::Lev, 2});
  c.push_back({"final-word-lev", arep_finb, arep, Metric::Lev, 1});
  c.push_back({"final-word-dl", arep_finb, arep, Metric::Dl, 1});
  c.push_back({"swap-lev", abrep, barep, Metric::Lev, 2});
  c.push_back({"swap-dl", abrep, barep, Metric::Dl, 2});
  c.push_back({"swap-lcs", abrep, barep, Metric::Lcs, 2});
  c.push_back({"erase-b-lev", astar_bstar("ident", "a", "b"),
               astar_bstar("aify", "a", "a"), Metric::Lev, std::nullopt});
  c.push_back({"last-b-lev", astar_b("lastb", "b"), astar_b("lastba", "a"),
               Metric::Lev, 1});
  c.push_back({"two-comp-self", abrep + "\n" + barep, abrep + "\n" + barep,
               Metric::Lev, 0});
  c.push_back({"three-comp-lev", abrep + "\n" + barep + "\n" + aarep,
               abrep + "\n" + aarep, Metric::Lev, 2});
  c.push_back({"dom-gap-lev", arep, aplus("aplus", "a"), Metric::Lev,
               std::nullopt});
  c.push_back({"shift-lev", aplus("aplus", "a"), aplus("ashift", "aa"),
               Metric::Lev, 1});
  c.push_back({"cycle-swap-dl", ab_cycle("abident", "a", "b"),
               ab_cycle("abswap", "b", "a"), Metric::Dl, 2});
  c.push_back({"empty-self", none, none, Metric::Lev, 0});
  c.push_back({"grow-lcs", arep, abrep, Metric::Lcs, std::nullopt});
  return c;
}

// ---------------------------------------------------------------------------
// Tool runner

struct ToolResult {
  int exit_code = -1;
  std::string out;
  nlohmann::json json;  // discarded (null) when stdout is not an object
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s)
    if (c == '\'')
      q += "'\\''";
    else
      q += c;
  return q + "'";
}

inline ToolResult run_tool(const std::vector<std::string>& args) {
  std::string cmd = shell_quote(TDIST_BIN);
  for (const std::string& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";
  ToolResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  if (!r.out.empty() && r.out[0] == '{')
    r.json = nlohmann::json::parse(r.out, nullptr, false);
  return r;
}

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    char tmpl[] = "/tmp/tdist-test-XXXXXX";
    path = ::mkdtemp(tmpl);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string write(const std::string& name, const std::string& text) const {
    std::filesystem::path file = path / name;
    FILE* f = std::fopen(file.c_str(), "w");
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
    return file.string();
  }
};

}  // namespace ts
