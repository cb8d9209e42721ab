#include <string>

#include "doctest.h"
#include "support.hpp"
#include "tdist/loopconj.hpp"
#include "tdist/transducer.hpp"

using namespace tdist;

namespace {

// One state, one self loop per (out0, out1) pair given.
Transducer loops_machine(const std::vector<std::pair<std::string, std::string>>&
                             loops) {
  Transducer m;
  m.input_alphabet = Alphabet::from_letters("abcd");
  m.output_alphabet = Alphabet::from_letters("ab");
  m.tape_count = 2;
  m.num_states = 1;
  m.initials = {0};
  Symbol letter = 0;
  for (const auto& [u, v] : loops)
    m.transitions.push_back({0, letter++, 0, {u, v}});
  m.finals[0] = {"", ""};
  m.finalize();
  return m;
}

// Replays a witness walk and returns its output pair.
std::pair<std::string, std::string> replay(const Transducer& m,
                                           const LoopWitness& w) {
  StateId at = w.root;
  std::string u, v;
  for (std::size_t idx : w.transitions) {
    const Transition& t = m.transitions.at(idx);
    REQUIRE(t.from == at);
    u += t.outputs[0];
    v += t.outputs[1];
    at = t.to;
  }
  REQUIRE(at == w.root);
  return {u, v};
}

}  // namespace

TEST_SUITE("loopconj") {

TEST_CASE("single loops") {
  CHECK(loops_conjugate(loops_machine({{"ab", "ba"}}), 1).conjugate);
  CHECK(loops_conjugate(loops_machine({{"", ""}}), 1).conjugate);
  CHECK_FALSE(loops_conjugate(loops_machine({{"a", "b"}}), 1).conjugate);
  CHECK_FALSE(loops_conjugate(loops_machine({{"ab", "aa"}}), 1).conjugate);
  CHECK_FALSE(loops_conjugate(loops_machine({{"a", "aa"}}), 1).conjugate);
}

TEST_CASE("composed loops can break pairwise conjugacy") {
  // both loops conjugate alone and pairwise, yet (ababba, babaab) is not
  Transducer m = loops_machine({{"ab", "ba"}, {"ba", "ab"}});
  LoopCheckResult r = loops_conjugate(m, 1);
  CHECK_FALSE(r.conjugate);
  if (r.witness) {
    auto [u, v] = replay(m, *r.witness);
    CHECK(u == r.witness->out0);
    CHECK(v == r.witness->out1);
    CHECK_FALSE(ts::rotation_conjugate(u, v));
  }
}

TEST_CASE("consistent pair of loops") {
  CHECK(loops_conjugate(loops_machine({{"ab", "ba"}, {"abab", "baba"}}), 1)
            .conjugate);
  CHECK(loops_conjugate(loops_machine({{"a", "a"}, {"aa", "aa"}}), 1)
            .conjugate);
}

TEST_CASE("delay carried around a longer cycle") {
  Transducer m;  // two-state cycle producing (ab, ba) per revolution
  m.input_alphabet = Alphabet::from_letters("a");
  m.output_alphabet = Alphabet::from_letters("ab");
  m.tape_count = 2;
  m.num_states = 2;
  m.initials = {0};
  m.transitions.push_back({0, 0, 1, {"a", "b"}});
  m.transitions.push_back({1, 0, 0, {"b", "a"}});
  m.finals[0] = {"", ""};
  m.finalize();
  CHECK(loops_conjugate(m, 1).conjugate);
  CHECK(ts::closed_walks_conjugate(m, 12));
}

TEST_CASE("scc isolation") {
  Transducer m;  // good loop feeding a bad one
  m.input_alphabet = Alphabet::from_letters("ab");
  m.output_alphabet = Alphabet::from_letters("ab");
  m.tape_count = 2;
  m.num_states = 2;
  m.initials = {0};
  m.transitions.push_back({0, 0, 0, {"a", "a"}});
  m.transitions.push_back({0, 1, 1, {"", ""}});
  m.transitions.push_back({1, 0, 1, {"a", "b"}});
  m.finals[1] = {"", ""};
  m.finalize();
  LoopCheckResult r = loops_conjugate(m, 1);
  CHECK_FALSE(r.conjugate);
  CHECK_FALSE(ts::closed_walks_conjugate(m, 12));

  // the same structure with a consistent second loop passes
  Transducer ok = m;
  ok.transitions[2].outputs = {"a", "a"};
  ok.finalize();
  CHECK(loops_conjugate(ok, 1).conjugate);
}

TEST_CASE("acyclic machines pass trivially") {
  Transducer m;
  m.input_alphabet = Alphabet::from_letters("a");
  m.output_alphabet = Alphabet::from_letters("ab");
  m.tape_count = 2;
  m.num_states = 2;
  m.initials = {0};
  m.transitions.push_back({0, 0, 1, {"a", "b"}});
  m.finals[1] = {"", ""};
  m.finalize();
  CHECK(loops_conjugate(m, 1).conjugate);
  CHECK(pair_finite(m, 1));
}

TEST_CASE("third tape selects the compared pair") {
  Transducer m;  // tape 1 disagrees, tape 2 agrees
  m.input_alphabet = Alphabet::from_letters("a");
  m.output_alphabet = Alphabet::from_letters("ab");
  m.tape_count = 3;
  m.num_states = 1;
  m.initials = {0};
  m.transitions.push_back({0, 0, 0, {"a", "b", "a"}});
  m.finals[0] = {"", "", ""};
  m.finalize();
  CHECK_FALSE(loops_conjugate(m, 1).conjugate);
  CHECK(loops_conjugate(m, 2).conjugate);
  CHECK_FALSE(pair_finite(m, 1));
  CHECK(pair_finite(m, 2));
}

}  // TEST_SUITE
