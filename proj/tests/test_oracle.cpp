#include <set>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "tdist/error.hpp"
#include "tdist/nfa.hpp"
#include "tdist/oracle.hpp"

using namespace tdist;

TEST_SUITE("oracle") {

TEST_CASE("run outputs") {
  Transducer d = ts::head_rep();
  CHECK(run_outputs(d, ts::to_input(d.input_alphabet, "ab")) ==
        std::set<OutputTuple>{{"aa"}});
  CHECK(run_outputs(d, ts::to_input(d.input_alphabet, "ba")) ==
        std::set<OutputTuple>{{"bb"}});
  CHECK(run_outputs(d, {}).empty());  // the empty word is off the domain

  // off the domain the set is empty
  Transducer fa = ts::f_last_part('a');
  CHECK(run_outputs(fa, ts::to_input(fa.input_alphabet, "ab")).empty());
  CHECK_THROWS_AS(run_outputs(d, ts::to_input(d.input_alphabet, "aaa"), 2),
                  Error);
}

TEST_CASE("moving the last letter to the front") {
  Transducer fa = ts::f_last_part('a');
  Transducer fb = ts::f_last_part('b');
  CHECK(unambiguous(fa));
  CHECK(fa.sequential);
  CHECK(run_outputs(fa, ts::to_input(fa.input_alphabet, "ba")) ==
        std::set<OutputTuple>{{"ab"}});
  CHECK(run_outputs(fa, ts::to_input(fa.input_alphabet, "a")) ==
        std::set<OutputTuple>{{"a"}});
  CHECK(run_outputs(fa, ts::to_input(fa.input_alphabet, "baa")) ==
        std::set<OutputTuple>{{"aba"}});

  CHECK(union_outputs({fa, fb}, ts::to_input(fa.input_alphabet, "ba")) ==
        WordSet{"ab"});
  CHECK(union_outputs({fa, fb}, ts::to_input(fa.input_alphabet, "ab")) ==
        WordSet{"ba"});
  CHECK(union_outputs({fa, fb}, {}).empty());

  // the union realizes u sigma -> sigma u on every nonempty word
  for (const auto& w : ts::all_words("ab", 5)) {
    if (w.empty()) continue;
    std::string moved = w.back() + w.substr(0, w.size() - 1);
    CHECK(union_outputs({fa, fb}, ts::to_input(fa.input_alphabet, w)) ==
          WordSet{moved});
  }
}

TEST_CASE("union outputs pool every component") {
  Transducer d1 = ts::a_rep();
  Transducer d2 = ts::b_rep();
  CHECK(union_outputs({d1, d2}, ts::to_input(d1.input_alphabet, "ab")) ==
        WordSet{"aa", "bb"});
}

TEST_CASE("accepted word enumeration") {
  Nfa dom;  // a* b
  dom.alphabet = Alphabet::from_letters("ab");
  dom.num_states = 2;
  dom.initials = {0};
  dom.transitions.push_back({0, 0, 0});
  dom.transitions.push_back({0, 1, 1});
  dom.finals = {1};
  dom.finalize();

  std::set<std::string> seen;
  for_each_accepted(determinize(dom), 4, [&](const InputWord& w) {
    seen.insert(ts::from_input(dom.alphabet, w));
  });
  CHECK(seen == std::set<std::string>{"b", "ab", "aab", "aaab"});
}

TEST_CASE("distance trend on the two examples") {
  std::vector<Transducer> r1{ts::a_rep(), ts::b_rep()};
  std::vector<Transducer> s1{ts::a_rep()};
  TrendReport t1 = oracle_distance(r1, s1, 8, Metric::Lev);
  REQUIRE(t1.per_length.size() == 9);
  for (int n = 0; n <= 8; ++n) CHECK(t1.per_length[n] == n);
  CHECK(t1.growing);
  CHECK(t1.infinite_verdict());

  auto abrep = ts::one_state("ab", "ab", {{'a', "ab"}, {'b', "ab"}});
  auto barep = ts::one_state("ab", "ab", {{'a', "ba"}, {'b', "ba"}});
  TrendReport t2 = oracle_distance({abrep, barep}, {abrep}, 8, Metric::Lev);
  CHECK(t2.per_length[0] == 0);
  CHECK(t2.per_length[1] == 2);
  CHECK(t2.plateau_value == 2);
  CHECK_FALSE(t2.growing);
  CHECK_FALSE(t2.infinite_verdict());

  TrendReport self = oracle_distance(r1, r1, 6, Metric::Lev);
  CHECK(self.plateau_value == 0);
  CHECK_FALSE(self.infinite_verdict());
}

TEST_CASE("relative trend") {
  Transducer d = ts::head_rep();
  std::vector<Transducer> comps{ts::a_rep(), ts::b_rep()};
  TrendReport head = oracle_relative(d, comps, 8, Metric::Lev);
  CHECK(head.plateau_value == 0);
  CHECK_FALSE(head.infinite_verdict());

  // against the a-repeater alone the b branch drifts without bound
  TrendReport rev = oracle_relative(d, {ts::a_rep()}, 8, Metric::Lev);
  CHECK(rev.growing);
  CHECK_FALSE(rev.domain_mismatch);

  // domain escape is witnessed by the shortest escaping word
  Transducer all = ts::one_state("ab", "ab", {{'a', "a"}, {'b', "b"}});
  Transducer aplus = ts::load_one(
      "fst aplus\ninputs a b\noutputs a\nstate q0 initial\nstate q1 final "
      "\"\"\nq0 q1 a \"a\"\nq1 q1 a \"a\"\nend\n");
  TrendReport esc = oracle_relative(all, {aplus}, 4, Metric::Lev);
  CHECK(esc.domain_mismatch);
  REQUIRE(esc.mismatch_witness.has_value());
  CHECK(esc.mismatch_witness->empty());
  CHECK(esc.infinite_verdict());
}

}  // TEST_SUITE
