#include <set>
#include <string>

#include "doctest.h"
#include "support.hpp"
#include "tdist/error.hpp"
#include "tdist/metrics.hpp"

using namespace tdist;

TEST_SUITE("metrics") {

TEST_CASE("edit distance fixed values") {
  CHECK(edit_distance("kitten", "sitting", Metric::Lev) == 3);
  CHECK(edit_distance("aabb", "bbaa", Metric::Lev) == 4);
  CHECK(edit_distance("", "abc", Metric::Lev) == 3);
  CHECK(edit_distance("abc", "abc", Metric::Lev) == 0);

  CHECK(edit_distance("ab", "ba", Metric::Lcs) == 2);
  CHECK(edit_distance("kitten", "sitting", Metric::Lcs) == 5);
  CHECK(edit_distance("aabb", "bbaa", Metric::Lcs) == 4);

  CHECK(edit_distance("ab", "ba", Metric::Dl) == 1);
  CHECK(edit_distance("abcd", "acbd", Metric::Dl) == 1);
  CHECK(edit_distance("aabb", "bbaa", Metric::Dl) == 3);
  CHECK(edit_distance("abab", "baba", Metric::Dl) == 2);
}

TEST_CASE("dl uses the no-reedit transposition") {
  // The transposed block may not be edited again, so ca -> ac -> abc is not
  // available and the distance exceeds the two single steps combined.
  CHECK(edit_distance("ca", "ac", Metric::Dl) == 1);
  CHECK(edit_distance("ac", "abc", Metric::Dl) == 1);
  CHECK(edit_distance("ca", "abc", Metric::Dl) == 3);
}

TEST_CASE("edit distance matches grid search on short words") {
  auto words = ts::all_words("ab", 4);
  for (Metric m : ts::kMetrics)
    for (const auto& u : words)
      for (const auto& v : words)
        CHECK(edit_distance(u, v, m) == ts::bfs_edit(u, v, m));
}

TEST_CASE("edit table borders") {
  auto t = edit_table("abab", "ba", Metric::Lev);
  REQUIRE(t.size() == 5);
  REQUIRE(t[0].size() == 3);
  for (std::size_t i = 0; i <= 4; ++i)
    CHECK(t[i][2] == edit_distance(std::string("abab").substr(0, i), "ba",
                                   Metric::Lev));
  for (std::size_t j = 0; j <= 2; ++j)
    CHECK(t[4][j] == edit_distance("abab", std::string("ba").substr(0, j),
                                   Metric::Lev));
}

TEST_CASE("metric names") {
  CHECK(metric_from_name("lev") == Metric::Lev);
  CHECK(metric_from_name("lcs") == Metric::Lcs);
  CHECK(metric_from_name("dl") == Metric::Dl);
  for (Metric m : ts::kMetrics) CHECK(metric_from_name(metric_name(m)) == m);
  CHECK_THROWS_AS(metric_from_name("hamming"), Error);
}

TEST_CASE("conjugacy") {
  CHECK(conjugate("aabb", "bbaa"));
  CHECK_FALSE(conjugate("aabb", "abab"));
  CHECK(conjugate("", ""));
  CHECK_FALSE(conjugate("a", ""));
  CHECK_FALSE(conjugate("ab", "aab"));
  auto words = ts::all_words("ab", 4);
  for (const auto& u : words)
    for (const auto& v : words)
      CHECK(conjugate(u, v) == ts::rotation_conjugate(u, v));
}

TEST_CASE("primitive root") {
  CHECK(primitive_root("ababab") == "ab");
  CHECK(primitive_root("aaaa") == "a");
  CHECK(primitive_root("abcab") == "abcab");
  CHECK(primitive_root("a") == "a");
  CHECK_THROWS_AS(primitive_root(""), Error);
}

TEST_CASE("conjugacy witnesses") {
  // z solves ab z = z ba exactly when z is in a(ba)*.
  CHECK(conjugacy_witnesses("ab", "ba", 5) ==
        std::set<std::string>{"a", "aba", "ababa"});
  CHECK(conjugacy_witnesses("aabb", "bbaa", 6) ==
        std::set<std::string>{"aa", "aabbaa"});
  CHECK(conjugacy_witnesses("", "", 3) == std::set<std::string>{""});
  CHECK(conjugacy_witnesses("a", "b", 10).empty());
  // every witness satisfies the defining equation
  for (const std::string& z : conjugacy_witnesses("aab", "aba", 9))
    CHECK("aab" + z == z + "aba");
}

TEST_CASE("set distances") {
  WordSet aaaa{"aaaa"};
  WordSet both{"aaaa", "bbbb"};
  CHECK(directed_set_distance(aaaa, both, Metric::Lev) == 0);
  CHECK(directed_set_distance(both, aaaa, Metric::Lev) == 4);
  CHECK(hausdorff_distance(both, aaaa, Metric::Lev) == 4);
  CHECK(hausdorff_distance(aaaa, aaaa, Metric::Lev) == 0);

  WordSet none;
  CHECK(directed_set_distance(none, aaaa, Metric::Lev) == 0);
  CHECK(directed_set_distance(aaaa, none, Metric::Lev) == std::nullopt);
  CHECK(hausdorff_distance(none, none, Metric::Lev) == 0);
  CHECK(hausdorff_distance(aaaa, none, Metric::Lev) == std::nullopt);
}

}  // TEST_SUITE
