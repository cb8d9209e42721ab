#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tdist {

// lev: insertions, deletions, substitutions. lcs: insertions and deletions
// only. dl: lev plus adjacent transposition, in the restricted (optimal
// string alignment) form whose recurrence adds the transposition case for
// u[i-1]u[i] = v[j]v[j-1]; no substring is edited twice.
enum class Metric { Lev, Lcs, Dl };

Metric metric_from_name(std::string_view name);  // "lev" | "lcs" | "dl"
const char* metric_name(Metric m);

// Unit-cost distance; always finite on words.
long long edit_distance(std::string_view u, std::string_view v, Metric m);

// Full prefix table t[i][j] = d(u[0..i), v[0..j)). The last column lists
// d(u-prefix, v) for every prefix, the last row d(u, v-prefix); partial
// match costs in the k-boundedness automaton read off one table.
std::vector<std::vector<long long>> edit_table(std::string_view u,
                                               std::string_view v, Metric m);

// u and v are conjugate when |u| = |v| and v occurs in uu (some rotation of
// u equals v).
bool conjugate(std::string_view u, std::string_view v);

// Shortest p with w in p+; throws EmptyWord on the empty word.
std::string primitive_root(std::string_view w);

// All z with |z| <= max_len and uz = zv, from the factorizations u = xy,
// v = yx via z in x(yx)*. Empty result iff u and v are not conjugate.
// For u = v = empty, every z works; the canonical witness {""} is returned.
std::set<std::string> conjugacy_witnesses(std::string_view u,
                                          std::string_view v,
                                          std::size_t max_len);

using WordSet = std::set<std::string>;

// sup over u in U of inf over v in V; nullopt encodes infinity. The sup
// over an empty U is 0, the inf over an empty V (with U non-empty) infinite.
std::optional<long long> directed_set_distance(const WordSet& u,
                                               const WordSet& v, Metric m);

// max of both directed distances; infinite iff exactly one side is empty.
std::optional<long long> hausdorff_distance(const WordSet& u, const WordSet& v,
                                            Metric m);

}  // namespace tdist
