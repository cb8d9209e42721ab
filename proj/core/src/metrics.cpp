#include "tdist/metrics.hpp"

#include <algorithm>

#include "tdist/error.hpp"

namespace tdist {

Metric metric_from_name(std::string_view name) {
  if (name == "lev") return Metric::Lev;
  if (name == "lcs") return Metric::Lcs;
  if (name == "dl") return Metric::Dl;
  throw Error(Errc::InvalidInput, "unknown metric '" + std::string(name) + "'");
}

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::Lev: return "lev";
    case Metric::Lcs: return "lcs";
    case Metric::Dl: return "dl";
  }
  return "?";
}

std::vector<std::vector<long long>> edit_table(std::string_view u,
                                               std::string_view v, Metric m) {
  std::size_t n = u.size(), k = v.size();
  std::vector<std::vector<long long>> t(n + 1, std::vector<long long>(k + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) t[i][0] = static_cast<long long>(i);
  for (std::size_t j = 0; j <= k; ++j) t[0][j] = static_cast<long long>(j);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= k; ++j) {
      long long best = std::min(t[i - 1][j], t[i][j - 1]) + 1;
      if (u[i - 1] == v[j - 1]) {
        best = std::min(best, t[i - 1][j - 1]);
      } else if (m != Metric::Lcs) {
        best = std::min(best, t[i - 1][j - 1] + 1);
      }
      if (m == Metric::Dl && i >= 2 && j >= 2 && u[i - 1] == v[j - 2] &&
          u[i - 2] == v[j - 1])
        best = std::min(best, t[i - 2][j - 2] + 1);
      t[i][j] = best;
    }
  return t;
}

long long edit_distance(std::string_view u, std::string_view v, Metric m) {
  return edit_table(u, v, m)[u.size()][v.size()];
}

bool conjugate(std::string_view u, std::string_view v) {
  if (u.size() != v.size()) return false;
  std::string uu(u);
  uu += u;
  return uu.find(v) != std::string::npos;
}

std::string primitive_root(std::string_view w) {
  if (w.empty()) throw Error(Errc::EmptyWord, "the empty word has no root");
  for (std::size_t d = 1; d <= w.size(); ++d) {
    if (w.size() % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < w.size() && periodic; ++i)
      periodic = w[i] == w[i - d];
    if (periodic) return std::string(w.substr(0, d));
  }
  return std::string(w);  // unreachable, d = |w| always matches
}

std::set<std::string> conjugacy_witnesses(std::string_view u,
                                          std::string_view v,
                                          std::size_t max_len) {
  std::set<std::string> out;
  if (u.size() != v.size()) return out;
  if (u.empty()) {
    out.insert("");
    return out;
  }
  for (std::size_t i = 0; i <= u.size(); ++i) {
    std::string_view x = u.substr(0, i), y = u.substr(i);
    std::string rotated(y);
    rotated += x;
    if (rotated != v) continue;
    // z in x(yx)*, and yx == v, so successive witnesses append v
    for (std::string z(x); z.size() <= max_len; z += rotated) out.insert(z);
  }
  return out;
}

std::optional<long long> directed_set_distance(const WordSet& u,
                                               const WordSet& v, Metric m) {
  if (u.empty()) return 0;
  if (v.empty()) return std::nullopt;
  long long sup = 0;
  for (const auto& a : u) {
    long long inf = -1;
    for (const auto& b : v) {
      long long d = edit_distance(a, b, m);
      if (inf < 0 || d < inf) inf = d;
    }
    sup = std::max(sup, inf);
  }
  return sup;
}

std::optional<long long> hausdorff_distance(const WordSet& u, const WordSet& v,
                                            Metric m) {
  auto fwd = directed_set_distance(u, v, m);
  auto bwd = directed_set_distance(v, u, m);
  if (!fwd || !bwd) return std::nullopt;
  return std::max(*fwd, *bwd);
}

}  // namespace tdist
