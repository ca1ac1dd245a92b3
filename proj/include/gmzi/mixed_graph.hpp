#pragma once

#include <algorithm>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gmzi/errors.hpp"

namespace gmzi {

// Interconnect topology for the all-to-all switching network that places one
// small GMZI at every module: vertices are modules, each undirected edge
// carries a shared entangler between a fixed pair of modules, and each
// directed edge is a one-way fiber from one module's GMZI output to another
// module's GMZI input.
class MixedGraph {
 public:
  MixedGraph(int n_vertices, std::vector<std::pair<int, int>> undirected,
             std::vector<std::pair<int, int>> directed)
      : n_(n_vertices),
        undirected_(std::move(undirected)),
        directed_(std::move(directed)) {
    if (n_ < 2) {
      throw std::invalid_argument("MixedGraph: need at least two vertices");
    }
    for (auto& e : undirected_) {
      check_vertex(e.first);
      check_vertex(e.second);
      if (e.first == e.second) {
        throw std::invalid_argument("MixedGraph: undirected self-loop");
      }
      if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(undirected_.begin(), undirected_.end());
    for (const auto& a : directed_) {
      check_vertex(a.first);
      check_vertex(a.second);
      if (a.first == a.second) {
        throw std::invalid_argument("MixedGraph: directed self-loop");
      }
    }
    std::sort(directed_.begin(), directed_.end());
    mate_.assign(static_cast<size_t>(n_) + 1, 0);
    for (const auto& e : undirected_) {
      if (mate_[static_cast<size_t>(e.first)] != 0 ||
          mate_[static_cast<size_t>(e.second)] != 0) {
        throw std::invalid_argument(
            "MixedGraph: vertex on more than one undirected edge");
      }
      mate_[static_cast<size_t>(e.first)] = e.second;
      mate_[static_cast<size_t>(e.second)] = e.first;
    }
    out_.assign(static_cast<size_t>(n_) + 1, {});
    in_.assign(static_cast<size_t>(n_) + 1, {});
    for (const auto& a : directed_) {
      out_[static_cast<size_t>(a.first)].push_back(a.second);
      in_[static_cast<size_t>(a.second)].push_back(a.first);
    }
    for (int v = 1; v <= n_; ++v) {
      std::sort(out_[static_cast<size_t>(v)].begin(), out_[static_cast<size_t>(v)].end());
      std::sort(in_[static_cast<size_t>(v)].begin(), in_[static_cast<size_t>(v)].end());
    }
  }

  int n_vertices() const { return n_; }
  const std::vector<std::pair<int, int>>& undirected_edges() const { return undirected_; }
  const std::vector<std::pair<int, int>>& directed_edges() const { return directed_; }

  // Partner on the unique undirected edge at v, or 0 when v has none.
  int mate(int v) const {
    check_vertex(v);
    return mate_[static_cast<size_t>(v)];
  }

  const std::vector<int>& out_neighbors(int v) const {
    check_vertex(v);
    return out_[static_cast<size_t>(v)];
  }

  const std::vector<int>& in_neighbors(int v) const {
    check_vertex(v);
    return in_[static_cast<size_t>(v)];
  }

  bool has_directed(int from, int to) const {
    const auto& row = out_neighbors(from);
    return std::binary_search(row.begin(), row.end(), to);
  }

 private:
  void check_vertex(int v) const {
    if (v < 1 || v > n_) {
      throw std::invalid_argument("MixedGraph: vertex " + std::to_string(v) +
                                  " out of range 1.." + std::to_string(n_));
    }
  }

  int n_;
  std::vector<std::pair<int, int>> undirected_;
  std::vector<std::pair<int, int>> directed_;
  std::vector<int> mate_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// Builds the standard topology on n modules (n even, >= 4). Modules are
// grouped into entangled pairs (1,2), (3,4), ..., and every time a new pair
// (n1,n2) joins the pairs already present, four fibers are strung against
// each old pair (o1,o2):
//   n1 -> o1,  o1 -> n2,  n2 -> o2,  o2 -> n1
// which is a directed four-cycle alternating between the two pairs. The
// four-vertex base case is exactly one such cycle: 3->1, 1->4, 4->2, 2->3.
// Every vertex ends up with out-degree and in-degree n/2 - 1 and the total
// fiber count is 4 * C(n/2, 2).
inline MixedGraph build_mixed_graph(int n_vertices) {
  if (n_vertices < 4 || n_vertices % 2 != 0) {
    throw std::invalid_argument(
        "build_mixed_graph: need an even vertex count >= 4");
  }
  std::vector<std::pair<int, int>> undirected;
  for (int k = 1; k <= n_vertices / 2; ++k) {
    undirected.emplace_back(2 * k - 1, 2 * k);
  }
  std::vector<std::pair<int, int>> directed;
  for (int p = 2; p <= n_vertices / 2; ++p) {
    const int n1 = 2 * p - 1;
    const int n2 = 2 * p;
    for (int q = 1; q < p; ++q) {
      const int o1 = 2 * q - 1;
      const int o2 = 2 * q;
      directed.emplace_back(n1, o1);
      directed.emplace_back(o1, n2);
      directed.emplace_back(n2, o2);
      directed.emplace_back(o2, n1);
    }
  }
  return MixedGraph(n_vertices, std::move(undirected), std::move(directed));
}

struct GraphValidation {
  // The three headline checks: equal in/out fiber degree at every vertex,
  // undirected edges forming a perfect matching, and every vertex lying on
  // an oriented three-cycle in which undirected edges count as bidirectional.
  bool degree_balanced = true;
  bool perfect_matching = true;
  bool three_cycles = true;
  std::vector<std::string> issues;

  bool ok() const {
    return degree_balanced && perfect_matching && three_cycles && issues.empty();
  }
};

// Checks the structural properties that the short-route guarantee rests on.
// Besides the three headline checks in GraphValidation it also verifies that
// fibers never run inside an entangled pair, that between any two pairs the
// four fibers form one alternating directed four-cycle, and that every two
// vertices u, v from different pairs have a fiber u -> mate(v) or
// v -> mate(u), which is what bounds a route at three GMZI traversals.
inline GraphValidation validate_mixed_graph(const MixedGraph& g) {
  GraphValidation result;
  auto flag = [&result](std::string msg) {
    result.issues.push_back(std::move(msg));
  };

  const int n = g.n_vertices();
  if (n < 4 || n % 2 != 0) {
    flag("vertex count must be even and at least 4");
    result.degree_balanced = result.perfect_matching = result.three_cycles = false;
    return result;
  }
  for (int v = 1; v <= n; ++v) {
    if (g.mate(v) == 0) {
      result.perfect_matching = false;
      flag("vertex " + std::to_string(v) + " has no entangler edge");
    }
  }
  if (g.undirected_edges().size() != static_cast<size_t>(n / 2)) {
    result.perfect_matching = false;
    flag("expected " + std::to_string(n / 2) + " entangler edges, found " +
         std::to_string(g.undirected_edges().size()));
  }

  std::set<std::pair<int, int>> seen;
  for (const auto& a : g.directed_edges()) {
    if (!seen.insert(a).second) {
      flag("duplicate fiber " + std::to_string(a.first) + "->" +
           std::to_string(a.second));
    }
    if (g.mate(a.first) == a.second) {
      flag("fiber " + std::to_string(a.first) + "->" + std::to_string(a.second) +
           " runs inside an entangled pair");
    }
  }

  for (int v = 1; v <= n; ++v) {
    const auto out_deg = g.out_neighbors(v).size();
    const auto in_deg = g.in_neighbors(v).size();
    if (out_deg != in_deg) {
      result.degree_balanced = false;
      flag("vertex " + std::to_string(v) + " has out-degree " +
           std::to_string(out_deg) + " but in-degree " + std::to_string(in_deg));
    }
  }

  // Oriented three-cycle through every vertex, treating each undirected edge
  // as a fiber in both directions.
  auto reaches = [&g](int from, int to) {
    return g.has_directed(from, to) || g.mate(from) == to;
  };
  for (int v = 1; v <= n; ++v) {
    bool found = false;
    for (int x = 1; x <= n && !found; ++x) {
      if (x == v || !reaches(v, x)) continue;
      for (int y = 1; y <= n && !found; ++y) {
        if (y == v || y == x) continue;
        if (reaches(x, y) && reaches(y, v)) found = true;
      }
    }
    if (!found) {
      result.three_cycles = false;
      flag("vertex " + std::to_string(v) + " lies on no oriented three-cycle");
    }
  }

  // Per pair-of-pairs: exactly four fibers forming one alternating cycle.
  const auto& pairs = g.undirected_edges();
  for (size_t i = 0; i < pairs.size(); ++i) {
    for (size_t j = i + 1; j < pairs.size(); ++j) {
      const std::vector<int> quad = {pairs[i].first, pairs[i].second,
                                     pairs[j].first, pairs[j].second};
      std::map<int, int> next;
      int count = 0;
      for (int a : quad) {
        for (int b : quad) {
          if (g.has_directed(a, b)) {
            ++count;
            if (next.count(a)) {
              flag("vertex " + std::to_string(a) +
                   " sends two fibers toward pair (" +
                   std::to_string(pairs[j].first) + "," +
                   std::to_string(pairs[j].second) + ")");
            }
            next[a] = b;
          }
        }
      }
      if (count != 4 || next.size() != 4) {
        flag("pairs (" + std::to_string(pairs[i].first) + "," +
             std::to_string(pairs[i].second) + ") and (" +
             std::to_string(pairs[j].first) + "," +
             std::to_string(pairs[j].second) +
             ") are not joined by exactly four fibers");
        continue;
      }
      int cur = quad[0];
      bool closes = true;
      for (int step = 0; step < 4; ++step) {
        auto it = next.find(cur);
        if (it == next.end()) {
          closes = false;
          break;
        }
        const bool cur_in_i = (cur == pairs[i].first || cur == pairs[i].second);
        const bool nxt_in_i =
            (it->second == pairs[i].first || it->second == pairs[i].second);
        if (cur_in_i == nxt_in_i) {
          flag("fiber " + std::to_string(cur) + "->" +
               std::to_string(it->second) + " does not alternate between pairs");
        }
        cur = it->second;
      }
      if (!closes || cur != quad[0]) {
        flag("fibers between pairs (" + std::to_string(pairs[i].first) + "," +
             std::to_string(pairs[i].second) + ") and (" +
             std::to_string(pairs[j].first) + "," +
             std::to_string(pairs[j].second) +
             ") do not close a four-cycle");
      }
    }
  }

  // The property routing actually uses.
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (g.mate(u) == v) continue;
      if (!g.has_directed(u, g.mate(v)) && !g.has_directed(v, g.mate(u))) {
        flag("no short route between " + std::to_string(u) + " and " +
             std::to_string(v) +
             ": neither u->mate(v) nor v->mate(u) exists");
      }
    }
  }
  return result;
}

// The chain of GMZIs one photon passes through, from the module where it is
// emitted to the module whose entangler arm it finally exits on. Consecutive
// vertices must be joined by a fiber; a single-vertex path means the photon
// uses the entangler attached to its own module.
struct PhotonPath {
  std::vector<int> vertices;

  int source() const { return vertices.front(); }
  int arm_vertex() const { return vertices.back(); }
  int traversals() const { return static_cast<int>(vertices.size()); }

  std::vector<std::pair<int, int>> fibers() const {
    std::vector<std::pair<int, int>> result;
    for (size_t i = 0; i + 1 < vertices.size(); ++i) {
      result.emplace_back(vertices[i], vertices[i + 1]);
    }
    return result;
  }
};

// One way to bring the two photons of a requested connection onto the two
// arms of a common entangler. to_first ends on entangler.first's arm,
// to_second on entangler.second's arm.
struct PairRoute {
  std::pair<int, int> entangler;
  PhotonPath to_first;
  PhotonPath to_second;

  int total_traversals() const {
    return to_first.traversals() + to_second.traversals();
  }

  std::vector<std::pair<int, int>> fibers() const {
    auto result = to_first.fibers();
    auto more = to_second.fibers();
    result.insert(result.end(), more.begin(), more.end());
    std::sort(result.begin(), result.end());
    return result;
  }
};

namespace detail {

inline void collect_paths(const MixedGraph& g, int target, int max_traversals,
                          std::vector<int>& current,
                          std::vector<PhotonPath>& found) {
  const int at = current.back();
  if (at == target) {
    found.push_back(PhotonPath{current});
    return;
  }
  if (static_cast<int>(current.size()) >= max_traversals) return;
  for (int next : g.out_neighbors(at)) {
    if (std::find(current.begin(), current.end(), next) != current.end()) {
      continue;
    }
    current.push_back(next);
    collect_paths(g, target, max_traversals, current, found);
    current.pop_back();
  }
}

inline std::vector<PhotonPath> paths_between(const MixedGraph& g, int from,
                                             int to, int max_traversals) {
  std::vector<PhotonPath> found;
  std::vector<int> current = {from};
  collect_paths(g, to, max_traversals, current, found);
  return found;
}

}  // namespace detail

// All ways to serve the connection (u, v) within the per-photon traversal
// budget, sorted by total traversal count, then entangler edge, then the two
// vertex sequences, so the listing order is reproducible. Routes whose two
// photons would share a fiber are dropped.
inline std::vector<PairRoute> enumerate_pair_routes(const MixedGraph& g, int u,
                                                    int v,
                                                    int max_traversals = 4) {
  if (u == v) {
    throw std::invalid_argument("enumerate_pair_routes: identical endpoints");
  }
  if (max_traversals < 1) {
    throw std::invalid_argument("enumerate_pair_routes: traversal budget < 1");
  }
  std::vector<PairRoute> routes;
  for (const auto& edge : g.undirected_edges()) {
    struct Assignment {
      int to_first;
      int to_second;
    };
    const Assignment options[2] = {{u, v}, {v, u}};
    for (const auto& opt : options) {
      auto first_paths = detail::paths_between(g, opt.to_first, edge.first, max_traversals);
      auto second_paths = detail::paths_between(g, opt.to_second, edge.second, max_traversals);
      for (const auto& pa : first_paths) {
        for (const auto& pb : second_paths) {
          auto fa = pa.fibers();
          auto fb = pb.fibers();
          std::sort(fa.begin(), fa.end());
          std::sort(fb.begin(), fb.end());
          std::vector<std::pair<int, int>> shared;
          std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(),
                                std::back_inserter(shared));
          if (!shared.empty()) continue;
          routes.push_back(PairRoute{edge, pa, pb});
        }
      }
    }
  }
  std::sort(routes.begin(), routes.end(),
            [](const PairRoute& a, const PairRoute& b) {
              if (a.total_traversals() != b.total_traversals()) {
                return a.total_traversals() < b.total_traversals();
              }
              if (a.entangler != b.entangler) return a.entangler < b.entangler;
              if (a.to_first.vertices != b.to_first.vertices) {
                return a.to_first.vertices < b.to_first.vertices;
              }
              return a.to_second.vertices < b.to_second.vertices;
            });
  return routes;
}

// Cheapest route for a single connection considered in isolation. On the
// standard topology this needs two traversals when u and v share an
// entangler and three otherwise.
inline PairRoute route_pair(const MixedGraph& g, int u, int v,
                            int max_traversals = 4) {
  auto routes = enumerate_pair_routes(g, u, v, max_traversals);
  if (routes.empty()) {
    throw UnsatisfiableRoute("route_pair: no route between " +
                             std::to_string(u) + " and " + std::to_string(v) +
                             " within " + std::to_string(max_traversals) +
                             " traversals per photon");
  }
  return routes.front();
}

// Serves several connections in the same time slot. Two routes conflict when
// they claim the same fiber or the same entangler. Pairs must be vertex
// disjoint; the result is aligned with the input order. Search order is
// fewest-candidates-first with backtracking, and within one pair candidates
// are tried cheapest-first, so the outcome is deterministic.
inline std::vector<PairRoute> route_matching(
    const MixedGraph& g, const std::vector<std::pair<int, int>>& pairs,
    int max_traversals = 4) {
  std::set<int> used_vertices;
  for (const auto& p : pairs) {
    for (int v : {p.first, p.second}) {
      if (!used_vertices.insert(v).second) {
        throw std::invalid_argument(
            "route_matching: vertex " + std::to_string(v) +
            " appears in more than one requested pair");
      }
    }
  }

  std::vector<std::vector<PairRoute>> candidates;
  candidates.reserve(pairs.size());
  for (const auto& p : pairs) {
    candidates.push_back(enumerate_pair_routes(g, p.first, p.second, max_traversals));
    if (candidates.back().empty()) {
      throw UnsatisfiableRoute("route_matching: no route between " +
                               std::to_string(p.first) + " and " +
                               std::to_string(p.second));
    }
  }

  std::vector<size_t> order(pairs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&candidates](size_t a, size_t b) {
    return candidates[a].size() < candidates[b].size();
  });

  std::vector<const PairRoute*> chosen(pairs.size(), nullptr);
  std::set<std::pair<int, int>> used_fibers;
  std::set<std::pair<int, int>> used_entanglers;

  std::function<bool(size_t)> assign = [&](size_t depth) -> bool {
    if (depth == order.size()) return true;
    const size_t idx = order[depth];
    for (const auto& route : candidates[idx]) {
      if (used_entanglers.count(route.entangler)) continue;
      const auto fibers = route.fibers();
      bool clash = false;
      for (const auto& f : fibers) {
        if (used_fibers.count(f)) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      used_entanglers.insert(route.entangler);
      for (const auto& f : fibers) used_fibers.insert(f);
      chosen[idx] = &route;
      if (assign(depth + 1)) return true;
      chosen[idx] = nullptr;
      used_entanglers.erase(route.entangler);
      for (const auto& f : fibers) used_fibers.erase(f);
    }
    return false;
  };

  if (!assign(0)) {
    throw UnsatisfiableRoute(
        "route_matching: no conflict-free combination of routes for the "
        "requested pairing");
  }

  std::vector<PairRoute> result;
  result.reserve(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) result.push_back(*chosen[i]);
  return result;
}

}  // namespace gmzi
