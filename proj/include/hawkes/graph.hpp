#pragma once

#include "hawkes/estimate.hpp"
#include "hawkes/model.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hawkes {

/// Directed dependence graph on vertices 1..num_vertices. An edge j -> i
/// records that events of j feed the intensity of i; self-loops are allowed.
struct CausalityGraph {
    int num_vertices = 0;
    std::set<std::pair<int, int>> edges;

    bool has_edge(int from, int to) const { return edges.count({from, to}) > 0; }
};

/// Undirected graph on 1..num_vertices, no self-loops. `vertices` is the
/// active subset carried by subgraph-producing operations; it defaults to
/// all of 1..num_vertices.
struct UndirectedGraph {
    int num_vertices = 0;
    std::vector<int> vertices;
    std::set<std::pair<int, int>> edges; // stored with first < second

    bool has_edge(int a, int b) const {
        if (a > b) std::swap(a, b);
        return edges.count({a, b}) > 0;
    }
};

UndirectedGraph make_undirected(int num_vertices);
void add_undirected_edge(UndirectedGraph& graph, int a, int b);

enum class StepDirection { forward, backward };

/// A walk a_0 ... a_n with per-step orientation: forward means the host edge
/// a_{t-1} -> a_t, backward means a_{t-1} <- a_t. Must have n >= 1.
struct Path {
    std::vector<int> vertices;
    std::vector<StepDirection> directions;
};

/// Checks that every step uses an edge of the host graph in the stated
/// orientation.
bool path_valid_in(const Path& path, const CausalityGraph& graph);

/// Edge j -> i for every kernel (i, j) that is not identically zero.
CausalityGraph graph_from_model(const HawkesModel& model);

/// Same transposition rule, with links flagged by the peak/scale heuristic.
CausalityGraph graph_from_estimate(const LinkEstimate& estimate,
                                   const EdgeThresholdRule& rule = {});

/// True when both edges adjacent to interior position i point into it.
bool is_collider(const Path& path, int position);

/// True when some interior collider lies outside `conditioning` or some
/// interior non-collider lies inside it. Endpoints are never tested.
bool is_blocked(const Path& path, const std::set<int>& conditioning);

/// True when every path from A to B whose final edge points into B is
/// blocked by S \ A. Reachability over (vertex, entering-orientation)
/// states; self-loops never lie on paths. Throws OverlappingSetsError when
/// A and B intersect.
bool granger_noncausal(const CausalityGraph& graph, const std::set<int>& A,
                       const std::set<int>& B, const std::set<int>& S);

/// Vertices with a directed path into B (members of B only when reachable).
std::set<int> ancestors(const CausalityGraph& graph, const std::set<int>& B);

/// Joins adjacent vertices and all pairs of parents sharing a child;
/// self-loops are dropped.
UndirectedGraph moral_graph(const CausalityGraph& graph);

/// Vertex separation: no A-B path avoids C. Throws OverlappingSetsError when
/// A and B intersect.
bool separated(const UndirectedGraph& graph, const std::set<int>& A, const std::set<int>& B,
               const std::set<int>& C);

/// Restriction of the graph to ancestors(S) union S, then moralized.
UndirectedGraph markov_subprocess_graph(const CausalityGraph& graph, const std::set<int>& S);

/// Graph on vertex set S: keeps the edges of the induced subgraph and adds
/// {i, j} whenever i and j are not separated by S \ {i, j} in the host.
UndirectedGraph reduce(const UndirectedGraph& graph, const std::set<int>& S);

/// Text serialization: a "vertices <d>" header, then one "i -> j" or
/// "i -- j" line per edge, 1-based. Blank lines and '#' comments are
/// ignored on input.
std::string format_graph(const CausalityGraph& graph);
std::string format_graph(const UndirectedGraph& graph);
CausalityGraph parse_directed_graph(const std::string& text);
UndirectedGraph parse_undirected_graph(const std::string& text);

} // namespace hawkes
