#include "hawkes/graph.hpp"

#include "hawkes/errors.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace hawkes {

namespace {

void check_vertex(int v, int num_vertices, const char* where) {
    if (v < 1 || v > num_vertices) {
        throw std::invalid_argument(std::string(where) + ": vertex " + std::to_string(v) +
                                    " out of range 1.." + std::to_string(num_vertices));
    }
}

void check_sets_disjoint(const std::set<int>& A, const std::set<int>& B, const char* where) {
    for (int a : A) {
        if (B.count(a) > 0) {
            throw OverlappingSetsError(std::string(where) + ": sets share vertex " +
                                       std::to_string(a));
        }
    }
}

} // namespace

UndirectedGraph make_undirected(int num_vertices) {
    UndirectedGraph g;
    g.num_vertices = num_vertices;
    g.vertices.resize(static_cast<std::size_t>(num_vertices));
    for (int v = 1; v <= num_vertices; ++v) g.vertices[static_cast<std::size_t>(v - 1)] = v;
    return g;
}

void add_undirected_edge(UndirectedGraph& graph, int a, int b) {
    check_vertex(a, graph.num_vertices, "undirected edge");
    check_vertex(b, graph.num_vertices, "undirected edge");
    if (a == b) throw std::invalid_argument("undirected edge: self-loops are not allowed");
    if (a > b) std::swap(a, b);
    graph.edges.insert({a, b});
}

bool path_valid_in(const Path& path, const CausalityGraph& graph) {
    if (path.vertices.size() < 2 || path.directions.size() + 1 != path.vertices.size()) {
        return false;
    }
    for (std::size_t t = 0; t + 1 < path.vertices.size(); ++t) {
        const int a = path.vertices[t];
        const int b = path.vertices[t + 1];
        if (a < 1 || a > graph.num_vertices || b < 1 || b > graph.num_vertices) return false;
        const bool ok = path.directions[t] == StepDirection::forward ? graph.has_edge(a, b)
                                                                     : graph.has_edge(b, a);
        if (!ok) return false;
    }
    return true;
}

CausalityGraph graph_from_model(const HawkesModel& model) {
    CausalityGraph g;
    g.num_vertices = model.dim();
    for (int i = 0; i < model.dim(); ++i) {
        for (int j = 0; j < model.dim(); ++j) {
            if (!kernel_is_zero(model.kernel(i, j))) {
                g.edges.insert({j + 1, i + 1}); // source j drives target i
            }
        }
    }
    return g;
}

CausalityGraph graph_from_estimate(const LinkEstimate& estimate, const EdgeThresholdRule& rule) {
    CausalityGraph g;
    g.num_vertices = estimate.dim;
    const Eigen::MatrixXd peaks = link_peak_matrix(estimate);
    const double scale = link_noise_scale(estimate);
    const double threshold = rule.scale_factor * scale;
    for (int i = 0; i < estimate.dim; ++i) {
        for (int j = 0; j < estimate.dim; ++j) {
            if (peaks(i, j) > threshold && peaks(i, j) > 0.0) {
                g.edges.insert({j + 1, i + 1});
            }
        }
    }
    return g;
}

bool is_collider(const Path& path, int position) {
    const int n = static_cast<int>(path.directions.size());
    if (position <= 0 || position >= n) {
        throw PositionOutOfRangeError("is_collider: position " + std::to_string(position) +
                                      " is not interior");
    }
    return path.directions[static_cast<std::size_t>(position - 1)] == StepDirection::forward &&
           path.directions[static_cast<std::size_t>(position)] == StepDirection::backward;
}

bool is_blocked(const Path& path, const std::set<int>& conditioning) {
    const int n = static_cast<int>(path.directions.size());
    for (int position = 1; position < n; ++position) {
        const int vertex = path.vertices[static_cast<std::size_t>(position)];
        const bool in_set = conditioning.count(vertex) > 0;
        if (is_collider(path, position) ? !in_set : in_set) return true;
    }
    return false;
}

bool granger_noncausal(const CausalityGraph& graph, const std::set<int>& A,
                       const std::set<int>& B, const std::set<int>& S) {
    check_sets_disjoint(A, B, "granger_noncausal");
    for (int v : A) check_vertex(v, graph.num_vertices, "granger_noncausal");
    for (int v : B) check_vertex(v, graph.num_vertices, "granger_noncausal");
    for (int v : S) check_vertex(v, graph.num_vertices, "granger_noncausal");

    std::set<int> blockers;
    for (int v : S) {
        if (A.count(v) == 0) blockers.insert(v);
    }

    const int d = graph.num_vertices;
    std::vector<std::vector<int>> out(static_cast<std::size_t>(d) + 1);
    std::vector<std::vector<int>> in(static_cast<std::size_t>(d) + 1);
    for (const auto& [from, to] : graph.edges) {
        if (from == to) continue; // self-loops never lie on a path
        out[static_cast<std::size_t>(from)].push_back(to);
        in[static_cast<std::size_t>(to)].push_back(from);
    }

    // States (vertex, entered-via-arrowhead?). A vertex passes as interior
    // non-collider when outside the blocking set and as collider (head in,
    // head out) when inside it.
    constexpr int kHead = 0, kTail = 1;
    std::vector<std::array<bool, 2>> seen(static_cast<std::size_t>(d) + 1, {false, false});
    std::deque<std::pair<int, int>> queue;
    auto push = [&](int v, int mode) {
        if (!seen[static_cast<std::size_t>(v)][static_cast<std::size_t>(mode)]) {
            seen[static_cast<std::size_t>(v)][static_cast<std::size_t>(mode)] = true;
            queue.emplace_back(v, mode);
        }
    };
    for (int a : A) {
        for (int w : out[static_cast<std::size_t>(a)]) push(w, kHead);
        for (int w : in[static_cast<std::size_t>(a)]) push(w, kTail);
    }
    while (!queue.empty()) {
        const auto [v, mode] = queue.front();
        queue.pop_front();
        const bool blocked_here = blockers.count(v) > 0;
        // Leave along v -> w: v is a non-collider.
        if (!blocked_here) {
            for (int w : out[static_cast<std::size_t>(v)]) push(w, kHead);
        }
        // Leave against w -> v: collider when entered via an arrowhead.
        const bool pass = (mode == kHead) ? blocked_here : !blocked_here;
        if (pass) {
            for (int w : in[static_cast<std::size_t>(v)]) push(w, kTail);
        }
    }
    for (int b : B) {
        if (seen[static_cast<std::size_t>(b)][kHead]) return false;
    }
    return true;
}

std::set<int> ancestors(const CausalityGraph& graph, const std::set<int>& B) {
    for (int v : B) check_vertex(v, graph.num_vertices, "ancestors");
    std::vector<std::vector<int>> in(static_cast<std::size_t>(graph.num_vertices) + 1);
    for (const auto& [from, to] : graph.edges) {
        if (from == to) continue;
        in[static_cast<std::size_t>(to)].push_back(from);
    }
    std::set<int> result;
    std::deque<int> queue(B.begin(), B.end());
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int parent : in[static_cast<std::size_t>(v)]) {
            if (result.insert(parent).second) queue.push_back(parent);
        }
    }
    return result;
}

UndirectedGraph moral_graph(const CausalityGraph& graph) {
    UndirectedGraph moral = make_undirected(graph.num_vertices);
    for (const auto& [from, to] : graph.edges) {
        if (from != to) add_undirected_edge(moral, from, to);
    }
    // Marry parents that share a child.
    std::vector<std::vector<int>> parents(static_cast<std::size_t>(graph.num_vertices) + 1);
    for (const auto& [from, to] : graph.edges) {
        if (from != to) parents[static_cast<std::size_t>(to)].push_back(from);
    }
    for (int child = 1; child <= graph.num_vertices; ++child) {
        const auto& ps = parents[static_cast<std::size_t>(child)];
        for (std::size_t a = 0; a < ps.size(); ++a) {
            for (std::size_t b = a + 1; b < ps.size(); ++b) {
                if (ps[a] != ps[b]) add_undirected_edge(moral, ps[a], ps[b]);
            }
        }
    }
    return moral;
}

bool separated(const UndirectedGraph& graph, const std::set<int>& A, const std::set<int>& B,
               const std::set<int>& C) {
    check_sets_disjoint(A, B, "separated");
    for (int v : A) check_vertex(v, graph.num_vertices, "separated");
    for (int v : B) check_vertex(v, graph.num_vertices, "separated");
    for (int v : C) check_vertex(v, graph.num_vertices, "separated");

    std::vector<std::vector<int>> adj(static_cast<std::size_t>(graph.num_vertices) + 1);
    for (const auto& [a, b] : graph.edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<bool> visited(static_cast<std::size_t>(graph.num_vertices) + 1, false);
    std::deque<int> queue;
    for (int a : A) {
        if (C.count(a) == 0 && !visited[static_cast<std::size_t>(a)]) {
            visited[static_cast<std::size_t>(a)] = true;
            queue.push_back(a);
        }
    }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        if (B.count(v) > 0) return false;
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (!visited[static_cast<std::size_t>(w)] && C.count(w) == 0) {
                visited[static_cast<std::size_t>(w)] = true;
                queue.push_back(w);
            }
        }
    }
    return true;
}

UndirectedGraph markov_subprocess_graph(const CausalityGraph& graph, const std::set<int>& S) {
    if (S.empty()) throw std::invalid_argument("markov_subprocess_graph: S must be nonempty");
    std::set<int> keep = ancestors(graph, S);
    keep.insert(S.begin(), S.end());

    CausalityGraph restricted;
    restricted.num_vertices = graph.num_vertices;
    for (const auto& edge : graph.edges) {
        if (keep.count(edge.first) > 0 && keep.count(edge.second) > 0) {
            restricted.edges.insert(edge);
        }
    }
    UndirectedGraph moral = moral_graph(restricted);
    moral.vertices.assign(keep.begin(), keep.end());
    return moral;
}

UndirectedGraph reduce(const UndirectedGraph& graph, const std::set<int>& S) {
    for (int v : S) check_vertex(v, graph.num_vertices, "reduce");
    UndirectedGraph result;
    result.num_vertices = graph.num_vertices;
    result.vertices.assign(S.begin(), S.end());
    for (auto it = S.begin(); it != S.end(); ++it) {
        for (auto jt = std::next(it); jt != S.end(); ++jt) {
            const int i = *it;
            const int j = *jt;
            if (graph.has_edge(i, j)) {
                result.edges.insert({std::min(i, j), std::max(i, j)});
                continue;
            }
            std::set<int> C = S;
            C.erase(i);
            C.erase(j);
            if (!separated(graph, {i}, {j}, C)) {
                result.edges.insert({std::min(i, j), std::max(i, j)});
            }
        }
    }
    return result;
}

std::string format_graph(const CausalityGraph& graph) {
    std::ostringstream out;
    out << "vertices " << graph.num_vertices << "\n";
    for (const auto& [from, to] : graph.edges) {
        out << from << " -> " << to << "\n";
    }
    return out.str();
}

std::string format_graph(const UndirectedGraph& graph) {
    std::ostringstream out;
    out << "vertices " << graph.num_vertices << "\n";
    for (const auto& [a, b] : graph.edges) {
        out << a << " -- " << b << "\n";
    }
    return out.str();
}

namespace {

struct ParsedEdges {
    int num_vertices = 0;
    bool saw_directed = false;
    bool saw_undirected = false;
    std::vector<std::pair<int, int>> edges;
};

ParsedEdges parse_edge_lines(const std::string& text) {
    ParsedEdges parsed;
    std::istringstream in(text);
    std::string line;
    int max_vertex = 0;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first[0] == '#') continue;
        if (first == "vertices") {
            if (!(ls >> parsed.num_vertices) || parsed.num_vertices < 1) {
                throw ParseError("graph: bad vertex count on line " + std::to_string(line_no));
            }
            continue;
        }
        int from = 0, to = 0;
        std::string arrow;
        try {
            from = std::stoi(first);
        } catch (const std::exception&) {
            throw ParseError("graph: expected a vertex id on line " + std::to_string(line_no));
        }
        if (!(ls >> arrow >> to) || (arrow != "->" && arrow != "--")) {
            throw ParseError("graph: expected 'i -> j' or 'i -- j' on line " +
                             std::to_string(line_no));
        }
        if (from < 1 || to < 1) {
            throw ParseError("graph: vertex ids are 1-based, line " + std::to_string(line_no));
        }
        (arrow == "->" ? parsed.saw_directed : parsed.saw_undirected) = true;
        if (parsed.saw_directed && parsed.saw_undirected) {
            throw ParseError("graph: file mixes directed and undirected edges");
        }
        parsed.edges.emplace_back(from, to);
        max_vertex = std::max({max_vertex, from, to});
    }
    if (parsed.num_vertices == 0) parsed.num_vertices = max_vertex;
    if (max_vertex > parsed.num_vertices) {
        throw ParseError("graph: edge references vertex beyond the declared count");
    }
    if (parsed.num_vertices == 0) {
        throw ParseError("graph: empty file (need a 'vertices <d>' header or edges)");
    }
    return parsed;
}

} // namespace

CausalityGraph parse_directed_graph(const std::string& text) {
    ParsedEdges parsed = parse_edge_lines(text);
    if (parsed.saw_undirected) {
        throw ParseError("graph: expected directed edges 'i -> j'");
    }
    CausalityGraph g;
    g.num_vertices = parsed.num_vertices;
    g.edges.insert(parsed.edges.begin(), parsed.edges.end());
    return g;
}

UndirectedGraph parse_undirected_graph(const std::string& text) {
    ParsedEdges parsed = parse_edge_lines(text);
    if (parsed.saw_directed) {
        throw ParseError("graph: expected undirected edges 'i -- j'");
    }
    UndirectedGraph g = make_undirected(parsed.num_vertices);
    for (auto [a, b] : parsed.edges) add_undirected_edge(g, a, b);
    return g;
}

} // namespace hawkes
