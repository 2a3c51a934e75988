#include "treecx/tree.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace treecx {

std::vector<int> MarkedWeightedTree::degrees() const {
    std::vector<int> deg(vertex_count, 0);
    for (const auto& [u, v] : edges) {
        deg[u]++;
        deg[v]++;
    }
    return deg;
}

std::vector<std::vector<int>> MarkedWeightedTree::marks_at() const {
    std::vector<std::vector<int>> out(vertex_count);
    for (int i = 0; i < n; ++i) out[marking[i]].push_back(i + 1);
    return out;
}

std::vector<int> MarkedWeightedTree::marks_at(int v) const {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (marking[i] == v) out.push_back(i + 1);
    return out;
}

int MarkedWeightedTree::edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].first == u && edges[i].second == v) return static_cast<int>(i);
    return -1;
}

void MarkedWeightedTree::validate() const {
    if (d < 0 || n < 0 || vertex_count <= 0) throw Error("malformed tree header");
    if (static_cast<int>(weights.size()) != vertex_count) throw Error("weight table size mismatch");
    if (static_cast<int>(marking.size()) != n) throw Error("marking table size mismatch");
    if (static_cast<int>(edges.size()) != vertex_count - 1) throw Error("edge count is not V-1");
    for (int w : weights)
        if (w < 0) throw Error("negative weight");
    if (std::accumulate(weights.begin(), weights.end(), 0) != d) throw Error("weights do not sum to d");
    for (int v : marking)
        if (v < 0 || v >= vertex_count) throw Error("marking out of range");
    std::set<Edge> seen;
    std::vector<std::vector<int>> adj(vertex_count);
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count || u == v)
            throw Error("edge endpoint out of range");
        if (u > v) throw Error("edge not normalized");
        if (!seen.insert({u, v}).second) throw Error("duplicate edge");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    // connectivity; acyclicity follows from |E| = V-1
    std::vector<char> vis(vertex_count, 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!vis[v]) {
                vis[v] = 1;
                count++;
                stack.push_back(v);
            }
    }
    if (count != vertex_count) throw Error("edge set not connected");
}

std::string WeightMultiset::str() const {
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) os << ',';
        os << '(' << entries[i].first << ',' << entries[i].second << ')';
    }
    os << '}';
    return os.str();
}

bool is_stable(const MarkedWeightedTree& t) {
    std::vector<int> deg = t.degrees();
    std::vector<int> marks(t.vertex_count, 0);
    for (int v : t.marking) marks[v]++;
    for (int v = 0; v < t.vertex_count; ++v)
        if (t.weights[v] == 0 && deg[v] + marks[v] < 3) return false;
    return true;
}

Contraction contract_edge(const MarkedWeightedTree& t, int edge_index) {
    if (edge_index < 0 || edge_index >= static_cast<int>(t.edges.size()))
        throw Error("contract_edge: edge not present");
    auto [a, b] = t.edges[edge_index];  // a < b; b collapses onto a

    // old vertex id -> new id: drop b, shift ids above it
    auto remap = [&](int v) {
        if (v == b) v = a;
        return v > b ? v - 1 : v;
    };

    MarkedWeightedTree out;
    out.d = t.d;
    out.n = t.n;
    out.vertex_count = t.vertex_count - 1;
    out.weights.assign(out.vertex_count, 0);
    for (int v = 0; v < t.vertex_count; ++v) out.weights[remap(v)] += t.weights[v];
    out.marking.resize(t.n);
    for (int i = 0; i < t.n; ++i) out.marking[i] = remap(t.marking[i]);

    std::vector<std::pair<Edge, int>> mapped;
    for (size_t i = 0; i < t.edges.size(); ++i) {
        if (static_cast<int>(i) == edge_index) continue;
        int u = remap(t.edges[i].first), v = remap(t.edges[i].second);
        if (u > v) std::swap(u, v);
        mapped.push_back({{u, v}, static_cast<int>(i)});
    }
    std::sort(mapped.begin(), mapped.end());

    Contraction c;
    for (const auto& [e, orig] : mapped) {
        out.edges.push_back(e);
        c.edge_map.push_back(orig);
    }
    c.tree = std::move(out);
    return c;
}

NodeType node_type(const MarkedWeightedTree& t, int v) {
    if (v < 0 || v >= t.vertex_count) throw Error("node_type: vertex not present");
    int deg = 0;
    for (const auto& [a, b] : t.edges) deg += (a == v) + (b == v);
    int marks = 0;
    for (int m : t.marking) marks += (m == v);
    return {t.weights[v], deg + marks};
}

std::vector<int> one_ends(const MarkedWeightedTree& t) {
    std::vector<int> deg = t.degrees();
    std::vector<int> marks(t.vertex_count, 0);
    for (int v : t.marking) marks[v]++;
    std::vector<int> out;
    for (size_t i = 0; i < t.edges.size(); ++i) {
        auto [u, v] = t.edges[i];
        auto leafish = [&](int w) { return deg[w] == 1 && t.weights[w] == 1 && marks[w] == 0; };
        if (leafish(u) || leafish(v)) out.push_back(static_cast<int>(i));
    }
    return out;
}

MarkedWeightedTree sprout(const MarkedWeightedTree& t) {
    std::vector<int> deg = t.degrees();
    MarkedWeightedTree out = t;
    for (int v = 0; v < t.vertex_count; ++v) {
        int w = t.weights[v];
        if (w > 1 || (w == 1 && deg[v] >= 2)) {
            for (int k = 0; k < w; ++k) {
                int leaf = out.vertex_count++;
                out.weights.push_back(1);
                out.edges.push_back({v, leaf});
            }
            out.weights[v] = 0;
        }
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

MarkedWeightedTree make_two_vertex_tree(int d, int n, int e, const std::vector<int>& S) {
    if (e < 0 || e > d) throw StabilityError("two-vertex tree: weight split out of range");
    std::vector<int> s = S;
    std::sort(s.begin(), s.end());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 1 || s[i] > n) throw Error("two-vertex tree: mark id out of range");
        if (i && s[i] == s[i - 1]) throw Error("two-vertex tree: duplicate mark");
    }
    int sc = n - static_cast<int>(s.size());
    if (e == 0 && static_cast<int>(s.size()) < 2)
        throw StabilityError("two-vertex tree: weight-0 side needs at least 2 markings");
    if (e == d && sc < 2)
        throw StabilityError("two-vertex tree: weight-0 side needs at least 2 markings");

    MarkedWeightedTree t;
    t.d = d;
    t.n = n;
    t.vertex_count = 2;
    t.weights = {e, d - e};
    t.edges = {{0, 1}};
    t.marking.assign(n, 1);
    for (int m : s) t.marking[m - 1] = 0;
    t.validate();
    return t;
}

MarkedWeightedTree make_star(int d, int n) {
    if (d < 2 || (d == 2 && n < 1)) throw StabilityError("star: center would be unstable");
    MarkedWeightedTree t;
    t.d = d;
    t.n = n;
    t.vertex_count = d + 1;
    t.weights.assign(d + 1, 1);
    t.weights[0] = 0;
    t.marking.assign(n, 0);
    for (int leaf = 1; leaf <= d; ++leaf) t.edges.push_back({0, leaf});
    t.validate();
    return t;
}

WeightMultiset weight_multiset(const MarkedWeightedTree& t) {
    std::vector<int> w = t.weights;
    std::sort(w.begin(), w.end());
    WeightMultiset out;
    for (size_t i = 0; i < w.size();) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        out.entries.push_back({w[i], static_cast<int>(j - i)});
        i = j;
    }
    return out;
}

nlohmann::ordered_json tree_to_json(const MarkedWeightedTree& t) {
    nlohmann::ordered_json j;
    j["d"] = t.d;
    j["n"] = t.n;
    j["vertices"] = nlohmann::ordered_json::array();
    auto marks = t.marks_at();
    for (int v = 0; v < t.vertex_count; ++v) {
        nlohmann::ordered_json jv;
        jv["id"] = v;
        jv["weight"] = t.weights[v];
        jv["markings"] = marks[v];
        j["vertices"].push_back(jv);
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& [u, v] : t.edges) j["edges"].push_back({u, v});
    return j;
}

MarkedWeightedTree tree_from_json(const nlohmann::json& j) {
    MarkedWeightedTree t;
    t.d = j.at("d").get<int>();
    t.n = j.at("n").get<int>();
    const auto& verts = j.at("vertices");
    t.vertex_count = static_cast<int>(verts.size());
    t.weights.assign(t.vertex_count, 0);
    t.marking.assign(t.n, -1);
    for (const auto& jv : verts) {
        int id = jv.at("id").get<int>();
        if (id < 0 || id >= t.vertex_count) throw Error("tree json: vertex ids not dense");
        t.weights[id] = jv.at("weight").get<int>();
        for (int m : jv.at("markings")) {
            if (m < 1 || m > t.n) throw Error("tree json: mark id out of range");
            t.marking[m - 1] = id;
        }
    }
    for (int v : t.marking)
        if (v < 0) throw Error("tree json: marking missing");
    for (const auto& je : j.at("edges")) {
        int u = je.at(0).get<int>(), v = je.at(1).get<int>();
        if (u > v) std::swap(u, v);
        t.edges.push_back({u, v});
    }
    std::sort(t.edges.begin(), t.edges.end());
    t.validate();
    return t;
}

}  // namespace treecx
