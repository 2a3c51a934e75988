#include "treecx/canonical.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace treecx {

namespace {

std::vector<std::vector<int>> adjacency(const MarkedWeightedTree& t) {
    std::vector<std::vector<int>> adj(t.vertex_count);
    for (const auto& [u, v] : t.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

// 1 or 2 central vertices via leaf peeling.
std::vector<int> centers(const MarkedWeightedTree& t) {
    int m = t.vertex_count;
    if (m == 1) return {0};
    auto adj = adjacency(t);
    std::vector<int> deg(m);
    for (int v = 0; v < m; ++v) deg[v] = static_cast<int>(adj[v].size());
    std::vector<int> layer;
    std::vector<char> removed(m, 0);
    for (int v = 0; v < m; ++v)
        if (deg[v] == 1) layer.push_back(v);
    int remaining = m;
    while (remaining > 2) {
        std::vector<int> next;
        for (int v : layer) {
            removed[v] = 1;
            remaining--;
            for (int u : adj[v])
                if (!removed[u] && --deg[u] == 1) next.push_back(u);
        }
        layer = std::move(next);
    }
    std::vector<int> out;
    for (int v = 0; v < m; ++v)
        if (!removed[v]) out.push_back(v);
    return out;
}

struct Encoder {
    const MarkedWeightedTree& t;
    std::vector<std::vector<int>> adj;
    std::vector<std::vector<int>> marks;
    // child order chosen at each vertex for the current rooting
    std::vector<std::vector<int>> child_order;

    explicit Encoder(const MarkedWeightedTree& tree)
        : t(tree), adj(adjacency(tree)), marks(tree.marks_at()), child_order(tree.vertex_count) {}

    std::string encode(int v, int parent) {
        std::vector<std::pair<std::string, int>> kids;
        for (int u : adj[v])
            if (u != parent) kids.push_back({encode(u, v), u});
        std::sort(kids.begin(), kids.end());
        std::ostringstream os;
        os << '(' << t.weights[v] << 'm';
        for (size_t i = 0; i < marks[v].size(); ++i) {
            if (i) os << ',';
            os << marks[v][i];
        }
        child_order[v].clear();
        for (const auto& [s, u] : kids) {
            os << s;
            child_order[v].push_back(u);
        }
        os << ')';
        return os.str();
    }
};

}  // namespace

CanonicalTree canonicalize(const MarkedWeightedTree& t) {
    std::vector<int> cs = centers(t);
    Encoder enc(t);
    std::string best;
    std::vector<std::vector<int>> best_children;
    int best_root = -1;
    for (int c : cs) {
        std::string s = enc.encode(c, -1);
        if (best_root < 0 || s < best) {
            best = std::move(s);
            best_children = enc.child_order;
            best_root = c;
        }
    }

    // preorder walk along the recorded child order assigns canonical ids
    std::vector<int> vmap(t.vertex_count, -1);
    std::vector<Edge> canon_edges;
    int next_id = 0;
    // explicit stack, children pushed in reverse so leftmost pops first
    std::vector<std::pair<int, int>> stack{{best_root, -1}};
    while (!stack.empty()) {
        auto [v, parent_id] = stack.back();
        stack.pop_back();
        int id = next_id++;
        vmap[v] = id;
        if (parent_id >= 0) canon_edges.push_back({parent_id, id});
        const auto& kids = best_children[v];
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back({*it, id});
    }

    CanonicalTree out;
    out.form = best;
    out.rep.d = t.d;
    out.rep.n = t.n;
    out.rep.vertex_count = t.vertex_count;
    out.rep.weights.assign(t.vertex_count, 0);
    for (int v = 0; v < t.vertex_count; ++v) out.rep.weights[vmap[v]] = t.weights[v];
    out.rep.marking.resize(t.n);
    for (int i = 0; i < t.n; ++i) out.rep.marking[i] = vmap[t.marking[i]];
    std::sort(canon_edges.begin(), canon_edges.end());
    out.rep.edges = canon_edges;
    out.edge_map.resize(t.edges.size());
    for (size_t i = 0; i < t.edges.size(); ++i) {
        int u = vmap[t.edges[i].first], v = vmap[t.edges[i].second];
        if (u > v) std::swap(u, v);
        out.edge_map[i] = out.rep.edge_index(u, v);
    }
    return out;
}

std::string canonical_form(const MarkedWeightedTree& t) { return canonicalize(t).form; }

std::vector<std::vector<int>> tree_automorphism_edge_actions(const MarkedWeightedTree& t) {
    int m = t.vertex_count;
    auto adj = adjacency(t);
    auto marks = t.marks_at();
    std::vector<int> deg(m);
    for (int v = 0; v < m; ++v) deg[v] = static_cast<int>(adj[v].size());

    // vertex invariant: (weight, degree, marks); images must match exactly
    auto compatible = [&](int a, int b) {
        return t.weights[a] == t.weights[b] && deg[a] == deg[b] && marks[a] == marks[b];
    };

    std::set<std::vector<int>> edge_perms;
    std::vector<int> img(m, -1), used(m, 0);

    auto record = [&]() {
        std::vector<int> perm(t.edges.size());
        for (size_t i = 0; i < t.edges.size(); ++i) {
            int u = img[t.edges[i].first], v = img[t.edges[i].second];
            if (u > v) std::swap(u, v);
            perm[i] = t.edge_index(u, v);
        }
        edge_perms.insert(perm);
    };

    // map vertices in index order; adjacency consistency against mapped part
    auto rec = [&](auto&& self, int v) -> void {
        if (v == m) {
            record();
            return;
        }
        for (int w = 0; w < m; ++w) {
            if (used[w] || !compatible(v, w)) continue;
            bool ok = true;
            for (int u : adj[v])
                if (img[u] >= 0 && t.edge_index(img[u], w) < 0) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            img[v] = w;
            used[w] = 1;
            self(self, v + 1);
            img[v] = -1;
            used[w] = 0;
        }
    };
    rec(rec, 0);
    return {edge_perms.begin(), edge_perms.end()};
}

const std::vector<std::vector<int>>& edge_automorphisms_cached(const MarkedWeightedTree& rep,
                                                               const std::string& form) {
    static std::mutex mu;
    static std::unordered_map<std::string, std::vector<std::vector<int>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(form);
    if (it != cache.end()) return it->second;
    return cache.emplace(form, tree_automorphism_edge_actions(rep)).first->second;
}

namespace {

std::vector<Edge> prufer_decode(const std::vector<int>& seq, int m) {
    std::vector<int> deg(m, 1);
    for (int v : seq) deg[v]++;
    std::vector<Edge> edges;
    int ptr = 0;
    while (deg[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int v : seq) {
        int u = leaf;
        edges.push_back({std::min(u, v), std::max(u, v)});
        if (--deg[v] == 1 && v < ptr)
            leaf = v;
        else {
            ++ptr;
            while (deg[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    edges.push_back({std::min(leaf, m - 1), std::max(leaf, m - 1)});
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    return edges;
}

// unlabeled tree shapes on m vertices, one sorted edge list per shape
const std::vector<std::vector<Edge>>& tree_shapes(int m) {
    static std::mutex mu;
    static std::map<int, std::vector<std::vector<Edge>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    std::vector<std::vector<Edge>> shapes;
    if (m == 1) {
        shapes.push_back({});
    } else if (m == 2) {
        shapes.push_back({{0, 1}});
    } else {
        std::map<std::string, std::vector<Edge>> by_form;
        std::vector<int> seq(m - 2, 0);
        while (true) {
            std::vector<Edge> edges = prufer_decode(seq, m);
            MarkedWeightedTree shape;
            shape.d = 0;
            shape.n = 0;
            shape.vertex_count = m;
            shape.weights.assign(m, 0);
            shape.edges = edges;
            std::string form = canonical_form(shape);
            by_form.emplace(std::move(form), std::move(edges));
            int i = m - 3;
            while (i >= 0 && seq[i] == m - 1) seq[i--] = 0;
            if (i < 0) break;
            seq[i]++;
        }
        for (auto& [form, edges] : by_form) shapes.push_back(std::move(edges));
    }
    return cache.emplace(m, std::move(shapes)).first->second;
}

}  // namespace

std::vector<MarkedWeightedTree> enumerate_trees(int d, int n, int num_edges) {
    if (d < 0 || n < 0 || num_edges < 0) throw Error("enumerate_trees: negative argument");
    int m = num_edges + 1;
    std::map<std::string, MarkedWeightedTree> found;

    for (const auto& shape_edges : tree_shapes(m)) {
        std::vector<int> deg(m, 0);
        for (const auto& [u, v] : shape_edges) {
            deg[u]++;
            deg[v]++;
        }
        // weight compositions of d over m vertices
        std::vector<std::vector<int>> comps;
        std::vector<int> cur(m, 0);
        auto gen = [&](auto&& self, int idx, int rest) -> void {
            if (idx == m - 1) {
                cur[idx] = rest;
                comps.push_back(cur);
                return;
            }
            for (int k = 0; k <= rest; ++k) {
                cur[idx] = k;
                self(self, idx + 1, rest - k);
            }
        };
        gen(gen, 0, d);

        for (const auto& weights : comps) {
            // every weight-0 vertex still needs 3 - deg markings; cheap bound
            int needed = 0;
            bool impossible = false;
            for (int v = 0; v < m && !impossible; ++v)
                if (weights[v] == 0) {
                    needed += std::max(0, 3 - deg[v]);
                    if (needed > n) impossible = true;
                }
            if (impossible) continue;

            // all marking maps {1..n} -> vertices
            std::vector<int> mk(n, 0);
            while (true) {
                MarkedWeightedTree t;
                t.d = d;
                t.n = n;
                t.vertex_count = m;
                t.edges = shape_edges;
                t.weights = weights;
                t.marking = mk;
                if (is_stable(t)) {
                    CanonicalTree c = canonicalize(t);
                    found.emplace(std::move(c.form), std::move(c.rep));
                }
                int i = n - 1;
                while (i >= 0 && mk[i] == m - 1) mk[i--] = 0;
                if (i < 0) break;
                mk[i]++;
            }
        }
    }

    std::vector<MarkedWeightedTree> out;
    out.reserve(found.size());
    for (auto& [form, rep] : found) out.push_back(std::move(rep));
    return out;
}

}  // namespace treecx
