#ifndef TREECX_TREE_HPP
#define TREECX_TREE_HPP

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace treecx {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StabilityError : Error {
    using Error::Error;
};
struct NotSimplicialError : Error {
    using Error::Error;
};
struct InconsistentDeckError : Error {
    using Error::Error;
};
struct PartialBuildError : Error {
    using Error::Error;
};
struct BudgetExceededError : Error {
    using Error::Error;
};

/// Unordered edge, stored with first < second.
using Edge = std::pair<int, int>;

/// A finite tree with nonnegative integer vertex weights summing to d and
/// n markings placed on vertices. Vertices are dense indices 0..vertex_count-1;
/// marking i+1 sits on vertex marking[i]. Values are immutable by convention:
/// every operation returns a fresh tree.
struct MarkedWeightedTree {
    int d = 0;
    int n = 0;
    int vertex_count = 0;
    std::vector<Edge> edges;    // sorted, u < v
    std::vector<int> weights;   // size vertex_count
    std::vector<int> marking;   // size n, marking[i] = vertex carrying mark i+1

    std::vector<int> degrees() const;
    /// Sorted 1-based mark ids per vertex.
    std::vector<std::vector<int>> marks_at() const;
    std::vector<int> marks_at(int v) const;
    int edge_index(int u, int v) const;  // -1 when absent

    /// Structural invariants: connected acyclic edge set, weight sum d,
    /// markings in range. Throws Error on violation.
    void validate() const;

    bool operator==(const MarkedWeightedTree&) const = default;
};

/// (weight, valence + marking count), ordered lexicographically.
struct NodeType {
    int weight = 0;
    int incidence = 0;
    auto operator<=>(const NodeType&) const = default;
};

/// Vertex-weight values with multiplicities, sorted by value.
struct WeightMultiset {
    std::vector<std::pair<int, int>> entries;  // (weight value, multiplicity)

    bool operator==(const WeightMultiset&) const = default;
    auto operator<=>(const WeightMultiset&) const = default;
    std::string str() const;
};

/// Result of contracting one edge: the new tree plus the injection from its
/// edge indices back to the edge indices of the original tree.
struct Contraction {
    MarkedWeightedTree tree;
    std::vector<int> edge_map;  // new edge index -> original edge index
};

/// Every weight-0 vertex needs valence + marking count >= 3.
bool is_stable(const MarkedWeightedTree& t);

/// Contract the edge with the given index: endpoints merge, weights add,
/// marking sets unite. Throws Error when the edge is absent.
Contraction contract_edge(const MarkedWeightedTree& t, int edge_index);

NodeType node_type(const MarkedWeightedTree& t, int v);

/// Indices of edges separating an unmarked weight-1 leaf from the rest.
std::vector<int> one_ends(const MarkedWeightedTree& t);

/// Attach weight(v) fresh weight-1 leaves to every vertex with weight > 1,
/// or weight 1 and valence >= 2, zeroing that vertex's weight.
MarkedWeightedTree sprout(const MarkedWeightedTree& t);

/// Two-vertex tree with weight split (e, d-e) and marking split (S, S^c).
/// S holds 1-based mark ids. Throws StabilityError on an unstable request.
MarkedWeightedTree make_two_vertex_tree(int d, int n, int e, const std::vector<int>& S);

/// Weight-0 center carrying all n markings, d weight-1 leaves.
/// Requires d >= 2, and n >= 1 when d == 2.
MarkedWeightedTree make_star(int d, int n);

WeightMultiset weight_multiset(const MarkedWeightedTree& t);

nlohmann::ordered_json tree_to_json(const MarkedWeightedTree& t);
MarkedWeightedTree tree_from_json(const nlohmann::json& j);

}  // namespace treecx

#endif
