#ifndef TREECX_CANONICAL_HPP
#define TREECX_CANONICAL_HPP

#include <string>
#include <vector>

#include "treecx/tree.hpp"

namespace treecx {

/// Canonical presentation of a tree: a byte encoding that is equal for two
/// trees exactly when they are isomorphic (respecting weights and markings),
/// the rebuilt representative with canonically numbered vertices and sorted
/// edges, and one valid edge correspondence into that representative.
struct CanonicalTree {
    std::string form;
    MarkedWeightedTree rep;
    std::vector<int> edge_map;  // original edge index -> rep edge index
};

/// Rooted encoding at the tree center; for two centers the lexicographically
/// smaller of the two rooted encodings wins.
CanonicalTree canonicalize(const MarkedWeightedTree& t);

std::string canonical_form(const MarkedWeightedTree& t);

/// The set of permutations of the edge index set induced by weight- and
/// marking-preserving tree automorphisms. Contains the identity; closed under
/// composition and inverse.
std::vector<std::vector<int>> tree_automorphism_edge_actions(const MarkedWeightedTree& t);

/// Cached edge-automorphism group of a canonical representative, keyed by its
/// canonical form.
const std::vector<std::vector<int>>& edge_automorphisms_cached(const MarkedWeightedTree& rep,
                                                               const std::string& form);

/// One representative per isomorphism class of stable (d,n)-trees with the
/// given edge count, sorted by canonical form. Exhaustive.
std::vector<MarkedWeightedTree> enumerate_trees(int d, int n, int num_edges);

}  // namespace treecx

#endif
