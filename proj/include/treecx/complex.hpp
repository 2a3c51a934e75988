#ifndef TREECX_COMPLEX_HPP
#define TREECX_COMPLEX_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "treecx/canonical.hpp"
#include "treecx/tree.hpp"

namespace treecx {

/// A stable tree together with a bijective edge labelling, stored as the
/// canonical representative of its isomorphism class: canonical tree plus the
/// lexicographically least label vector over the edge-automorphism orbit.
/// Labels may be any nonnegative ints (contraction-deck entries keep a gap).
struct LabelledTree {
    std::string tree_form;
    MarkedWeightedTree rep;
    std::vector<int> labels;  // labels[i] = label of rep edge i

    std::string encode() const;
    bool operator==(const LabelledTree& o) const {
        return tree_form == o.tree_form && labels == o.labels;
    }
    bool operator<(const LabelledTree& o) const {
        return tree_form != o.tree_form ? tree_form < o.tree_form : labels < o.labels;
    }
};

/// Canonicalize a labelled tree; labels_by_edge aligns with t.edges.
LabelledTree make_labelled(const MarkedWeightedTree& t, const std::vector<int>& labels_by_edge);

/// Ordered list of the p+1 one-edge contractions of a p-cell, entry j keeping
/// the surviving labels verbatim in {0..p} minus j.
struct ContractionDeck {
    std::vector<LabelledTree> entries;
    int dim() const { return static_cast<int>(entries.size()) - 1; }
    std::string encode() const;
    bool operator==(const ContractionDeck&) const = default;
};

/// Deck of a standalone labelled tree (labels must be exactly 0..p).
ContractionDeck contraction_deck_of(const LabelledTree& cell);

struct TreeClassInfo {
    MarkedWeightedTree rep;
    std::string form;
    std::vector<std::vector<int>> edge_auts;  // perms of rep edge indices
    bool auts_all_even = true;
};

struct DimensionData {
    std::vector<TreeClassInfo> classes;  // sorted by form
    std::unordered_map<std::string, int> class_by_form;
    // cells sorted by (class index, label vector); ids are positions here
    std::vector<std::pair<int, std::vector<int>>> cells;
    std::unordered_map<std::string, int> cell_index;
    std::vector<std::vector<int>> face_of;      // face_of[id][j], dims p >= 1
    std::vector<std::vector<int>> transpose_of; // transpose_of[j][id], swap (j,j+1)
    // the relabel orbit of a class's cells is the whole class; witness[id] is
    // a permutation kappa with relabel(orbit rep, kappa) == id
    std::vector<int> orbit_rep_cell;            // class idx -> cell id
    std::vector<std::vector<int>> witness;

    int cell_count() const { return static_cast<int>(cells.size()); }
};

struct FVector {
    std::vector<long long> orbits;    // geometric cells per dimension
    std::vector<long long> elements;  // |T[p]| per dimension
};

struct SkeletonEdge {
    int u, v;       // 0-cell ids, u <= v (loop when equal)
    int one_class;  // dim-1 class (geometric 1-cell) index
};

class SymmetricDeltaComplex {
  public:
    int d = 0, n = 0;
    int built_dim = -1;   // highest dimension with data (-1: empty complex)
    bool complete = false;  // true when built until enumeration became empty
    std::vector<DimensionData> dims;

    const MarkedWeightedTree& cell_tree(int p, int id) const;
    LabelledTree cell_labelled(int p, int id) const;

    /// iota_j^*: contract the edge labelled j and collapse the remaining
    /// labels order-preservingly onto {0..p-1}.
    int face(int p, int id, int j) const;
    /// kappa^*: compose the labelling with kappa (a permutation of {0..p}).
    int relabel(int p, int id, const std::vector<int>& kappa) const;
    ContractionDeck contraction_deck(int p, int id) const;

    FVector f_vector() const;
    std::vector<SkeletonEdge> one_skeleton() const;
    /// Geometric 1-cells having the 0-cell among their faces; loops count once.
    int incident_one_cell_count(int zero_cell) const;

    /// (e, S) of a 0-cell, normalized to the lexicographically smaller of
    /// (e, S) and (d-e, S^c). S holds 1-based mark ids.
    std::pair<int, std::vector<int>> two_vertex_params(int zero_cell) const;
    /// 0-cell id for B_{e,S}; throws Error when absent from the complex.
    int zero_cell_of(int e, const std::vector<int>& S) const;

    int find_cell(int p, const LabelledTree& lt) const;  // -1 when absent

    nlohmann::ordered_json to_json() const;
    std::string one_skeleton_dot() const;
};

struct BuildOptions {
    std::optional<int> max_dim;      // build everything when empty
    long long max_cells = 200000;    // summed over dimensions
};

SymmetricDeltaComplex build_complex(int d, int n, const BuildOptions& opts = {});

/// Permutation helpers shared across modules.
std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g);  // f after g
std::vector<int> inverse(const std::vector<int>& f);
int perm_sign(const std::vector<int>& f);
std::vector<std::vector<int>> all_permutations(int k);

}  // namespace treecx

#endif
