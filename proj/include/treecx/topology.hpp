#ifndef TREECX_TOPOLOGY_HPP
#define TREECX_TOPOLOGY_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "treecx/complex.hpp"

namespace treecx {

/// Vertex set plus a downward-closed family of nonempty faces (singletons
/// included, the empty face excluded).
struct AbstractSimplicialComplex {
    std::vector<std::string> vertex_names;       // display names, by vertex index
    std::set<std::vector<int>> faces;            // sorted vertex index lists

    int vertex_count() const { return static_cast<int>(vertex_names.size()); }
    int dim() const;                             // -1 when no faces
    std::vector<long long> f_vector() const;     // faces per dimension
    bool has_face(const std::vector<int>& f) const { return faces.count(f) > 0; }
    void validate() const;                       // downward closure and ranges
};

/// Vertices are the 0-cells; every geometric cell contributes the set of its
/// vertex faces. Requires the complex to be a genuine simplicial complex:
/// no cell symmetries and distinct cells with distinct vertex sets.
AbstractSimplicialComplex to_simplicial(const SymmetricDeltaComplex& X);

AbstractSimplicialComplex cone(const AbstractSimplicialComplex& K);
AbstractSimplicialComplex join(const AbstractSimplicialComplex& K,
                               const AbstractSimplicialComplex& L);

/// Vertex bijection carrying faces onto faces, when one exists.
std::optional<std::vector<int>> asc_isomorphism(const AbstractSimplicialComplex& K,
                                                const AbstractSimplicialComplex& L);

/// Every clique of the 1-skeleton is a face.
bool is_flag(const AbstractSimplicialComplex& K);

/// Reduced rational Betti numbers of the geometric realization, computed from
/// the sign-twisted coinvariant chain complex: one generator per geometric
/// cell whose label stabilizer is free of odd permutations. Exact arithmetic.
std::vector<long long> reduced_betti(const SymmetricDeltaComplex& X);
std::vector<long long> reduced_betti(const AbstractSimplicialComplex& K);

/// The boundary operator squares to zero (checked matrix identity, including
/// the augmentation row).
bool boundary_squares_to_zero(const SymmetricDeltaComplex& X);

/// Unreduced Euler characteristic from chain-group ranks.
long long euler_characteristic_chains(const SymmetricDeltaComplex& X);

}  // namespace treecx

#endif
