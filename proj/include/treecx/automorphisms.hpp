#ifndef TREECX_AUTOMORPHISMS_HPP
#define TREECX_AUTOMORPHISMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "treecx/complex.hpp"

namespace treecx {

/// A family of per-dimension cell permutations commuting with every face map
/// and every label action.
struct ComplexAutomorphism {
    std::vector<std::vector<int>> perm;  // perm[p][cell] over built dimensions

    bool operator==(const ComplexAutomorphism&) const = default;
    bool operator<(const ComplexAutomorphism& o) const { return perm < o.perm; }
};

ComplexAutomorphism identity_automorphism(const SymmetricDeltaComplex& X);

/// The automorphism relabelling markings by sigma (0-based: mark i+1 goes to
/// sigma[i]+1) on every cell's underlying tree.
ComplexAutomorphism marking_automorphism(const SymmetricDeltaComplex& X,
                                         const std::vector<int>& sigma);

/// phi_0 of an automorphism.
std::vector<int> restrict_to_vertices(const ComplexAutomorphism& a);

/// How a symmetric-group identification was certified.
enum class GroupCertification {
    TrivialGroup,       // order 1
    MarkingAction,      // group equals the S_n marking action (d >= 2 content)
    ConePermutation,    // group acts as S_{n+1} on the cone generators (d = 1)
    OrderOnly,          // no structural identification attempted or found
};

struct AutGroupResult {
    std::vector<ComplexAutomorphism> elements;  // sorted, identity first
    GroupCertification certification = GroupCertification::OrderOnly;

    long long order() const { return static_cast<long long>(elements.size()); }
};

/// Exhaustive backtracking over vertex assignments refined by label-action
/// invariants, extended dimension by dimension. Requires a complete build.
AutGroupResult automorphism_group(const SymmetricDeltaComplex& X);

bool is_exactly_marking_action(const AutGroupResult& g, const SymmetricDeltaComplex& X);

/// Independent check of the commutation squares on every cell.
bool verify_automorphism(const SymmetricDeltaComplex& X, const ComplexAutomorphism& a);

ComplexAutomorphism compose(const SymmetricDeltaComplex& X, const ComplexAutomorphism& a,
                            const ComplexAutomorphism& b);

/// Group-table closure test: every composition and inverse stays inside.
bool is_group(const SymmetricDeltaComplex& X, const std::vector<ComplexAutomorphism>& elements);

/// Labels of the 1-end edges of a cell.
std::vector<int> one_end_labels(const SymmetricDeltaComplex& X, int p, int id);
/// Unordered label pairs of 1-ends sharing a vertex.
std::vector<std::pair<int, int>> shared_vertex_one_end_label_pairs(const SymmetricDeltaComplex& X,
                                                                   int p, int id);

struct StructuralViolation {
    int dim;
    int cell;
    std::string what;
};

/// Weight-multiset, 1-end, shared-vertex-pair preservation plus fixedness of
/// the star cell and of B_{1,empty} under one automorphism.
std::vector<StructuralViolation> structural_violations(const SymmetricDeltaComplex& X,
                                                       const ComplexAutomorphism& a);

}  // namespace treecx

#endif
