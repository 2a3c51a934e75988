#ifndef TREECX_RECONSTRUCTION_HPP
#define TREECX_RECONSTRUCTION_HPP

#include <utility>
#include <vector>

#include "treecx/complex.hpp"

namespace treecx {

/// All cells consistent with the deck and weight multiset, reconstructed from
/// the first maximal-node-type choice and verified by recomputing both
/// invariants. More than one result means the pair genuinely fails to
/// determine the cell.
std::vector<LabelledTree> reconstruct_all(const ContractionDeck& deck, const WeightMultiset& W,
                                          int d, int n);

/// The cell whose contraction deck and weight multiset match the input.
/// Requires d >= 2 and deck dimension >= 1. Throws InconsistentDeckError when
/// nothing matches; when several cells match, returns the canonically least.
LabelledTree reconstruct_cell(const ContractionDeck& deck, const WeightMultiset& W, int d, int n);

/// Union of reconstruct results over every maximal (entry, vertex) choice;
/// used to check that the choice does not affect the outcome.
std::vector<LabelledTree> reconstruct_all_choices(const ContractionDeck& deck,
                                                  const WeightMultiset& W, int d, int n);

/// Unordered pairs of distinct p-cells with identical contraction decks.
std::vector<std::pair<int, int>> find_deck_collisions(const SymmetricDeltaComplex& X, int p);

}  // namespace treecx

#endif
