#include "treecx/reconstruction.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace treecx {

namespace {

std::multiset<int> weight_bag(const WeightMultiset& w) {
    std::multiset<int> out;
    for (auto [value, count] : w.entries)
        for (int i = 0; i < count; ++i) out.insert(value);
    return out;
}

void validate_deck(const ContractionDeck& deck, int d, int n) {
    int p = deck.dim();
    if (p < 1) throw Error("reconstruction: deck dimension too small");
    for (int j = 0; j <= p; ++j) {
        const LabelledTree& e = deck.entries[j];
        if (e.rep.d != d || e.rep.n != n) throw InconsistentDeckError("deck entry (d,n) mismatch");
        std::vector<int> want;
        for (int l = 0; l <= p; ++l)
            if (l != j) want.push_back(l);
        std::vector<int> got = e.labels;
        std::sort(got.begin(), got.end());
        if (got != want) throw InconsistentDeckError("deck entry labels must be {0..p} minus its index");
        if (!is_stable(e.rep)) throw InconsistentDeckError("deck entry unstable");
    }
}

int edge_with_label(const LabelledTree& lt, int label) {
    for (size_t i = 0; i < lt.labels.size(); ++i)
        if (lt.labels[i] == label) return static_cast<int>(i);
    return -1;
}

std::set<int> labels_at_vertex(const LabelledTree& lt, int v, int exclude_label) {
    std::set<int> out;
    for (size_t i = 0; i < lt.labels.size(); ++i) {
        auto [a, b] = lt.rep.edges[i];
        if ((a == v || b == v) && lt.labels[i] != exclude_label) out.insert(lt.labels[i]);
    }
    return out;
}

struct Assembly {
    MarkedWeightedTree tree;
    std::vector<int> labels;  // aligned with tree.edges
};

// expand v_split of base into two vertices: edges/marks listed in move_*
// migrate to a fresh vertex of weight new_weight, the rest stays with weight
// kept_weight; the fresh connecting edge gets new_label.
Assembly expand_vertex(const LabelledTree& base, int v_split, const std::set<int>& move_labels,
                       const std::set<int>& move_marks, int kept_weight, int new_weight,
                       int new_label) {
    Assembly out;
    MarkedWeightedTree t = base.rep;
    int fresh = t.vertex_count++;
    t.weights[v_split] = kept_weight;
    t.weights.push_back(new_weight);
    for (int i = 0; i < t.n; ++i)
        if (t.marking[i] == v_split && move_marks.count(i + 1)) t.marking[i] = fresh;

    std::vector<std::pair<Edge, int>> labelled_edges;
    for (size_t i = 0; i < t.edges.size(); ++i) {
        auto [a, b] = t.edges[i];
        if (move_labels.count(base.labels[i])) {
            if (a == v_split) a = fresh;
            if (b == v_split) b = fresh;
        }
        if (a > b) std::swap(a, b);
        labelled_edges.push_back({{a, b}, base.labels[i]});
    }
    labelled_edges.push_back({{std::min(v_split, fresh), std::max(v_split, fresh)}, new_label});
    std::sort(labelled_edges.begin(), labelled_edges.end());
    t.edges.clear();
    for (auto& [e, l] : labelled_edges) {
        t.edges.push_back(e);
        out.labels.push_back(l);
    }
    out.tree = std::move(t);
    return out;
}

struct Choice {
    int entry;
    int vertex;
};

std::vector<Choice> maximal_type_choices(const ContractionDeck& deck) {
    NodeType best{-1, -1};
    std::vector<Choice> out;
    for (int j = 0; j < static_cast<int>(deck.entries.size()); ++j) {
        const MarkedWeightedTree& t = deck.entries[j].rep;
        for (int v = 0; v < t.vertex_count; ++v) {
            NodeType ty = node_type(t, v);
            if (ty > best) {
                best = ty;
                out.clear();
            }
            if (ty == best) out.push_back({j, v});
        }
    }
    return out;
}

std::vector<LabelledTree> reconstruct_from_choice(const ContractionDeck& deck,
                                                  const WeightMultiset& W,
                                                  const Choice& choice) {
    int p = deck.dim();
    const LabelledTree& t0 = deck.entries[choice.entry];
    int v_max = choice.vertex;
    int jstar = choice.entry;
    int split_weight = t0.rep.weights[v_max];

    // weight splits {x, y} with W == W(T_jstar) - {x+y} + {x, y}
    std::multiset<int> target = weight_bag(W);
    std::multiset<int> base_bag = weight_bag(weight_multiset(t0.rep));
    std::vector<std::pair<int, int>> splits;
    for (int x = 0; x * 2 <= split_weight; ++x) {
        std::multiset<int> bag = base_bag;
        bag.erase(bag.find(split_weight));
        bag.insert(x);
        bag.insert(split_weight - x);
        if (bag == target) splits.push_back({x, split_weight - x});
    }
    if (splits.empty()) throw InconsistentDeckError("no weight split matches the multiset");

    std::set<int> S = labels_at_vertex(t0, v_max, -1);
    std::vector<int> M_vec = t0.rep.marks_at(v_max);
    std::set<int> M(M_vec.begin(), M_vec.end());

    std::vector<Assembly> assemblies;

    // Case I: some other entry still shows the split vertex's neighborhood
    int witness_entry = -1;
    for (int j = 0; j <= p && witness_entry < 0; ++j) {
        if (j == jstar) continue;
        const LabelledTree& tj = deck.entries[j];
        int e = edge_with_label(tj, jstar);
        if (e < 0) continue;
        auto [a, b] = tj.rep.edges[e];
        std::set<int> incident = labels_at_vertex(tj, a, jstar);
        std::set<int> at_b = labels_at_vertex(tj, b, jstar);
        incident.insert(at_b.begin(), at_b.end());
        if (incident == S) witness_entry = j;
    }

    if (witness_entry >= 0) {
        const LabelledTree& tj = deck.entries[witness_entry];
        int e = edge_with_label(tj, jstar);
        auto [a, b] = tj.rep.edges[e];
        std::set<int> la = labels_at_vertex(tj, a, jstar);
        std::set<int> lb = labels_at_vertex(tj, b, jstar);
        std::vector<int> ma_v = tj.rep.marks_at(a), mb_v = tj.rep.marks_at(b);
        std::set<int> ma(ma_v.begin(), ma_v.end()), mb(mb_v.begin(), mb_v.end());
        std::set<int> all_marks = ma;
        all_marks.insert(mb.begin(), mb.end());
        if (tj.rep.weights[a] + tj.rep.weights[b] != split_weight || all_marks != M)
            throw InconsistentDeckError("witness entry disagrees with the split vertex");
        assemblies.push_back(expand_vertex(t0, v_max, lb, mb, tj.rep.weights[a],
                                           tj.rep.weights[b], jstar));
    } else {
        // Case II: every other edge meets the split edge, so the tree is a
        // double star and any one entry shows everything but its own leaf.
        std::set<int> everything;
        for (int l = 0; l <= p; ++l)
            if (l != jstar) everything.insert(l);
        if (S != everything)
            throw InconsistentDeckError("no witness entry although the split vertex has "
                                        "non-incident edges");
        int j_any = jstar == 0 ? 1 : 0;
        const LabelledTree& tj = deck.entries[j_any];
        int e = edge_with_label(tj, jstar);
        if (e < 0) throw InconsistentDeckError("entry lost the split edge");
        auto [a, b] = tj.rep.edges[e];
        std::vector<int> ma_v = tj.rep.marks_at(a), mb_v = tj.rep.marks_at(b);
        std::set<int> marks_union(ma_v.begin(), ma_v.end());
        marks_union.insert(mb_v.begin(), mb_v.end());
        if (!std::includes(marks_union.begin(), marks_union.end(), M.begin(), M.end()))
            throw InconsistentDeckError("entry lost markings of the split vertex");
        std::set<int> mu;
        std::set_difference(marks_union.begin(), marks_union.end(), M.begin(), M.end(),
                            std::inserter(mu, mu.begin()));

        for (auto [x, y] : splits) {
            int leaf_weight = tj.rep.weights[a] + tj.rep.weights[b] - x - y;
            if (leaf_weight < 0) continue;
            for (int absorbed : {a, b}) {
                int other = absorbed == a ? b : a;
                std::vector<int> marks_abs_v = tj.rep.marks_at(absorbed);
                std::set<int> marks_abs(marks_abs_v.begin(), marks_abs_v.end());
                if (!std::includes(marks_abs.begin(), marks_abs.end(), mu.begin(), mu.end()))
                    continue;
                int kept = tj.rep.weights[absorbed] - leaf_weight;
                if (kept < 0) continue;
                std::multiset<int> got{kept, tj.rep.weights[other]};
                if (got != std::multiset<int>{x, y}) continue;
                // detach the (leaf_weight, mu) leaf from the absorbed endpoint
                LabelledTree base = tj;  // labels aligned with tj.rep.edges
                Assembly asm_out = expand_vertex(base, absorbed, {}, mu, kept, leaf_weight, j_any);
                assemblies.push_back(std::move(asm_out));
            }
        }
    }

    // verification pass: recompute both invariants
    std::map<std::string, LabelledTree> verified;
    for (const Assembly& a : assemblies) {
        if (!is_stable(a.tree)) continue;
        LabelledTree lt = make_labelled(a.tree, a.labels);
        if (!(weight_multiset(lt.rep) == W)) continue;
        if (!(contraction_deck_of(lt).encode() == deck.encode())) continue;
        verified.emplace(lt.encode(), lt);
    }
    std::vector<LabelledTree> out;
    for (auto& [k, v] : verified) out.push_back(std::move(v));
    return out;
}

}  // namespace

std::vector<LabelledTree> reconstruct_all(const ContractionDeck& deck, const WeightMultiset& W,
                                          int d, int n) {
    if (d < 2) throw Error("reconstruction is supported for d >= 2 only");
    validate_deck(deck, d, n);
    std::vector<Choice> choices = maximal_type_choices(deck);
    return reconstruct_from_choice(deck, W, choices.front());
}

LabelledTree reconstruct_cell(const ContractionDeck& deck, const WeightMultiset& W, int d, int n) {
    std::vector<LabelledTree> all = reconstruct_all(deck, W, d, n);
    if (all.empty()) throw InconsistentDeckError("no cell realizes the deck and weight multiset");
    return all.front();  // map order: canonically least encode
}

std::vector<LabelledTree> reconstruct_all_choices(const ContractionDeck& deck,
                                                  const WeightMultiset& W, int d, int n) {
    if (d < 2) throw Error("reconstruction is supported for d >= 2 only");
    validate_deck(deck, d, n);
    std::map<std::string, LabelledTree> merged;
    for (const Choice& c : maximal_type_choices(deck))
        for (LabelledTree& lt : reconstruct_from_choice(deck, W, c))
            merged.emplace(lt.encode(), std::move(lt));
    std::vector<LabelledTree> out;
    for (auto& [k, v] : merged) out.push_back(std::move(v));
    return out;
}

std::vector<std::pair<int, int>> find_deck_collisions(const SymmetricDeltaComplex& X, int p) {
    if (p < 1 || p > X.built_dim) throw Error("deck collision search: dimension not built");
    std::map<std::string, std::vector<int>> by_deck;
    for (int id = 0; id < X.dims[p].cell_count(); ++id)
        by_deck[X.contraction_deck(p, id).encode()].push_back(id);
    std::vector<std::pair<int, int>> out;
    for (const auto& [key, ids] : by_deck)
        for (size_t i = 0; i < ids.size(); ++i)
            for (size_t j = i + 1; j < ids.size(); ++j) out.push_back({ids[i], ids[j]});
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace treecx
