#include "treecx/complex.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace treecx {

std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> out(g.size());
    for (size_t i = 0; i < g.size(); ++i) out[i] = f[g[i]];
    return out;
}

std::vector<int> inverse(const std::vector<int>& f) {
    std::vector<int> out(f.size());
    for (size_t i = 0; i < f.size(); ++i) out[f[i]] = static_cast<int>(i);
    return out;
}

int perm_sign(const std::vector<int>& f) {
    std::vector<char> seen(f.size(), 0);
    int sign = 1;
    for (size_t i = 0; i < f.size(); ++i) {
        if (seen[i]) continue;
        size_t len = 0, j = i;
        while (!seen[j]) {
            seen[j] = 1;
            j = f[j];
            len++;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

std::vector<std::vector<int>> all_permutations(int k) {
    std::vector<int> id(k);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(id);
    } while (std::next_permutation(id.begin(), id.end()));
    return out;
}

namespace {

std::vector<int> apply_edge_perm(const std::vector<int>& labels, const std::vector<int>& g) {
    std::vector<int> out(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) out[i] = labels[g[i]];
    return out;
}

std::vector<int> minimize_labels(const std::vector<std::vector<int>>& auts,
                                 const std::vector<int>& labels) {
    std::vector<int> best = labels;
    for (const auto& g : auts) {
        std::vector<int> cand = apply_edge_perm(labels, g);
        if (cand < best) best = cand;
    }
    return best;
}

std::string cell_key(int class_idx, const std::vector<int>& labels) {
    std::ostringstream os;
    os << class_idx;
    for (int l : labels) os << ',' << l;
    return os.str();
}

}  // namespace

std::string LabelledTree::encode() const {
    std::ostringstream os;
    os << tree_form << '#';
    for (size_t i = 0; i < labels.size(); ++i) {
        if (i) os << ',';
        os << labels[i];
    }
    return os.str();
}

LabelledTree make_labelled(const MarkedWeightedTree& t, const std::vector<int>& labels_by_edge) {
    if (labels_by_edge.size() != t.edges.size()) throw Error("make_labelled: label count mismatch");
    CanonicalTree c = canonicalize(t);
    std::vector<int> transported(labels_by_edge.size());
    for (size_t i = 0; i < labels_by_edge.size(); ++i)
        transported[c.edge_map[i]] = labels_by_edge[i];
    const auto& auts = edge_automorphisms_cached(c.rep, c.form);
    LabelledTree out;
    out.tree_form = std::move(c.form);
    out.rep = std::move(c.rep);
    out.labels = minimize_labels(auts, transported);
    return out;
}

std::string ContractionDeck::encode() const {
    std::ostringstream os;
    for (const auto& e : entries) os << e.encode() << ';';
    return os.str();
}

ContractionDeck contraction_deck_of(const LabelledTree& cell) {
    int p = static_cast<int>(cell.labels.size()) - 1;
    if (p < 1) throw Error("contraction deck requires dimension >= 1");
    std::vector<int> sorted = cell.labels;
    std::sort(sorted.begin(), sorted.end());
    for (int j = 0; j <= p; ++j)
        if (sorted[j] != j) throw Error("contraction deck: labels must be 0..p");

    ContractionDeck deck;
    for (int j = 0; j <= p; ++j) {
        int e = -1;
        for (size_t i = 0; i < cell.labels.size(); ++i)
            if (cell.labels[i] == j) e = static_cast<int>(i);
        Contraction ct = contract_edge(cell.rep, e);
        std::vector<int> kept(ct.edge_map.size());
        for (size_t i = 0; i < ct.edge_map.size(); ++i) kept[i] = cell.labels[ct.edge_map[i]];
        deck.entries.push_back(make_labelled(ct.tree, kept));
    }
    return deck;
}

const MarkedWeightedTree& SymmetricDeltaComplex::cell_tree(int p, int id) const {
    return dims.at(p).classes[dims.at(p).cells.at(id).first].rep;
}

LabelledTree SymmetricDeltaComplex::cell_labelled(int p, int id) const {
    const auto& [ci, labels] = dims.at(p).cells.at(id);
    const TreeClassInfo& c = dims.at(p).classes[ci];
    return {c.form, c.rep, labels};
}

int SymmetricDeltaComplex::find_cell(int p, const LabelledTree& lt) const {
    if (p < 0 || p > built_dim) return -1;
    auto ci = dims[p].class_by_form.find(lt.tree_form);
    if (ci == dims[p].class_by_form.end()) return -1;
    auto it = dims[p].cell_index.find(cell_key(ci->second, lt.labels));
    return it == dims[p].cell_index.end() ? -1 : it->second;
}

int SymmetricDeltaComplex::face(int p, int id, int j) const {
    if (p < 1 || p > built_dim) throw Error("face: dimension out of range");
    if (j < 0 || j > p) throw Error("face: index out of range");
    return dims[p].face_of.at(id).at(j);
}

int SymmetricDeltaComplex::relabel(int p, int id, const std::vector<int>& kappa) const {
    const auto& dd = dims.at(p);
    const auto& [ci, labels] = dd.cells.at(id);
    if (static_cast<int>(kappa.size()) != p + 1) throw Error("relabel: permutation size mismatch");
    std::vector<int> next(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) next[i] = kappa.at(labels[i]);
    next = minimize_labels(dd.classes[ci].edge_auts, next);
    auto it = dd.cell_index.find(cell_key(ci, next));
    if (it == dd.cell_index.end()) throw Error("relabel: image cell missing");
    return it->second;
}

ContractionDeck SymmetricDeltaComplex::contraction_deck(int p, int id) const {
    if (p < 1) throw Error("contraction deck requires dimension >= 1");
    return contraction_deck_of(cell_labelled(p, id));
}

FVector SymmetricDeltaComplex::f_vector() const {
    FVector f;
    for (const auto& dd : dims) {
        f.orbits.push_back(static_cast<long long>(dd.classes.size()));
        f.elements.push_back(static_cast<long long>(dd.cells.size()));
    }
    return f;
}

std::vector<SkeletonEdge> SymmetricDeltaComplex::one_skeleton() const {
    std::vector<SkeletonEdge> out;
    if (built_dim < 1) return out;
    const auto& dd = dims[1];
    for (size_t ci = 0; ci < dd.classes.size(); ++ci) {
        int rep = dd.orbit_rep_cell[ci];
        int u = face(1, rep, 0);
        int v = face(1, rep, 1);
        if (u > v) std::swap(u, v);
        out.push_back({u, v, static_cast<int>(ci)});
    }
    return out;
}

int SymmetricDeltaComplex::incident_one_cell_count(int zero_cell) const {
    if (built_dim < 1) throw Error("incident count needs the 1-skeleton");
    if (zero_cell < 0 || zero_cell >= dims[0].cell_count())
        throw Error("incident count: vertex not present");
    int count = 0;
    for (const auto& e : one_skeleton())
        if (e.u == zero_cell || e.v == zero_cell) count++;
    return count;
}

std::pair<int, std::vector<int>> SymmetricDeltaComplex::two_vertex_params(int zero_cell) const {
    const MarkedWeightedTree& t = cell_tree(0, zero_cell);
    std::pair<int, std::vector<int>> a{t.weights[0], t.marks_at(0)};
    std::pair<int, std::vector<int>> b{t.weights[1], t.marks_at(1)};
    return std::min(a, b);
}

int SymmetricDeltaComplex::zero_cell_of(int e, const std::vector<int>& S) const {
    MarkedWeightedTree t = make_two_vertex_tree(d, n, e, S);
    int id = find_cell(0, make_labelled(t, {0}));
    if (id < 0) throw Error("two-vertex cell not present in complex");
    return id;
}

nlohmann::ordered_json SymmetricDeltaComplex::to_json() const {
    nlohmann::ordered_json j;
    j["d"] = d;
    j["n"] = n;
    j["max_dim"] = built_dim;
    j["complete"] = complete;
    FVector f = f_vector();
    j["f_vector"] = {{"orbits", f.orbits}, {"elements", f.elements}};
    j["cells"] = nlohmann::ordered_json::array();
    j["faces"] = nlohmann::ordered_json::array();
    j["relabels"] = nlohmann::ordered_json::array();
    for (int p = 0; p <= built_dim; ++p) {
        const auto& dd = dims[p];
        nlohmann::ordered_json cells = nlohmann::ordered_json::array();
        for (const auto& [ci, labels] : dd.cells) {
            nlohmann::ordered_json c;
            c["tree"] = tree_to_json(dd.classes[ci].rep);
            c["labels"] = labels;
            cells.push_back(c);
        }
        j["cells"].push_back(cells);
        j["faces"].push_back(dd.face_of);
        j["relabels"].push_back(dd.transpose_of);
    }
    return j;
}

std::string SymmetricDeltaComplex::one_skeleton_dot() const {
    std::ostringstream os;
    os << "graph one_skeleton {\n";
    if (built_dim >= 0) {
        for (int id = 0; id < dims[0].cell_count(); ++id) {
            auto [e, S] = two_vertex_params(id);
            os << "  v" << id << " [label=\"B(" << e << ",{";
            for (size_t i = 0; i < S.size(); ++i) {
                if (i) os << ',';
                os << S[i];
            }
            os << "})\"];\n";
        }
        for (const auto& e : one_skeleton()) os << "  v" << e.u << " -- v" << e.v << ";\n";
    }
    os << "}\n";
    return os.str();
}

SymmetricDeltaComplex build_complex(int d, int n, const BuildOptions& opts) {
    SymmetricDeltaComplex X;
    X.d = d;
    X.n = n;
    long long total_cells = 0;
    // no stable tree exceeds this edge count; the build also verifies it
    int edge_cap = (d >= 1 ? n + 2 * d - 3 : n - 3) + 1;

    for (int p = 0;; ++p) {
        if (opts.max_dim && p > *opts.max_dim) break;
        if (p > edge_cap) {
            X.complete = true;
            break;
        }
        std::vector<MarkedWeightedTree> trees = enumerate_trees(d, n, p + 1);
        if (trees.empty()) {
            X.complete = true;
            break;
        }

        DimensionData dd;
        for (auto& t : trees) {
            TreeClassInfo info;
            info.form = canonical_form(t);
            info.rep = std::move(t);
            info.edge_auts = edge_automorphisms_cached(info.rep, info.form);
            for (const auto& g : info.edge_auts)
                if (perm_sign(g) < 0) info.auts_all_even = false;
            dd.class_by_form.emplace(info.form, static_cast<int>(dd.classes.size()));
            dd.classes.push_back(std::move(info));
        }

        std::vector<std::vector<int>> perms = all_permutations(p + 1);
        for (size_t ci = 0; ci < dd.classes.size(); ++ci) {
            std::set<std::vector<int>> minima;
            for (const auto& lab : perms)
                minima.insert(minimize_labels(dd.classes[ci].edge_auts, lab));
            dd.orbit_rep_cell.push_back(dd.cell_count());
            for (const auto& lab : minima) {
                dd.cell_index.emplace(cell_key(static_cast<int>(ci), lab), dd.cell_count());
                dd.cells.push_back({static_cast<int>(ci), lab});
            }
        }

        total_cells += dd.cell_count();
        if (total_cells > opts.max_cells)
            throw BudgetExceededError("cell budget exceeded while building T(" + std::to_string(d) +
                                      "," + std::to_string(n) + "): " + std::to_string(total_cells) +
                                      " > " + std::to_string(opts.max_cells));

        X.dims.push_back(std::move(dd));
        X.built_dim = p;

        // relabel table: adjacent transpositions
        DimensionData& cur = X.dims[p];
        cur.transpose_of.assign(std::max(0, p), std::vector<int>(cur.cell_count()));
        for (int j = 0; j + 1 <= p; ++j) {
            std::vector<int> kappa(p + 1);
            std::iota(kappa.begin(), kappa.end(), 0);
            std::swap(kappa[j], kappa[j + 1]);
            for (int id = 0; id < cur.cell_count(); ++id)
                cur.transpose_of[j][id] = X.relabel(p, id, kappa);
        }

        // orbit witnesses by breadth-first closure under adjacent transpositions
        cur.witness.assign(cur.cell_count(), {});
        std::vector<int> identity(p + 1);
        std::iota(identity.begin(), identity.end(), 0);
        for (size_t ci = 0; ci < cur.classes.size(); ++ci) {
            int rep = cur.orbit_rep_cell[ci];
            cur.witness[rep] = identity;
            std::queue<int> q;
            q.push(rep);
            while (!q.empty()) {
                int c = q.front();
                q.pop();
                for (int j = 0; j + 1 <= p; ++j) {
                    int c2 = cur.transpose_of[j][c];
                    if (!cur.witness[c2].empty()) continue;
                    std::vector<int> t(p + 1);
                    std::iota(t.begin(), t.end(), 0);
                    std::swap(t[j], t[j + 1]);
                    cur.witness[c2] = compose(t, cur.witness[c]);
                    q.push(c2);
                }
            }
        }

        // face table
        if (p >= 1) {
            cur.face_of.assign(cur.cell_count(), std::vector<int>(p + 1, -1));
            for (int id = 0; id < cur.cell_count(); ++id) {
                const auto& [ci, lab] = cur.cells[id];
                const TreeClassInfo& cls = cur.classes[ci];
                for (int j = 0; j <= p; ++j) {
                    int e = -1;
                    for (size_t i = 0; i < lab.size(); ++i)
                        if (lab[i] == j) e = static_cast<int>(i);
                    Contraction ct = contract_edge(cls.rep, e);
                    std::vector<int> collapsed(ct.edge_map.size());
                    for (size_t i = 0; i < ct.edge_map.size(); ++i) {
                        int l = lab[ct.edge_map[i]];
                        collapsed[i] = l - (l > j ? 1 : 0);
                    }
                    int fid = X.find_cell(p - 1, make_labelled(ct.tree, collapsed));
                    if (fid < 0) throw Error("face cell missing from lower stratum");
                    cur.face_of[id][j] = fid;
                }
            }
        }
    }
    return X;
}

}  // namespace treecx
