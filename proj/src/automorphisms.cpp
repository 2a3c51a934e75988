#include "treecx/automorphisms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace treecx {

namespace {

std::string perm_str(const std::vector<int>& p) {
    std::ostringstream os;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) os << ',';
        os << p[i];
    }
    return os.str();
}

// stabilizer of a cell under the label action: { l o g o l^{-1} } over the
// edge-automorphism group, encoded as a sorted set string
std::string stabilizer_key(const SymmetricDeltaComplex& X, int p, int id) {
    const auto& dd = X.dims[p];
    const auto& [ci, labels] = dd.cells[id];
    std::vector<int> inv(labels.size());
    for (size_t e = 0; e < labels.size(); ++e) inv[labels[e]] = static_cast<int>(e);
    std::set<std::string> members;
    for (const auto& g : dd.classes[ci].edge_auts) {
        std::vector<int> kappa(labels.size());
        for (size_t x = 0; x < labels.size(); ++x) kappa[x] = labels[g[inv[x]]];
        members.insert(perm_str(kappa));
    }
    std::string out;
    for (const auto& s : members) out += s + '|';
    return out;
}

struct Searcher {
    const SymmetricDeltaComplex& X;
    int v0 = 0;  // number of 0-cells
    std::vector<std::vector<int>> mult;          // 1-skeleton multiplicities, loops on diagonal
    std::vector<int> color;                      // refined 0-cell colors
    std::vector<std::vector<int>> color_class;   // color -> member 0-cells
    // per dimension p >= 1: ordered face tuple -> cells carrying it
    std::vector<std::map<std::vector<int>, std::vector<int>>> tuple_index;
    std::vector<std::vector<std::string>> stab_key;  // per dim, per cell
    std::vector<ComplexAutomorphism> found;

    std::vector<int> assign0;
    std::vector<char> used0;
    std::vector<int> order0;

    explicit Searcher(const SymmetricDeltaComplex& complex) : X(complex) {
        v0 = X.built_dim >= 0 ? X.dims[0].cell_count() : 0;
        mult.assign(v0, std::vector<int>(v0, 0));
        if (X.built_dim >= 1)
            for (const auto& e : X.one_skeleton()) mult[e.u][e.v]++, mult[e.v][e.u] += (e.u != e.v);
        refine_colors();
        tuple_index.resize(X.built_dim + 1);
        stab_key.resize(X.built_dim + 1);
        for (int p = 1; p <= X.built_dim; ++p) {
            const auto& dd = X.dims[p];
            stab_key[p].resize(dd.cell_count());
            for (int id = 0; id < dd.cell_count(); ++id) {
                tuple_index[p][dd.face_of[id]].push_back(id);
                stab_key[p][id] = stabilizer_key(X, p, id);
            }
        }
        if (X.built_dim >= 0) {
            stab_key[0].assign(v0, "");
        }
    }

    void refine_colors() {
        color.assign(v0, 0);
        while (true) {
            std::map<std::string, int> interned;
            std::vector<int> next(v0);
            for (int v = 0; v < v0; ++v) {
                std::ostringstream os;
                os << color[v] << '/' << mult[v][v] << '/';
                std::vector<std::pair<int, int>> nb;
                for (int u = 0; u < v0; ++u)
                    if (u != v && mult[v][u] > 0) nb.push_back({color[u], mult[v][u]});
                std::sort(nb.begin(), nb.end());
                for (auto [c, m] : nb) os << c << ':' << m << ';';
                std::string key = os.str();
                auto it = interned.find(key);
                if (it == interned.end()) it = interned.emplace(key, static_cast<int>(interned.size())).first;
                next[v] = it->second;
            }
            bool changed = next != color;
            color = std::move(next);
            if (!changed) break;
        }
        int classes = v0 ? *std::max_element(color.begin(), color.end()) + 1 : 0;
        color_class.assign(classes, {});
        for (int v = 0; v < v0; ++v) color_class[color[v]].push_back(v);
    }

    void run() {
        if (X.built_dim < 0) {
            found.push_back(ComplexAutomorphism{});
            return;
        }
        assign0.assign(v0, -1);
        used0.assign(v0, 0);
        order0.resize(v0);
        std::iota(order0.begin(), order0.end(), 0);
        std::sort(order0.begin(), order0.end(), [&](int a, int b) {
            size_t sa = color_class[color[a]].size(), sb = color_class[color[b]].size();
            return sa != sb ? sa < sb : a < b;
        });
        place_zero(0);
        std::sort(found.begin(), found.end());
    }

    void place_zero(int k) {
        if (k == v0) {
            ComplexAutomorphism a;
            a.perm.resize(X.built_dim + 1);
            a.perm[0] = assign0;
            extend(a, 1);
            return;
        }
        int v = order0[k];
        for (int w : color_class[color[v]]) {
            if (used0[w] || mult[v][v] != mult[w][w]) continue;
            bool ok = true;
            for (int j = 0; j < k && ok; ++j) {
                int u = order0[j];
                ok = mult[v][u] == mult[w][assign0[u]];
            }
            if (!ok) continue;
            assign0[v] = w;
            used0[w] = 1;
            place_zero(k + 1);
            assign0[v] = -1;
            used0[w] = 0;
        }
    }

    void extend(ComplexAutomorphism& a, int p) {
        if (p > X.built_dim) {
            if (!verify_automorphism(X, a)) throw Error("internal: search produced a non-automorphism");
            found.push_back(a);
            return;
        }
        const auto& dd = X.dims[p];
        a.perm[p].assign(dd.cell_count(), -1);
        std::vector<char> target_used(dd.classes.size(), 0);
        place_class(a, p, 0, target_used);
        a.perm[p].clear();
    }

    void place_class(ComplexAutomorphism& a, int p, size_t ci, std::vector<char>& target_used) {
        const auto& dd = X.dims[p];
        if (ci == dd.classes.size()) {
            extend(a, p + 1);
            return;
        }
        int rep = dd.orbit_rep_cell[ci];
        std::vector<int> req(dd.face_of[rep].size());
        for (size_t j = 0; j < req.size(); ++j) req[j] = a.perm[p - 1][dd.face_of[rep][j]];
        auto it = tuple_index[p].find(req);
        if (it == tuple_index[p].end()) return;
        for (int s : it->second) {
            int cs = dd.cells[s].first;
            if (target_used[cs] || stab_key[p][s] != stab_key[p][rep]) continue;
            target_used[cs] = 1;
            int begin = dd.orbit_rep_cell[ci];
            int end = ci + 1 < dd.classes.size() ? dd.orbit_rep_cell[ci + 1] : dd.cell_count();
            for (int c = begin; c < end; ++c) a.perm[p][c] = X.relabel(p, s, dd.witness[c]);
            place_class(a, p, ci + 1, target_used);
            for (int c = begin; c < end; ++c) a.perm[p][c] = -1;
            target_used[cs] = 0;
        }
    }
};

}  // namespace

ComplexAutomorphism identity_automorphism(const SymmetricDeltaComplex& X) {
    ComplexAutomorphism a;
    for (int p = 0; p <= X.built_dim; ++p) {
        std::vector<int> id(X.dims[p].cell_count());
        std::iota(id.begin(), id.end(), 0);
        a.perm.push_back(std::move(id));
    }
    return a;
}

ComplexAutomorphism marking_automorphism(const SymmetricDeltaComplex& X,
                                         const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != X.n) throw Error("marking permutation size mismatch");
    ComplexAutomorphism a;
    for (int p = 0; p <= X.built_dim; ++p) {
        const auto& dd = X.dims[p];
        std::vector<int> perm(dd.cell_count(), -1);
        for (int id = 0; id < dd.cell_count(); ++id) {
            const auto& [ci, labels] = dd.cells[id];
            MarkedWeightedTree t = dd.classes[ci].rep;
            std::vector<int> moved(t.n);
            for (int i = 0; i < t.n; ++i) moved[sigma[i]] = t.marking[i];
            t.marking = std::move(moved);
            int img = X.find_cell(p, make_labelled(t, labels));
            if (img < 0) throw Error("marking action left the complex");
            perm[id] = img;
        }
        a.perm.push_back(std::move(perm));
    }
    return a;
}

std::vector<int> restrict_to_vertices(const ComplexAutomorphism& a) {
    return a.perm.empty() ? std::vector<int>{} : a.perm[0];
}

bool verify_automorphism(const SymmetricDeltaComplex& X, const ComplexAutomorphism& a) {
    if (static_cast<int>(a.perm.size()) != X.built_dim + 1) return false;
    for (int p = 0; p <= X.built_dim; ++p) {
        const auto& dd = X.dims[p];
        std::vector<char> hit(dd.cell_count(), 0);
        for (int c = 0; c < dd.cell_count(); ++c) {
            int img = a.perm[p][c];
            if (img < 0 || img >= dd.cell_count() || hit[img]) return false;
            hit[img] = 1;
        }
        for (int j = 0; j + 1 <= p; ++j)
            for (int c = 0; c < dd.cell_count(); ++c)
                if (a.perm[p][dd.transpose_of[j][c]] != dd.transpose_of[j][a.perm[p][c]])
                    return false;
        if (p >= 1)
            for (int c = 0; c < dd.cell_count(); ++c)
                for (int j = 0; j <= p; ++j)
                    if (a.perm[p - 1][dd.face_of[c][j]] != dd.face_of[a.perm[p][c]][j])
                        return false;
    }
    return true;
}

ComplexAutomorphism compose(const SymmetricDeltaComplex& X, const ComplexAutomorphism& a,
                            const ComplexAutomorphism& b) {
    ComplexAutomorphism out;
    for (int p = 0; p <= X.built_dim; ++p) out.perm.push_back(compose(a.perm[p], b.perm[p]));
    return out;
}

bool is_group(const SymmetricDeltaComplex& X, const std::vector<ComplexAutomorphism>& elements) {
    std::set<std::vector<std::vector<int>>> members;
    for (const auto& e : elements) members.insert(e.perm);
    if (!members.count(identity_automorphism(X).perm)) return false;
    for (const auto& a : elements) {
        ComplexAutomorphism inv;
        for (const auto& p : a.perm) inv.perm.push_back(inverse(p));
        if (!members.count(inv.perm)) return false;
        for (const auto& b : elements)
            if (!members.count(compose(X, a, b).perm)) return false;
    }
    return true;
}

namespace {

// S_{n+1} extraction through the cone structure: non-apex 0-cells of T(1,n)
// are bipartitions of {1..n+1}; the action on 2-element parts pins a
// permutation, which must then reproduce the whole vertex action.
bool certify_cone_permutation(const AutGroupResult& g, const SymmetricDeltaComplex& X) {
    if (X.d != 1 || X.n < 4) return false;
    int m = X.n + 1;
    long long fact = 1;
    for (int i = 2; i <= m; ++i) fact *= i;
    if (g.order() != fact) return false;
    int v0 = X.dims[0].cell_count();
    // bipartition of {1..m} per 0-cell: part = S + {m} where S marks the
    // weight-1 side; the apex is the singleton part {m}
    std::vector<std::set<int>> part(v0);
    int apex = -1;
    std::map<std::set<int>, int> pair_cell;  // 2-element parts
    for (int id = 0; id < v0; ++id) {
        const MarkedWeightedTree& t = X.cell_tree(0, id);
        int heavy = t.weights[0] == 1 ? 0 : 1;
        std::vector<int> S = t.marks_at(heavy);
        std::set<int> A(S.begin(), S.end());
        A.insert(m);
        part[id] = A;
        if (static_cast<int>(A.size()) == 1) apex = id;
        std::set<int> other;
        for (int i = 1; i <= m; ++i)
            if (!A.count(i)) other.insert(i);
        if (A.size() == 2) pair_cell[A] = id;
        if (other.size() == 2) pair_cell[other] = id;
    }
    if (apex < 0) return false;

    std::set<std::vector<int>> sigmas;
    for (const auto& phi : g.elements) {
        const std::vector<int>& p0 = phi.perm[0];
        if (p0[apex] != apex) return false;
        // image of each 2-element part
        std::map<std::set<int>, std::set<int>> pair_img;
        for (const auto& [P, id] : pair_cell) {
            int img = p0[id];
            const std::set<int>& A = part[img];
            std::set<int> B;
            for (int i = 1; i <= m; ++i)
                if (!A.count(i)) B.insert(i);
            if (A.size() == 2)
                pair_img[P] = A;
            else if (B.size() == 2)
                pair_img[P] = B;
            else
                return false;
        }
        std::vector<int> sigma(m + 1, 0);  // 1-based
        for (int i = 1; i <= m; ++i) {
            std::vector<int> partners;
            for (int t2 = 1; t2 <= m && partners.size() < 2; ++t2)
                if (t2 != i) partners.push_back(t2);
            std::set<int> im1 = pair_img.at({std::min(i, partners[0]), std::max(i, partners[0])});
            std::set<int> im2 = pair_img.at({std::min(i, partners[1]), std::max(i, partners[1])});
            std::vector<int> common;
            std::set_intersection(im1.begin(), im1.end(), im2.begin(), im2.end(),
                                  std::back_inserter(common));
            if (common.size() != 1) return false;
            sigma[i] = common[0];
        }
        std::vector<char> seen(m + 1, 0);
        for (int i = 1; i <= m; ++i) {
            if (sigma[i] < 1 || sigma[i] > m || seen[sigma[i]]) return false;
            seen[sigma[i]] = 1;
        }
        // the extracted permutation must reproduce the vertex action away
        // from the apex, which stays put as the cone point
        for (int id = 0; id < v0; ++id) {
            if (id == apex) continue;
            std::set<int> imgA;
            for (int i : part[id]) imgA.insert(sigma[i]);
            std::set<int> imgB;
            for (int i = 1; i <= m; ++i)
                if (!imgA.count(i)) imgB.insert(i);
            const std::set<int>& got = part[p0[id]];
            if (got != imgA && got != imgB) return false;
        }
        if (!sigmas.insert(std::vector<int>(sigma.begin() + 1, sigma.end())).second) return false;
    }
    return true;
}

}  // namespace

AutGroupResult automorphism_group(const SymmetricDeltaComplex& X) {
    if (!X.complete) throw PartialBuildError("automorphism search needs a complete build");
    Searcher s(X);
    s.run();
    AutGroupResult out;
    out.elements = std::move(s.found);
    if (out.order() == 1)
        out.certification = GroupCertification::TrivialGroup;
    else if (X.d >= 2 && is_exactly_marking_action(out, X))
        out.certification = GroupCertification::MarkingAction;
    else if (X.d == 1 && certify_cone_permutation(out, X))
        out.certification = GroupCertification::ConePermutation;
    else
        out.certification = GroupCertification::OrderOnly;
    return out;
}

bool is_exactly_marking_action(const AutGroupResult& g, const SymmetricDeltaComplex& X) {
    std::set<std::vector<std::vector<int>>> group_set;
    for (const auto& e : g.elements) group_set.insert(e.perm);
    std::set<std::vector<std::vector<int>>> marking_set;
    std::vector<int> sigma(X.n);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        marking_set.insert(marking_automorphism(X, sigma).perm);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    if (X.built_dim < 0) return g.order() == 1;
    return group_set == marking_set;
}

std::vector<int> one_end_labels(const SymmetricDeltaComplex& X, int p, int id) {
    LabelledTree lt = X.cell_labelled(p, id);
    std::vector<int> out;
    for (int e : one_ends(lt.rep)) out.push_back(lt.labels[e]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<int, int>> shared_vertex_one_end_label_pairs(const SymmetricDeltaComplex& X,
                                                                   int p, int id) {
    LabelledTree lt = X.cell_labelled(p, id);
    std::vector<int> ends = one_ends(lt.rep);
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < ends.size(); ++i)
        for (size_t j = i + 1; j < ends.size(); ++j) {
            auto [a1, b1] = lt.rep.edges[ends[i]];
            auto [a2, b2] = lt.rep.edges[ends[j]];
            if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2) {
                int x = lt.labels[ends[i]], y = lt.labels[ends[j]];
                out.push_back({std::min(x, y), std::max(x, y)});
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<StructuralViolation> structural_violations(const SymmetricDeltaComplex& X,
                                                       const ComplexAutomorphism& a) {
    std::vector<StructuralViolation> out;
    for (int p = 0; p <= X.built_dim; ++p) {
        for (int id = 0; id < X.dims[p].cell_count(); ++id) {
            int img = a.perm[p][id];
            if (!(weight_multiset(X.cell_tree(p, id)) == weight_multiset(X.cell_tree(p, img))))
                out.push_back({p, id, "weight multiset changed"});
            if (one_end_labels(X, p, id) != one_end_labels(X, p, img))
                out.push_back({p, id, "1-end labels changed"});
            if (shared_vertex_one_end_label_pairs(X, p, id) !=
                shared_vertex_one_end_label_pairs(X, p, img))
                out.push_back({p, id, "shared-vertex 1-end pairs changed"});
        }
    }
    // the star cell and B_{1,empty} are fixed whenever they exist
    if (X.d >= 2 && !(X.d == 2 && X.n == 0)) {
        MarkedWeightedTree star = make_star(X.d, X.n);
        int p = X.d - 1;
        if (p <= X.built_dim) {
            std::vector<int> labels(X.d);
            std::iota(labels.begin(), labels.end(), 0);
            int id = X.find_cell(p, make_labelled(star, labels));
            if (id < 0)
                out.push_back({p, -1, "star cell missing"});
            else if (a.perm[p][id] != id)
                out.push_back({p, id, "star cell moved"});
        }
    }
    if ((X.d >= 2 || (X.d == 1 && X.n >= 2)) && X.built_dim >= 0) {
        int id = X.zero_cell_of(1, {});
        if (a.perm[0][id] != id) out.push_back({0, id, "B(1,{}) moved"});
    }
    return out;
}

}  // namespace treecx
