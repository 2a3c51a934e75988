#include "treecx/topology.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

namespace treecx {

using Rat = boost::multiprecision::cpp_rational;

int AbstractSimplicialComplex::dim() const {
    int d = -1;
    for (const auto& f : faces) d = std::max(d, static_cast<int>(f.size()) - 1);
    return d;
}

std::vector<long long> AbstractSimplicialComplex::f_vector() const {
    std::vector<long long> f(dim() + 1, 0);
    for (const auto& face : faces) f[face.size() - 1]++;
    return f;
}

void AbstractSimplicialComplex::validate() const {
    for (const auto& f : faces) {
        if (f.empty()) throw Error("asc: empty face stored");
        if (!std::is_sorted(f.begin(), f.end())) throw Error("asc: face not sorted");
        for (int v : f)
            if (v < 0 || v >= vertex_count()) throw Error("asc: vertex out of range");
        if (f.size() > 1)
            for (size_t i = 0; i < f.size(); ++i) {
                std::vector<int> sub = f;
                sub.erase(sub.begin() + i);
                if (!faces.count(sub)) throw Error("asc: not downward closed");
            }
    }
    for (int v = 0; v < vertex_count(); ++v)
        if (!faces.count({v})) throw Error("asc: missing singleton");
}

AbstractSimplicialComplex to_simplicial(const SymmetricDeltaComplex& X) {
    AbstractSimplicialComplex K;
    if (X.built_dim < 0) return K;
    for (int id = 0; id < X.dims[0].cell_count(); ++id) {
        auto [e, S] = X.two_vertex_params(id);
        std::string name = "B(" + std::to_string(e) + ",{";
        for (size_t i = 0; i < S.size(); ++i) name += (i ? "," : "") + std::to_string(S[i]);
        name += "})";
        K.vertex_names.push_back(name);
        K.faces.insert({id});
    }
    for (int p = 1; p <= X.built_dim; ++p) {
        const auto& dd = X.dims[p];
        std::set<std::vector<int>> seen_this_dim;
        for (size_t ci = 0; ci < dd.classes.size(); ++ci) {
            if (dd.classes[ci].edge_auts.size() != 1)
                throw NotSimplicialError("a cell carries edge symmetries");
            int rep = dd.orbit_rep_cell[ci];
            // vertex j: contract everything except the edge labelled j
            std::vector<int> verts;
            LabelledTree lt = X.cell_labelled(p, rep);
            for (int j = 0; j <= p; ++j) {
                MarkedWeightedTree t = lt.rep;
                std::vector<int> labels = lt.labels;
                while (t.edges.size() > 1) {
                    int e = labels[0] == j ? 1 : 0;
                    Contraction ct = contract_edge(t, e);
                    std::vector<int> next(ct.edge_map.size());
                    for (size_t i = 0; i < ct.edge_map.size(); ++i) next[i] = labels[ct.edge_map[i]];
                    t = std::move(ct.tree);
                    labels = std::move(next);
                }
                int v = X.find_cell(0, make_labelled(t, {0}));
                if (v < 0) throw Error("vertex face missing");
                verts.push_back(v);
            }
            std::sort(verts.begin(), verts.end());
            if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
                throw NotSimplicialError("a cell has repeated vertices");
            if (!seen_this_dim.insert(verts).second)
                throw NotSimplicialError("distinct cells share a vertex set");
            K.faces.insert(verts);
        }
    }
    K.validate();
    return K;
}

AbstractSimplicialComplex cone(const AbstractSimplicialComplex& K) {
    AbstractSimplicialComplex C = K;
    int star = C.vertex_count();
    C.vertex_names.push_back("*");
    C.faces.insert({star});
    for (const auto& f : K.faces) {
        std::vector<int> g = f;
        g.push_back(star);
        C.faces.insert(g);
    }
    return C;
}

AbstractSimplicialComplex join(const AbstractSimplicialComplex& K,
                               const AbstractSimplicialComplex& L) {
    AbstractSimplicialComplex J;
    J.vertex_names = K.vertex_names;
    int shift = K.vertex_count();
    for (const auto& name : L.vertex_names) J.vertex_names.push_back(name + "'");
    std::vector<std::vector<int>> kf(K.faces.begin(), K.faces.end());
    std::vector<std::vector<int>> lf;
    for (const auto& f : L.faces) {
        std::vector<int> g = f;
        for (int& v : g) v += shift;
        lf.push_back(g);
    }
    kf.push_back({});
    lf.push_back({});
    for (const auto& a : kf)
        for (const auto& b : lf) {
            if (a.empty() && b.empty()) continue;
            std::vector<int> f = a;
            f.insert(f.end(), b.begin(), b.end());
            J.faces.insert(f);
        }
    return J;
}

namespace {

struct VertexSignature {
    std::vector<long long> per_dim;  // faces of each size containing the vertex
    auto operator<=>(const VertexSignature&) const = default;
};

std::vector<VertexSignature> signatures(const AbstractSimplicialComplex& K) {
    std::vector<VertexSignature> sig(K.vertex_count());
    int d = K.dim();
    for (auto& s : sig) s.per_dim.assign(d + 2, 0);
    for (const auto& f : K.faces)
        for (int v : f) sig[v].per_dim[f.size()]++;
    return sig;
}

}  // namespace

std::optional<std::vector<int>> asc_isomorphism(const AbstractSimplicialComplex& K,
                                                const AbstractSimplicialComplex& L) {
    if (K.vertex_count() != L.vertex_count() || K.faces.size() != L.faces.size()) return std::nullopt;
    if (K.f_vector() != L.f_vector()) return std::nullopt;
    int n = K.vertex_count();
    std::vector<VertexSignature> sk = signatures(K), sl = signatures(L);

    std::vector<int> img(n, -1);
    std::vector<char> used(n, 0);
    // assign in order of rarity of signature
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::map<VertexSignature, int> freq;
    for (const auto& s : sk) freq[s]++;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return freq[sk[a]] != freq[sk[b]] ? freq[sk[a]] < freq[sk[b]] : a < b;
    });

    // faces of K containing each vertex, for incremental checking
    std::vector<std::vector<const std::vector<int>*>> at(n);
    for (const auto& f : K.faces)
        for (int v : f) at[v].push_back(&f);

    auto rec = [&](auto&& self, int k) -> bool {
        if (k == n) return true;
        int v = order[k];
        for (int w = 0; w < n; ++w) {
            if (used[w] || !(sk[v] == sl[w])) continue;
            img[v] = w;
            used[w] = 1;
            bool ok = true;
            // every fully-mapped face through v must land on a face of L
            for (const auto* f : at[v]) {
                std::vector<int> g;
                g.reserve(f->size());
                bool full = true;
                for (int u : *f) {
                    if (img[u] < 0) {
                        full = false;
                        break;
                    }
                    g.push_back(img[u]);
                }
                if (!full) continue;
                std::sort(g.begin(), g.end());
                if (!L.has_face(g)) {
                    ok = false;
                    break;
                }
            }
            if (ok && self(self, k + 1)) return true;
            img[v] = -1;
            used[w] = 0;
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    // face counts agree, so face-preservation in one direction is a bijection
    return img;
}

bool is_flag(const AbstractSimplicialComplex& K) {
    int n = K.vertex_count();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const auto& f : K.faces)
        if (f.size() == 2) adj[f[0]][f[1]] = adj[f[1]][f[0]] = 1;

    // grow cliques in increasing vertex order; any clique missing from the
    // face family is a witness
    std::vector<int> clique;
    auto rec = [&](auto&& self, int start) -> bool {
        if (clique.size() >= 3 && !K.has_face(clique)) return false;
        for (int v = start; v < n; ++v) {
            bool joined = true;
            for (int u : clique)
                if (!adj[u][v]) {
                    joined = false;
                    break;
                }
            if (!joined) continue;
            clique.push_back(v);
            if (!self(self, v + 1)) return false;
            clique.pop_back();
        }
        return true;
    };
    return rec(rec, 0);
}

namespace {

size_t rational_rank(std::vector<std::vector<Rat>> M) {
    size_t rank = 0;
    size_t rows = M.size();
    if (rows == 0) return 0;
    size_t cols = M[0].size();
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t pivot = rank;
        while (pivot < rows && M[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(M[pivot], M[rank]);
        Rat inv = M[rank][c];
        for (size_t r = rank + 1; r < rows; ++r) {
            if (M[r][c] == 0) continue;
            Rat factor = M[r][c] / inv;
            for (size_t k = c; k < cols; ++k) M[r][k] -= factor * M[rank][k];
        }
        rank++;
    }
    return rank;
}

struct ChainComplexQ {
    // boundary[p]: rows index generators of dim p-1 (p = 0: the augmentation
    // row), columns index generators of dim p
    std::vector<size_t> gens;
    std::vector<std::vector<std::vector<Rat>>> boundary;
};

ChainComplexQ chains_of(const SymmetricDeltaComplex& X) {
    if (!X.complete) throw PartialBuildError("homology needs a complete build");
    ChainComplexQ C;
    int top = X.built_dim;
    if (top < 0) return C;
    // generator = class with no odd label stabilizer; index per dimension
    std::vector<std::vector<int>> gen_index(top + 1);
    for (int p = 0; p <= top; ++p) {
        gen_index[p].assign(X.dims[p].classes.size(), -1);
        size_t count = 0;
        for (size_t ci = 0; ci < X.dims[p].classes.size(); ++ci)
            if (X.dims[p].classes[ci].auts_all_even) gen_index[p][ci] = static_cast<int>(count++);
        C.gens.push_back(count);
    }
    C.boundary.resize(top + 1);
    // augmentation
    C.boundary[0].assign(1, std::vector<Rat>(C.gens[0], Rat(1)));
    for (int p = 1; p <= top; ++p) {
        C.boundary[p].assign(C.gens[p - 1], std::vector<Rat>(C.gens[p], Rat(0)));
        const auto& dd = X.dims[p];
        for (size_t ci = 0; ci < dd.classes.size(); ++ci) {
            int col = gen_index[p][ci];
            if (col < 0) continue;
            int rep = dd.orbit_rep_cell[ci];
            for (int j = 0; j <= p; ++j) {
                int f = dd.face_of[rep][j];
                int fclass = X.dims[p - 1].cells[f].first;
                int row = gen_index[p - 1][fclass];
                if (row < 0) continue;
                int sign = perm_sign(X.dims[p - 1].witness[f]) * (j % 2 == 0 ? 1 : -1);
                C.boundary[p][row][col] += sign;
            }
        }
    }
    return C;
}

std::vector<long long> betti_from_chains(const ChainComplexQ& C) {
    int top = static_cast<int>(C.gens.size()) - 1;
    if (top < 0) return {};
    std::vector<size_t> ranks(top + 2, 0);
    for (int p = 0; p <= top; ++p) ranks[p] = rational_rank(C.boundary[p]);
    std::vector<long long> betti(top + 1, 0);
    for (int p = 0; p <= top; ++p)
        betti[p] = static_cast<long long>(C.gens[p]) - ranks[p] - ranks[p + 1];
    return betti;
}

}  // namespace

std::vector<long long> reduced_betti(const SymmetricDeltaComplex& X) {
    return betti_from_chains(chains_of(X));
}

std::vector<long long> reduced_betti(const AbstractSimplicialComplex& K) {
    int top = K.dim();
    if (top < 0) return {};
    std::vector<std::map<std::vector<int>, int>> index(top + 1);
    std::vector<size_t> gens(top + 1, 0);
    for (const auto& f : K.faces) index[f.size() - 1].emplace(f, 0);
    for (int p = 0; p <= top; ++p) {
        int i = 0;
        for (auto& [f, id] : index[p]) id = i++;
        gens[p] = index[p].size();
    }
    ChainComplexQ C;
    C.gens = gens;
    C.boundary.resize(top + 1);
    C.boundary[0].assign(1, std::vector<Rat>(gens[0], Rat(1)));
    for (int p = 1; p <= top; ++p) {
        C.boundary[p].assign(gens[p - 1], std::vector<Rat>(gens[p], Rat(0)));
        for (const auto& [f, col] : index[p]) {
            for (size_t i = 0; i < f.size(); ++i) {
                std::vector<int> sub = f;
                sub.erase(sub.begin() + i);
                int row = index[p - 1].at(sub);
                C.boundary[p][row][col] += (i % 2 == 0 ? 1 : -1);
            }
        }
    }
    return betti_from_chains(C);
}

bool boundary_squares_to_zero(const SymmetricDeltaComplex& X) {
    ChainComplexQ C = chains_of(X);
    int top = static_cast<int>(C.gens.size()) - 1;
    for (int p = 1; p <= top; ++p) {
        const auto& A = C.boundary[p - 1];
        const auto& B = C.boundary[p];
        size_t rows = A.size(), mid = B.size(), cols = mid ? B[0].size() : 0;
        for (size_t r = 0; r < rows; ++r)
            for (size_t c = 0; c < cols; ++c) {
                Rat sum = 0;
                for (size_t k = 0; k < mid; ++k) sum += A[r][k] * B[k][c];
                if (sum != 0) return false;
            }
    }
    return true;
}

long long euler_characteristic_chains(const SymmetricDeltaComplex& X) {
    ChainComplexQ C = chains_of(X);
    long long chi = 0;
    int sign = 1;
    for (size_t g : C.gens) {
        chi += sign * static_cast<long long>(g);
        sign = -sign;
    }
    return chi;
}

}  // namespace treecx
