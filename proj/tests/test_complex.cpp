#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "treecx/complex.hpp"
#include "treecx/harness.hpp"

using namespace treecx;

namespace {

MarkedWeightedTree path_tree(int d, int n, std::vector<int> weights,
                             std::vector<int> marking_vertices) {
    MarkedWeightedTree t;
    t.d = d;
    t.n = n;
    t.vertex_count = static_cast<int>(weights.size());
    t.weights = std::move(weights);
    t.marking = std::move(marking_vertices);
    for (int v = 0; v + 1 < t.vertex_count; ++v) t.edges.push_back({v, v + 1});
    t.validate();
    return t;
}

// kappa acting through a face index: the label permutation induced on [p-1]
std::vector<int> induced_after_face(const std::vector<int>& kappa, int j) {
    int p = static_cast<int>(kappa.size()) - 1;
    std::vector<int> inv = inverse(kappa);
    std::vector<int> out(p);
    for (int x = 0; x < p; ++x) {
        int lifted = x + (x >= inv[j] ? 1 : 0);
        int y = kappa[lifted];
        out[x] = y - (y > j ? 1 : 0);
    }
    return out;
}

}  // namespace

TEST_CASE("tiny complexes") {
    SymmetricDeltaComplex a = build_complex(2, 0, {});
    CHECK(a.complete);
    CHECK(a.f_vector().orbits == std::vector<long long>{1});

    SymmetricDeltaComplex b = build_complex(2, 1, {});
    CHECK(b.f_vector().orbits == std::vector<long long>{1, 1});
    CHECK(b.f_vector().elements == std::vector<long long>{1, 1});

    SymmetricDeltaComplex c = build_complex(1, 1, {});
    CHECK(c.complete);
    CHECK(c.built_dim == -1);
    CHECK(c.f_vector().orbits.empty());
}

TEST_CASE("f-vectors at desk scale") {
    SymmetricDeltaComplex x = build_complex(0, 5, {});
    CHECK(x.f_vector().orbits == std::vector<long long>{10, 15});
    CHECK(x.f_vector().elements == std::vector<long long>{10, 30});

    SymmetricDeltaComplex y = build_complex(2, 2, {});
    CHECK(y.f_vector().orbits == std::vector<long long>{3, 4, 2});
    CHECK(y.f_vector().elements == std::vector<long long>{3, 7, 9});

    SymmetricDeltaComplex z = build_complex(2, 3, {});
    CHECK(z.f_vector().orbits == std::vector<long long>{8, 20, 22, 9});
}

TEST_CASE("orbit soundness: class size is (p+1)!/|edge-automorphism image|") {
    SymmetricDeltaComplex x = build_complex(2, 3, {});
    for (int p = 0; p <= x.built_dim; ++p) {
        long long fact = 1;
        for (int i = 2; i <= p + 1; ++i) fact *= i;
        const auto& dd = x.dims[p];
        std::vector<long long> per_class(dd.classes.size(), 0);
        for (const auto& [ci, labels] : dd.cells) per_class[ci]++;
        for (size_t ci = 0; ci < dd.classes.size(); ++ci)
            CHECK(per_class[ci] ==
                  fact / static_cast<long long>(dd.classes[ci].edge_auts.size()));
    }
}

TEST_CASE("faces of the T(2,1) 1-cell coincide") {
    SymmetricDeltaComplex x = build_complex(2, 1, {});
    CHECK(x.face(1, 0, 0) == 0);
    CHECK(x.face(1, 0, 1) == 0);
    CHECK_THROWS_AS(x.face(1, 0, 5), Error);
}

TEST_CASE("faces of T(0,5) 1-cells are their bipartition refinements") {
    SymmetricDeltaComplex x = build_complex(0, 5, {});
    auto normalize = [](std::vector<int> side) {
        std::vector<int> sc;
        for (int m = 1; m <= 5; ++m)
            if (!std::count(side.begin(), side.end(), m)) sc.push_back(m);
        return std::min(side, sc);
    };
    for (int id = 0; id < x.dims[1].cell_count(); ++id) {
        LabelledTree lt = x.cell_labelled(1, id);
        std::vector<int> deg = lt.rep.degrees();
        std::set<std::vector<int>> want;
        for (int v = 0; v < 3; ++v)
            if (deg[v] == 1) want.insert(normalize(lt.rep.marks_at(v)));
        std::set<std::vector<int>> got;
        for (int j = 0; j <= 1; ++j) {
            auto [e, S] = x.two_vertex_params(x.face(1, id, j));
            got.insert(normalize(S));
        }
        CHECK(got == want);
    }
}

TEST_CASE("simplicial identity on T(2,2)") {
    SymmetricDeltaComplex x = build_complex(2, 2, {});
    for (int p = 2; p <= x.built_dim; ++p)
        for (int id = 0; id < x.dims[p].cell_count(); ++id)
            for (int k = 0; k <= p; ++k)
                for (int j = 0; j < k; ++j)
                    CHECK(x.face(p - 1, x.face(p, id, k), j) ==
                          x.face(p - 1, x.face(p, id, j), k - 1));
}

TEST_CASE("label actions commute with faces per the injection factorization") {
    SymmetricDeltaComplex x = build_complex(2, 2, {});
    for (int p = 1; p <= x.built_dim; ++p) {
        for (int id = 0; id < x.dims[p].cell_count(); ++id) {
            for (const auto& kappa : all_permutations(p + 1)) {
                int relabelled = x.relabel(p, id, kappa);
                std::vector<int> inv = inverse(kappa);
                for (int j = 0; j <= p; ++j) {
                    int lhs = x.face(p, relabelled, j);
                    int rhs = x.face(p, id, inv[j]);
                    if (p - 1 >= 1) rhs = x.relabel(p - 1, rhs, induced_after_face(kappa, j));
                    CHECK(lhs == rhs);
                }
            }
        }
    }
}

TEST_CASE("relabel is a group action") {
    SymmetricDeltaComplex x = build_complex(2, 2, {});
    int p = 2;
    auto perms = all_permutations(p + 1);
    for (int id = 0; id < x.dims[p].cell_count(); ++id)
        for (const auto& k1 : perms)
            for (const auto& k2 : perms)
                CHECK(x.relabel(p, x.relabel(p, id, k1), k2) ==
                      x.relabel(p, id, compose(k2, k1)));
}

TEST_CASE("relabel examples") {
    SymmetricDeltaComplex a = build_complex(2, 1, {});
    CHECK(a.relabel(1, 0, {1, 0}) == 0);  // absorbed by the tree symmetry

    SymmetricDeltaComplex b = build_complex(0, 5, {});
    for (int id = 0; id < b.dims[1].cell_count(); ++id) {
        CHECK(b.relabel(1, id, {0, 1}) == id);
        int swapped = b.relabel(1, id, {1, 0});
        CHECK(swapped != id);
        CHECK(b.dims[1].cells[swapped].first == b.dims[1].cells[id].first);
    }
}

TEST_CASE("contraction decks keep surviving labels") {
    SymmetricDeltaComplex x = build_complex(2, 2, {});
    for (int p = 1; p <= x.built_dim; ++p) {
        for (int id = 0; id < x.dims[p].cell_count(); ++id) {
            ContractionDeck deck = x.contraction_deck(p, id);
            REQUIRE(deck.dim() == p);
            for (int j = 0; j <= p; ++j) {
                std::vector<int> labels = deck.entries[j].labels;
                std::sort(labels.begin(), labels.end());
                std::vector<int> want;
                for (int l = 0; l <= p; ++l)
                    if (l != j) want.push_back(l);
                CHECK(labels == want);
            }
        }
    }
}

TEST_CASE("collapsing a deck entry order-preservingly gives the face") {
    SymmetricDeltaComplex x = build_complex(2, 2, {});
    for (int p = 1; p <= x.built_dim; ++p) {
        for (int id = 0; id < x.dims[p].cell_count(); ++id) {
            ContractionDeck deck = x.contraction_deck(p, id);
            for (int j = 0; j <= p; ++j) {
                LabelledTree entry = deck.entries[j];
                for (int& l : entry.labels) l -= (l > j ? 1 : 0);
                LabelledTree collapsed = make_labelled(entry.rep, entry.labels);
                CHECK(x.find_cell(p - 1, collapsed) == x.face(p, id, j));
            }
        }
    }
}

TEST_CASE("deck of the T(2,1) 1-cell") {
    SymmetricDeltaComplex x = build_complex(2, 1, {});
    ContractionDeck deck = x.contraction_deck(1, 0);
    std::string b_form = canonical_form(make_two_vertex_tree(2, 1, 1, {}));
    CHECK(deck.entries[0].tree_form == b_form);
    CHECK(deck.entries[0].labels == std::vector<int>{1});
    CHECK(deck.entries[1].tree_form == b_form);
    CHECK(deck.entries[1].labels == std::vector<int>{0});
}

TEST_CASE("one-skeleton of T(2,1) is a single loop") {
    SymmetricDeltaComplex x = build_complex(2, 1, {});
    auto sk = x.one_skeleton();
    REQUIRE(sk.size() == 1);
    CHECK(sk[0].u == sk[0].v);
    CHECK(x.incident_one_cell_count(0) == 1);
}

TEST_CASE("one-skeleton of T(0,5) is the Petersen graph") {
    SymmetricDeltaComplex x = build_complex(0, 5, {});
    auto sk = x.one_skeleton();
    CHECK(sk.size() == 15);
    std::vector<int> deg(10, 0);
    auto pair_side = [&](int id) {
        auto [e, S] = x.two_vertex_params(id);
        if (S.size() == 2) return S;
        std::vector<int> sc;
        for (int m = 1; m <= 5; ++m)
            if (!std::count(S.begin(), S.end(), m)) sc.push_back(m);
        return sc;
    };
    for (const auto& e : sk) {
        CHECK(e.u != e.v);
        deg[e.u]++;
        deg[e.v]++;
        // adjacent strata have disjoint 2-element sides
        std::vector<int> pu = pair_side(e.u), pv = pair_side(e.v), overlap;
        std::set_intersection(pu.begin(), pu.end(), pv.begin(), pv.end(),
                              std::back_inserter(overlap));
        CHECK(overlap.empty());
    }
    for (int v = 0; v < 10; ++v) CHECK(deg[v] == 3);
}

TEST_CASE("two-vertex adjacency rules in T(2,4)") {
    SymmetricDeltaComplex x = build_complex(2, 4, BuildOptions{1, 200000});
    auto sk = x.one_skeleton();
    auto adjacent = [&](int a, int b) {
        for (const auto& e : sk)
            if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return true;
        return false;
    };
    int c12 = x.zero_cell_of(0, {1, 2});
    int c34 = x.zero_cell_of(0, {3, 4});
    int c13 = x.zero_cell_of(0, {1, 3});
    CHECK(adjacent(c12, c34));        // disjoint pairs meet
    CHECK_FALSE(adjacent(c12, c13));  // overlapping pairs do not

    int b1_12 = x.zero_cell_of(1, {1, 2});
    CHECK(adjacent(b1_12, c12));  // {1,2} inside S
    CHECK(adjacent(b1_12, c34));  // {3,4} inside the complement
    CHECK_FALSE(adjacent(b1_12, c13));
}

TEST_CASE("incidence counts against the closed form") {
    SymmetricDeltaComplex x = build_complex(2, 1, {});
    CHECK(x.incident_one_cell_count(x.zero_cell_of(1, {})) == 1);
    CHECK(u_count_formula(2, 1, 1, 0) == 1);

    SymmetricDeltaComplex y = build_complex(2, 2, {});
    CHECK(y.incident_one_cell_count(y.zero_cell_of(1, {1})) == 2);
    CHECK(u_count_formula(2, 2, 1, 1) == 2);
    CHECK(y.incident_one_cell_count(y.zero_cell_of(0, {1, 2})) == 1);
    CHECK(u_count_formula(2, 2, 0, 2) == 1);
    CHECK(y.incident_one_cell_count(y.zero_cell_of(1, {})) == 4);
    CHECK(u_count_formula(2, 2, 1, 0) == 4);
}

TEST_CASE("counting formula sweeps clean on T(2,3) and T(3,1)") {
    for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 3}, {3, 1}}) {
        SymmetricDeltaComplex x = build_complex(d, n, {});
        for (int e = 0; e <= d; ++e) {
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                std::vector<int> S;
                for (int i = 0; i < n; ++i)
                    if (mask & (1u << i)) S.push_back(i + 1);
                int s = static_cast<int>(S.size());
                if (e == 0 && s < 2) continue;
                if (e == d && n - s < 2) continue;
                CHECK(x.incident_one_cell_count(x.zero_cell_of(e, S)) ==
                      u_count_formula(d, n, e, s));
            }
        }
    }
}

TEST_CASE("self-mirror stratum where the closed form double-counts") {
    // B(6,{}) in T(12,0) is carried onto itself with its sides exchanged, so
    // the closed form counts every incident 1-cell from both sides
    SymmetricDeltaComplex x = build_complex(12, 0, BuildOptions{2, 200000});
    int b6 = x.zero_cell_of(6, {});
    CHECK(x.incident_one_cell_count(b6) == 5);
    CHECK(u_count_formula(12, 0, 6, 0) == 10);
    for (int e = 1; e <= 5; ++e)
        CHECK(x.incident_one_cell_count(x.zero_cell_of(e, {})) ==
              u_count_formula(12, 0, e, 0));
}

TEST_CASE("dimension bound holds exhaustively at desk scale") {
    for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 1}, {0, 5}, {1, 3}}) {
        int top = top_dimension(d, n);
        SymmetricDeltaComplex x = build_complex(d, n, {});
        CHECK(x.built_dim == std::max(top, -1));
        CHECK(enumerate_trees(d, n, std::max(top, -1) + 2).empty());
    }
}

TEST_CASE("budget guard") {
    CHECK_THROWS_AS(build_complex(2, 3, BuildOptions{{}, 10}), BudgetExceededError);
}

TEST_CASE("two-vertex parameter lookup round-trips") {
    SymmetricDeltaComplex x = build_complex(2, 2, {});
    for (int id = 0; id < x.dims[0].cell_count(); ++id) {
        auto [e, S] = x.two_vertex_params(id);
        CHECK(x.zero_cell_of(e, S) == id);
    }
    CHECK_THROWS_AS(x.zero_cell_of(0, {1}), StabilityError);
}

TEST_CASE("json dump shape and dot export") {
    SymmetricDeltaComplex x = build_complex(0, 5, {});
    nlohmann::ordered_json j = x.to_json();
    CHECK(j["f_vector"]["orbits"] == nlohmann::json::parse("[10,15]"));
    CHECK(j["cells"].size() == 2);
    CHECK(j["faces"][1].size() == 30);

    SymmetricDeltaComplex loop = build_complex(2, 1, {});
    std::string dot = loop.one_skeleton_dot();
    CHECK(dot.find("v0 -- v0") != std::string::npos);
    CHECK(dot.find("B(1,{})") != std::string::npos);
}

TEST_CASE("deterministic rebuild") {
    std::string a = build_complex(2, 2, {}).to_json().dump();
    std::string b = build_complex(2, 2, {}).to_json().dump();
    CHECK(a == b);
}

TEST_CASE("mirrored one-cells share their whole face row") {
    // (1,{})-(0,X)-(1,Xc) and (1,{})-(0,Xc)-(1,X) are distinct cells with
    // identical ordered faces: contracting either edge lands on the same
    // one-edge classes because B(1,X) and B(1,Xc) coincide when d = 2
    SymmetricDeltaComplex x = build_complex(2, 3, {});
    MarkedWeightedTree a = path_tree(2, 3, {1, 0, 1}, {1, 2, 2});
    MarkedWeightedTree b = path_tree(2, 3, {1, 0, 1}, {2, 1, 1});
    int ida = x.find_cell(1, make_labelled(a, {0, 1}));
    int idb = x.find_cell(1, make_labelled(b, {0, 1}));
    REQUIRE(ida >= 0);
    REQUIRE(idb >= 0);
    CHECK(ida != idb);
    CHECK(x.dims[1].face_of[ida] == x.dims[1].face_of[idb]);
}
