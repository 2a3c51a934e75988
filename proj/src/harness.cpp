#include "treecx/harness.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace treecx {

namespace {

long long factorial(int k) {
    long long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

std::string status_str(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        default: return "skipped";
    }
}

}  // namespace

long long expected_aut_order(int d, int n) {
    if (d == 0) {
        if (n >= 5) return factorial(n);
        if (n == 4) return 6;
        return 1;
    }
    if (d == 1) {
        if (n >= 4) return factorial(n + 1);
        if (n == 3) return 6;
        return 1;
    }
    return factorial(n);
}

int top_dimension(int d, int n) { return d >= 1 ? n + 2 * d - 4 : n - 4; }

std::vector<long long> expected_betti(int d, int n) {
    int top = top_dimension(d, n);
    if (top < 0) return {};
    std::vector<long long> b(top + 1, 0);
    if (d == 0 && n >= 4) b[n - 4] = factorial(n - 2);
    return b;
}

long long u_count_formula(int d, int n, int e, int s_size) {
    return (e + 1LL) * (1LL << s_size) + (d - e + 1LL) * (1LL << (n - s_size)) - n - 4;
}

bool VerificationReport::all_pass() const {
    for (const auto& r : records)
        if (r.status == CheckStatus::Fail) return false;
    return true;
}

nlohmann::ordered_json VerificationReport::to_json(bool with_timestamps) const {
    nlohmann::ordered_json j;
    j["instances"] = nlohmann::ordered_json::array();
    for (const auto& i : instances) {
        nlohmann::ordered_json ji;
        ji["d"] = i.d;
        ji["n"] = i.n;
        if (i.max_dim)
            ji["max_dim"] = *i.max_dim;
        else
            ji["max_dim"] = nullptr;
        j["instances"].push_back(ji);
    }
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json jr;
        jr["id"] = r.id;
        jr["claim"] = r.claim;
        jr["d"] = r.d;
        jr["n"] = r.n;
        jr["status"] = status_str(r.status);
        jr["counts"] = r.counts;
        if (!r.note.empty()) jr["note"] = r.note;
        if (with_timestamps) jr["elapsed_ms"] = r.elapsed_ms;
        j["checks"].push_back(jr);
    }
    j["overall"] = all_pass() ? "pass" : "fail";
    return j;
}

std::vector<Instance> default_instances() {
    return {{2, 0, {}}, {2, 1, {}}, {2, 2, {}}, {2, 3, {}}, {3, 0, {}},
            {3, 1, {}}, {1, 3, {}}, {1, 4, {}}, {0, 5, {}}};
}

namespace {

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

struct SuiteContext {
    const Instance& inst;
    const SymmetricDeltaComplex* X = nullptr;
    std::optional<AutGroupResult> group;
    long long max_cells;

    const AutGroupResult& aut() {
        if (!group) group = automorphism_group(*X);
        return *group;
    }
};

using CheckFn = void (*)(SuiteContext&, CheckRecord&);

void check_counting_lemma(SuiteContext& c, CheckRecord& r) {
    const SymmetricDeltaComplex& X = *c.X;
    long long checked = 0, mismatches = 0;
    for (int e = 0; e <= X.d; ++e) {
        for (unsigned mask = 0; mask < (1u << X.n); ++mask) {
            std::vector<int> S;
            for (int i = 0; i < X.n; ++i)
                if (mask & (1u << i)) S.push_back(i + 1);
            int s = static_cast<int>(S.size());
            if (e == 0 && s < 2) continue;
            if (e == X.d && X.n - s < 2) continue;
            int id = X.zero_cell_of(e, S);
            long long got = X.built_dim >= 1 ? X.incident_one_cell_count(id) : 0;
            long long want = u_count_formula(X.d, X.n, e, s);
            checked++;
            if (got != want) {
                mismatches++;
                if (r.note.empty())
                    r.note = "first mismatch at (e=" + std::to_string(e) + ",|S|=" +
                             std::to_string(s) + "): counted " + std::to_string(got) +
                             ", formula " + std::to_string(want);
            }
        }
    }
    r.counts["pairs_checked"] = checked;
    r.counts["mismatches"] = mismatches;
    r.status = mismatches == 0 ? CheckStatus::Pass : CheckStatus::Fail;
}

void check_reconstruction(SuiteContext& c, CheckRecord& r) {
    const SymmetricDeltaComplex& X = *c.X;
    long long checked = 0, failures = 0;
    for (int p = 1; p <= X.built_dim; ++p) {
        for (int id = 0; id < X.dims[p].cell_count(); ++id) {
            LabelledTree cell = X.cell_labelled(p, id);
            checked++;
            try {
                LabelledTree back = reconstruct_cell(X.contraction_deck(p, id),
                                                     weight_multiset(cell.rep), X.d, X.n);
                if (!(back == cell)) {
                    failures++;
                    if (r.note.empty())
                        r.note = "cell " + std::to_string(id) + " of dimension " +
                                 std::to_string(p) + " came back as a different cell";
                }
            } catch (const Error& err) {
                failures++;
                if (r.note.empty()) r.note = err.what();
            }
        }
    }
    r.counts["cells_checked"] = checked;
    r.counts["failures"] = failures;
    r.status = failures == 0 ? CheckStatus::Pass : CheckStatus::Fail;
}

void check_deck_collisions(SuiteContext& c, CheckRecord& r) {
    const SymmetricDeltaComplex& X = *c.X;
    long long pairs = 0, same_weights = 0;
    for (int p = 1; p <= X.built_dim; ++p) {
        for (auto [a, b] : find_deck_collisions(X, p)) {
            pairs++;
            if (weight_multiset(X.cell_tree(p, a)) == weight_multiset(X.cell_tree(p, b))) {
                same_weights++;
                if (r.note.empty())
                    r.note = "cells " + std::to_string(a) + "," + std::to_string(b) +
                             " of dimension " + std::to_string(p) +
                             " share deck and weight multiset";
            }
        }
    }
    r.counts["collision_pairs"] = pairs;
    r.counts["indiscernible_pairs"] = same_weights;
    r.status = same_weights == 0 ? CheckStatus::Pass : CheckStatus::Fail;
}

void check_node_type(SuiteContext& c, CheckRecord& r) {
    const SymmetricDeltaComplex& X = *c.X;
    long long checked = 0, violations = 0;
    for (int p = 0; p <= X.built_dim; ++p) {
        for (const auto& cls : X.dims[p].classes) {
            for (size_t e = 0; e < cls.rep.edges.size(); ++e) {
                auto [u, v] = cls.rep.edges[e];
                NodeType tu = node_type(cls.rep, u), tv = node_type(cls.rep, v);
                Contraction ct = contract_edge(cls.rep, static_cast<int>(e));
                NodeType tm = node_type(ct.tree, u);  // v collapses onto u < v
                checked++;
                if (!(tu < tm) || !(tv < tm)) violations++;
            }
        }
    }
    r.counts["contractions_checked"] = checked;
    r.counts["violations"] = violations;
    r.status = violations == 0 ? CheckStatus::Pass : CheckStatus::Fail;
}

void check_aut_order(SuiteContext& c, CheckRecord& r) {
    const AutGroupResult& g = c.aut();
    long long want = expected_aut_order(c.X->d, c.X->n);
    r.counts["order"] = g.order();
    r.counts["expected"] = want;
    long long cells = 0;
    for (const auto& dd : c.X->dims) cells += dd.cell_count();
    if (g.order() * g.order() * std::max(cells, 1LL) <= 50'000'000LL) {
        bool axioms = is_group(*c.X, g.elements);
        r.counts["group_axioms"] = axioms;
        if (!axioms) {
            r.status = CheckStatus::Fail;
            r.note = "composition table left the returned list";
            return;
        }
    }
    switch (g.certification) {
        case GroupCertification::TrivialGroup: r.counts["certification"] = "trivial"; break;
        case GroupCertification::MarkingAction: r.counts["certification"] = "marking-action"; break;
        case GroupCertification::ConePermutation:
            r.counts["certification"] = "cone-permutation";
            break;
        default: r.counts["certification"] = "order-only";
    }
    r.status = g.order() == want ? CheckStatus::Pass : CheckStatus::Fail;
    if (r.status == CheckStatus::Fail)
        r.note = "computed order " + std::to_string(g.order()) + ", expected " +
                 std::to_string(want);
}

void check_marking_action(SuiteContext& c, CheckRecord& r) {
    bool ok = is_exactly_marking_action(c.aut(), *c.X);
    r.counts["order"] = c.aut().order();
    r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    if (!ok) r.note = "group does not coincide with the marking action";
}

void check_vertex_restriction(SuiteContext& c, CheckRecord& r) {
    const AutGroupResult& g = c.aut();
    std::set<std::vector<int>> images;
    for (const auto& a : g.elements) images.insert(restrict_to_vertices(a));
    bool injective = images.size() == g.elements.size();
    r.counts["order"] = g.order();
    r.counts["distinct_vertex_actions"] = static_cast<long long>(images.size());
    r.counts["injective"] = injective;
    if (c.X->d >= 2) {
        r.status = injective ? CheckStatus::Pass : CheckStatus::Fail;
        if (!injective)
            r.note = "distinct automorphisms share a vertex action (kernel of size " +
                     std::to_string(g.elements.size() / std::max<size_t>(images.size(), 1)) + ")";
    } else {
        // observed only; the injectivity claim is made for d >= 2
        r.status = CheckStatus::Pass;
        r.note = injective ? "observed injective (not asserted for d <= 1)"
                           : "observed non-injective (not asserted for d <= 1)";
    }
}

void check_structural(SuiteContext& c, CheckRecord& r) {
    long long violations = 0;
    for (const auto& a : c.aut().elements) {
        auto v = structural_violations(*c.X, a);
        violations += static_cast<long long>(v.size());
        if (!v.empty() && r.note.empty())
            r.note = v.front().what + " (dimension " + std::to_string(v.front().dim) + ")";
    }
    r.counts["automorphisms"] = c.aut().order();
    r.counts["violations"] = violations;
    r.status = violations == 0 ? CheckStatus::Pass : CheckStatus::Fail;
}

void check_homology(SuiteContext& c, CheckRecord& r) {
    const SymmetricDeltaComplex& X = *c.X;
    std::vector<long long> betti = reduced_betti(X);
    std::vector<long long> want = expected_betti(X.d, X.n);
    bool dd_zero = boundary_squares_to_zero(X);
    r.counts["reduced_betti"] = betti;
    r.counts["expected"] = want;
    r.counts["boundary_squares_to_zero"] = dd_zero;
    r.status = (betti == want && dd_zero) ? CheckStatus::Pass : CheckStatus::Fail;
    if (betti != want) r.note = "Betti numbers differ from the expected wedge/contractible values";
    if (!dd_zero) r.note = "boundary operator does not square to zero";
}

void check_cone_iso(SuiteContext& c, CheckRecord& r) {
    const SymmetricDeltaComplex& X = *c.X;
    SymmetricDeltaComplex base = build_complex(0, X.n + 1, BuildOptions{{}, c.max_cells});
    AbstractSimplicialComplex lhs = cone(to_simplicial(base));
    AbstractSimplicialComplex rhs = to_simplicial(X);
    auto witness = asc_isomorphism(lhs, rhs);
    r.counts["cone_vertices"] = lhs.vertex_count();
    r.counts["target_vertices"] = rhs.vertex_count();
    r.counts["isomorphic"] = witness.has_value();
    r.status = witness ? CheckStatus::Pass : CheckStatus::Fail;
    if (!witness) r.note = "no face-preserving vertex bijection found";
}

void check_flag(SuiteContext& c, CheckRecord& r) {
    AbstractSimplicialComplex K = to_simplicial(*c.X);
    bool flag = is_flag(K);
    r.counts["vertices"] = K.vertex_count();
    r.counts["flag"] = flag;
    r.status = flag ? CheckStatus::Pass : CheckStatus::Fail;
    if (!flag) r.note = "a clique of the 1-skeleton is not a face";
}

void check_dimension_bound(SuiteContext& c, CheckRecord& r) {
    const SymmetricDeltaComplex& X = *c.X;
    int top = top_dimension(X.d, X.n);
    size_t beyond = enumerate_trees(X.d, X.n, std::max(top, -1) + 2).size();
    r.counts["top_dimension"] = top;
    r.counts["classes_beyond_bound"] = static_cast<long long>(beyond);
    r.counts["built_top"] = X.built_dim;
    bool built_matches = X.built_dim == std::max(top, -1);
    r.status = (beyond == 0 && built_matches) ? CheckStatus::Pass : CheckStatus::Fail;
    if (!built_matches) r.note = "built top dimension differs from n+2d-4 (resp. n-4)";
}

struct CheckDef {
    const char* id;
    const char* claim;
    bool needs_complete;
    bool (*applies)(const Instance&);
    CheckFn fn;
};

const CheckDef kChecks[] = {
    {"counting-lemma",
     "the number of 1-cells at B(e,S) equals (e+1)*2^|S| + (d-e+1)*2^|S^c| - n - 4",
     false, [](const Instance&) { return true; }, check_counting_lemma},
    {"reconstruction-roundtrip",
     "every cell of dimension >= 1 is recovered from its contraction deck plus weight multiset",
     false, [](const Instance& i) { return i.d >= 2; }, check_reconstruction},
    {"deck-collision-discrimination",
     "distinct cells sharing a contraction deck differ in weight multiset", false,
     [](const Instance& i) { return i.d >= 2; }, check_deck_collisions},
    {"node-type-inequality",
     "edge contraction strictly raises the node type of the merged vertex", false,
     [](const Instance&) { return true; }, check_node_type},
    {"aut-order", "the automorphism group order matches the symmetric-group value", true,
     [](const Instance&) { return true; }, check_aut_order},
    {"aut-marking-action",
     "every automorphism is induced by a permutation of the markings", true,
     [](const Instance& i) { return i.d >= 2; }, check_marking_action},
    {"aut-vertex-restriction",
     "restriction of automorphisms to the 0-skeleton is injective", true,
     [](const Instance&) { return true; }, check_vertex_restriction},
    {"aut-structural",
     "automorphisms preserve weight multisets, 1-ends and shared-vertex 1-end pairs, and fix "
     "the star cell and B(1,{})",
     true, [](const Instance&) { return true; }, check_structural},
    {"homology", "reduced rational Betti numbers match and the boundary squares to zero", true,
     [](const Instance&) { return true; }, check_homology},
    {"cone-iso", "T(1,n) is isomorphic to the cone over T(0,n+1) as simplicial complexes", true,
     [](const Instance& i) { return i.d == 1 && i.n >= 2; }, check_cone_iso},
    {"flag", "every clique of the 1-skeleton spans a face", true,
     [](const Instance& i) { return i.d <= 1; }, check_flag},
    {"dimension-bound", "no stable trees exist beyond n+2d-3 edges (n-3 when d = 0)", true,
     [](const Instance&) { return true; }, check_dimension_bound},
};

}  // namespace

VerificationReport run_verification_suite(const std::vector<Instance>& instances,
                                          const SuiteOptions& opts) {
    VerificationReport report;
    report.instances = instances;

    for (const Instance& inst : instances) {
        std::optional<SymmetricDeltaComplex> X;
        std::string build_error;
        try {
            X = build_complex(inst.d, inst.n, BuildOptions{inst.max_dim, opts.max_cells});
        } catch (const BudgetExceededError& e) {
            build_error = e.what();
        }

        SuiteContext ctx{inst, X ? &*X : nullptr, {}, opts.max_cells};
        for (const CheckDef& def : kChecks) {
            if (!opts.checks.empty() &&
                std::find(opts.checks.begin(), opts.checks.end(), def.id) == opts.checks.end())
                continue;
            if (!def.applies(inst)) continue;
            CheckRecord rec;
            rec.id = def.id;
            rec.claim = def.claim;
            rec.d = inst.d;
            rec.n = inst.n;
            if (!X) {
                rec.status = CheckStatus::Skipped;
                rec.note = build_error;
                report.records.push_back(std::move(rec));
                continue;
            }
            if (def.needs_complete && !X->complete) {
                rec.status = CheckStatus::Skipped;
                rec.note = "needs a complete build";
                report.records.push_back(std::move(rec));
                continue;
            }
            Clock clock;
            try {
                def.fn(ctx, rec);
            } catch (const Error& e) {
                rec.status = CheckStatus::Fail;
                rec.note = e.what();
            }
            rec.elapsed_ms = clock.ms();
            report.records.push_back(std::move(rec));
        }
    }

    std::sort(report.records.begin(), report.records.end(),
              [](const CheckRecord& a, const CheckRecord& b) {
                  return std::tie(a.d, a.n, a.id) < std::tie(b.d, b.n, b.id);
              });
    return report;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw Error("write failed: " + path);
}

}  // namespace

void export_complex_json(const SymmetricDeltaComplex& X, const std::string& path) {
    write_file(path, X.to_json().dump(2) + "\n");
}

void export_skeleton_dot(const SymmetricDeltaComplex& X, const std::string& path) {
    write_file(path, X.one_skeleton_dot());
}

void export_trees_json(int d, int n, int num_edges, const std::string& path) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& t : enumerate_trees(d, n, num_edges)) j.push_back(tree_to_json(t));
    write_file(path, j.dump(2) + "\n");
}

void export_report_json(const VerificationReport& r, bool with_timestamps,
                        const std::string& path) {
    write_file(path, r.to_json(with_timestamps).dump(2) + "\n");
}

nlohmann::ordered_json FuzzReport::to_json() const {
    nlohmann::ordered_json j;
    j["cells_checked"] = cells_checked;
    j["failures"] = failures;
    return j;
}

FuzzReport reconstruct_fuzz(const SymmetricDeltaComplex& X, unsigned long long seed,
                            long long sample_threshold) {
    std::vector<std::pair<int, int>> all;
    for (int p = 1; p <= X.built_dim; ++p)
        for (int id = 0; id < X.dims[p].cell_count(); ++id) all.push_back({p, id});
    if (static_cast<long long>(all.size()) > sample_threshold) {
        std::mt19937_64 rng(seed);
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(sample_threshold);
        std::sort(all.begin(), all.end());
    }
    FuzzReport out;
    for (auto [p, id] : all) {
        out.cells_checked++;
        LabelledTree cell = X.cell_labelled(p, id);
        try {
            LabelledTree back = reconstruct_cell(X.contraction_deck(p, id),
                                                 weight_multiset(cell.rep), X.d, X.n);
            if (!(back == cell)) out.failures++;
        } catch (const Error&) {
            out.failures++;
        }
    }
    return out;
}

}  // namespace treecx
