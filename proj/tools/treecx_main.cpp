// treecx: build and interrogate the dual complexes of stable weighted
// marked trees, and run the verification suite against the closed-form
// values they are expected to satisfy.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "treecx/harness.hpp"

namespace {

using namespace treecx;

long long default_budget() {
    if (const char* env = std::getenv("TREECX_MAX_CELLS")) {
        try {
            return std::stoll(env);
        } catch (...) {
            std::cerr << "warning: ignoring malformed TREECX_MAX_CELLS\n";
        }
    }
    return 200000;
}

std::vector<Instance> parse_instances(const std::string& text) {
    // "d,n[,max_dim];d,n;..."
    std::vector<Instance> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        Instance inst;
        std::stringstream fs(item);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(fs, field, ',')) fields.push_back(field);
        if (fields.size() < 2 || fields.size() > 3)
            throw CLI::ValidationError("--instances", "expected d,n or d,n,max_dim items");
        inst.d = std::stoi(fields[0]);
        inst.n = std::stoi(fields[1]);
        if (fields.size() == 3) inst.max_dim = std::stoi(fields[2]);
        out.push_back(inst);
    }
    return out;
}

std::string fvector_line(const FVector& f) {
    std::ostringstream os;
    os << "orbits: [";
    for (size_t i = 0; i < f.orbits.size(); ++i) os << (i ? "," : "") << f.orbits[i];
    os << "]  elements: [";
    for (size_t i = 0; i < f.elements.size(); ++i) os << (i ? "," : "") << f.elements[i];
    os << "]";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual complexes of stable weighted marked trees"};
    app.require_subcommand(1);
    app.fallthrough();

    int d = 0, n = 0;
    std::optional<int> max_dim;
    long long max_cells = default_budget();
    bool as_json = false;
    bool no_timestamps = false;
    unsigned long long seed = 0;
    app.add_option("--d", d, "total vertex weight (degree)");
    app.add_option("--n", n, "number of markings");
    app.add_option("--max-dim", max_dim, "build only the skeleton up to this dimension");
    app.add_option("--max-cells", max_cells, "cell budget summed over dimensions");
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_flag("--no-timestamps", no_timestamps, "omit timing fields from reports");
    app.add_option("--seed", seed, "seed for sampled roundtrips");

    auto* cmd_build = app.add_subcommand("build", "build the complex and print a summary");
    auto* cmd_fvec = app.add_subcommand("fvector", "print geometric and element counts");
    auto* cmd_aut = app.add_subcommand("aut", "compute the automorphism group");
    auto* cmd_verify = app.add_subcommand("verify", "run the verification suite");
    auto* cmd_hom = app.add_subcommand("homology", "reduced rational Betti numbers");
    auto* cmd_cone = app.add_subcommand("cone-check", "verify T(1,n) = Cone(T(0,n+1))");
    auto* cmd_flag = app.add_subcommand("flag-check", "flag test for d <= 1");
    auto* cmd_fuzz = app.add_subcommand("reconstruct-fuzz", "deck+weights roundtrip sweep");
    auto* cmd_export = app.add_subcommand("export", "write a complex, skeleton, trees or report");

    std::string instances_text;
    std::vector<std::string> checks;
    cmd_verify->add_option("--instances", instances_text, "semicolon-separated d,n[,max_dim] list");
    cmd_verify->add_option("--checks", checks, "restrict to these check ids");
    std::string report_out;
    cmd_verify->add_option("--out", report_out, "also write the JSON report to this path");

    std::string what = "complex", format = "json", out_path;
    cmd_export->add_option("--what", what, "complex|skeleton|trees|report")
        ->check(CLI::IsMember({"complex", "skeleton", "trees", "report"}));
    cmd_export->add_option("--format", format, "json|dot")->check(CLI::IsMember({"json", "dot"}));
    cmd_export->add_option("--out", out_path, "output path")->required();
    int export_edges = 1;
    cmd_export->add_option("--edges", export_edges, "edge count for --what trees");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        BuildOptions bopts{max_dim, max_cells};

        if (cmd_build->parsed() || cmd_fvec->parsed()) {
            SymmetricDeltaComplex X = build_complex(d, n, bopts);
            if (as_json) {
                std::cout << X.to_json().dump(2) << "\n";
            } else {
                FVector f = X.f_vector();
                std::cout << "T(" << d << "," << n << ")  built_dim=" << X.built_dim
                          << (X.complete ? " (complete)" : " (partial)") << "\n"
                          << fvector_line(f) << "\n";
            }
            return 0;
        }

        if (cmd_aut->parsed()) {
            SymmetricDeltaComplex X = build_complex(d, n, bopts);
            AutGroupResult g = automorphism_group(X);
            bool marking = X.n >= 0 && is_exactly_marking_action(g, X);
            if (as_json) {
                nlohmann::ordered_json j;
                j["d"] = d;
                j["n"] = n;
                j["order"] = g.order();
                j["is_marking_action"] = marking;
                switch (g.certification) {
                    case GroupCertification::TrivialGroup: j["certification"] = "trivial"; break;
                    case GroupCertification::MarkingAction:
                        j["certification"] = "marking-action";
                        break;
                    case GroupCertification::ConePermutation:
                        j["certification"] = "cone-permutation";
                        break;
                    default: j["certification"] = "order-only";
                }
                j["vertex_permutations"] = nlohmann::ordered_json::array();
                for (const auto& a : g.elements)
                    j["vertex_permutations"].push_back(restrict_to_vertices(a));
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "|Aut(T(" << d << "," << n << "))| = " << g.order()
                          << (marking ? "  (= marking action)" : "") << "\n";
                for (const auto& a : g.elements) {
                    std::cout << "  [";
                    std::vector<int> v = restrict_to_vertices(a);
                    for (size_t i = 0; i < v.size(); ++i) std::cout << (i ? " " : "") << v[i];
                    std::cout << "]\n";
                }
            }
            return 0;
        }

        if (cmd_verify->parsed()) {
            std::vector<Instance> instances;
            try {
                instances =
                    instances_text.empty() ? default_instances() : parse_instances(instances_text);
            } catch (const std::exception& e) {
                std::cerr << "bad --instances value: " << e.what() << "\n";
                return 2;
            }
            SuiteOptions sopts;
            sopts.checks = checks;
            sopts.max_cells = max_cells;
            sopts.with_timestamps = !no_timestamps;
            VerificationReport report = run_verification_suite(instances, sopts);
            if (!report_out.empty()) export_report_json(report, !no_timestamps, report_out);
            if (as_json) {
                std::cout << report.to_json(!no_timestamps).dump(2) << "\n";
            } else {
                for (const auto& r : report.records) {
                    const char* s = r.status == CheckStatus::Pass     ? "pass"
                                    : r.status == CheckStatus::Fail   ? "FAIL"
                                                                      : "skip";
                    std::cout << s << "  T(" << r.d << "," << r.n << ")  " << r.id;
                    if (!r.note.empty()) std::cout << "  -- " << r.note;
                    std::cout << "\n";
                }
                std::cout << (report.all_pass() ? "overall: pass" : "overall: FAIL") << "\n";
            }
            return report.all_pass() ? 0 : 1;
        }

        if (cmd_hom->parsed()) {
            SymmetricDeltaComplex X = build_complex(d, n, bopts);
            std::vector<long long> betti = reduced_betti(X);
            nlohmann::ordered_json j;
            j["reduced_betti"] = betti;
            std::cout << j.dump() << "\n";
            return 0;
        }

        if (cmd_cone->parsed()) {
            SymmetricDeltaComplex X = build_complex(1, n, bopts);
            SymmetricDeltaComplex base = build_complex(0, n + 1, BuildOptions{{}, max_cells});
            AbstractSimplicialComplex lhs = cone(to_simplicial(base));
            AbstractSimplicialComplex rhs = to_simplicial(X);
            auto witness = asc_isomorphism(lhs, rhs);
            if (as_json) {
                nlohmann::ordered_json j;
                j["n"] = n;
                j["isomorphic"] = witness.has_value();
                if (witness) {
                    nlohmann::ordered_json w = nlohmann::ordered_json::array();
                    for (size_t i = 0; i < witness->size(); ++i) {
                        nlohmann::ordered_json entry;
                        entry["from"] = lhs.vertex_names[i];
                        entry["to"] = rhs.vertex_names[(*witness)[i]];
                        w.push_back(entry);
                    }
                    j["witness"] = w;
                }
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "Cone(T(0," << n + 1 << ")) ~ T(1," << n
                          << "): " << (witness ? "isomorphic" : "NOT isomorphic") << "\n";
                if (witness)
                    for (size_t i = 0; i < witness->size(); ++i)
                        std::cout << "  " << lhs.vertex_names[i] << " -> "
                                  << rhs.vertex_names[(*witness)[i]] << "\n";
            }
            return witness ? 0 : 1;
        }

        if (cmd_flag->parsed()) {
            if (d > 1) {
                std::cerr << "flag-check supports d <= 1 only\n";
                return 2;
            }
            SymmetricDeltaComplex X = build_complex(d, n, bopts);
            bool flag = is_flag(to_simplicial(X));
            nlohmann::ordered_json j;
            j["d"] = d;
            j["n"] = n;
            j["flag"] = flag;
            std::cout << j.dump() << "\n";
            return flag ? 0 : 1;
        }

        if (cmd_fuzz->parsed()) {
            SymmetricDeltaComplex X = build_complex(d, n, bopts);
            FuzzReport rep = reconstruct_fuzz(X, seed);
            std::cout << rep.to_json().dump() << "\n";
            return rep.failures == 0 ? 0 : 1;
        }

        if (cmd_export->parsed()) {
            if (what == "trees") {
                export_trees_json(d, n, export_edges, out_path);
            } else if (what == "skeleton") {
                SymmetricDeltaComplex X = build_complex(d, n, bopts);
                export_skeleton_dot(X, out_path);
            } else if (what == "report") {
                VerificationReport report =
                    run_verification_suite(default_instances(),
                                           SuiteOptions{{}, max_cells, !no_timestamps});
                export_report_json(report, !no_timestamps, out_path);
            } else {
                SymmetricDeltaComplex X = build_complex(d, n, bopts);
                if (format == "dot") {
                    export_skeleton_dot(X, out_path);
                } else {
                    export_complex_json(X, out_path);
                }
            }
            return 0;
        }
    } catch (const BudgetExceededError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
