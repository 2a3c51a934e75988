#ifndef TREECX_HARNESS_HPP
#define TREECX_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "treecx/automorphisms.hpp"
#include "treecx/complex.hpp"
#include "treecx/reconstruction.hpp"
#include "treecx/topology.hpp"

namespace treecx {

struct Instance {
    int d = 0;
    int n = 0;
    std::optional<int> max_dim;  // empty: complete build
};

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckRecord {
    std::string id;        // e.g. "counting-lemma"
    std::string claim;     // the mathematical statement being checked
    int d = 0, n = 0;
    CheckStatus status = CheckStatus::Skipped;
    nlohmann::ordered_json counts;  // free-form per-check numbers
    std::string note;               // failure/skip detail
    long long elapsed_ms = 0;
};

struct VerificationReport {
    std::vector<Instance> instances;
    std::vector<CheckRecord> records;

    bool all_pass() const;
    nlohmann::ordered_json to_json(bool with_timestamps) const;
};

struct SuiteOptions {
    std::vector<std::string> checks;  // empty: every applicable check
    long long max_cells = 200000;
    bool with_timestamps = true;
};

/// Expected automorphism-group order for the complex of (d,n)-trees.
long long expected_aut_order(int d, int n);
/// Expected reduced Betti numbers: zero for d >= 1, one (n-2)!-fold sphere
/// class in dimension n-4 for d = 0.
std::vector<long long> expected_betti(int d, int n);
/// Largest possible cell dimension: n+2d-4 for d >= 1, n-4 for d = 0.
int top_dimension(int d, int n);

/// Closed-form count of 1-cells at the two-vertex stratum.
long long u_count_formula(int d, int n, int e, int s_size);

VerificationReport run_verification_suite(const std::vector<Instance>& instances,
                                          const SuiteOptions& opts = {});

/// Default desk-scale instance list for the verify subcommand.
std::vector<Instance> default_instances();

/// Byte-stable file writers per the interchange schemas.
void export_complex_json(const SymmetricDeltaComplex& X, const std::string& path);
void export_skeleton_dot(const SymmetricDeltaComplex& X, const std::string& path);
void export_trees_json(int d, int n, int num_edges, const std::string& path);
void export_report_json(const VerificationReport& r, bool with_timestamps,
                        const std::string& path);

struct FuzzReport {
    long long cells_checked = 0;
    long long failures = 0;
    nlohmann::ordered_json to_json() const;
};

/// Deck+weights roundtrip over all cells of dimension >= 1 (or a seeded
/// sample above the size threshold).
FuzzReport reconstruct_fuzz(const SymmetricDeltaComplex& X, unsigned long long seed,
                            long long sample_threshold = 5000);

}  // namespace treecx

#endif
