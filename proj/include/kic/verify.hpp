#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kic/bigint.hpp"
#include "kic/metrics.hpp"
#include "kic/neighborhood.hpp"
#include "kic/tree.hpp"

namespace kic {

/// Everything enumerable about one small n, shared by the claim checks:
/// all topologies, their matrices, diameters, cherry structure and the NNI
/// adjacency between them.
struct TreeSpace {
    int n = 0;
    std::vector<Tree> trees;
    std::vector<PathLengthMatrix> matrices;
    std::vector<int> diameters;
    std::vector<bool> caterpillar;
    std::vector<std::vector<int>> nni_adjacency;  // indices of NNI neighbors

    static TreeSpace build(int n, int jobs = 0);

    // kic between topologies i and j under the identity association.
    int kic(int i, int j) const;

    // Exact NNI distances from every topology (BFS over the NNI graph);
    // row-major size() x size() matrix. Intended for small n.
    std::vector<std::uint8_t> nni_distance_matrix() const;

    std::size_t size() const { return trees.size(); }
};

struct ClaimResult {
    std::string id;
    std::string statement;
    bool passed = false;
    std::string detail;       // witness values, or the counterexample on failure
};

struct AdjudicationRow {
    int n = 0;
    int c = 0;
    std::string shape;        // shape signature of the reference topology
    CanonicalForm reference;
    BigInt oracle;            // brute-force |IN_(n-3)|
    std::optional<BigInt> caterpillar_value;
    std::optional<BigInt> statement_value;
    std::optional<BigInt> derivation_value;
};

struct VerifyOptions {
    int max_n = 8;                   // exhaustive layers run up to this n (<= 9)
    int jobs = 0;
    std::uint64_t seed = 20260810;
    int random_triples = 2000;       // triangle-inequality sampling per n
    std::uint64_t mc_samples = 20000;  // Monte Carlo zero-split samples
};

struct VerificationReport {
    std::vector<ClaimResult> claims;
    std::vector<AdjudicationRow> adjudication;
    std::optional<FormulaVariant> winning_variant;

    bool all_passed() const;
};

// Runs the claim suite (metric axioms, distance bounds, neighborhood formula
// adjudication, growth and limit checks) at the sizes allowed by `options`.
VerificationReport run_verification(const VerifyOptions& options = {});

// One labeled representative per unlabeled topology on n leaves, keyed by
// shape signature, in enumeration order.
std::vector<Tree> shape_class_representatives(int n, int cap = kDefaultEnumerationCap);

}  // namespace kic
