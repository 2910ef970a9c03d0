#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kic/bigint.hpp"
#include "kic/enumerate.hpp"
#include "kic/tree.hpp"

namespace kic {

enum class CountMethod {
    brute_force,
    closed_form_caterpillar,
    closed_form_multi_cherry,
};

// The two printed variants of the c >= 3 closed form. They disagree by a
// factor 2 on the correction term; brute force adjudicates which one counts.
enum class FormulaVariant {
    theorem_statement,  // c((n-2)! - 2(n-4)!(c-1))
    proof_derivation,   // c((n-2)! - (n-4)!(c-1))
};

std::string to_string(CountMethod m);
std::string to_string(FormulaVariant v);

struct NeighborhoodCount {
    int n = 0;
    CanonicalForm reference;
    int k = 0;
    BigInt count;
    CountMethod method = CountMethod::brute_force;
    std::optional<FormulaVariant> formula_variant;
};

// Number of trees on t's label set at precise k-IC distance exactly k from t,
// by exhaustive enumeration (identity association). Requires n within the
// cap and 0 <= k <= n-3. When `member` is given it receives every counted
// tree (sequential mode only).
NeighborhoodCount brute_force_interval_neighborhood(
    const Tree& t, int k, int jobs = 0, int cap = kDefaultEnumerationCap,
    const std::function<void(const Tree&)>& member = nullptr);

// Counts for every k = 0..n-3 in one enumeration pass; sums to (2n-5)!!.
std::vector<BigInt> interval_neighborhood_histogram(const Tree& t, int jobs = 0,
                                                    int cap = kDefaultEnumerationCap);

// Size of the (n-3)-interval neighborhood of an n-leaf caterpillar:
// 2(n-2)! + 4(n-4)! - 8(n-3)! + 4(2n-7)!! - 2(2n-9)!!. Requires n >= 6.
BigInt closed_form_caterpillar(int n);

// The requested printed variant for a tree with c >= 3 cherries.
// Requires n >= 6 and 3 <= c <= floor(n/2).
BigInt closed_form_multi_cherry(int n, int c, FormulaVariant variant);

// The variant that matches brute force on the smallest instances (cached
// after the first call). Throws with ErrorCode::claim_failed if neither
// variant matches everywhere it was checked.
FormulaVariant validated_variant();

// Vertex of the quadratic-in-c neighborhood size, (n^2-5n+7)/2; always
// exceeds floor(n/2) for n >= 6. Requires n >= 6.
BigRational vertex_cherry_count(int n);

// Expected proportion of random trees sharing zero splits with a c-cherry
// reference, e^(-c/2n). Requires n >= 4 and 2 <= c <= floor(n/2).
double rf_zero_split_expected(int n, int c);

struct GrowthRow {
    int n = 0;
    int c = 0;
    BigInt in_size;                       // validated closed-form |IN_(n-3)|
    BigRational proportion;               // in_size / (2n-5)!!
    double rf_zero_split_expectation = 0; // e^(-c/2n)
};

// Rows for c = 2 and c = 3..floor(n/2). Verifies that the sizes strictly
// increase over c >= 3 and that the caterpillar row is maximal; throws with
// ErrorCode::claim_failed otherwise. Requires n >= 6.
std::vector<GrowthRow> growth_table(int n);

struct InequalityReport {
    struct Lemma7Row {
        int n;
        BigInt lhs;  // 3(2n-7)!!
        BigInt rhs;  // (n-1)!
        bool holds;
    };
    struct Lemma8Row {
        int n;
        BigInt lhs2;  // 2(n^3 - 6n^2 + 11n - 6)
        BigInt rhs2;  // n^3 - 10n^2 + 37n - 68
        bool holds;
    };
    std::vector<Lemma7Row> lemma7;  // n = 10..n_max
    std::vector<Lemma8Row> lemma8;  // n = 1..n_max
    bool all_hold = false;
};

bool lemma7_holds(int n);  // 3(2n-7)!! > (n-1)!  (claimed for n >= 10)
bool lemma8_holds(int n);  // n^3-6n^2+11n-6 > n^3/2-5n^2+37n/2-34

// Exact-arithmetic verification over the claimed ranges. Requires n_max >= 10.
InequalityReport inequality_checks(int n_max);

// Fraction of `samples` uniform random trees on t's label set sharing zero
// splits with t. Sample i draws from a generator seeded by mix(seed, i), so
// the result is deterministic per seed and parallelizable by sample range.
double simulate_rf_zero_split(const Tree& t, std::uint64_t samples, std::uint64_t seed,
                              int jobs = 0);

struct ProportionRow {
    int n = 0;
    BigRational caterpillar;  // closed_form_caterpillar(n) / (2n-5)!!
    BigRational max_cherry;   // validated c = floor(n/2) form / (2n-5)!!
};

// Exact proportions over an increasing range of n (each >= 6); verifies the
// strict decrease in both columns and throws with ErrorCode::claim_failed on
// violation.
std::vector<ProportionRow> proportion_limit_table(const std::vector<int>& n_range);

}  // namespace kic
