#ifndef GM_CHECKER_HPP
#define GM_CHECKER_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gm/graph.hpp"
#include "gm/linalg.hpp"
#include "gm/qep.hpp"

namespace gm {

inline constexpr double kDefaultGmTol = 1e-7;

enum class Method { direct_oracle, qep_pipeline, both };

std::string to_string(Method m);

/// Grone-Merris comparison of a Laplacian spectrum against the conjugate degrees.
struct GMReport {
    Spectrum eigenvalues;
    std::vector<std::size_t> conjugate;
    /// prefix sum of conjugate minus prefix sum of eigenvalues, per index.
    std::vector<double> prefix_margins;
    bool holds = true;
    std::vector<std::size_t> tight_indices;
    Method method = Method::direct_oracle;
    /// Smallest raw margin; the final one is zero by the trace identity, so this sits near 0.
    double min_margin = 0.0;
    std::size_t argmin = 0;
    /// Smallest margin among the indices that are not tight; empty when every index is tight.
    std::optional<double> min_open_margin;
    std::size_t open_argmin = 0;
    /// Entrywise max |pipeline - oracle| when both were computed.
    std::optional<double> cross_check_deviation;
};

/// Builds the report from a spectrum and conjugate sequence of equal length.
GMReport make_gm_report(Spectrum eigenvalues, std::vector<std::size_t> conjugate, Method method,
                        double gm_tol = kDefaultGmTol);

GMReport gm_report(const Graph& g, double gm_tol = kDefaultGmTol);

struct AssembledSpectrum {
    /// Roots of F, minus one copy of j in the degenerate case.
    std::vector<double> f_roots;
    std::size_t n_copies = 0;
    std::size_t one_copies = 0;
    std::size_t zero_copies = 1;
    /// Degenerate case only: the removed root and how many copies of j F had.
    std::optional<double> removed_root;
    std::size_t root_j_multiplicity = 0;
    Spectrum merged;
};

/// Nondegenerate (j < n): roots(F) + {n}^(n-j-1) + {1}^(sum k - j) + {0}.
AssembledSpectrum assemble_spectrum(const PencilParams& p);

/**
 * j = n: roots(F_{j,k}) with one copy of the root at j removed, plus
 * {1}^(sum k - j) and {0}. Throws NumericError when F has no root within 1e-6 of j.
 */
AssembledSpectrum assemble_spectrum_degenerate(std::span<const std::size_t> ks);

/// Dispatches on p.degenerate().
AssembledSpectrum assemble(const PencilParams& p);

/// Conjugate degree sequence read off the construction, length n + sum k.
std::vector<std::size_t> semibipartite_conjugate(const PencilParams& p);

/**
 * Report for the semi-bipartite instance from the structured pipeline. With
 * `cross_check` the dense eigensolve of the built Laplacian is also run.
 */
GMReport gm_report_semibipartite(const PencilParams& p, bool cross_check = false, double gm_tol = kDefaultGmTol);

/// Max entrywise deviation between pipeline and dense oracle spectra.
double cross_check_deviation(const PencilParams& p);

struct LemmaChain {
    /// Top-j roots s_1 >= ... >= s_j of F.
    std::vector<double> s;
    /// a_l = 1 - s_l.
    std::vector<double> a;
    /// chain[m] = s_{m+1} + ... + s_j + (sum of the m largest roots of F^{a_m}); chain[0] = sum s.
    std::vector<double> chain;
    /// step_slack[m-1] = chain[m] - chain[m-1], m = 1..j.
    std::vector<double> step_slack;
    /// |m-th companion root at a_m - s_m| per m.
    std::vector<double> fixed_point_deviation;
    double bound = 0.0;
    double overall_slack = 0.0;
    bool holds = true;
    std::optional<std::size_t> failed_step;
};

LemmaChain verify_main_lemma(const PencilParams& p, double tol = kDefaultGmTol);

/// Per-instance ordering facts of the nondegenerate spectrum.
struct OrderingFacts {
    std::size_t roots_above_n = 0;
    /// s_{j+1}, the largest root of F not exceeding n.
    double next_root = 0.0;
    double g_at_j = 0.0;
    /// Largest root below s_{j+1}; at most 1.
    double rest_max = 0.0;
};

OrderingFacts ordering_facts(const PencilParams& p);

enum class SweepMode { pipeline, oracle, both };

std::string to_string(SweepMode m);

struct SweepRecord {
    PencilParams params;
    std::optional<GMReport> report;
    std::optional<LemmaChain> lemma;
    std::optional<double> cross_dev;
    std::string error;

    bool ok() const { return error.empty() && report && report->holds && (!lemma || lemma->holds); }
};

struct SweepSummary {
    std::vector<SweepRecord> records;
    /// Smallest non-tight margin over all records and where it occurred.
    double min_margin = 0.0;
    std::optional<PencilParams> argmin;
    /// Smallest raw margin over all records (verdict quantity).
    double min_raw_margin = 0.0;
    double max_cross_dev = 0.0;
    std::size_t failures = 0;
};

/// All (n, k) with 1 <= j <= n <= n_max, k_max >= k_1 >= ... >= k_j >= 1, lexicographic.
std::vector<PencilParams> enumerate_lattice(std::size_t n_max, std::size_t k_max);

/**
 * Runs every lattice instance, split across `workers` threads. Records come
 * back in enumeration order regardless of worker count; failures are
 * collected on the record instead of thrown.
 */
SweepSummary sweep(std::size_t n_max, std::size_t k_max, SweepMode mode, std::size_t workers = 1);

/// Single-instance worker used by sweep.
SweepRecord evaluate_instance(const PencilParams& p, SweepMode mode);

}  // namespace gm

#endif
