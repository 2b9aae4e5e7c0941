// Randomized property checks shared by the unit tests and the acceptance run.
#ifndef GM_TESTS_PROPERTIES_HPP
#define GM_TESTS_PROPERTIES_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "gm/linalg.hpp"
#include "oracles.hpp"

namespace props {

struct Outcome {
    std::size_t trials = 0;
    std::size_t failures = 0;
    /// Most negative slack seen (how close a check came to failing).
    double worst = 0.0;

    bool ok() const { return failures == 0 && trials > 0; }
    void record(double slack, double tol) {
        ++trials;
        worst = trials == 1 ? slack : std::min(worst, slack);
        if (slack < -tol) ++failures;
    }
};

/// diag(sorted-decreasing uniform draws) + c * B, B the zero-diagonal ones matrix.
inline gm::SymmetricMatrix diag_plus_ones(const std::vector<double>& diag, double c) {
    gm::SymmetricMatrix m = gm::SymmetricMatrix::diagonal(diag);
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j) m.set(i, j, c);
    return m;
}

inline std::vector<double> random_decreasing(std::size_t dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::vector<double> v(dim);
    for (double& x : v) x = u(rng);
    std::sort(v.begin(), v.end(), std::greater<>{});
    return v;
}

/// Top-l eigenvalue sum dominates trace(EAE) for every rank-l projection E.
inline Outcome projection_bound(std::size_t trials, std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    Outcome out;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t dim = 1 + t % 8;
        const auto a = oracle::random_symmetric(dim, rng);
        const auto spec = gm::eigen_symmetric(a);
        const std::size_t l = 1 + (t / 8) % dim;
        const auto cols = oracle::random_orthonormal_columns(dim, l, rng);
        out.record(gm::sum_top_k(spec, l) - oracle::projected_trace(a, cols), tol);
    }
    return out;
}

/// Equality case: E projecting onto the top-l eigenvectors attains the bound.
inline Outcome projection_equality(std::size_t trials, std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    Outcome out;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t dim = 1 + t % 8;
        const auto a = oracle::random_symmetric(dim, rng);
        const auto eig = gm::eigen_decompose(a);
        const std::size_t l = 1 + (t / 8) % dim;
        oracle::Dense cols(eig.vectors.begin(), eig.vectors.begin() + static_cast<std::ptrdiff_t>(l));
        const double diff = std::abs(gm::sum_top_k(eig.spectrum, l) - oracle::projected_trace(a, cols));
        out.record(-diff, tol);
    }
    return out;
}

/// eig(A + B) and eig(A - B) both majorize diag(A).
inline Outcome ones_perturbation(std::size_t trials, std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    Outcome out;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto diag = random_decreasing(1 + t % 8, rng);
        for (double sign : {1.0, -1.0}) {
            const auto spec = gm::eigen_symmetric(diag_plus_ones(diag, sign));
            const auto r = gm::majorizes(spec.values, diag, tol);
            out.record(*std::min_element(r.prefix_margins.begin(), r.prefix_margins.end()), tol);
        }
    }
    return out;
}

/// For 0 < b < a: eig(A - aB) majorizes eig(A - bB), and likewise with +.
inline Outcome scaled_ones(std::size_t trials, std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    Outcome out;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto diag = random_decreasing(1 + t % 8, rng);
        double a = u(rng);
        double b = u(rng);
        if (a < b) std::swap(a, b);
        for (double sign : {1.0, -1.0}) {
            const auto big = gm::eigen_symmetric(diag_plus_ones(diag, sign * a));
            const auto small = gm::eigen_symmetric(diag_plus_ones(diag, sign * b));
            const auto r = gm::majorizes(big.values, small.values, tol);
            out.record(*std::min_element(r.prefix_margins.begin(), r.prefix_margins.end()), tol);
        }
    }
    return out;
}

/// det_diag_plus_ones against an LU determinant; slack is -(relative error).
inline Outcome rank_one_determinant(std::size_t trials, std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    Outcome out;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t dim = 1 + t % 6;
        std::vector<double> lambdas(dim);
        for (double& x : lambdas) x = u(rng);
        // Every third trial forces one unit entry, every fifth two of them.
        if (t % 3 == 0) lambdas[t % dim] = 1.0;
        if (t % 5 == 0 && dim >= 2) lambdas[0] = lambdas[1] = 1.0;
        const double ref = oracle::lu_determinant(oracle::to_dense(diag_plus_ones(lambdas, 1.0)));
        const double got = gm::det_diag_plus_ones(lambdas);
        out.record(-std::abs(got - ref) / std::max(1.0, std::abs(ref)), tol);
    }
    return out;
}

}  // namespace props

#endif
