#ifndef GM_LINALG_HPP
#define GM_LINALG_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace gm {

/**
 * Dense real symmetric matrix. Only one write path exists (`set`), and it
 * writes both (i, j) and (j, i), so the stored entries are exactly symmetric.
 */
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t dimension);

    static SymmetricMatrix diagonal(std::span<const double> values);

    std::size_t dimension() const noexcept { return dim_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }
    void set(std::size_t i, std::size_t j, double value) noexcept {
        data_[i * dim_ + j] = value;
        data_[j * dim_ + i] = value;
    }
    void add(std::size_t i, std::size_t j, double value) noexcept {
        set(i, j, (*this)(i, j) + value);
    }

    double trace() const noexcept;
    double frobenius_norm() const noexcept;
    double off_diagonal_norm() const noexcept;

    std::vector<double> multiply(std::span<const double> x) const;

    /// Row-major copy of the full matrix.
    const std::vector<double>& data() const noexcept { return data_; }

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

/// Eigenvalues sorted weakly decreasing.
struct Spectrum {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const noexcept { return values[i]; }
};

struct EigenDecomposition {
    Spectrum spectrum;
    /// vectors[i] is the unit eigenvector for spectrum.values[i].
    std::vector<std::vector<double>> vectors;
    std::size_t sweeps = 0;
};

inline constexpr double kDefaultEigenTol = 1e-14;

/**
 * Cyclic Jacobi rotations until every off-diagonal entry is below
 * tol * ||A||_F. Throws NumericError with the residual when the sweep budget
 * runs out, InputError when tol <= 0.
 */
EigenDecomposition eigen_decompose(const SymmetricMatrix& m, double tol = kDefaultEigenTol);
Spectrum eigen_symmetric(const SymmetricMatrix& m, double tol = kDefaultEigenTol);

inline constexpr double kDefaultMajorizationTol = 1e-8;

struct MajorizationReport {
    bool holds = true;
    /// prefix_margins[l] = sum_{k<=l} a_k - sum_{k<=l} b_k
    std::vector<double> prefix_margins;
    std::optional<std::size_t> first_violation;
};

/// Whether `a` majorizes `b` in prefix-sum order; both must be sorted decreasing.
MajorizationReport majorizes(std::span<const double> a, std::span<const double> b,
                             double tol = kDefaultMajorizationTol);

/// Values within this distance of 1 count as exactly 1 in det_diag_plus_ones.
inline constexpr double kUnitCancellationTol = 1e-12;

/**
 * det(diag(lambdas) + B) with B the all-ones matrix with zero diagonal, via
 * the rank-one update of diag(lambda - 1). One entry equal to 1 is cancelled
 * formally; two or more give 0.
 */
double det_diag_plus_ones(std::span<const double> lambdas);

/// Sum of the `l` largest eigenvalues, 1 <= l <= size.
double sum_top_k(const Spectrum& s, std::size_t l);

bool is_sorted_decreasing(std::span<const double> values);

}  // namespace gm

#endif
