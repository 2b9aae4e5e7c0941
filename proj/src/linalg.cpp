#include "gm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gm/errors.hpp"

namespace gm {

SymmetricMatrix::SymmetricMatrix(std::size_t dimension) : dim_(dimension), data_(dimension * dimension, 0.0) {}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> values) {
    SymmetricMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m.set(i, i, values[i]);
    return m;
}

double SymmetricMatrix::trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double SymmetricMatrix::frobenius_norm() const noexcept {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

double SymmetricMatrix::off_diagonal_norm() const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            if (i != j) s += (*this)(i, j) * (*this)(i, j);
    return std::sqrt(s);
}

std::vector<double> SymmetricMatrix::multiply(std::span<const double> x) const {
    if (x.size() != dim_) throw InputError("matrix-vector size mismatch");
    std::vector<double> y(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
}

namespace {

constexpr std::size_t kMaxSweeps = 100;

}  // namespace

EigenDecomposition eigen_decompose(const SymmetricMatrix& m, double tol) {
    if (!(tol > 0.0)) throw InputError("eigensolver tolerance must be positive");
    const std::size_t n = m.dimension();

    // Working copy in plain row-major storage; rotations keep it symmetric.
    std::vector<double> a = m.data();
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    auto V = [&](std::size_t i, std::size_t j) -> double& { return v[i * n + j]; };

    const double threshold = tol * m.frobenius_norm();
    auto max_off = [&] {
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) r = std::max(r, std::abs(A(i, j)));
        return r;
    };

    std::size_t sweep = 0;
    while (max_off() >= threshold && threshold > 0.0) {
        if (sweep == kMaxSweeps) {
            std::ostringstream msg;
            msg << "Jacobi eigensolver did not converge after " << kMaxSweeps
                << " sweeps (max off-diagonal " << max_off() << ", threshold " << threshold << ")";
            throw NumericError(msg.str());
        }
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (apq == 0.0) continue;
                const double app = A(p, p);
                const double aqq = A(q, q);
                // Rutishauser's formulation: t = tan of the rotation angle, |t| <= 1.
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = std::abs(theta) > 1e150
                                     ? 1.0 / (2.0 * theta)
                                     : std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                A(p, p) = app - t * apq;
                A(q, q) = aqq + t * apq;
                A(p, q) = A(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = A(r, p);
                        const double arq = A(r, q);
                        A(r, p) = A(p, r) = arp - s * (arq + tau * arp);
                        A(r, q) = A(q, r) = arq + s * (arp - tau * arq);
                    }
                    const double vrp = V(r, p);
                    const double vrq = V(r, q);
                    V(r, p) = vrp - s * (vrq + tau * vrp);
                    V(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return A(x, x) > A(y, y); });

    EigenDecomposition out;
    out.sweeps = sweep;
    out.spectrum.values.reserve(n);
    out.vectors.reserve(n);
    for (std::size_t idx : order) {
        out.spectrum.values.push_back(A(idx, idx));
        std::vector<double> col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = V(r, idx);
        out.vectors.push_back(std::move(col));
    }
    return out;
}

Spectrum eigen_symmetric(const SymmetricMatrix& m, double tol) { return eigen_decompose(m, tol).spectrum; }

bool is_sorted_decreasing(std::span<const double> values) {
    return std::is_sorted(values.begin(), values.end(), std::greater<>{});
}

MajorizationReport majorizes(std::span<const double> a, std::span<const double> b, double tol) {
    if (a.size() != b.size()) throw InputError("majorization needs sequences of equal length");
    if (!is_sorted_decreasing(a) || !is_sorted_decreasing(b))
        throw InputError("majorization needs weakly decreasing sequences");

    MajorizationReport report;
    report.prefix_margins.reserve(a.size());
    double sa = 0.0;
    double sb = 0.0;
    for (std::size_t l = 0; l < a.size(); ++l) {
        sa += a[l];
        sb += b[l];
        const double margin = sa - sb;
        report.prefix_margins.push_back(margin);
        if (margin < -tol && !report.first_violation) {
            report.first_violation = l;
            report.holds = false;
        }
    }
    return report;
}

double det_diag_plus_ones(std::span<const double> lambdas) {
    std::vector<std::size_t> unit;
    for (std::size_t l = 0; l < lambdas.size(); ++l)
        if (std::abs(lambdas[l] - 1.0) < kUnitCancellationTol) unit.push_back(l);

    if (unit.size() >= 2) return 0.0;

    if (unit.size() == 1) {
        // Only the 1/(lambda_u - 1) term survives the product.
        double prod = 1.0;
        for (std::size_t l = 0; l < lambdas.size(); ++l)
            if (l != unit.front()) prod *= lambdas[l] - 1.0;
        return prod;
    }

    double prod = 1.0;
    double sum = 1.0;
    for (double lambda : lambdas) {
        prod *= lambda - 1.0;
        sum += 1.0 / (lambda - 1.0);
    }
    return prod * sum;
}

double sum_top_k(const Spectrum& s, std::size_t l) {
    if (l < 1 || l > s.size()) throw InputError("sum_top_k: l out of range");
    return std::accumulate(s.values.begin(), s.values.begin() + static_cast<std::ptrdiff_t>(l), 0.0);
}

}  // namespace gm
