// Independent reference computations used only by the tests. Nothing here
// calls into the code paths it is used to check.
#ifndef GM_TESTS_ORACLES_HPP
#define GM_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gm/linalg.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense to_dense(const gm::SymmetricMatrix& m) {
    Dense d(m.dimension(), std::vector<double>(m.dimension()));
    for (std::size_t i = 0; i < m.dimension(); ++i)
        for (std::size_t j = 0; j < m.dimension(); ++j) d[i][j] = m(i, j);
    return d;
}

/// Determinant by Gaussian elimination with partial pivoting.
inline double lu_determinant(Dense a) {
    const std::size_t n = a.size();
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (a[piv][c] == 0.0) return 0.0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

/// Sorted-decreasing eigenvalues of the path Laplacian: 2 - 2 cos(pi k / n).
inline std::vector<double> path_laplacian_spectrum(std::size_t n) {
    std::vector<double> v;
    for (std::size_t k = 0; k < n; ++k) v.push_back(2.0 - 2.0 * std::cos(std::numbers::pi * static_cast<double>(k) / n));
    std::sort(v.begin(), v.end(), std::greater<>{});
    return v;
}

/// `cols` orthonormal columns of length `dim` (modified Gram-Schmidt on Gaussian draws).
inline Dense random_orthonormal_columns(std::size_t dim, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Dense q;
    while (q.size() < cols) {
        std::vector<double> v(dim);
        for (double& x : v) x = normal(rng);
        for (const auto& u : q) {
            double dot = 0.0;
            for (std::size_t i = 0; i < dim; ++i) dot += u[i] * v[i];
            for (std::size_t i = 0; i < dim; ++i) v[i] -= dot * u[i];
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm < 1e-8) continue;
        for (double& x : v) x /= norm;
        q.push_back(std::move(v));
    }
    return q;
}

/// trace(E A E) for E the projection onto span(cols) = sum_c u_c^T A u_c.
inline double projected_trace(const gm::SymmetricMatrix& a, const Dense& cols) {
    double t = 0.0;
    for (const auto& u : cols) {
        const auto au = a.multiply(u);
        for (std::size_t i = 0; i < u.size(); ++i) t += u[i] * au[i];
    }
    return t;
}

inline gm::SymmetricMatrix random_symmetric(std::size_t dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    gm::SymmetricMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) m.set(i, j, u(rng));
    return m;
}

/// Polynomial coefficients, lowest degree first.
using Poly = std::vector<double>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline Poly poly_add(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

inline double poly_eval(const Poly& p, double x) {
    double r = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

/// Coefficients of prod q_l + sum_l k_l prod_{m != l} q_m, q_l = x^2 - (n + k_l + 1) x + n.
inline Poly secular_polynomial(std::size_t n, const std::vector<std::size_t>& ks) {
    std::vector<Poly> q;
    for (std::size_t k : ks) q.push_back({double(n), -double(n + k + 1), 1.0});
    Poly all{1.0};
    for (const auto& f : q) all = poly_mul(all, f);
    for (std::size_t l = 0; l < ks.size(); ++l) {
        Poly term{double(ks[l])};
        for (std::size_t m = 0; m < ks.size(); ++m)
            if (m != l) term = poly_mul(term, q[m]);
        all = poly_add(all, term);
    }
    return all;
}

/// Every weakly decreasing sequence in {1..k_max}^j, by filtering all tuples.
inline std::vector<std::vector<std::size_t>> decreasing_sequences(std::size_t j, std::size_t k_max) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> t(j, 1);
    while (true) {
        if (std::adjacent_find(t.begin(), t.end(), std::less<>{}) == t.end()) out.push_back(t);
        std::size_t pos = 0;
        while (pos < j && t[pos] == k_max) t[pos++] = 1;
        if (pos == j) break;
        ++t[pos];
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace oracle

#endif
