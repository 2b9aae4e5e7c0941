#ifndef GM_QEP_HPP
#define GM_QEP_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gm/linalg.hpp"

namespace gm {

/**
 * A 1-regular semi-bipartite instance: clique size n and pendant counts
 * k_1 >= ... >= k_j >= 1 with 1 <= j <= n.
 */
class PencilParams {
public:
    /// Throws InputError when the invariants above fail.
    PencilParams(std::size_t n, std::vector<std::size_t> ks);

    std::size_t n() const noexcept { return n_; }
    std::size_t j() const noexcept { return ks_.size(); }
    const std::vector<std::size_t>& ks() const noexcept { return ks_; }
    std::size_t k(std::size_t l) const { return ks_.at(l); }
    std::size_t k_sum() const noexcept;

    /// j == n: every clique vertex carries pendants.
    bool degenerate() const noexcept { return ks_.size() == n_; }

    /// jn + sum k_l, the bound on the top-j spectral sum.
    double gm_bound() const noexcept;

    /// n + k_1 + 1; sets the absolute scale of brackets and tolerances.
    double scale() const noexcept;

    std::string to_string() const;

    friend bool operator==(const PencilParams&, const PencilParams&) = default;

private:
    std::size_t n_;
    std::vector<std::size_t> ks_;
};

/// Sorted-descending distinct roots with aligned multiplicities.
struct RootSet {
    std::vector<double> roots;
    std::vector<std::size_t> multiplicities;

    std::size_t degree() const noexcept;
    /// Roots repeated by multiplicity, descending.
    std::vector<double> expanded() const;

    /// Builds from loose (value, multiplicity) pairs; values within `merge_tol` coalesce.
    static RootSet from_pairs(std::vector<std::pair<double, std::size_t>> pairs, double merge_tol = 0.0);
};

/// a*x^2 + b*x + c; a may be zero (the t = 1 end of the homotopy).
struct QuadraticFactor {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double operator()(double x) const noexcept { return (a * x + b) * x + c; }
    double derivative(double x) const noexcept { return 2.0 * a * x + b; }
    /// Real roots ascending; one root when a == 0.
    std::vector<double> roots() const;
};

/**
 * The family
 *   q_l(x) = (n + k_l - x)(t*a + (1 - t)(1 - x)) - k_l,
 *   G(x)   = 1 + sum_l k_l / q_l(x),
 *   F(x)   = prod_l q_l(x) + sum_l k_l prod_{m != l} q_m(x).
 * t = 0 is the Laplacian polynomial (a is then irrelevant); t = 1 freezes
 * (1 - x) at the constant a and F drops to degree j.
 */
class SecularFamily {
public:
    /// The t = 0 member.
    static SecularFamily base(const PencilParams& p);
    /// Requires a < 1 - n and 0 <= t <= 1.
    static SecularFamily homotopy(const PencilParams& p, double a, double t);
    /// t = 1; only requires a < 0.
    static SecularFamily frozen(const PencilParams& p, double a);

    const PencilParams& params() const noexcept { return p_; }
    double a() const noexcept { return a_; }
    double t() const noexcept { return t_; }
    bool linear() const noexcept { return t_ == 1.0; }
    std::size_t degree() const noexcept { return linear() ? p_.j() : 2 * p_.j(); }

    const std::vector<QuadraticFactor>& factors() const noexcept { return q_; }
    double factor(std::size_t l, double x) const { return q_.at(l)(x); }

    /// Pole-free expanded form.
    double eval_F(double x) const;
    /// Throws PoleError within `pole_guard` of a zero of some q_l.
    double eval_G(double x) const;
    double eval_G_derivative(double x) const;

    /// Distance below which eval_G refuses to evaluate.
    double pole_guard() const noexcept;

private:
    SecularFamily(const PencilParams& p, double a, double t);

    PencilParams p_;
    double a_;
    double t_;
    std::vector<QuadraticFactor> q_;
};

/// (n + k_l - x)(1 - x) - k_l with 0-based l.
double q_factor(const PencilParams& p, std::size_t l, double x);
double eval_F(const PencilParams& p, double x);
double eval_G(const PencilParams& p, double x);
double eval_F_homotopy(const PencilParams& p, double a, double t, double x);

struct BracketInterval {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t expected_zeros = 1;
    /// Sign G takes just inside each end: from the pole side, or +1 at n.
    /// Zero marks the degenerate center where G(n) = 0.
    int lo_sign = 0;
    int hi_sign = 0;
};

/**
 * Poles of G and the open intervals that isolate its zeros. For t < 1 the
 * poles are r_l^- < n < r_l^+; at t = 1 only the upper pole survives.
 */
struct BracketTable {
    /// r_l^- per l (empty at t = 1).
    std::vector<double> r_minus;
    std::vector<double> r_plus;
    /// Pole values that are roots of F, with multiplicity (repeated k values).
    std::vector<std::pair<double, std::size_t>> pole_roots;
    std::vector<BracketInterval> intervals;
    /// 0 < r_1^- <= ... <= r_j^- < 1 < n + k_j <= r_j^+ <= ... <= r_1^+ < n + k_1 + 1
    /// at t = 0; the weaker r^- < n < r^+ ordering otherwise.
    bool chain_holds = false;
    /// Inward offset used at pole endpoints.
    double epsilon = 0.0;
};

BracketTable brackets(const PencilParams& p);
BracketTable brackets(const SecularFamily& family);

/// Absolute bisection tolerance relative to p.scale().
inline constexpr double kRootTolRel = 1e-12;
/// Pole endpoints are moved inward by this times p.scale().
inline constexpr double kPoleOffsetRel = 1e-9;

/**
 * All roots of F with multiplicity: repeated k values contribute their poles
 * directly, every other root is a sign-change bisection of G inside one
 * bracket interval. Throws NumericError when an endpoint has the wrong sign.
 */
RootSet find_roots(const PencilParams& p);
RootSet find_roots(const SecularFamily& family);

/**
 * The (2j+1)-dimensional reduced Laplacian on functions constant on each
 * pendant group and on the extra clique vertices. Ordering: attachments,
 * the extra block, then the pendant groups.
 */
SymmetricMatrix build_M(const PencilParams& p);

/// Kernel vector (1, ..., 1, sqrt(n - j), sqrt(k_1), ..., sqrt(k_j)) of build_M.
std::vector<double> M_kernel_vector(const PencilParams& p);

/// All-equal k: q^{j-1} (q + jk). Throws NumericError on a negative discriminant.
RootSet equal_k_closed_form(std::size_t n, std::size_t k, std::size_t j);

/**
 * Symmetric j x j matrix with diagonal n + k_l and off-diagonal
 * sqrt(k_l k_m) / a. Its characteristic polynomial satisfies
 *   F^a(x) = (-a)^j det(x I - C_a).
 * Throws InputError for a == 0.
 */
SymmetricMatrix companion_matrix(const PencilParams& p, double a);

/// Spectrum of companion_matrix as a RootSet (the j roots of F^a).
RootSet companion_roots(const PencilParams& p, double a);

struct HomotopyTrace {
    double a = 0.0;
    /// 0-based rank of the tracked root (0 = largest).
    std::size_t root_index = 0;
    /// Uniform on [0, 1 - delta], then 1.
    std::vector<double> t_grid;
    std::vector<double> values;
    /// Root of the t = 1 member found by bracket isolation; values.back() is the companion eigenvalue.
    double isolated_endpoint = 0.0;
    std::size_t refinements = 0;
};

inline constexpr std::size_t kDefaultHomotopySteps = 64;
inline constexpr double kHomotopyDelta = 1e-3;

/**
 * Follows the `l`-th largest root (0-based, l < j) of F^{a,t} from t = 0 to
 * t = 1. A step is accepted only when the new value moved less than half the
 * distance to the nearest other root at the previous step; otherwise the step
 * is halved. Throws NumericError when the halving budget is exhausted.
 */
HomotopyTrace track_root(const PencilParams& p, double a, std::size_t l, std::size_t steps = kDefaultHomotopySteps);
std::vector<HomotopyTrace> track_roots(const PencilParams& p, double a, std::size_t steps = kDefaultHomotopySteps);

struct CrossingCheck {
    bool ok = true;
    /// Smallest gap between adjacent traces that start out distinct.
    double min_gap = 0.0;
    std::string detail;
};

/// Adjacent traces never swap; traces that start equal stay equal.
CrossingCheck check_no_crossing(std::span<const HomotopyTrace> traces, double tol = 1e-9);

struct J2Quadratics {
    /// {largest, smallest} root of Q_i(x) = (n + k_1 - x)(n + k_2 - x) - k_1 k_2 / (1 - s_i)^2.
    std::pair<double, double> q1_roots;
    std::pair<double, double> q2_roots;
    double q1_discriminant = 0.0;
    double q2_discriminant = 0.0;
    double q1_at_s1 = 0.0;
    double q2_at_s2 = 0.0;
};

/// Requires j == 2 and s1 > s2 > n.
J2Quadratics j2_quadratics(const PencilParams& p, double s1, double s2);

}  // namespace gm

#endif
