#include "gm/qep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gm/errors.hpp"

namespace gm {

// ---------------------------------------------------------------------------
// PencilParams / RootSet

PencilParams::PencilParams(std::size_t n, std::vector<std::size_t> ks) : n_(n), ks_(std::move(ks)) {
    if (n_ < 1) throw InputError("clique size n must be >= 1");
    if (ks_.empty()) throw InputError("need at least one pendant group (j >= 1)");
    if (ks_.size() > n_) throw InputError("j = " + std::to_string(ks_.size()) + " exceeds n = " + std::to_string(n_));
    for (std::size_t l = 0; l < ks_.size(); ++l) {
        if (ks_[l] < 1) throw InputError("k_" + std::to_string(l + 1) + " must be >= 1");
        if (l > 0 && ks_[l] > ks_[l - 1]) throw InputError("k must be weakly decreasing");
    }
}

std::size_t PencilParams::k_sum() const noexcept { return std::accumulate(ks_.begin(), ks_.end(), std::size_t{0}); }

double PencilParams::gm_bound() const noexcept {
    return static_cast<double>(j() * n_) + static_cast<double>(k_sum());
}

double PencilParams::scale() const noexcept { return static_cast<double>(n_ + ks_.front() + 1); }

std::string PencilParams::to_string() const {
    std::ostringstream out;
    out << "n=" << n_ << " k=(";
    for (std::size_t l = 0; l < ks_.size(); ++l) out << (l ? "," : "") << ks_[l];
    out << ")";
    return out.str();
}

std::size_t RootSet::degree() const noexcept {
    return std::accumulate(multiplicities.begin(), multiplicities.end(), std::size_t{0});
}

std::vector<double> RootSet::expanded() const {
    std::vector<double> out;
    out.reserve(degree());
    for (std::size_t i = 0; i < roots.size(); ++i) out.insert(out.end(), multiplicities[i], roots[i]);
    return out;
}

RootSet RootSet::from_pairs(std::vector<std::pair<double, std::size_t>> pairs, double merge_tol) {
    std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    RootSet out;
    double weighted = 0.0;
    for (auto [value, mult] : pairs) {
        if (mult == 0) continue;
        if (!out.roots.empty() && std::abs(out.roots.back() - value) <= merge_tol) {
            weighted += value * static_cast<double>(mult);
            out.multiplicities.back() += mult;
            out.roots.back() = weighted / static_cast<double>(out.multiplicities.back());
            continue;
        }
        out.roots.push_back(value);
        out.multiplicities.push_back(mult);
        weighted = value * static_cast<double>(mult);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Factors and the secular family

std::vector<double> QuadraticFactor::roots() const {
    if (a == 0.0) return {-c / b};
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return {};
    const double sq = std::sqrt(disc);
    const double qq = -0.5 * (b + std::copysign(sq, b));
    std::vector<double> r{qq / a, c / qq};
    std::sort(r.begin(), r.end());
    return r;
}

namespace {

/// (N - x)(c - d x) - k with N = n + k, c = t a + (1 - t), d = 1 - t.
QuadraticFactor make_factor(double n, double k, double a, double t) {
    const double big = n + k;
    const double d = 1.0 - t;
    const double c = t * a + (1.0 - t);
    return {d, -(big * d + c), big * c - k};
}

/// Roots of a factor, using the cancellation-free discriminant (c - dN)^2 + 4dk.
std::vector<double> factor_roots(double n, double k, double a, double t) {
    const double big = n + k;
    const double d = 1.0 - t;
    const double c = t * a + (1.0 - t);
    if (d == 0.0) return {big - k / a};
    const double b = -(big * d + c);
    const double sq = std::sqrt((c - d * big) * (c - d * big) + 4.0 * d * k);
    const double qq = -0.5 * (b + std::copysign(sq, b));
    const double c0 = big * c - k;
    std::vector<double> r{qq / d, c0 / qq};
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace

SecularFamily::SecularFamily(const PencilParams& p, double a, double t) : p_(p), a_(a), t_(t) {
    q_.reserve(p.j());
    for (std::size_t k : p.ks())
        q_.push_back(make_factor(static_cast<double>(p.n()), static_cast<double>(k), a, t));
}

SecularFamily SecularFamily::base(const PencilParams& p) { return SecularFamily(p, 0.0, 0.0); }

SecularFamily SecularFamily::homotopy(const PencilParams& p, double a, double t) {
    if (!(a < 1.0 - static_cast<double>(p.n())))
        throw InputError("homotopy parameter a must satisfy a < 1 - n");
    if (!(t >= 0.0 && t <= 1.0)) throw InputError("homotopy time t must lie in [0, 1]");
    return SecularFamily(p, a, t);
}

SecularFamily SecularFamily::frozen(const PencilParams& p, double a) {
    if (!(a < 0.0)) throw InputError("frozen parameter a must be negative");
    return SecularFamily(p, a, 1.0);
}

double SecularFamily::eval_F(double x) const {
    const std::size_t j = q_.size();
    std::vector<double> vals(j);
    for (std::size_t l = 0; l < j; ++l) vals[l] = q_[l](x);

    // prefix[l] = prod_{m<l} q_m; the suffix product is accumulated on the way back.
    std::vector<double> prefix(j + 1, 1.0);
    for (std::size_t l = 0; l < j; ++l) prefix[l + 1] = prefix[l] * vals[l];
    double sum = 0.0;
    double suffix = 1.0;
    for (std::size_t l = j; l-- > 0;) {
        sum += static_cast<double>(p_.k(l)) * prefix[l] * suffix;
        suffix *= vals[l];
    }
    return prefix[j] + sum;
}

double SecularFamily::pole_guard() const noexcept { return 1e-12 * p_.scale(); }

double SecularFamily::eval_G(double x) const {
    double g = 1.0;
    for (std::size_t l = 0; l < q_.size(); ++l) {
        for (double r : factor_roots(static_cast<double>(p_.n()), static_cast<double>(p_.k(l)), a_, t_))
            if (std::abs(x - r) < pole_guard()) throw PoleError(l, x);
        g += static_cast<double>(p_.k(l)) / q_[l](x);
    }
    return g;
}

double SecularFamily::eval_G_derivative(double x) const {
    double d = 0.0;
    for (std::size_t l = 0; l < q_.size(); ++l) {
        const double q = q_[l](x);
        d -= static_cast<double>(p_.k(l)) * q_[l].derivative(x) / (q * q);
    }
    return d;
}

double q_factor(const PencilParams& p, std::size_t l, double x) {
    if (l >= p.j()) throw InputError("factor index out of range");
    return SecularFamily::base(p).factor(l, x);
}

double eval_F(const PencilParams& p, double x) { return SecularFamily::base(p).eval_F(x); }

double eval_G(const PencilParams& p, double x) { return SecularFamily::base(p).eval_G(x); }

double eval_F_homotopy(const PencilParams& p, double a, double t, double x) {
    return SecularFamily::homotopy(p, a, t).eval_F(x);
}

// ---------------------------------------------------------------------------
// Brackets

namespace {

struct Pole {
    double value;
    /// Sign of q'(value); G carries sign(slope * (x - value)) just beside the pole.
    int slope_sign;
};

struct PoleGroup {
    std::size_t first;
    std::size_t size;
};

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

BracketTable brackets(const SecularFamily& family) {
    const PencilParams& p = family.params();
    const double n = static_cast<double>(p.n());
    const std::size_t j = p.j();

    BracketTable table;
    table.epsilon = kPoleOffsetRel * p.scale();

    std::vector<std::vector<double>> per_factor;
    for (std::size_t l = 0; l < j; ++l) {
        per_factor.push_back(factor_roots(n, static_cast<double>(p.k(l)), family.a(), family.t()));
        const auto& r = per_factor.back();
        if (r.size() == 2) table.r_minus.push_back(r[0]);
        table.r_plus.push_back(r.back());
    }

    // Consecutive equal k (or poles closer than 4 epsilon) share their poles.
    std::vector<PoleGroup> groups;
    for (std::size_t l = 0; l < j; ++l) {
        const bool same = l > 0 && (p.k(l) == p.k(l - 1) ||
                                    std::abs(table.r_plus[l] - table.r_plus[l - 1]) < 4.0 * table.epsilon);
        if (same)
            ++groups.back().size;
        else
            groups.push_back({l, 1});
    }

    std::vector<Pole> lower;
    std::vector<Pole> upper;
    for (const auto& g : groups) {
        const auto& fac = family.factors()[g.first];
        for (double r : per_factor[g.first]) {
            const Pole pole{r, sign_of(fac.derivative(r))};
            (r < n ? lower : upper).push_back(pole);
            if (g.size >= 2) table.pole_roots.emplace_back(r, g.size - 1);
        }
    }
    auto by_value = [](const Pole& x, const Pole& y) { return x.value < y.value; };
    std::sort(lower.begin(), lower.end(), by_value);
    std::sort(upper.begin(), upper.end(), by_value);

    auto right_of = [](const Pole& pole) { return pole.slope_sign; };
    auto left_of = [](const Pole& pole) { return -pole.slope_sign; };
    // G(n) = 1 - j/n at t = 0, which vanishes exactly in the degenerate case.
    const bool center_zero = family.t() == 0.0 && p.degenerate();
    const int center_sign = center_zero ? 0 : 1;

    if (family.linear()) {
        // G = 1 + sum w_l / (x - p_l) with w_l = k_l / (-a) > 0: one zero left of the
        // lowest pole and one per gap, wherever n falls. G > 0 below p_min - sum w.
        double weight = 0.0;
        for (std::size_t k : p.ks()) weight += static_cast<double>(k) / -family.a();
        const Pole& first = upper.front();
        table.intervals.push_back({first.value - weight - 1.0, first.value, 1, 1, left_of(first)});
    } else {
        for (std::size_t i = 0; i + 1 < lower.size(); ++i)
            table.intervals.push_back(
                {lower[i].value, lower[i + 1].value, 1, right_of(lower[i]), left_of(lower[i + 1])});
        if (!lower.empty()) table.intervals.push_back({lower.back().value, n, 1, right_of(lower.back()), center_sign});
        if (!upper.empty()) table.intervals.push_back({n, upper.front().value, 1, center_sign, left_of(upper.front())});
    }
    for (std::size_t i = 0; i + 1 < upper.size(); ++i)
        table.intervals.push_back({upper[i].value, upper[i + 1].value, 1, right_of(upper[i]), left_of(upper[i + 1])});

    bool chain = !upper.empty() && (family.linear() || lower.size() == upper.size());
    for (std::size_t l = 0; l + 1 < j; ++l) {
        chain = chain && table.r_plus[l] >= table.r_plus[l + 1];
        if (!family.linear()) chain = chain && table.r_minus[l] <= table.r_minus[l + 1];
    }
    for (double r : table.r_plus) chain = chain && r > n;
    for (double r : table.r_minus) chain = chain && r < n;
    if (family.t() == 0.0) {
        const double kj = static_cast<double>(p.ks().back());
        const double k1 = static_cast<double>(p.ks().front());
        chain = chain && table.r_minus.front() > 0.0 && table.r_minus.back() < 1.0 &&
                n + kj <= table.r_plus.back() && table.r_plus.front() < n + k1 + 1.0;
    }
    table.chain_holds = chain;
    return table;
}

BracketTable brackets(const PencilParams& p) { return brackets(SecularFamily::base(p)); }

// ---------------------------------------------------------------------------
// Root isolation

namespace {

double bisect_G(const SecularFamily& family, double lo, double hi, int sign_lo, double tol) {
    for (int it = 0; it < 400 && hi - lo > tol; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double g = family.eval_G(mid);
        if (g == 0.0) return mid;
        if (sign_of(g) == sign_lo)
            lo = mid;
        else
            hi = mid;
    }
    return lo + 0.5 * (hi - lo);
}

std::string describe(const BracketInterval& iv) {
    std::ostringstream out;
    out.precision(17);
    out << "(" << iv.lo << ", " << iv.hi << ")";
    return out.str();
}

/**
 * Degenerate center, G(n) = 0: n is one zero of the central pair. The other
 * sits on the side G increases towards; a vanishing derivative means n is double.
 */
void degenerate_center(const SecularFamily& family, const BracketTable& table,
                       std::vector<std::pair<double, std::size_t>>& roots) {
    const double n = static_cast<double>(family.params().n());
    const double eps = table.epsilon;
    double left = -std::numeric_limits<double>::infinity();
    double right = std::numeric_limits<double>::infinity();
    for (const auto& iv : table.intervals) {
        if (iv.hi == n) left = iv.lo;
        if (iv.lo == n) right = iv.hi;
    }

    double scale_g = 0.0;
    for (std::size_t l = 0; l < family.factors().size(); ++l) {
        const double q = family.factors()[l](n);
        scale_g += static_cast<double>(family.params().k(l)) * std::abs(family.factors()[l].derivative(n)) / (q * q);
    }
    const double gp = family.eval_G_derivative(n);
    if (std::abs(gp) <= 1e-12 * scale_g) {
        roots.emplace_back(n, 2);
        return;
    }
    roots.emplace_back(n, 1);

    const bool to_right = gp > 0.0;
    const double far = to_right ? right - eps : left + eps;
    if (family.eval_G(far) >= 0.0)
        throw NumericError("degenerate center: secular function not negative next to pole " + std::to_string(far));
    double h = 0.5 * std::abs(far - n);
    for (int it = 0; it < 80; ++it, h *= 0.5) {
        const double probe = to_right ? n + h : n - h;
        if (family.eval_G(probe) > 0.0) {
            const double tol = kRootTolRel * family.params().scale();
            const double lo = std::min(probe, far);
            const double hi = std::max(probe, far);
            roots.emplace_back(bisect_G(family, lo, hi, sign_of(family.eval_G(lo)), tol), 1);
            return;
        }
    }
    // Second zero closer to n than any probe: numerically a double root.
    roots.back().second = 2;
}

}  // namespace

RootSet find_roots(const SecularFamily& family) {
    const PencilParams& p = family.params();
    const double n = static_cast<double>(p.n());
    const BracketTable table = brackets(family);
    const double eps = table.epsilon;

    std::vector<std::pair<double, std::size_t>> roots = table.pole_roots;
    bool center_done = false;
    for (const auto& iv : table.intervals) {
        if (iv.lo_sign == 0 || iv.hi_sign == 0) {
            if (!center_done) degenerate_center(family, table, roots);
            center_done = true;
            continue;
        }
        const double lo = iv.lo == n ? n : iv.lo + eps;
        const double hi = iv.hi == n ? n : iv.hi - eps;
        const double glo = family.eval_G(lo);
        const double ghi = family.eval_G(hi);
        if (sign_of(glo) != iv.lo_sign || sign_of(ghi) != iv.hi_sign)
            throw NumericError("bracket sign check failed on " + describe(iv) + " for " + p.to_string());
        const double tol = kRootTolRel * std::max({p.scale(), std::abs(lo), std::abs(hi)});
        roots.emplace_back(bisect_G(family, lo, hi, iv.lo_sign, tol), 1);
    }

    RootSet out = RootSet::from_pairs(std::move(roots));
    if (out.degree() != family.degree())
        throw NumericError("root count " + std::to_string(out.degree()) + " != degree " +
                           std::to_string(family.degree()) + " for " + p.to_string());
    return out;
}

RootSet find_roots(const PencilParams& p) { return find_roots(SecularFamily::base(p)); }

// ---------------------------------------------------------------------------
// Reduced matrix and closed forms

SymmetricMatrix build_M(const PencilParams& p) {
    const std::size_t j = p.j();
    const double n = static_cast<double>(p.n());
    const double extra = std::sqrt(n - static_cast<double>(j));
    SymmetricMatrix m(2 * j + 1);
    for (std::size_t l = 0; l < j; ++l) {
        const double k = static_cast<double>(p.k(l));
        m.set(l, l, n + k - 1.0);
        for (std::size_t r = l + 1; r < j; ++r) m.set(l, r, -1.0);
        m.set(l, j, -extra);
        m.set(l, j + 1 + l, -std::sqrt(k));
        m.set(j + 1 + l, j + 1 + l, 1.0);
    }
    m.set(j, j, static_cast<double>(j));
    return m;
}

std::vector<double> M_kernel_vector(const PencilParams& p) {
    std::vector<double> v(p.j(), 1.0);
    v.push_back(std::sqrt(static_cast<double>(p.n() - p.j())));
    for (std::size_t k : p.ks()) v.push_back(std::sqrt(static_cast<double>(k)));
    return v;
}

RootSet equal_k_closed_form(std::size_t n, std::size_t k, std::size_t j) {
    if (j < 1 || k < 1 || n < j) throw InputError("equal_k_closed_form needs j >= 1, k >= 1, n >= j");
    const double nn = static_cast<double>(n);
    const double kk = static_cast<double>(k);
    const double jj = static_cast<double>(j);
    const double s = nn + kk + 1.0;
    const double disc1 = s * s - 4.0 * nn;
    const double disc2 = s * s - 4.0 * nn - 4.0 * jj * kk;
    if (disc2 < 0.0) throw NumericError("equal_k_closed_form: negative discriminant for the simple root");
    const double d1 = std::sqrt(disc1);
    const double d2 = std::sqrt(disc2);
    return RootSet::from_pairs({{(s + d1) / 2.0, j - 1}, {(s - d1) / 2.0, j - 1}, {(s + d2) / 2.0, 1}, {(s - d2) / 2.0, 1}});
}

// ---------------------------------------------------------------------------
// Companion matrix

SymmetricMatrix companion_matrix(const PencilParams& p, double a) {
    if (a == 0.0) throw InputError("companion matrix needs a != 0");
    const std::size_t j = p.j();
    SymmetricMatrix c(j);
    for (std::size_t l = 0; l < j; ++l) {
        c.set(l, l, static_cast<double>(p.n() + p.k(l)));
        for (std::size_t m = l + 1; m < j; ++m)
            c.set(l, m, std::sqrt(static_cast<double>(p.k(l) * p.k(m))) / a);
    }
    return c;
}

RootSet companion_roots(const PencilParams& p, double a) {
    if (!(a < 0.0)) throw InputError("companion roots need a < 0");
    const Spectrum s = eigen_symmetric(companion_matrix(p, a));
    std::vector<std::pair<double, std::size_t>> pairs;
    for (double v : s.values) pairs.emplace_back(v, 1);
    return RootSet::from_pairs(std::move(pairs), 1e-10 * p.scale());
}

// ---------------------------------------------------------------------------
// Homotopy

namespace {

/// Distance from roots[l] to the nearest root that is not in its cluster.
double separation(const std::vector<double>& roots, std::size_t l, double cluster_tol) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < roots.size(); ++m) {
        const double d = std::abs(roots[m] - roots[l]);
        if (m != l && d > cluster_tol) gap = std::min(gap, d);
    }
    return gap;
}

}  // namespace

std::vector<HomotopyTrace> track_roots(const PencilParams& p, double a, std::size_t steps) {
    if (!(a < 1.0 - static_cast<double>(p.n()))) throw InputError("homotopy parameter a must satisfy a < 1 - n");
    if (steps < 2) throw InputError("homotopy needs at least two grid points");

    const std::size_t j = p.j();
    const double t_end = 1.0 - kHomotopyDelta;
    const double cluster_tol = 1e-9 * p.scale();
    constexpr int kHalvingBudget = 40;

    std::vector<HomotopyTrace> traces(j);
    for (std::size_t l = 0; l < j; ++l) {
        traces[l].a = a;
        traces[l].root_index = l;
    }

    std::vector<double> prev = find_roots(SecularFamily::homotopy(p, a, 0.0)).expanded();
    auto record = [&](double t) {
        for (std::size_t l = 0; l < j; ++l) {
            // At t = 0 in the degenerate case n itself is the j-th root.
            const double n = static_cast<double>(p.n());
            if (!(prev[l] > n || (t == 0.0 && prev[l] == n)))
                throw NumericError("tracked root " + std::to_string(l + 1) + " left (n, inf) at t=" + std::to_string(t));
            traces[l].t_grid.push_back(t);
            traces[l].values.push_back(prev[l]);
        }
    };
    record(0.0);

    std::size_t refinements = 0;
    double t_cur = 0.0;
    for (std::size_t i = 1; i < steps; ++i) {
        const double t_target = t_end * static_cast<double>(i) / static_cast<double>(steps - 1);
        const double full = t_target - t_cur;
        double h = full;
        while (t_cur < t_target) {
            const double t_try = std::min(t_cur + h, t_target);
            std::vector<double> next = find_roots(SecularFamily::homotopy(p, a, t_try)).expanded();
            bool ok = true;
            for (std::size_t l = 0; l < j && ok; ++l)
                ok = std::abs(next[l] - prev[l]) < 0.5 * separation(prev, l, cluster_tol);
            if (ok) {
                t_cur = t_try;
                prev = std::move(next);
                h = std::min(2.0 * h, full);
                continue;
            }
            ++refinements;
            h *= 0.5;
            if (h < full * std::ldexp(1.0, -kHalvingBudget))
                throw NumericError("homotopy lost its bracket near t=" + std::to_string(t_cur) + " for " + p.to_string());
        }
        record(t_target);
    }

    const std::vector<double> companion = companion_roots(p, a).expanded();
    const std::vector<double> isolated = find_roots(SecularFamily::frozen(p, a)).expanded();
    for (std::size_t l = 0; l < j; ++l) {
        traces[l].t_grid.push_back(1.0);
        traces[l].values.push_back(companion[l]);
        traces[l].isolated_endpoint = isolated[l];
        traces[l].refinements = refinements;
    }
    return traces;
}

HomotopyTrace track_root(const PencilParams& p, double a, std::size_t l, std::size_t steps) {
    if (l >= p.j()) throw InputError("only the top j roots are tracked");
    return track_roots(p, a, steps).at(l);
}

CrossingCheck check_no_crossing(std::span<const HomotopyTrace> traces, double tol) {
    CrossingCheck out;
    out.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l + 1 < traces.size(); ++l) {
        const auto& hi = traces[l].values;
        const auto& lo = traces[l + 1].values;
        if (hi.size() != lo.size() || hi.empty()) {
            out.ok = false;
            out.detail = "trace length mismatch";
            return out;
        }
        const auto rel = [&](double v) { return tol * std::max(1.0, std::abs(v)); };
        const bool clustered = std::abs(hi[0] - lo[0]) <= rel(hi[0]);
        for (std::size_t i = 0; i < hi.size(); ++i) {
            const double gap = hi[i] - lo[i];
            const bool bad = clustered ? std::abs(gap) > rel(hi[i]) : !(gap > 0.0);
            if (!clustered) out.min_gap = std::min(out.min_gap, gap);
            if (bad && out.ok) {
                out.ok = false;
                std::ostringstream msg;
                msg << "roots " << l + 1 << " and " << l + 2 << (clustered ? " separated" : " crossed")
                    << " at t=" << traces[l].t_grid[i] << " (gap " << gap << ")";
                out.detail = msg.str();
            }
        }
    }
    return out;
}

J2Quadratics j2_quadratics(const PencilParams& p, double s1, double s2) {
    if (p.j() != 2) throw InputError("j2_quadratics needs j = 2");
    const double n = static_cast<double>(p.n());
    if (!(s1 > s2 && s2 > n)) throw InputError("j2_quadratics needs s1 > s2 > n");
    const double k1 = static_cast<double>(p.k(0));
    const double k2 = static_cast<double>(p.k(1));

    auto solve = [&](double s, std::pair<double, double>& roots, double& disc, double& residual) {
        const double shift = k1 * k2 / ((1.0 - s) * (1.0 - s));
        const QuadraticFactor q{1.0, -(2.0 * n + k1 + k2), (n + k1) * (n + k2) - shift};
        disc = (k1 - k2) * (k1 - k2) + 4.0 * shift;
        const auto r = q.roots();
        roots = {r.back(), r.front()};
        residual = q(s);
    };
    J2Quadratics out;
    solve(s1, out.q1_roots, out.q1_discriminant, out.q1_at_s1);
    solve(s2, out.q2_roots, out.q2_discriminant, out.q2_at_s2);
    return out;
}

}  // namespace gm
