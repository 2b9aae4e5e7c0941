#include "gm/checker.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "gm/errors.hpp"

namespace gm {

std::string to_string(Method m) {
    switch (m) {
        case Method::direct_oracle: return "direct-oracle";
        case Method::qep_pipeline: return "qep-pipeline";
        case Method::both: return "both";
    }
    return "unknown";
}

std::string to_string(SweepMode m) {
    switch (m) {
        case SweepMode::pipeline: return "pipeline";
        case SweepMode::oracle: return "oracle";
        case SweepMode::both: return "both";
    }
    return "unknown";
}

GMReport make_gm_report(Spectrum eigenvalues, std::vector<std::size_t> conjugate, Method method, double gm_tol) {
    if (eigenvalues.size() != conjugate.size()) throw InputError("spectrum and conjugate sequence differ in length");
    GMReport r;
    r.method = method;
    r.prefix_margins.reserve(conjugate.size());
    double lhs = 0.0;
    double rhs = 0.0;
    r.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < conjugate.size(); ++i) {
        lhs += eigenvalues[i];
        rhs += static_cast<double>(conjugate[i]);
        const double margin = rhs - lhs;
        r.prefix_margins.push_back(margin);
        if (margin < r.min_margin) {
            r.min_margin = margin;
            r.argmin = i;
        }
        if (std::abs(margin) < 1e-6 * (1.0 + rhs)) {
            r.tight_indices.push_back(i);
        } else if (!r.min_open_margin || margin < *r.min_open_margin) {
            r.min_open_margin = margin;
            r.open_argmin = i;
        }
    }
    if (conjugate.empty()) r.min_margin = 0.0;
    r.holds = r.min_margin >= -gm_tol;
    r.eigenvalues = std::move(eigenvalues);
    r.conjugate = std::move(conjugate);
    return r;
}

GMReport gm_report(const Graph& g, double gm_tol) {
    return make_gm_report(eigen_symmetric(laplacian(g)), degree_data(g).conjugate, Method::direct_oracle, gm_tol);
}

namespace {

Spectrum merge_pieces(const AssembledSpectrum& a, double n) {
    Spectrum s;
    s.values = a.f_roots;
    s.values.insert(s.values.end(), a.n_copies, n);
    s.values.insert(s.values.end(), a.one_copies, 1.0);
    s.values.insert(s.values.end(), a.zero_copies, 0.0);
    std::sort(s.values.begin(), s.values.end(), std::greater<>{});
    return s;
}

}  // namespace

AssembledSpectrum assemble_spectrum(const PencilParams& p) {
    if (p.degenerate()) throw InputError("j = n: use the degenerate assembly");
    AssembledSpectrum a;
    a.f_roots = find_roots(p).expanded();
    a.n_copies = p.n() - p.j() - 1;
    a.one_copies = p.k_sum() - p.j();
    a.merged = merge_pieces(a, static_cast<double>(p.n()));
    return a;
}

AssembledSpectrum assemble_spectrum_degenerate(std::span<const std::size_t> ks) {
    const PencilParams p(ks.size(), std::vector<std::size_t>(ks.begin(), ks.end()));
    const double j = static_cast<double>(p.j());
    AssembledSpectrum a;
    a.f_roots = find_roots(p).expanded();

    auto closest = std::min_element(a.f_roots.begin(), a.f_roots.end(),
                                    [&](double x, double y) { return std::abs(x - j) < std::abs(y - j); });
    if (closest == a.f_roots.end() || std::abs(*closest - j) > 1e-6)
        throw NumericError("degenerate case: F has no root at j for " + p.to_string());
    a.root_j_multiplicity = static_cast<std::size_t>(
        std::count_if(a.f_roots.begin(), a.f_roots.end(), [&](double x) { return std::abs(x - j) <= 1e-6; }));
    a.removed_root = *closest;
    a.f_roots.erase(closest);
    a.one_copies = p.k_sum() - p.j();
    a.merged = merge_pieces(a, j);
    return a;
}

AssembledSpectrum assemble(const PencilParams& p) {
    return p.degenerate() ? assemble_spectrum_degenerate(p.ks()) : assemble_spectrum(p);
}

std::vector<std::size_t> semibipartite_conjugate(const PencilParams& p) {
    const std::size_t n = p.n();
    const std::size_t total = n + p.k_sum();
    std::vector<std::size_t> conj(total, 0);
    conj[0] = total;
    for (std::size_t m = 2; m + 1 <= n; ++m) conj[m - 1] = n;
    if (n >= 2) conj[n - 1] = p.j();
    // Beyond n only attachment vertices (degree n - 1 + k_l) remain.
    for (std::size_t m = n + 1; m <= total; ++m)
        conj[m - 1] = static_cast<std::size_t>(
            std::count_if(p.ks().begin(), p.ks().end(), [&](std::size_t k) { return n - 1 + k >= m; }));
    return conj;
}

double cross_check_deviation(const PencilParams& p) {
    const Spectrum pipeline = assemble(p).merged;
    const Spectrum oracle = eigen_symmetric(laplacian(build_semibipartite(p.n(), p.ks()).graph));
    if (pipeline.size() != oracle.size()) return std::numeric_limits<double>::infinity();
    double dev = 0.0;
    for (std::size_t i = 0; i < pipeline.size(); ++i) dev = std::max(dev, std::abs(pipeline[i] - oracle[i]));
    return dev;
}

GMReport gm_report_semibipartite(const PencilParams& p, bool cross_check, double gm_tol) {
    GMReport r = make_gm_report(assemble(p).merged, semibipartite_conjugate(p),
                                cross_check ? Method::both : Method::qep_pipeline, gm_tol);
    if (cross_check) r.cross_check_deviation = cross_check_deviation(p);
    return r;
}

LemmaChain verify_main_lemma(const PencilParams& p, double tol) {
    const std::size_t j = p.j();
    const std::vector<double> roots = find_roots(p).expanded();

    LemmaChain c;
    c.bound = p.gm_bound();
    c.s.assign(roots.begin(), roots.begin() + static_cast<std::ptrdiff_t>(j));
    c.chain.assign(j + 1, 0.0);
    c.chain[0] = std::accumulate(c.s.begin(), c.s.end(), 0.0);
    for (std::size_t m = 1; m <= j; ++m) {
        const double a = 1.0 - c.s[m - 1];
        c.a.push_back(a);
        const std::vector<double> comp = companion_roots(p, a).expanded();
        double value = std::accumulate(c.s.begin() + static_cast<std::ptrdiff_t>(m), c.s.end(), 0.0);
        value += std::accumulate(comp.begin(), comp.begin() + static_cast<std::ptrdiff_t>(m), 0.0);
        c.chain[m] = value;
        c.fixed_point_deviation.push_back(std::abs(comp[m - 1] - c.s[m - 1]));
    }
    for (std::size_t m = 1; m <= j; ++m) {
        const double slack = c.chain[m] - c.chain[m - 1];
        c.step_slack.push_back(slack);
        if (slack < -tol && !c.failed_step) c.failed_step = m;
    }
    c.overall_slack = c.bound - c.chain[0];
    c.holds = !c.failed_step && c.overall_slack >= -tol;
    return c;
}

OrderingFacts ordering_facts(const PencilParams& p) {
    if (p.degenerate()) throw InputError("ordering facts apply to the nondegenerate case");
    const std::vector<double> roots = find_roots(p).expanded();
    const double n = static_cast<double>(p.n());
    OrderingFacts f;
    f.roots_above_n = static_cast<std::size_t>(std::count_if(roots.begin(), roots.end(), [&](double r) { return r > n; }));
    f.next_root = roots[p.j()];
    f.g_at_j = eval_G(p, static_cast<double>(p.j()));
    f.rest_max = p.j() + 1 < roots.size() ? roots[p.j() + 1] : -std::numeric_limits<double>::infinity();
    return f;
}

std::vector<PencilParams> enumerate_lattice(std::size_t n_max, std::size_t k_max) {
    if (n_max < 1 || k_max < 1) throw InputError("sweep bounds must be >= 1");
    std::vector<PencilParams> out;
    for (std::size_t n = 1; n <= n_max; ++n) {
        for (std::size_t j = 1; j <= n; ++j) {
            // Odometer over weakly decreasing sequences, lexicographically ascending.
            std::vector<std::size_t> ks(j, 1);
            while (true) {
                out.emplace_back(n, ks);
                std::size_t pos = j;
                while (pos > 0) {
                    --pos;
                    const std::size_t cap = pos == 0 ? k_max : ks[pos - 1];
                    if (ks[pos] < cap) break;
                    if (pos == 0) {
                        pos = j + 1;
                        break;
                    }
                }
                if (pos == j + 1) break;
                ++ks[pos];
                std::fill(ks.begin() + static_cast<std::ptrdiff_t>(pos) + 1, ks.end(), 1);
            }
        }
    }
    return out;
}

SweepRecord evaluate_instance(const PencilParams& p, SweepMode mode) {
    SweepRecord rec{p, std::nullopt, std::nullopt, std::nullopt, {}};
    try {
        switch (mode) {
            case SweepMode::pipeline:
                rec.report = gm_report_semibipartite(p);
                rec.lemma = verify_main_lemma(p);
                break;
            case SweepMode::oracle:
                rec.report = gm_report(build_semibipartite(p.n(), p.ks()).graph);
                break;
            case SweepMode::both:
                rec.report = gm_report_semibipartite(p, true);
                rec.lemma = verify_main_lemma(p);
                rec.cross_dev = rec.report->cross_check_deviation;
                break;
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    return rec;
}

SweepSummary sweep(std::size_t n_max, std::size_t k_max, SweepMode mode, std::size_t workers) {
    const std::vector<PencilParams> lattice = enumerate_lattice(n_max, k_max);
    std::vector<std::optional<SweepRecord>> slots(lattice.size());

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < lattice.size(); i = next++) slots[i] = evaluate_instance(lattice[i], mode);
    };
    const std::size_t threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, lattice.size()));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    }

    SweepSummary s;
    s.min_margin = std::numeric_limits<double>::infinity();
    s.min_raw_margin = std::numeric_limits<double>::infinity();
    s.records.reserve(slots.size());
    for (auto& slot : slots) {
        SweepRecord rec = std::move(*slot);
        if (!rec.ok()) ++s.failures;
        if (rec.report) {
            s.min_raw_margin = std::min(s.min_raw_margin, rec.report->min_margin);
            if (rec.report->min_open_margin && *rec.report->min_open_margin < s.min_margin) {
                s.min_margin = *rec.report->min_open_margin;
                s.argmin = rec.params;
            }
        }
        if (rec.cross_dev) s.max_cross_dev = std::max(s.max_cross_dev, *rec.cross_dev);
        s.records.push_back(std::move(rec));
    }
    return s;
}

}  // namespace gm
