// Acceptance run: one PASS/FAIL line per criterion; exits nonzero on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "gm/checker.hpp"
#include "gm/cli.hpp"
#include "gm/report.hpp"
#include "properties.hpp"

using namespace gm;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<double> dense_spectrum(const PencilParams& p) {
    return eigen_symmetric(laplacian(build_semibipartite(p.n(), p.ks()).graph)).values;
}

const std::vector<PencilParams>& lattice() {
    static const auto l = enumerate_lattice(8, 4);
    return l;
}

Verdict oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string where;
    for (const auto& p : lattice()) {
        const auto merged = assemble(p).merged.values;
        const auto dense = dense_spectrum(p);
        if (merged.size() != dense.size()) return {false, "spectrum size mismatch on " + p.to_string()};
        for (std::size_t i = 0; i < dense.size(); ++i)
            if (std::abs(merged[i] - dense[i]) > worst) {
                worst = std::abs(merged[i] - dense[i]);
                where = p.to_string();
            }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst <= 1e-8 && secs < 120.0,
            fmt("%zu instances, max deviation %.3g (%s), %.2f s", lattice().size(), worst, where.c_str(), secs)};
}

Verdict theorem_sweep() {
    double min_margin = std::numeric_limits<double>::infinity();
    double worst_trace = 0.0;
    double worst_chain = 0.0;
    std::size_t failures = 0;
    std::string first_failure;
    for (const auto& p : lattice()) {
        const auto r = gm_report_semibipartite(p);
        const auto chain = verify_main_lemma(p);
        min_margin = std::min(min_margin, r.min_margin);
        const double total = std::accumulate(r.conjugate.begin(), r.conjugate.end(), 0.0);
        const double lam = std::accumulate(r.eigenvalues.values.begin(), r.eigenvalues.values.end(), 0.0);
        worst_trace = std::max(worst_trace, std::abs(lam - total) / total);
        worst_chain = std::max(worst_chain, std::abs(chain.chain.back() - p.gm_bound()) / p.gm_bound());
        if (!r.holds || r.min_margin < -1e-7 || !chain.holds) {
            if (failures++ == 0) first_failure = p.to_string();
        }
    }
    Verdict v{failures == 0 && worst_trace <= 1e-9 && worst_chain <= 1e-9,
              fmt("min margin %.3g, trace rel err %.3g, chain end rel err %.3g, %zu failures", min_margin, worst_trace,
                  worst_chain, failures)};
    if (failures) v.detail += " (first: " + first_failure + ")";
    return v;
}

Verdict equal_k_fixture() {
    const auto e = equal_k_closed_form(3, 1, 2).expanded();
    const double r1 = (5 + std::sqrt(13.0)) / 2;
    const double r2 = (5 + std::sqrt(5.0)) / 2;
    const double dev = std::max(std::abs(e[0] - r1), std::abs(e[1] - r2));
    const double sum = e[0] + e[1];
    bool ok = dev <= 1e-10 && sum <= 8.0 && std::abs(sum - 7.920810) < 1e-6;

    double slack = std::numeric_limits<double>::infinity();
    std::size_t count = 0;
    for (const auto& p : lattice()) {
        if (p.ks().front() != p.ks().back()) continue;
        ++count;
        const auto cf = equal_k_closed_form(p.n(), p.k(0), p.j()).expanded();
        const auto fr = find_roots(p).expanded();
        for (std::size_t i = 0; i < fr.size(); ++i) ok = ok && std::abs(cf[i] - fr[i]) <= 1e-10;
        const double top = std::accumulate(cf.begin(), cf.begin() + std::ptrdiff_t(p.j()), 0.0);
        slack = std::min(slack, p.gm_bound() - top);
    }
    ok = ok && slack >= 0.0;
    return {ok, fmt("root deviation %.3g, top-2 sum %.9f <= 8, min slack %.3g over %zu equal-k instances", dev, sum,
                    slack, count)};
}

Verdict degenerate_fixture() {
    const auto roots = find_roots(PencilParams(2, {1, 1})).expanded();
    const auto near_two = std::count_if(roots.begin(), roots.end(), [](double x) { return std::abs(x - 2.0) <= 1e-8; });
    const std::vector<std::size_t> ks{1, 1};
    const auto merged = assemble_spectrum_degenerate(ks).merged.values;
    const std::vector<double> expected{2 + std::sqrt(2.0), 2.0, 2 - std::sqrt(2.0), 0.0};
    const std::vector<Edge> path{{0, 1}, {1, 2}, {2, 3}};
    const auto p4 = gm_report(build_graph(4, path)).eigenvalues.values;
    double dev = 0.0;
    if (merged.size() != 4) return {false, "assembled spectrum has " + std::to_string(merged.size()) + " values"};
    for (std::size_t i = 0; i < 4; ++i)
        dev = std::max({dev, std::abs(merged[i] - expected[i]), std::abs(merged[i] - p4[i])});
    return {near_two == 2 && dev <= 1e-8, fmt("%ld roots within 1e-8 of 2, spectrum deviation %.3g", long(near_two), dev)};
}

Verdict companion_fixed_point() {
    double worst = 0.0;
    for (const auto& p : lattice()) {
        const auto s = find_roots(p).expanded();
        for (std::size_t l = 0; l < p.j(); ++l)
            worst = std::max(worst, std::abs(companion_roots(p, 1.0 - s[l]).expanded()[l] - s[l]));
    }
    return {worst <= 1e-8, fmt("max |c_l(1 - s_l) - s_l| = %.3g", worst)};
}

Verdict companion_majorization() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-50.0, -1e-3);
    double worst_trace = 0.0;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::size_t pairs = 0;
    bool ok = true;
    for (const auto& p : lattice()) {
        for (int i = 0; i < 20; ++i) {
            double a = u(rng);
            double b = u(rng);
            if (a < b) std::swap(a, b);
            if (a == b) continue;
            const auto ra = companion_roots(p, a).expanded();
            const auto rb = companion_roots(p, b).expanded();
            for (const auto& r : {ra, rb}) {
                const double tr = std::accumulate(r.begin(), r.end(), 0.0);
                worst_trace = std::max(worst_trace, std::abs(tr - p.gm_bound()) / p.gm_bound());
            }
            const auto m = majorizes(ra, rb, 1e-8);
            ok = ok && m.holds;
            worst_margin = std::min(worst_margin, *std::min_element(m.prefix_margins.begin(), m.prefix_margins.end()));
            ++pairs;
        }
    }
    ok = ok && worst_trace <= 1e-10;
    return {ok, fmt("%zu pairs, trace rel err %.3g, min prefix margin %.3g", pairs, worst_trace, worst_margin)};
}

Verdict matrix_properties() {
    const auto bound = props::projection_bound(500, 101, 1e-8);
    const auto equality = props::projection_equality(500, 102, 1e-8);
    const auto ones = props::ones_perturbation(500, 103, 1e-8);
    const auto scaled = props::scaled_ones(500, 104, 1e-8);
    const auto det = props::rank_one_determinant(500, 105, 1e-9);

    // Named cancellation cases: one and two unit entries.
    auto rel = [](const std::vector<double>& l) {
        const double ref = oracle::lu_determinant(oracle::to_dense(props::diag_plus_ones(l, 1.0)));
        return std::abs(det_diag_plus_ones(l) - ref) / std::max(1.0, std::abs(ref));
    };
    const double one_unit = rel({3.0, 1.0, -2.0, 0.5});
    const double two_units = rel({1.0, 2.5, 1.0, -1.5});
    const bool ok = bound.ok() && equality.ok() && ones.ok() && scaled.ok() && det.ok() && one_unit <= 1e-9 &&
                    two_units <= 1e-9;
    return {ok, fmt("failures: projection %zu/%zu, equality %zu/%zu, ones %zu/%zu, scaled %zu/%zu, det %zu/%zu; "
                    "unit-entry rel err %.2g, %.2g",
                    bound.failures, bound.trials, equality.failures, equality.trials, ones.failures, ones.trials,
                    scaled.failures, scaled.trials, det.failures, det.trials, one_unit, two_units)};
}

Verdict threshold_equality() {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> len(1, 10);
    std::bernoulli_distribution coin(0.5);
    double worst = 0.0;
    for (int g = 0; g < 50; ++g) {
        std::vector<CreationStep> seq(len(rng));
        for (auto& s : seq) s = coin(rng) ? CreationStep::dominating : CreationStep::isolated;
        for (double m : gm_report(build_threshold(seq)).prefix_margins) worst = std::max(worst, std::abs(m));
    }
    return {worst <= 1e-8, fmt("50 graphs, max |margin| %.3g", worst)};
}

Verdict homotopy_integrity() {
    std::vector<PencilParams> pool;
    for (const auto& p : lattice())
        if (p.n() >= 2) pool.push_back(p);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    double start_dev = 0.0;
    double end_dev = 0.0;
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 10; ++i) {
        const auto& p = pool[pick(rng)];
        const double n = double(p.n());
        for (double a : {1.0 - n - 1.0, 2.0 * (1.0 - n)}) {
            const auto traces = track_roots(p, a);
            const auto base = find_roots(p).expanded();
            const auto cmp = companion_roots(p, a).expanded();
            for (std::size_t l = 0; l < traces.size(); ++l) {
                start_dev = std::max(start_dev, std::abs(traces[l].values.front() - base[l]));
                end_dev = std::max({end_dev, std::abs(traces[l].values.back() - cmp[l]),
                                    std::abs(traces[l].isolated_endpoint - cmp[l])});
            }
            const auto cc = check_no_crossing(traces);
            if (!cc.ok) {
                ok = false;
                detail = " crossing on " + p.to_string() + ": " + cc.detail;
            }
        }
    }
    ok = ok && start_dev <= 1e-7 && end_dev <= 1e-7;
    return {ok, fmt("10 instances x 2 values of a, start dev %.3g, end dev %.3g", start_dev, end_dev) + detail};
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
    std::ostringstream out;
    std::ostringstream err;
    code = cli::run(args, out, err);
    return out.str();
}

Verdict cli_determinism() {
    int code = 0;
    const std::vector<std::string> base{"sweep", "--n-max", "8", "--k-max", "4", "--workers"};
    auto with = [&](const char* w) {
        auto a = base;
        a.emplace_back(w);
        return run_cli(a, code);
    };
    const auto one = with("1");
    bool ok = code == 0;
    for (const char* w : {"3", "8"}) ok = ok && with(w) == one && code == 0;

    std::size_t docs = 0;
    const std::vector<std::vector<std::string>> cases{
        {"analyze", "--n", "3", "--k", "1,1", "--json", "--cross-check"},
        {"analyze", "--n", "7", "--k", "4,3,3,1", "--json"},
        {"analyze", "--n", "2", "--k", "1,1", "--json"},
        {"analyze", "--n", "5", "--k", "2,2,2,2,2", "--json", "--cross-check"},
    };
    for (const auto& c : cases) {
        const auto text = run_cli(c, code);
        const auto doc = parse_document(text);
        const auto again = parse_document(to_json_string(doc));
        bool bits = again.eigenvalues.size() == doc.eigenvalues.size();
        for (std::size_t i = 0; bits && i < doc.eigenvalues.size(); ++i)
            bits = std::memcmp(&doc.eigenvalues[i], &again.eigenvalues[i], sizeof(double)) == 0;
        ok = ok && code == 0 && again == doc && bits && to_json_string(again) == to_json_string(doc);
        ++docs;
    }
    return {ok, fmt("sweep output (%zu bytes) identical for 1/3/8 workers, %zu JSON documents round-trip", one.size(), docs)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"oracle equivalence", oracle_equivalence},
        {"GM sweep and trace equality", theorem_sweep},
        {"equal-k closed form", equal_k_fixture},
        {"degenerate fixture", degenerate_fixture},
        {"companion fixed point", companion_fixed_point},
        {"companion majorization", companion_majorization},
        {"matrix property suite", matrix_properties},
        {"threshold equality", threshold_equality},
        {"homotopy integrity", homotopy_integrity},
        {"CLI determinism", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("%s  %2zu %-28s %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
