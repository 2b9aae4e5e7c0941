#include "gm/cli.hpp"

#include <charconv>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "gm/checker.hpp"
#include "gm/errors.hpp"
#include "gm/graph.hpp"
#include "gm/qep.hpp"
#include "gm/report.hpp"

namespace gm::cli {

namespace {

std::vector<std::string_view> split_commas(const std::string& text) {
    std::vector<std::string_view> parts;
    std::string_view rest(text);
    while (true) {
        const auto pos = rest.find(',');
        parts.push_back(rest.substr(0, pos));
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }
    return parts;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    for (auto part : split_commas(text)) {
        part = trim(part);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
            throw InputError("not a number: '" + std::string(part) + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<std::size_t> parse_count_list(const std::string& text) {
    std::vector<std::size_t> out;
    for (auto part : split_commas(text)) {
        part = trim(part);
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
            throw InputError("not a nonnegative integer: '" + std::string(part) + "'");
        out.push_back(v);
    }
    return out;
}

namespace {

std::string fmt(double v, int prec = 12) {
    std::ostringstream s;
    s << std::setprecision(prec) << v;
    return s.str();
}

void print_margin_table(std::ostream& out, const GMReport& r) {
    out << std::setw(6) << "index" << std::setw(22) << "lambda" << std::setw(10) << "d^T" << std::setw(22) << "margin"
        << "\n";
    for (std::size_t i = 0; i < r.prefix_margins.size(); ++i) {
        out << std::setw(6) << i + 1 << std::setw(22) << fmt(r.eigenvalues[i]) << std::setw(10) << r.conjugate[i]
            << std::setw(22) << fmt(r.prefix_margins[i]);
        if (std::find(r.tight_indices.begin(), r.tight_indices.end(), i) != r.tight_indices.end()) out << "  tight";
        out << "\n";
    }
    out << "verdict: " << (r.holds ? "holds" : "FAILS") << " (min margin " << fmt(r.min_margin) << " at index "
        << r.argmin + 1 << ")\n";
}

struct CheckOptions {
    std::string path;
    bool json = false;
    double gm_tol = kDefaultGmTol;
};

int cmd_check(const CheckOptions& o, std::ostream& out) {
    const Graph g = read_edge_list_file(o.path);
    const GMReport r = gm_report(g, o.gm_tol);
    if (o.json) {
        ReportDocument doc = make_document("check", r);
        doc.vertex_count = g.vertex_count();
        doc.edge_count = g.edge_count();
        out << to_json_string(doc) << "\n";
    } else {
        out << "graph: " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
        print_margin_table(out, r);
    }
    return r.holds ? kHolds : kVerdictFails;
}

struct AnalyzeOptions {
    std::size_t n = 0;
    std::string k;
    bool json = false;
    bool cross_check = false;
    bool trace = false;
    double a = 0.0;
    bool a_set = false;
    std::size_t steps = kDefaultHomotopySteps;
    double gm_tol = kDefaultGmTol;
};

void print_traces(std::ostream& out, const PencilParams& p, double a, std::size_t steps) {
    const auto traces = track_roots(p, a, steps);
    out << "homotopy trace (a = " << fmt(a) << ")\n";
    out << std::setw(10) << "t";
    for (std::size_t l = 0; l < traces.size(); ++l) out << std::setw(20) << ("s_" + std::to_string(l + 1));
    out << "\n";
    for (std::size_t i = 0; i < traces.front().t_grid.size(); ++i) {
        out << std::setw(10) << fmt(traces.front().t_grid[i], 6);
        for (const auto& tr : traces) out << std::setw(20) << fmt(tr.values[i]);
        out << "\n";
    }
    const CrossingCheck cc = check_no_crossing(traces);
    out << "no-crossing: " << (cc.ok ? "ok" : "VIOLATED " + cc.detail) << "\n";
}

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
    const PencilParams p(o.n, parse_count_list(o.k));
    const RootSet roots = find_roots(p);
    const GMReport r = gm_report_semibipartite(p, o.cross_check, o.gm_tol);
    const LemmaChain chain = verify_main_lemma(p, o.gm_tol);
    const bool holds = r.holds && chain.holds;

    double top = 0.0;
    const auto expanded = roots.expanded();
    for (std::size_t l = 0; l < p.j(); ++l) top += expanded[l];

    if (o.json) {
        ReportDocument doc = make_document("analyze", r);
        doc.n = p.n();
        doc.ks = p.ks();
        doc.lemma_chain = chain.chain;
        doc.verdict = holds;
        std::vector<RootEntry> entries;
        for (std::size_t i = 0; i < roots.roots.size(); ++i) entries.push_back({roots.roots[i], roots.multiplicities[i]});
        doc.roots = std::move(entries);
        out << to_json_string(doc) << "\n";
        return holds ? kHolds : kVerdictFails;
    }

    out << "instance: " << p.to_string() << (p.degenerate() ? "  [degenerate path, j = n]" : "") << "\n";
    const BracketTable bt = brackets(p);
    out << "brackets (ordering chain " << (bt.chain_holds ? "ok" : "BROKEN") << ")\n";
    for (std::size_t l = 0; l < p.j(); ++l)
        out << "  l=" << l + 1 << "  r- = " << fmt(bt.r_minus[l]) << "  r+ = " << fmt(bt.r_plus[l]) << "\n";
    for (const auto& iv : bt.intervals) out << "  zero of G in (" << fmt(iv.lo) << ", " << fmt(iv.hi) << ")\n";
    out << "roots of F (degree " << roots.degree() << ")\n";
    for (std::size_t i = 0; i < roots.roots.size(); ++i)
        out << "  " << fmt(roots.roots[i], 15) << "  x" << roots.multiplicities[i] << "\n";
    out << "top-" << p.j() << " sum " << fmt(top, 10) << "  bound " << fmt(p.gm_bound(), 10) << "  slack "
        << fmt(p.gm_bound() - top, 10) << "\n";

    const AssembledSpectrum asm_ = assemble(p);
    out << "assembled spectrum (" << asm_.merged.size() << " values";
    if (asm_.removed_root) out << ", removed root " << fmt(*asm_.removed_root) << " of multiplicity " << asm_.root_j_multiplicity;
    out << ")\n  ";
    for (double v : asm_.merged.values) out << fmt(v, 10) << " ";
    out << "\n";
    print_margin_table(out, r);

    out << "lemma chain (m = j .. 0):";
    for (std::size_t m = chain.chain.size(); m-- > 0;) out << " " << fmt(chain.chain[m], 10);
    out << "\n  chain " << (chain.holds ? "holds" : "FAILS") << ", overall slack " << fmt(chain.overall_slack) << "\n";
    if (r.cross_check_deviation)
        out << "cross-check: max deviation vs dense eigensolve " << fmt(*r.cross_check_deviation, 3) << "\n";
    if (o.trace) {
        const double a = o.a_set ? o.a : -static_cast<double>(p.n());
        print_traces(out, p, a, o.steps);
    }
    return holds ? kHolds : kVerdictFails;
}

struct SweepOptions {
    std::size_t n_max = 1;
    std::size_t k_max = 1;
    std::size_t workers = 1;
    std::string mode = "pipeline";
    std::string format = "csv";
};

int cmd_sweep(const SweepOptions& o, std::ostream& out) {
    SweepMode mode = SweepMode::pipeline;
    if (o.mode == "oracle")
        mode = SweepMode::oracle;
    else if (o.mode == "both")
        mode = SweepMode::both;
    else if (o.mode != "pipeline")
        throw InputError("unknown sweep mode '" + o.mode + "'");
    if (o.format != "csv" && o.format != "json") throw InputError("unknown format '" + o.format + "'");

    const SweepSummary s = sweep(o.n_max, o.k_max, mode, o.workers);
    if (o.format == "csv") {
        out << kCsvHeader << "\n";
        for (const auto& rec : s.records) out << csv_row(rec) << "\n";
        out << csv_summary(s) << "\n";
    } else {
        for (const auto& rec : s.records) {
            nlohmann::json line;
            if (rec.report) {
                ReportDocument doc = make_document("sweep", *rec.report);
                doc.n = rec.params.n();
                doc.ks = rec.params.ks();
                doc.verdict = rec.ok();
                if (rec.lemma) doc.lemma_chain = rec.lemma->chain;
                line = doc;
            } else {
                line = {{"schema_version", kSchemaVersion},
                        {"command", "sweep"},
                        {"params", {{"n", rec.params.n()}, {"k", rec.params.ks()}}},
                        {"error", rec.error}};
            }
            out << line.dump() << "\n";
        }
        nlohmann::json summary{{"summary",
                                {{"records", s.records.size()},
                                 {"failures", s.failures},
                                 {"min_margin", s.min_margin},
                                 {"min_raw_margin", s.min_raw_margin},
                                 {"max_cross_dev", s.max_cross_dev}}}};
        if (s.argmin) summary["summary"]["argmin"] = {{"n", s.argmin->n()}, {"k", s.argmin->ks()}};
        out << summary.dump() << "\n";
    }
    return s.failures == 0 ? kHolds : kVerdictFails;
}

struct MajorizeOptions {
    std::string a;
    std::string b;
    double tol = kDefaultMajorizationTol;
};

int cmd_majorize(const MajorizeOptions& o, std::ostream& out) {
    const auto a = parse_real_list(o.a);
    const auto b = parse_real_list(o.b);
    const MajorizationReport r = majorizes(a, b, o.tol);
    out << "prefix margins:";
    for (double m : r.prefix_margins) out << " " << fmt(m);
    out << "\n";
    if (r.holds)
        out << "a majorizes b\n";
    else
        out << "a does not majorize b (first violation at index " << *r.first_violation + 1 << ")\n";
    return r.holds ? kHolds : kVerdictFails;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Grone-Merris majorization toolkit for graph Laplacians", "gmtool"};
    app.require_subcommand(1);

    CheckOptions check;
    auto* c = app.add_subcommand("check", "Check every Grone-Merris inequality for an edge-list graph");
    c->add_option("path", check.path, "Edge-list file")->required();
    c->add_flag("--json", check.json, "Emit a gm-report/1 document");
    c->add_option("--gm-tol", check.gm_tol, "Margins >= -tol count as holding");

    AnalyzeOptions analyze;
    auto* an = app.add_subcommand("analyze", "Structured analysis of a 1-regular semi-bipartite instance");
    an->add_option("--n", analyze.n, "Clique size")->required();
    an->add_option("--k", analyze.k, "Pendant counts, comma separated, weakly decreasing")->required();
    an->add_flag("--json", analyze.json, "Emit a gm-report/1 document");
    an->add_flag("--cross-check", analyze.cross_check, "Also run the dense eigensolver oracle");
    an->add_flag("--trace", analyze.trace, "Dump homotopy traces of the top-j roots");
    auto* a_opt = an->add_option("--a", analyze.a, "Homotopy constant (default -n)");
    an->add_option("--steps", analyze.steps, "Homotopy grid points");
    an->add_option("--gm-tol", analyze.gm_tol, "Margins >= -tol count as holding");

    SweepOptions sw;
    auto* s = app.add_subcommand("sweep", "Sweep the (n, k) lattice");
    s->add_option("--n-max", sw.n_max, "Largest clique size")->required();
    s->add_option("--k-max", sw.k_max, "Largest pendant count")->required();
    s->add_option("--workers", sw.workers, "Worker threads (output order is fixed)");
    s->add_option("--mode", sw.mode, "pipeline | oracle | both");
    s->add_option("--format", sw.format, "csv | json");

    MajorizeOptions maj;
    auto* m = app.add_subcommand("majorize", "Test whether a majorizes b");
    m->add_option("--a", maj.a, "Weakly decreasing list")->required();
    m->add_option("--b", maj.b, "Weakly decreasing list")->required();
    m->add_option("--tol", maj.tol, "Prefix margins >= -tol count as holding");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kHolds;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kHolds;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (*c) return cmd_check(check, out);
        if (*an) {
            analyze.a_set = a_opt->count() > 0;
            return cmd_analyze(analyze, out);
        }
        if (*s) return cmd_sweep(sw, out);
        if (*m) return cmd_majorize(maj, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kNumericError;
    }
    return kInputError;
}

}  // namespace gm::cli
