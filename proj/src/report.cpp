#include "gm/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "gm/errors.hpp"

namespace gm {

using nlohmann::json;

void to_json(json& j, const ReportDocument& doc) {
    j = json{{"schema_version", doc.schema_version}, {"command", doc.command},  {"method", doc.method},
             {"eigenvalues", doc.eigenvalues},       {"conjugate", doc.conjugate}, {"margins", doc.margins},
             {"verdict", doc.verdict}};
    if (doc.n) j["params"] = json{{"n", *doc.n}, {"k", *doc.ks}};
    if (doc.vertex_count) j["graph"] = json{{"vertex_count", *doc.vertex_count}, {"edge_count", *doc.edge_count}};
    if (doc.lemma_chain) j["lemma_chain"] = *doc.lemma_chain;
    if (doc.cross_check_deviation) j["cross_check_deviation"] = *doc.cross_check_deviation;
    if (doc.roots) {
        json roots = json::array();
        for (const auto& r : *doc.roots) roots.push_back({{"value", r.value}, {"multiplicity", r.multiplicity}});
        j["roots"] = std::move(roots);
    }
}

void from_json(const json& j, ReportDocument& doc) {
    try {
        j.at("schema_version").get_to(doc.schema_version);
        if (doc.schema_version != kSchemaVersion)
            throw InputError("unsupported schema version '" + doc.schema_version + "'");
        j.at("command").get_to(doc.command);
        j.at("method").get_to(doc.method);
        j.at("eigenvalues").get_to(doc.eigenvalues);
        j.at("conjugate").get_to(doc.conjugate);
        j.at("margins").get_to(doc.margins);
        j.at("verdict").get_to(doc.verdict);
        if (j.contains("params")) {
            doc.n = j["params"].at("n").get<std::size_t>();
            doc.ks = j["params"].at("k").get<std::vector<std::size_t>>();
        }
        if (j.contains("graph")) {
            doc.vertex_count = j["graph"].at("vertex_count").get<std::size_t>();
            doc.edge_count = j["graph"].at("edge_count").get<std::size_t>();
        }
        if (j.contains("lemma_chain")) doc.lemma_chain = j["lemma_chain"].get<std::vector<double>>();
        if (j.contains("cross_check_deviation")) doc.cross_check_deviation = j["cross_check_deviation"].get<double>();
        if (j.contains("roots")) {
            std::vector<RootEntry> roots;
            for (const auto& r : j["roots"])
                roots.push_back({r.at("value").get<double>(), r.at("multiplicity").get<std::size_t>()});
            doc.roots = std::move(roots);
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed report document: ") + e.what());
    }
}

ReportDocument make_document(const std::string& command, const GMReport& report) {
    ReportDocument doc;
    doc.command = command;
    doc.method = to_string(report.method);
    doc.eigenvalues = report.eigenvalues.values;
    doc.conjugate.assign(report.conjugate.begin(), report.conjugate.end());
    doc.margins = report.prefix_margins;
    doc.verdict = report.holds;
    doc.cross_check_deviation = report.cross_check_deviation;
    return doc;
}

std::string to_json_string(const ReportDocument& doc) { return json(doc).dump(); }

ReportDocument parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    return j.get<ReportDocument>();
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

namespace {

std::string join_ks(const std::vector<std::size_t>& ks) {
    std::string out;
    for (std::size_t l = 0; l < ks.size(); ++l) out += (l ? ";" : "") + std::to_string(ks[l]);
    return out;
}

}  // namespace

std::string csv_row(const SweepRecord& rec) {
    std::ostringstream out;
    out << rec.params.n() << ',' << rec.params.j() << ',' << join_ks(rec.params.ks()) << ',';
    if (rec.report && rec.report->min_open_margin) {
        out << format_double(*rec.report->min_open_margin) << ',' << rec.report->open_argmin + 1;
    } else if (rec.report) {
        out << "inf,";
    } else {
        out << "nan,";
    }
    out << ',' << (rec.cross_dev ? format_double(*rec.cross_dev) : "") << ',';
    if (!rec.error.empty())
        out << "error";
    else
        out << (rec.ok() ? "holds" : "fails");
    return out.str();
}

std::string csv_summary(const SweepSummary& s) {
    std::ostringstream out;
    out << "# summary records=" << s.records.size() << " failures=" << s.failures
        << " min_margin=" << format_double(s.min_margin) << " argmin="
        << (s.argmin ? "n=" + std::to_string(s.argmin->n()) + ";k=" + join_ks(s.argmin->ks()) : std::string("none"))
        << " min_raw_margin=" << format_double(s.min_raw_margin) << " max_cross_dev=" << format_double(s.max_cross_dev);
    return out.str();
}

}  // namespace gm
