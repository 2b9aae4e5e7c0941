#ifndef GM_REPORT_HPP
#define GM_REPORT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gm/checker.hpp"

namespace gm {

inline constexpr const char* kSchemaVersion = "gm-report/1";

struct RootEntry {
    double value = 0.0;
    std::size_t multiplicity = 1;
    friend bool operator==(const RootEntry&, const RootEntry&) = default;
};

/// Machine-readable output of every CLI command ("gm-report/1").
struct ReportDocument {
    std::string schema_version = kSchemaVersion;
    std::string command;
    /// Semi-bipartite parameters, when the report came from (n, k).
    std::optional<std::size_t> n;
    std::optional<std::vector<std::size_t>> ks;
    /// Graph summary, when the report came from an edge list.
    std::optional<std::size_t> vertex_count;
    std::optional<std::size_t> edge_count;
    std::string method;
    std::vector<double> eigenvalues;
    std::vector<double> conjugate;
    std::vector<double> margins;
    bool verdict = false;
    std::optional<std::vector<double>> lemma_chain;
    std::optional<double> cross_check_deviation;
    std::optional<std::vector<RootEntry>> roots;

    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

void to_json(nlohmann::json& j, const ReportDocument& doc);
/// Throws InputError on a missing field or an unknown schema version.
void from_json(const nlohmann::json& j, ReportDocument& doc);

ReportDocument make_document(const std::string& command, const GMReport& report);

std::string to_json_string(const ReportDocument& doc);
ReportDocument parse_document(const std::string& text);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

inline constexpr const char* kCsvHeader = "n,j,k,min_margin,tight_index,cross_dev,verdict";

/// One CSV line (no newline) for a sweep record.
std::string csv_row(const SweepRecord& rec);
std::string csv_summary(const SweepSummary& s);

}  // namespace gm

#endif
