#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace forecastlab::bench {

struct ReportRow {
	std::string model;
	std::uint64_t seed = 0;
	double mae = 0.0;
	double mse = 0.0;
	double seconds = 0.0;
	std::string hyper;  // hyperparameter snapshot
	bool ok = true;
	std::string diagnostic;
};

enum class ReportFormat { Csv, Json, Markdown };

/// `model,seed,mae,mse,seconds` rows; failed rows leave the numeric fields empty.
std::string render_csv(const std::vector<ReportRow>& rows);

/// {"schema_version": 1, "rows": [...]} with full row detail.
std::string render_json(const std::vector<ReportRow>& rows);

/// One table section per model family (statistical / SFANN / SEANN) with
/// per-model medians across seeds.
std::string render_markdown(const std::vector<ReportRow>& rows);

/// Parses render_json output back into rows.
std::vector<ReportRow> parse_json_rows(const std::string& text);

/// Renders `rows` in `format` and writes the file.
void emit_report(const std::vector<ReportRow>& rows, ReportFormat format,
                 const std::string& path);

}  // namespace forecastlab::bench
