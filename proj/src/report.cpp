#include "forecastlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace forecastlab::bench {

namespace {

std::string format_double(double v) {
	std::ostringstream out;
	out.precision(12);
	out << v;
	return out.str();
}

double median_of(std::vector<double> v) {
	std::sort(v.begin(), v.end());
	const std::size_t n = v.size();
	return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string render_csv(const std::vector<ReportRow>& rows) {
	std::ostringstream out;
	out << "model,seed,mae,mse,seconds\n";
	for (const auto& row : rows) {
		out << row.model << ',' << row.seed << ',';
		if (row.ok) {
			out << format_double(row.mae) << ',' << format_double(row.mse) << ','
			    << format_double(row.seconds);
		} else {
			out << ",,";
		}
		out << '\n';
	}
	return out.str();
}

std::string render_json(const std::vector<ReportRow>& rows) {
	nlohmann::json doc;
	doc["schema_version"] = 1;
	nlohmann::json arr = nlohmann::json::array();
	for (const auto& row : rows) {
		nlohmann::json r;
		r["model"] = row.model;
		r["seed"] = row.seed;
		r["mae"] = row.mae;
		r["mse"] = row.mse;
		r["seconds"] = row.seconds;
		r["hyper"] = row.hyper;
		r["ok"] = row.ok;
		if (!row.ok) r["diagnostic"] = row.diagnostic;
		arr.push_back(std::move(r));
	}
	doc["rows"] = std::move(arr);
	return doc.dump(2);
}

std::vector<ReportRow> parse_json_rows(const std::string& text) {
	const nlohmann::json doc = nlohmann::json::parse(text);
	if (!doc.contains("schema_version") || doc["schema_version"].get<int>() != 1) {
		throw std::runtime_error("parse_json_rows: unsupported schema version");
	}
	std::vector<ReportRow> rows;
	for (const auto& r : doc.at("rows")) {
		ReportRow row;
		row.model = r.at("model").get<std::string>();
		row.seed = r.at("seed").get<std::uint64_t>();
		row.mae = r.at("mae").get<double>();
		row.mse = r.at("mse").get<double>();
		row.seconds = r.at("seconds").get<double>();
		row.hyper = r.at("hyper").get<std::string>();
		row.ok = r.at("ok").get<bool>();
		if (r.contains("diagnostic")) row.diagnostic = r.at("diagnostic").get<std::string>();
		rows.push_back(std::move(row));
	}
	return rows;
}

std::string render_markdown(const std::vector<ReportRow>& rows) {
	const auto family_of = [](const std::string& model) {
		if (model.rfind("sfann", 0) == 0) return std::string("SFANN models");
		if (model.rfind("seann", 0) == 0) return std::string("SEANN models");
		return std::string("Statistical models");
	};

	// keep first-seen model order within each family
	std::map<std::string, std::vector<std::string>> family_models;
	std::map<std::string, std::vector<const ReportRow*>> by_model;
	for (const auto& row : rows) {
		auto& models = family_models[family_of(row.model)];
		if (std::find(models.begin(), models.end(), row.model) == models.end()) {
			models.push_back(row.model);
		}
		by_model[row.model].push_back(&row);
	}

	std::ostringstream out;
	out << "# Forecast benchmark\n";
	for (const char* family : {"Statistical models", "SFANN models", "SEANN models"}) {
		const auto it = family_models.find(family);
		if (it == family_models.end()) continue;
		out << "\n## " << family << "\n\n";
		out << "| model | seeds | median MAE | median MSE | failures |\n";
		out << "|---|---|---|---|---|\n";
		for (const auto& model : it->second) {
			std::vector<double> maes;
			std::vector<double> mses;
			int failures = 0;
			for (const ReportRow* row : by_model[model]) {
				if (row->ok) {
					maes.push_back(row->mae);
					mses.push_back(row->mse);
				} else {
					++failures;
				}
			}
			out << "| " << model << " | " << by_model[model].size() << " | ";
			if (!maes.empty()) {
				out << format_double(median_of(maes)) << " | " << format_double(median_of(mses));
			} else {
				out << "- | -";
			}
			out << " | " << failures << " |\n";
		}
	}
	return out.str();
}

void emit_report(const std::vector<ReportRow>& rows, ReportFormat format,
                 const std::string& path) {
	if (rows.empty()) {
		throw std::invalid_argument("emit_report: no rows");
	}
	std::string text;
	switch (format) {
		case ReportFormat::Csv: text = render_csv(rows); break;
		case ReportFormat::Json: text = render_json(rows); break;
		case ReportFormat::Markdown: text = render_markdown(rows); break;
	}
	std::ofstream out(path);
	if (!out) {
		throw std::runtime_error("emit_report: cannot open '" + path + "' for writing");
	}
	out << text;
	if (!out) {
		throw std::runtime_error("emit_report: write failed for '" + path + "'");
	}
}

}  // namespace forecastlab::bench
