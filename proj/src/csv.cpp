#include "forecastlab/csv.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace forecastlab {

namespace {

std::string trim(const std::string& s) {
	std::size_t a = 0;
	std::size_t b = s.size();
	while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
	while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
	return s.substr(a, b - a);
}

// Last comma/semicolon-separated field of the row.
std::string value_field(const std::string& line) {
	std::size_t pos = line.find_last_of(",;");
	return trim(pos == std::string::npos ? line : line.substr(pos + 1));
}

bool parse_double(const std::string& s, double& out) {
	if (s.empty()) return false;
	std::size_t consumed = 0;
	try {
		out = std::stod(s, &consumed);
	} catch (const std::exception&) {
		return false;
	}
	return consumed == s.size();
}

}  // namespace

TimeSeries load_series_csv(const std::string& path) {
	std::ifstream in(path);
	if (!in) {
		throw std::runtime_error("load_series_csv: cannot open '" + path + "'");
	}

	std::vector<double> values;
	std::string line;
	std::size_t row = 0;
	bool first_content_row = true;
	while (std::getline(in, line)) {
		++row;
		if (!line.empty() && line.back() == '\r') line.pop_back();
		if (trim(line).empty()) continue;

		double v = 0.0;
		if (!parse_double(value_field(line), v)) {
			if (first_content_row) {
				// header row
				first_content_row = false;
				continue;
			}
			throw std::runtime_error("load_series_csv: non-numeric value at row " +
			                         std::to_string(row) + " of '" + path + "'");
		}
		first_content_row = false;
		values.push_back(v);
	}
	if (values.empty()) {
		throw std::runtime_error("load_series_csv: no observations in '" + path + "'");
	}
	return TimeSeries(std::move(values));
}

void write_plot_csv(const TimeSeries& series, std::span<const double> forecast,
                    const std::string& path) {
	const std::size_t n = series.size();
	if (forecast.size() > n) {
		throw std::invalid_argument("write_plot_csv: forecast longer than series");
	}
	std::ofstream out(path);
	if (!out) {
		throw std::runtime_error("write_plot_csv: cannot open '" + path + "' for writing");
	}
	out << "t,actual,forecast\n";
	const std::size_t forecast_start = n - forecast.size();
	std::ostringstream buf;
	buf.precision(12);
	for (std::size_t t = 0; t < n; ++t) {
		buf.str("");
		buf << t << ',' << series[t] << ',';
		if (t >= forecast_start) {
			buf << forecast[t - forecast_start];
		}
		out << buf.str() << '\n';
	}
	if (!out) {
		throw std::runtime_error("write_plot_csv: write failed for '" + path + "'");
	}
}

}  // namespace forecastlab
