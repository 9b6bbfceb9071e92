#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace uqd {

struct CsvSummary {
    std::string path;
    std::string quantity;
    std::size_t rows = 0;
};

// Validates a sweep CSV: header "two_theta_over_pi,<quantity>" plus at least
// one "x,y" data row.
inline CsvSummary inspect_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("report: cannot open " + path);

    std::string header;
    if (!std::getline(in, header)) throw std::invalid_argument("report: empty CSV " + path);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    const std::string prefix = "two_theta_over_pi,";
    if (header.rfind(prefix, 0) != 0 || header.size() == prefix.size())
        throw std::invalid_argument("report: malformed CSV header in " + path);

    CsvSummary summary;
    summary.path = path;
    summary.quantity = header.substr(prefix.size());

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw std::invalid_argument("report: expected two columns in " + path);
        std::size_t used = 0;
        try {
            (void)std::stod(line.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument("");
            const std::string y = line.substr(comma + 1);
            (void)std::stod(y, &used);
            if (used != y.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("report: non-numeric row in " + path);
        }
        ++summary.rows;
    }
    if (summary.rows == 0) throw std::invalid_argument("report: no data rows in " + path);
    return summary;
}

// Standalone gnuplot script plotting the CSV; never recomputes values.
inline std::string gnuplot_script(const CsvSummary& csv) {
    std::ostringstream out;
    out << "set datafile separator ','\n";
    out << "set xlabel '2θ/π'\n";
    out << "set ylabel '" << csv.quantity << "'\n";
    out << "set key off\n";
    out << "set grid\n";
    out << "plot '" << csv.path << "' using 1:2 skip 1 with lines\n";
    return out.str();
}

}  // namespace uqd
