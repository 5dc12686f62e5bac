#include "mgl/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace mgl {

std::string format_double(double x) {
    std::ostringstream ss;
    ss.precision(17);
    ss << x;
    return ss.str();
}

namespace {

bool parse_row(const std::string& line, std::vector<double>& out) {
    out.clear();
    size_t pos = 0;
    while (pos <= line.size()) {
        size_t comma = line.find(',', pos);
        if (comma == std::string::npos) comma = line.size();
        std::string tok = line.substr(pos, comma - pos);
        const size_t a = tok.find_first_not_of(" \t\r");
        if (a == std::string::npos) return false;
        const size_t b = tok.find_last_not_of(" \t\r");
        tok = tok.substr(a, b - a + 1);
        try {
            size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) return false;
        } catch (...) {
            return false;
        }
        pos = comma + 1;
        if (comma == line.size()) break;
    }
    return !out.empty();
}

bool blank(const std::string& line) {
    for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Eigen::MatrixXd read_csv_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        std::vector<double> row;
        if (!parse_row(line, row)) {
            if (first_content) { // header line
                first_content = false;
                continue;
            }
            throw ParseError("malformed csv row", lineno);
        }
        first_content = false;
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("csv row width mismatch", lineno);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("csv has no numeric rows", lineno);
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows.front().size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

void write_csv_matrix(const std::string& path, const Eigen::MatrixXd& m,
                      const std::string& col_prefix) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        out << (j ? "," : "") << col_prefix << j;
    out << "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out << (j ? "," : "") << format_double(m(i, j));
        out << "\n";
    }
}

void write_csv_column(const std::string& path, const std::string& header,
                      const std::vector<double>& values) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << header << "\n";
    for (double v : values) out << format_double(v) << "\n";
}

} // namespace mgl
