#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mgl/errors.hpp"

namespace mgl {

// 17 significant digits, enough to round-trip a double exactly.
std::string format_double(double x);

// Numeric CSV grid. Readers accept an optional header line (any line whose
// first token is not a number); writers always emit one.
Eigen::MatrixXd read_csv_matrix(const std::string& path);
void write_csv_matrix(const std::string& path, const Eigen::MatrixXd& m,
                      const std::string& col_prefix = "c");
void write_csv_column(const std::string& path, const std::string& header,
                      const std::vector<double>& values);

} // namespace mgl
