#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace dig {

// Row-major numeric CSV, one row per line, comma separated, no header.
Eigen::MatrixXd read_csv_matrix(const std::filesystem::path& path);

// A single-row or single-column CSV read as a vector.
Eigen::VectorXd read_csv_vector(const std::filesystem::path& path);

void write_csv_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m);

// Writes `prefix,v0,v1,...`; prefix cells go first when non-empty.
void write_csv_row(std::ostream& os, const std::vector<std::string>& prefix,
                   const Eigen::VectorXd& v);

// Shortest round-trippable decimal form of a double.
std::string format_double(double x);

}  // namespace dig
