#include "dig/csv.hpp"

#include "dig/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dig {

namespace {

std::vector<std::vector<double>> read_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open csv file: " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        double v = std::stod(cell, &pos);
        row.push_back(v);
      } catch (const std::exception&) {
        throw ConfigError("csv parse error in " + path.string() + " line " +
                          std::to_string(lineno) + ": '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ConfigError("csv ragged rows in " + path.string() + " at line " +
                        std::to_string(lineno));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("csv file is empty: " + path.string());
  return rows;
}

}  // namespace

Eigen::MatrixXd read_csv_matrix(const std::filesystem::path& path) {
  auto rows = read_rows(path);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

Eigen::VectorXd read_csv_vector(const std::filesystem::path& path) {
  Eigen::MatrixXd m = read_csv_matrix(path);
  if (m.rows() == 1) return m.row(0).transpose();
  if (m.cols() == 1) return m.col(0);
  throw ConfigError("csv file is not a vector (rows=" + std::to_string(m.rows()) +
                    ", cols=" + std::to_string(m.cols()) + "): " + path.string());
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write csv file: " + path.string());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& prefix,
                   const Eigen::VectorXd& v) {
  bool first = true;
  for (const auto& p : prefix) {
    if (!first) os << ',';
    os << p;
    first = false;
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!first) os << ',';
    os << format_double(v[i]);
    first = false;
  }
  os << '\n';
}

}  // namespace dig
