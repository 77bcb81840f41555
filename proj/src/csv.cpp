#include "addsvm/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace addsvm {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // Trim surrounding whitespace; fields are plain numbers or names.
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

[[noreturn]] void cell_fail(const std::string& path, std::size_t line,
                            std::size_t col, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": column " +
                           std::to_string(col) + ": " + what);
}

double parse_cell(const std::string& path, std::size_t line, std::size_t col,
                  const std::string& cell) {
  if (cell.empty()) cell_fail(path, line, col, "empty field");
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &pos);
  } catch (const std::exception&) {
    cell_fail(path, line, col, "not a number: '" + cell + "'");
  }
  if (pos != cell.size())
    cell_fail(path, line, col, "trailing characters in '" + cell + "'");
  return v;
}

}  // namespace

Dataset load_csv(const std::string& path, bool require_y) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty file (header expected)");
  std::vector<std::string> header = split_line(line);

  int y_col = -1, w_col = -1;
  std::vector<int> x_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "y") {
      if (y_col >= 0)
        throw std::runtime_error(path + ":1: duplicate 'y' column");
      y_col = static_cast<int>(i);
    } else if (header[i] == "w") {
      if (w_col >= 0)
        throw std::runtime_error(path + ":1: duplicate 'w' column");
      w_col = static_cast<int>(i);
    } else {
      x_cols.push_back(static_cast<int>(i));
    }
  }
  if (y_col < 0 && require_y)
    throw std::runtime_error(path + ":1: no 'y' column in header");
  if (x_cols.empty())
    throw std::runtime_error(path + ":1: no feature columns in header");

  Dataset ds;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size())
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(header.size()) + " fields, got " +
                               std::to_string(cells.size()));
    Eigen::VectorXd x(static_cast<Eigen::Index>(x_cols.size()));
    for (std::size_t j = 0; j < x_cols.size(); ++j)
      x[static_cast<Eigen::Index>(j)] =
          parse_cell(path, lineno, static_cast<std::size_t>(x_cols[j]) + 1,
                     cells[static_cast<std::size_t>(x_cols[j])]);
    ds.x.push_back(std::move(x));
    if (y_col >= 0)
      ds.y.push_back(parse_cell(path, lineno,
                                static_cast<std::size_t>(y_col) + 1,
                                cells[static_cast<std::size_t>(y_col)]));
    if (w_col >= 0)
      ds.w.push_back(parse_cell(path, lineno,
                                static_cast<std::size_t>(w_col) + 1,
                                cells[static_cast<std::size_t>(w_col)]));
  }
  if (ds.x.empty()) throw std::runtime_error(path + ": no data rows");
  return ds;
}

DiscreteMeasure Dataset::to_measure() const {
  if (y.size() != x.size())
    throw std::runtime_error("dataset has no labels; cannot form a measure");
  if (has_weights()) {
    std::vector<Atom> atoms(size());
    for (std::size_t i = 0; i < size(); ++i) atoms[i] = Atom{x[i], y[i], w[i]};
    return DiscreteMeasure::from_atoms(std::move(atoms));
  }
  std::vector<std::pair<Eigen::VectorXd, double>> pts(size());
  for (std::size_t i = 0; i < size(); ++i) pts[i] = {x[i], y[i]};
  return DiscreteMeasure::from_points(pts);
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void save_csv(const std::string& path, const std::vector<std::string>& header,
              const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << format_g17(row[i]) << (i + 1 < row.size() ? "," : "\n");
  }
}

}  // namespace addsvm
