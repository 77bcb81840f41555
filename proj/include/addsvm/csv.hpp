#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "addsvm/measure.hpp"

namespace addsvm {

// A labeled dataset as read from CSV: columns x1..xd, y, and optionally w.
struct Dataset {
  std::vector<Eigen::VectorXd> x;
  std::vector<double> y;
  std::vector<double> w;  // empty when the file carried no weight column
  bool has_weights() const { return !w.empty(); }
  std::size_t size() const { return x.size(); }
  DiscreteMeasure to_measure() const;  // requires labels
};

// Reads a dataset. The first line must be a header; a column named "y" is
// the label, an optional column named "w" gives weights, and every other
// column is a feature (in file order). With require_y = false a file
// without a "y" column is accepted (all columns are features, ds.y empty),
// for prediction inputs. Errors cite the 1-based line and column of the
// offending cell.
Dataset load_csv(const std::string& path, bool require_y = true);

// Writes values with %.17g so rereads round-trip bit-exactly.
void save_csv(const std::string& path, const std::vector<std::string>& header,
              const std::vector<std::vector<double>>& rows);

std::string format_g17(double v);

}  // namespace addsvm
