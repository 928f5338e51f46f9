#include <sstream>

#include "binatoms/valmatrix/valuation_matrix.hpp"

namespace binatoms::valmatrix {

nlohmann::ordered_json to_json(const ValuationMatrix& a) {
  nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
  for (const auto& b : a.blocks()) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < b.entries.rows(); ++i) {
      std::vector<std::int64_t> entries(b.entries.row(i).begin(), b.entries.row(i).end());
      rows.push_back({{"r", b.row_labels[static_cast<std::size_t>(i)].r},
                      {"entries", std::move(entries)}});
    }
    blocks.push_back({{"p", b.p}, {"rows", std::move(rows)}});
  }
  nlohmann::ordered_json j;
  j["n"] = a.n();
  j["blocks"] = std::move(blocks);
  return j;
}

std::string to_csv(const ValuationMatrix& a) {
  std::ostringstream out;
  out << "p,r";
  for (std::int64_t j = 0; j < a.n(); ++j) out << ",j" << j;
  out << '\n';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const auto& [p, r] = a.row_labels()[static_cast<std::size_t>(i)];
    out << p << ',' << r;
    for (Eigen::Index j = 0; j < a.cols(); ++j) out << ',' << a.matrix()(i, j);
    out << '\n';
  }
  return out.str();
}

std::string to_text(const ValuationMatrix& a) {
  std::ostringstream out;
  out << "A_" << a.n() << ": " << a.rows() << " x " << a.cols()
      << ", P = " << a.largest_prime() << '\n';
  for (const auto& b : a.blocks()) {
    out << "p = " << b.p << " (" << b.entries.rows() << " rows)\n";
    for (Eigen::Index i = 0; i < b.entries.rows(); ++i) {
      out << "  r = " << b.row_labels[static_cast<std::size_t>(i)].r << ":";
      for (Eigen::Index j = 0; j < b.entries.cols(); ++j) out << ' ' << b.entries(i, j);
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace binatoms::valmatrix
