#include "sib/data_pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sib {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

RatingsTable load_ratings_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ratings file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty ratings file: " + path);
  const auto header = split_csv_line(line);
  if (header.size() < 4 || header[0] != "user" || header[1] != "item" || header[2] != "stars") {
    throw std::runtime_error("ratings header must be user,item,stars,f1,...,fd");
  }
  RatingsTable table;
  table.d = static_cast<int>(header.size()) - 3;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) != table.d + 3) {
      throw std::runtime_error("ratings row has wrong arity: " + line);
    }
    RatingRow row;
    row.user = cells[0];
    row.item = cells[1];
    row.stars = std::stoi(cells[2]);
    if (row.stars < 1 || row.stars > 5) {
      throw std::runtime_error("star rating outside 1..5: " + line);
    }
    row.features.resize(table.d);
    bool any = false;
    for (int j = 0; j < table.d; ++j) {
      row.features(j) = std::stod(cells[static_cast<size_t>(j) + 3]);
      if (row.features(j) != 0.0) any = true;
    }
    if (!any) throw std::runtime_error("rating row has an all-zero feature vector: " + line);
    table.rows.push_back(std::move(row));
  }
  return table;
}

RatingsTable filter_users(const RatingsTable& table, int min_reviews) {
  std::map<std::string, int> counts;
  for (const auto& row : table.rows) ++counts[row.user];
  RatingsTable out;
  out.d = table.d;
  for (const auto& row : table.rows) {
    if (counts[row.user] >= min_reviews) out.rows.push_back(row);
  }
  return out;
}

std::vector<std::string> user_order(const RatingsTable& table) {
  std::vector<std::string> users;
  std::map<std::string, bool> seen;
  for (const auto& row : table.rows) {
    if (!seen[row.user]) {
      seen[row.user] = true;
      users.push_back(row.user);
    }
  }
  return users;
}

ProfileMatrix regress_profiles(const RatingsTable& table, double lambda,
                               std::vector<std::string>* users_out) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("regress_profiles: negative lambda");
  const auto users = user_order(table);
  const int d = table.d;
  ProfileMatrix U0(static_cast<Index>(users.size()), d);
  for (size_t u = 0; u < users.size(); ++u) {
    Matrix G = lambda * Matrix::Identity(d, d);
    Vector b = Vector::Zero(d);
    for (const auto& row : table.rows) {
      if (row.user != users[u]) continue;
      const double y = (row.stars - 3.0) / 2.0;  // 1 -> -1, 5 -> +1
      G.selfadjointView<Eigen::Lower>().rankUpdate(row.features);
      b += y * row.features;
    }
    G = G.selfadjointView<Eigen::Lower>();
    U0.row(static_cast<Index>(u)) = G.ldlt().solve(b);
  }
  if (users_out) *users_out = users;
  return U0;
}

InfluenceGraph build_social_P(const std::vector<std::pair<std::string, std::string>>& edges,
                              const std::vector<std::string>& retained_users, double teleport) {
  const int n = static_cast<int>(retained_users.size());
  if (n == 0) throw std::invalid_argument("build_social_P: no retained users");
  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) index[retained_users[static_cast<size_t>(i)]] = i;

  Matrix adj = Matrix::Zero(n, n);
  for (const auto& [src, dst] : edges) {
    const auto a = index.find(src);
    const auto b = index.find(dst);
    if (a == index.end() || b == index.end() || a->second == b->second) continue;
    adj(a->second, b->second) = 1.0;
    adj(b->second, a->second) = 1.0;
  }
  Matrix P = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double deg = adj.row(i).sum();
    if (deg == 0.0) {
      P(i, i) = 1.0;
    } else {
      P.row(i) = adj.row(i) / deg;
    }
  }
  return InfluenceGraph::from_matrix(std::move(P), teleport);
}

std::vector<std::pair<std::string, std::string>> load_edges_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edges file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty edges file: " + path);
  if (split_csv_line(line).size() < 2) {
    throw std::runtime_error("edges header must be src,dst");
  }
  std::vector<std::pair<std::string, std::string>> edges;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() < 2) throw std::runtime_error("edge row has wrong arity: " + line);
    edges.emplace_back(cells[0], cells[1]);
  }
  return edges;
}

void write_matrix_csv(const std::string& path, const Matrix& M) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  char buf[64];
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", M(i, j));
      out << buf << (j + 1 == M.cols() ? '\n' : ',');
    }
  }
}

Matrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& cell : split_csv_line(line)) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("matrix file is empty: " + path);
  Matrix M(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) {
      throw std::runtime_error("ragged matrix file: " + path);
    }
    for (size_t j = 0; j < rows[i].size(); ++j) {
      M(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return M;
}

}  // namespace sib
