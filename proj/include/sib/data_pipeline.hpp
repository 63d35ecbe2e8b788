#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sib/influence.hpp"

namespace sib {

struct RatingRow {
  std::string user;
  std::string item;
  int stars = 0;       // 1..5
  Vector features;     // 0/1 category indicators, at least one set
};

struct RatingsTable {
  int d = 0;
  std::vector<RatingRow> rows;
};

/// Header `user,item,stars,f1,...,fd`.
RatingsTable load_ratings_csv(const std::string& path);

/// Keeps users with at least `min_reviews` rows (default mirrors the
/// 1,500-review cutoff used for the movie-review corpus).
RatingsTable filter_users(const RatingsTable& table, int min_reviews = 1500);

/// Retained user ids in order of first appearance.
std::vector<std::string> user_order(const RatingsTable& table);

// Per-user ridge regression of the mapped rating (stars s -> (s-3)/2, the
// linear map onto [-1,1]) on the category indicators. One profile row per
// user, ordered by first appearance.
ProfileMatrix regress_profiles(const RatingsTable& table, double lambda = 1e-3,
                               std::vector<std::string>* users_out = nullptr);

// Restriction of the social edge list to the retained users: symmetric
// adjacency, rows weighted 1/deg, self-loop for isolated users, then the
// teleport blend (default 1e-3 for real data).
InfluenceGraph build_social_P(const std::vector<std::pair<std::string, std::string>>& edges,
                              const std::vector<std::string>& retained_users,
                              double teleport = 1e-3);

/// Header `src,dst`.
std::vector<std::pair<std::string, std::string>> load_edges_csv(const std::string& path);

/// Dense matrix CSV with 17-significant-digit decimals (round-trip exact).
void write_matrix_csv(const std::string& path, const Matrix& M);
Matrix load_matrix_csv(const std::string& path);

}  // namespace sib
