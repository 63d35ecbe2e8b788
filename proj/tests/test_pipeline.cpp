#include "sib/data_pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

using namespace sib;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
  const auto path = fs::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// users: ann 3 reviews, bob 5, cat 7
const char* kRatings =
    "user,item,stars,f1,f2\n"
    "ann,i1,5,1,0\nann,i2,1,0,1\nann,i3,3,1,1\n"
    "bob,i1,4,1,0\nbob,i2,4,1,0\nbob,i3,2,0,1\nbob,i4,5,1,1\nbob,i5,3,1,0\n"
    "cat,i1,1,0,1\ncat,i2,2,0,1\ncat,i3,3,1,0\ncat,i4,4,1,0\ncat,i5,5,1,1\n"
    "cat,i6,1,0,1\ncat,i7,2,1,1\n";

}  // namespace

TEST_CASE("load and filter") {
  const auto path = write_temp("sib_ratings.csv", kRatings);
  const auto table = load_ratings_csv(path.string());
  CHECK(table.d == 2);
  CHECK(table.rows.size() == 15);

  SUBCASE("min_reviews = 0 keeps everything") {
    CHECK(filter_users(table, 0).rows.size() == 15);
  }
  SUBCASE("cutoff 5 retains two users") {
    const auto kept = filter_users(table, 5);
    const auto users = user_order(kept);
    REQUIRE(users.size() == 2);
    CHECK(users[0] == "bob");
    CHECK(users[1] == "cat");
    // every retained user meets the threshold
    for (const auto& u : users) {
      long count = 0;
      for (const auto& row : kept.rows) count += row.user == u ? 1 : 0;
      CHECK(count >= 5);
    }
  }
  fs::remove(path);
}

TEST_CASE("ratings validation") {
  const auto bad_stars = write_temp("sib_bad_stars.csv", "user,item,stars,f1\nx,i,6,1\n");
  CHECK_THROWS(load_ratings_csv(bad_stars.string()));
  fs::remove(bad_stars);
  const auto zero_feat = write_temp("sib_zero_feat.csv", "user,item,stars,f1\nx,i,3,0\n");
  CHECK_THROWS(load_ratings_csv(zero_feat.string()));
  fs::remove(zero_feat);
}

TEST_CASE("regress_profiles") {
  SUBCASE("single five-star review pins the profile") {
    const auto path = write_temp("sib_one.csv", "user,item,stars,f1,f2\nu,i,5,1,0\n");
    const auto table = load_ratings_csv(path.string());
    const ProfileMatrix U0 = regress_profiles(table, 1e-12);
    CHECK(U0(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(U0(0, 1) == doctest::Approx(0.0));
    fs::remove(path);
  }
  SUBCASE("neutral ratings give a zero profile") {
    const auto path = write_temp("sib_neutral.csv",
                                 "user,item,stars,f1,f2\nu,a,3,1,0\nu,b,3,0,1\nu,c,3,1,1\n");
    const auto table = load_ratings_csv(path.string());
    const ProfileMatrix U0 = regress_profiles(table, 1e-6);
    CHECK(U0.cwiseAbs().maxCoeff() < 1e-9);
    fs::remove(path);
  }
  SUBCASE("star endpoints map to -1 and +1") {
    const auto path = write_temp("sib_ends.csv", "user,item,stars,f1\nlo,i,1,1\nhi,i,5,1\n");
    const auto table = load_ratings_csv(path.string());
    const ProfileMatrix U0 = regress_profiles(table, 1e-12);
    CHECK(U0(0, 0) == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(U0(1, 0) == doctest::Approx(1.0).epsilon(1e-6));
    fs::remove(path);
  }
}

TEST_CASE("build_social_P") {
  SUBCASE("single edge between two users") {
    auto g = build_social_P({{"a", "b"}}, {"a", "b"}, 0.0);
    Matrix want(2, 2);
    want << 0, 1, 1, 0;
    CHECK((g.P - want).lpNorm<Eigen::Infinity>() == 0.0);
  }
  SUBCASE("teleport blend lower-bounds every entry") {
    auto g = build_social_P({{"a", "b"}}, {"a", "b", "c"}, 1e-3);
    CHECK(g.P.minCoeff() >= 1e-3 / 3 - 1e-15);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(g.P.row(i).sum() - 1.0) < 1e-9);
  }
  SUBCASE("edges to filtered-out users are dropped; isolated users self-loop") {
    auto g = build_social_P({{"a", "zz"}, {"b", "c"}}, {"a", "b", "c"}, 0.0);
    CHECK(g.P(0, 0) == 1.0);  // a has no retained neighbor
    CHECK(g.P(1, 2) == 1.0);
    CHECK(g.P(2, 1) == 1.0);
  }
}

TEST_CASE("pipeline determinism: identical inputs, byte-identical exports") {
  const auto ratings = write_temp("sib_pipe_ratings.csv", kRatings);
  const auto edges = write_temp("sib_pipe_edges.csv", "src,dst\nbob,cat\nann,bob\n");
  const auto out_a = fs::temp_directory_path() / "sib_pipe_a";
  const auto out_b = fs::temp_directory_path() / "sib_pipe_b";
  fs::create_directories(out_a);
  fs::create_directories(out_b);

  for (const auto& out : {out_a, out_b}) {
    auto table = filter_users(load_ratings_csv(ratings.string()), 5);
    std::vector<std::string> users;
    const ProfileMatrix U0 = regress_profiles(table, 1e-3, &users);
    const auto g = build_social_P(load_edges_csv(edges.string()), users, 1e-3);
    write_matrix_csv((out / "u0.csv").string(), U0);
    write_matrix_csv((out / "p.csv").string(), g.P);
  }
  CHECK(slurp(out_a / "u0.csv") == slurp(out_b / "u0.csv"));
  CHECK(slurp(out_a / "p.csv") == slurp(out_b / "p.csv"));

  SUBCASE("round trip through the 17-digit format is exact") {
    const Matrix back = load_matrix_csv((out_a / "u0.csv").string());
    auto table = filter_users(load_ratings_csv(ratings.string()), 5);
    const ProfileMatrix U0 = regress_profiles(table, 1e-3);
    CHECK((back - U0).lpNorm<Eigen::Infinity>() == 0.0);
  }

  fs::remove_all(out_a);
  fs::remove_all(out_b);
  fs::remove(ratings);
  fs::remove(edges);
}
