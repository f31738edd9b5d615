#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "monoext/error.hpp"
#include "monoext/io.hpp"
#include "monoext/oracle.hpp"

using namespace monoext;
using io::Json;

TEST_CASE("posets, queries and scales from JSON") {
  const auto p = io::poset_from_json(Json::parse(R"({"labels":["a","b","c"],"covers":[["a","b"],["b","c"]]})"));
  CHECK(p.closure_size() == 6);
  const auto g = io::poset_from_json(Json::parse(R"({"grid":{"n":2,"order":"rows"}})"));
  CHECK(g.size() == 4);
  CHECK_FALSE(g.comparable(g.index_of("(1,1)"), g.index_of("(1,2)")));
  CHECK_THROWS_AS(io::poset_from_json(Json::parse(R"({"grid":{"n":2,"order":"diagonal"}})")), ParseError);
  CHECK_THROWS_AS(io::poset_from_json(Json::parse(R"({"labels":["a"],"covers":[["a","b"]]})")), UnknownElement);

  const auto q = io::query_from_json(p, Json::parse(R"({"query":["c","a"]})"));
  CHECK(q.elements() == std::vector<Element>{2, 0});
  CHECK_THROWS_AS(io::query_from_json(p, Json::parse(R"({"query":["z"]})")), UnknownElement);

  const auto s = io::scale_from_json(Json::parse(R"({"values":["1/3", 1, 2.5]})"));
  CHECK(s.values() == std::vector<Rational>{Rational(1, 3), Rational(1), Rational(5, 2)});
  const auto fm = io::scale_from_json(Json::parse(R"({"from_m":{"m":{"kind":"identity"},"n":2}})"));
  CHECK(fm.size() == 4);
  CHECK(fm.at_rank(1) == Rational(1, 4));
  CHECK_THROWS_AS(io::scale_from_json(Json::parse(R"({"values":["2","1"]})")), NotIncreasing);
}

TEST_CASE("maps from JSON and shorthands") {
  CHECK(io::map_from_json(Json::parse(R"({"kind":"power","p":2})")).inverse(0.25) == doctest::Approx(0.5));
  CHECK(io::map_from_json(Json::parse(R"({"kind":"pwl","points":[[0,0],[0.5,0.25],[1,1]]})")).inverse(0.25) ==
        doctest::Approx(0.5));
  CHECK(io::map_from_json(Json::parse(R"({"kind":"constant","alpha":0.3})")).eval(0.9) == doctest::Approx(0.3));
  CHECK(io::map_from_argument("id").kind() == MonotoneMap1D::Kind::identity);
  CHECK(io::map_from_argument("pow:3").exponent() == 3.0);
  CHECK(io::map_from_argument("const:0.5").eval(0.2) == 0.5);
  CHECK(io::map_from_argument(R"({"kind":"identity"})").kind() == MonotoneMap1D::Kind::identity);
  CHECK_THROWS_AS(io::map_from_argument("wiggle"), ParseError);
  CHECK_THROWS_AS(io::map_from_json(Json::parse(R"({"kind":"spline"})")), ParseError);
}

TEST_CASE("samples from CSV") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "monoext_io_samples.csv";
  {
    std::ofstream out(path);
    out << "tau,weight\n# comment\n0.8,1\n\n0.2,1\n";
  }
  const auto rv = io::samples_from_csv(path);
  CHECK(rv.samples() == std::vector<double>{0.2, 0.8});
  {
    std::ofstream out(path);
    out << "0.5\n1.5\n";
  }
  CHECK_THROWS_AS(io::samples_from_csv(path), InvalidSamples);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::samples_from_csv(dir / "monoext_missing.csv"), ParseError);
}

TEST_CASE("bound results as JSON") {
  const auto g = grid_poset(2, GridOrder::product);
  const ValueScale scale({Rational(1), Rational(2), Rational(3), Rational(4)});
  const auto q = QuerySet::from_labels(g, {"(1,2)"});
  const auto r = solve_min(g, scale, q);
  const auto j = io::to_json(g, q, scale, r);
  CHECK(j.at("objective") == "2/1");
  CHECK(j.at("witness_perm") == Json::array({1}));
  CHECK(j.at("witness_fn").at("(1,2)") == "2/1");
  CHECK(io::rational_json(Rational(-1, 3)) == "-1/3");
}
