#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "bg/serialization.hpp"

using namespace bg;

TEST_CASE("piecewise round trip") {
  const auto f = PiecewiseFunction::linear(NormedSpace::linf(2), {0.0, 0.1, 1.0}, {{0.1, 0.2}, {1.0 / 3.0, 0.0}, {0.0, -1.0}});
  const Json j = piecewise_to_json(f);
  CHECK(j["interpolation"] == "linear");
  CHECK(j["space"]["exponent"] == "inf");
  const auto g = piecewise_from_json(Json::parse(dump(j)));
  CHECK(g.space() == f.space());
  CHECK(g.breakpoints() == f.breakpoints());
  for (std::size_t k = 0; k < f.segment_count(); ++k) {
    CHECK(g.segment_start(k) == f.segment_start(k));
    CHECK(g.segment_end(k) == f.segment_end(k));
  }
  const auto s = PiecewiseFunction::step(NormedSpace::lp(1.5, 1), {0.0, 0.5}, {{2.0}});
  CHECK(piecewise_to_json(s)["values"][0][0] == 2.0);
  CHECK(piecewise_from_json(piecewise_to_json(s)).value(0.25)[0] == 2.0);
}

TEST_CASE("grid function round trip") {
  const GridSpec g{8.0, 8, 1};
  const GridFunction f(g, NormedSpace::hilbert(1), {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 1.0 / 7.0});
  const auto h = grid_function_from_json(Json::parse(dump(grid_function_to_json(f))));
  CHECK(h.values() == f.values());
  CHECK(h.grid() == f.grid());
}

TEST_CASE("construction round trip and field errors") {
  ConstructionSpec s;
  s.family = Family::single_band;
  s.space_exponent = 1.5;
  s.space_dimension = 2;
  s.vectors = {{1.0, -1.0}};
  s.grid = GridSpec{32.0, 1024, 1};
  s.levels = 5;
  s.k0 = 2;
  s.fill = 0.5;
  const ConstructionSpec t = construction_from_json(construction_to_json(s));
  CHECK(t.family == s.family);
  CHECK(t.space_exponent == 1.5);
  CHECK(t.vectors == s.vectors);
  CHECK(t.grid == s.grid);
  CHECK(t.k0 == 2);
  CHECK(t.fill == 0.5);
  Json bad = construction_to_json(s);
  bad["colour"] = "red";
  CHECK_THROWS_WITH_AS(construction_from_json(bad), "construction.colour: unknown field", std::invalid_argument);
  Json tent{{"family", "tent"}, {"n", 4}, {"r", 0.5}};
  CHECK_THROWS_WITH_AS(construction_from_json(tent), "r: must exceed 1", std::invalid_argument);
  CHECK_THROWS(exponent_from_json(Json(0.5)));
  CHECK(exponent_from_json(Json("inf")).is_infinite());
}
