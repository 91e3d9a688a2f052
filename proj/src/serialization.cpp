#include "bg/serialization.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace bg {

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw std::invalid_argument(what + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw std::invalid_argument(what + "." + key + ": unknown field");
  }
}

const Json& field(const Json& j, const std::string& key, const std::string& what) {
  if (!j.contains(key)) throw std::invalid_argument(what + "." + key + ": missing field");
  return j.at(key);
}

std::vector<Vector> vectors_from(const Json& j, const std::string& what) {
  if (!j.is_array()) throw std::invalid_argument(what + ": expected an array of vectors");
  std::vector<Vector> out;
  for (const auto& v : j) {
    if (!v.is_array()) throw std::invalid_argument(what + ": expected an array of vectors");
    out.push_back(v.get<Vector>());
  }
  return out;
}

}  // namespace

Json exponent_to_json(const Exponent& p) {
  if (p.is_infinite()) return "inf";
  return p.value();
}

Exponent exponent_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return Exponent::infinity();
    throw std::invalid_argument("exponent: expected a number >= 1 or \"inf\"");
  }
  if (!j.is_number()) throw std::invalid_argument("exponent: expected a number >= 1 or \"inf\"");
  return Exponent::from_double(j.get<double>());
}

Json space_to_json(const NormedSpace& space) {
  return Json{{"exponent", exponent_to_json(space.exponent())}, {"dimension", space.dimension()}};
}

NormedSpace space_from_json(const Json& j) {
  reject_unknown(j, {"exponent", "dimension"}, "space");
  const auto dim = field(j, "dimension", "space").get<std::size_t>();
  if (dim == 0) throw std::invalid_argument("space.dimension: must be >= 1");
  return NormedSpace(exponent_from_json(field(j, "exponent", "space")), dim);
}

Json grid_spec_to_json(const GridSpec& grid) {
  return Json{{"period", grid.period}, {"points", grid.points}, {"dimension", grid.dimension}};
}

GridSpec grid_spec_from_json(const Json& j) {
  reject_unknown(j, {"period", "points", "dimension"}, "grid");
  GridSpec g;
  if (j.contains("period")) g.period = j.at("period").get<double>();
  if (j.contains("points")) g.points = j.at("points").get<std::size_t>();
  if (j.contains("dimension")) g.dimension = j.at("dimension").get<int>();
  g.validate();
  return g;
}

Json piecewise_to_json(const PiecewiseFunction& f) {
  Json j{{"type", "piecewise"}, {"space", space_to_json(f.space())}, {"breakpoints", f.breakpoints()}};
  std::vector<Vector> starts, ends;
  for (std::size_t k = 0; k < f.segment_count(); ++k) {
    starts.push_back(f.segment_start(k));
    ends.push_back(f.segment_end(k));
  }
  if (f.interpolation() == Interpolation::step) {
    j["interpolation"] = "step";
    j["values"] = starts;
  } else {
    j["interpolation"] = "linear";
    j["starts"] = starts;
    j["ends"] = ends;
  }
  return j;
}

PiecewiseFunction piecewise_from_json(const Json& j) {
  reject_unknown(j, {"type", "space", "interpolation", "breakpoints", "values", "starts", "ends"}, "piecewise");
  if (j.contains("type") && j.at("type") != "piecewise") throw std::invalid_argument("piecewise.type: expected \"piecewise\"");
  const NormedSpace space = space_from_json(field(j, "space", "piecewise"));
  auto bps = field(j, "breakpoints", "piecewise").get<std::vector<double>>();
  const auto kind = field(j, "interpolation", "piecewise").get<std::string>();
  if (kind == "step") {
    return PiecewiseFunction::step(space, std::move(bps), vectors_from(field(j, "values", "piecewise"), "piecewise.values"));
  }
  if (kind == "linear") {
    return PiecewiseFunction::segments(space, std::move(bps), vectors_from(field(j, "starts", "piecewise"), "piecewise.starts"),
                                       vectors_from(field(j, "ends", "piecewise"), "piecewise.ends"));
  }
  throw std::invalid_argument("piecewise.interpolation: expected \"step\" or \"linear\"");
}

Json grid_function_to_json(const GridFunction& f) {
  return Json{{"type", "grid"},
              {"grid", grid_spec_to_json(f.grid())},
              {"space", space_to_json(f.space())},
              {"values", f.values()}};
}

GridFunction grid_function_from_json(const Json& j) {
  reject_unknown(j, {"type", "grid", "space", "values"}, "grid_function");
  if (j.contains("type") && j.at("type") != "grid") throw std::invalid_argument("grid_function.type: expected \"grid\"");
  return GridFunction(grid_spec_from_json(field(j, "grid", "grid_function")),
                      space_from_json(field(j, "space", "grid_function")),
                      field(j, "values", "grid_function").get<std::vector<double>>());
}

Json construction_to_json(const ConstructionSpec& spec) {
  Json j{{"family", to_string(spec.family)}};
  switch (spec.family) {
    case Family::tent:
      j["n"] = spec.n;
      j["r"] = spec.r;
      j["alpha"] = spec.alpha;
      j["p"] = spec.p;
      break;
    case Family::step:
      j["space"] = space_to_json(spec_space(spec));
      j["vectors"] = spec.vectors;
      break;
    case Family::psi_system:
    case Family::single_band:
      j["space"] = space_to_json(spec_space(spec));
      j["vectors"] = spec.vectors;
      j["grid"] = grid_spec_to_json(spec.grid);
      j["levels"] = spec.levels;
      j["transition_end"] = spec.transition_end;
      if (spec.family == Family::single_band) {
        j["k0"] = spec.k0;
        j["fill"] = spec.fill;
      }
      break;
  }
  return j;
}

ConstructionSpec construction_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("construction: expected a JSON object");
  ConstructionSpec spec;
  spec.family = family_from_string(field(j, "family", "construction").get<std::string>());
  switch (spec.family) {
    case Family::tent:
      reject_unknown(j, {"family", "n", "r", "alpha", "p"}, "construction");
      break;
    case Family::step:
      reject_unknown(j, {"family", "space", "vectors"}, "construction");
      break;
    case Family::psi_system:
      reject_unknown(j, {"family", "space", "vectors", "grid", "levels", "transition_end"}, "construction");
      break;
    case Family::single_band:
      reject_unknown(j, {"family", "space", "vectors", "grid", "levels", "transition_end", "k0", "fill"},
                     "construction");
      break;
  }
  try {
    if (j.contains("n")) spec.n = j.at("n").get<std::size_t>();
    if (j.contains("r")) spec.r = j.at("r").get<double>();
    if (j.contains("alpha")) spec.alpha = j.at("alpha").get<double>();
    if (j.contains("p")) spec.p = j.at("p").get<double>();
    if (j.contains("space")) {
      const NormedSpace space = space_from_json(j.at("space"));
      spec.space_exponent = space.exponent().is_infinite() ? INFINITY : space.exponent().value();
      spec.space_dimension = space.dimension();
    }
    if (j.contains("vectors")) spec.vectors = vectors_from(j.at("vectors"), "construction.vectors");
    if (j.contains("grid")) spec.grid = grid_spec_from_json(j.at("grid"));
    if (j.contains("levels")) spec.levels = j.at("levels").get<int>();
    if (j.contains("transition_end")) spec.transition_end = j.at("transition_end").get<double>();
    if (j.contains("k0")) spec.k0 = j.at("k0").get<int>();
    if (j.contains("fill")) spec.fill = j.at("fill").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("construction: ") + e.what());
  }
  validate(spec);
  return spec;
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace bg
