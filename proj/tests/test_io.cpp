#include "expression.hpp"

#include "illume/io.hpp"

#include <doctest.h>

using namespace illume;

namespace {

ExpressionCompiler compiler() {
  return [](const std::string& e) { return Density::Field(compile_expression(e)); };
}

}  // namespace

TEST_CASE("body JSON round trip") {
  for (const char* text : {R"({"kind":"ball","center":[0,0],"radius":2})",
                           R"({"kind":"ellipsoid","center":[0,0,0],"semi_axes":[2,1,0.5]})",
                           R"({"kind":"polytope","vertices":[[-1,-1],[1,-1],[1,1],[-1,1]]})",
                           R"({"kind":"radial_fourier_2d","a0":1,"a":[0.05],"b":[0.02]})"}) {
    CAPTURE(text);
    const Body b = body_from_json(parse_json(text));
    const Body c = body_from_json(body_to_json(b));
    CHECK(b.kind() == c.kind());
    CHECK(b.dim() == c.dim());
    CHECK(b.volume() == doctest::Approx(c.volume()).epsilon(1e-12));
  }
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(parse_json("{\"kind\": "), Error);
  CHECK_THROWS_AS(body_from_json(parse_json(R"({"kind":"torus"})")), Error);
  CHECK_THROWS_AS(body_from_json(parse_json(R"({"kind":"ball","center":[0,0]})")), Error);
  CHECK_THROWS_AS(read_json_file("/nonexistent/body.json"), Error);
  CHECK_THROWS_AS(geometry_from_string("spaceform:abc"), Error);
  try {
    parse_json("[1, 2");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
}

TEST_CASE("densities from JSON") {
  const Density sf = density_from_json(parse_json(R"({"kind":"space_form","lambda":-1})"), 2);
  CHECK(sf(vec2(0.6, 0)) == doctest::Approx(1.953125));
  const Density ex = density_from_json(parse_json(R"j({"kind":"expression","expr":"exp(-r^2)"})j"), 2, compiler());
  CHECK(ex(vec2(1, 0)) == doctest::Approx(std::exp(-1.0)));
  CHECK_THROWS_AS(density_from_json(parse_json(R"j({"kind":"expression","expr":"exp(-r^2)"})j"), 2), Error);
  CHECK(geometry_from_string("spaceform:-1").lambda == -1.0);
  CHECK(geometry_from_string("euclid").kind == GeometrySpec::Kind::Euclidean);
}

TEST_CASE("expression compiler") {
  CHECK(compile_expression("1 + 2 * 3 ^ 2")(Vec::Zero()) == doctest::Approx(19.0));
  CHECK(compile_expression("-x + sqrt(y) * pi")(Vec(1, 4, 0)) == doctest::Approx(-1 + 2 * std::numbers::pi));
  CHECK(compile_expression("pow(norm(), 2) + abs(z)")(Vec(3, 4, -1)) == doctest::Approx(27.0));
  CHECK_THROWS_AS(compile_expression("1 +"), Error);
  CHECK_THROWS_AS(compile_expression("foo(x)"), Error);
}

TEST_CASE("config and report") {
  const auto cfg = config_from_json(parse_json(R"({
    "body": {"kind":"ball","center":[0,0],"radius":1},
    "geometry": "euclid",
    "delta_sequence": [1e-2, 1e-3, 1e-4],
    "grid": 64
  })"));
  CHECK(cfg.deltas.size() == 3);
  const auto rep = run_convergence(cfg);
  const Json j = report_to_json(rep);
  CHECK(j["schema_version"] == 1);
  CHECK(j["sequence"].size() == 3);
  CHECK(rep.quotients.back() == doctest::Approx(std::numbers::pi * std::cbrt(9.0)).epsilon(0.02));
}
