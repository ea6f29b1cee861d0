#include <doctest.h>

#include "roofs/error.hpp"
#include "roofs/json_io.hpp"
#include "roofs/random.hpp"

using namespace roofs;
using io::json;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Parse;
}

}  // namespace

TEST_SUITE("json-io") {
  TEST_CASE("state round trip") {
    const DensityOperator w = random_density(3, 2, 1);
    const DensityOperator back = io::state_from_json(json::parse(io::state_to_json(w).dump()));
    CHECK(max_abs(back.matrix() - w.matrix()) <= 1e-15);
  }

  TEST_CASE("state errors") {
    CHECK(kind_of([] { io::state_from_json(json::parse(R"({"matrix": [[[1,0]]]})")); }) == ErrorKind::Parse);
    CHECK(kind_of([] { io::state_from_json(json::parse(R"({"dim": 2, "matrix": [[[1,0]]]})")); }) ==
          ErrorKind::DimMismatch);
    CHECK(kind_of([] { io::state_from_json(json::parse(R"({"dim": 1, "matrix": [[[1,0,3]]]})")); }) == ErrorKind::Parse);
    CHECK(kind_of([] { io::state_from_json(json::parse(R"({"dim": 1, "matrix": [[[2,0]]]})")); }) ==
          ErrorKind::TraceNotOne);
    CHECK(kind_of([] { io::read_json_file("/nonexistent/state.json"); }) == ErrorKind::Parse);
  }

  TEST_CASE("maps") {
    const QubitMap ax = io::map_from_json(json::parse(R"({"kind":"axial","alpha":1,"beta":0,"gamma":0.5})"));
    CHECK(ax.is_axial());
    CHECK(ax.axial_params().gamma == 0.5);
    const QubitMap kr = io::map_from_json(
        json::parse(R"({"kind":"kraus","ops":[[[[1,0],[0,0]],[[0,0],[0.8,0]]],[[[0,0],[0.6,0]],[[0,0],[0,0]]]]})"));
    CHECK(kr.is_kraus());
    const QubitMap af = io::map_from_json(
        json::parse(R"({"kind":"affine","m":[[1,0,0,0],[0,0.5,0,0],[0,0,0.5,0],[0.2,0,0,0.7]]})"));
    CHECK(af.to_affine()(3, 0) == 0.2);
    for (const QubitMap& t : {ax, kr, af}) {
      const QubitMap back = io::map_from_json(io::map_to_json(t));
      CHECK((back.to_affine() - t.to_affine()).cwiseAbs().maxCoeff() <= 1e-15);
    }
    CHECK(kind_of([] { io::map_from_json(json::parse(R"({"kind":"other"})")); }) == ErrorKind::Parse);
    CHECK(kind_of([] { io::map_from_json(json::parse(R"({"kind":"axial","alpha":1,"beta":2,"gamma":1})")); }) ==
          ErrorKind::InvalidAxial);
  }

  TEST_CASE("embedding spec") {
    const EmbeddingSpec spec =
        io::embedding_from_json(json::parse(R"({"blocks":[1,2],"amplitudes":[[[1,0]],[[0.6,0],[0,0.8]]]})"));
    CHECK(spec.target_dim() == 3);
    CHECK(spec.amplitudes[1][1] == cplx(0.0, 0.8));
    CHECK(kind_of([] { io::embedding_from_json(json::parse(R"({"blocks":[1],"amplitudes":[[[0.5,0]]]})")); }) ==
          ErrorKind::NotNormalized);
  }

  TEST_CASE("report layout") {
    MeasureReport r;
    r.quantity = "eof";
    r.value = 0.25;
    r.method = Method::Solver;
    r.bounds = Bounds{0.1, 0.5};
    const json j = io::report_to_json(r);
    CHECK(j["quantity"] == "eof");
    CHECK(j["method"] == "solver");
    CHECK(j["bounds"]["lower"] == 0.1);
    CHECK_FALSE(j.contains("decomposition"));
  }
}
