#include <doctest.h>

#include "triwell/jobs.hpp"

using namespace triwell;

namespace {

const char* kClassifyJob =
    R"({"wells":[[[2,0],[0,-1]],[[1,0],[0,1]],[[0,0],[0,0]]],"command":"classify"})";

JobSpec fixtureJob(const std::string& command) {
    JobSpec job = parseJob(kClassifyJob);
    job.command = command;
    return job;
}

}  // namespace

TEST_CASE("job parsing") {
    SUBCASE("valid classify job") {
        const JobSpec job = parseJob(kClassifyJob);
        CHECK(job.command == "classify");
        CHECK(job.wells[0].xx == 2.0);
        CHECK(job.wells[0].yy == -1.0);
        CHECK(job.wells[0].xy == 0.0);
    }
    SUBCASE("object matrix form") {
        const JobSpec job = parseJob(
            R"({"wells":[{"xx":2,"yy":-1,"xy":0},[[1,0],[0,1]],[[0,0],[0,0]]]})");
        CHECK(job.wells[0].xx == 2.0);
        CHECK(job.wells[0].xy == 0.0);
    }
    SUBCASE("missing third well") {
        CHECK_THROWS_AS(parseJob(R"({"wells":[[[1,0],[0,1]],[[0,0],[0,0]]]})"), Error);
    }
    SUBCASE("NaN entry") {
        CHECK_THROWS_AS(parseJob(R"({"wells":[[[NaN,0],[0,1]],[[0,0],[0,0]],[[1,0],[0,0]]]})"),
                        Error);
    }
    SUBCASE("unknown field") {
        try {
            parseJob(R"({"wells":[[[2,0],[0,-1]],[[1,0],[0,1]],[[0,0],[0,0]]],"extra":1})");
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
        }
    }
    SUBCASE("asymmetric full matrix") {
        try {
            parseJob(R"({"wells":[[[2,1],[0,-1]],[[1,0],[0,1]],[[0,0],[0,0]]]})");
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::AsymmetricInput);
        }
    }
    SUBCASE("oracle and tolerance blocks") {
        const JobSpec job = parseJob(
            R"({"wells":[[[2,0],[0,-1]],[[1,0],[0,1]],[[0,0],[0,0]]],)"
            R"("oracle":{"N":80,"L":32,"seed":7},"tolerances":{"det":1e-8}})");
        CHECK(job.oracle.resolution == 80);
        CHECK(job.oracle.lambda_steps == 32);
        CHECK(job.oracle.seed == 7);
        CHECK(job.det_tol == doctest::Approx(1e-8));
    }
    SUBCASE("bad command") {
        CHECK_THROWS_AS(
            parseJob(R"({"wells":[[[2,0],[0,-1]],[[1,0],[0,1]],[[0,0],[0,0]]],"command":"frobnicate"})"),
            Error);
    }
    SUBCASE("malformed oracle fields raise typed errors") {
        const std::string head = R"({"wells":[[[2,0],[0,-1]],[[1,0],[0,1]],[[0,0],[0,0]]],"oracle":)";
        CHECK_THROWS_AS(parseJob(head + R"({"N":"abc"}})"), Error);
        CHECK_THROWS_AS(parseJob(head + R"({"N":1.5}})"), Error);
        CHECK_THROWS_AS(parseJob(head + R"({"seed":-4}})"), Error);
        CHECK_THROWS_AS(parseJob(head + R"({"N":1}})"), Error);
        CHECK_THROWS_AS(parseJob(head + R"({"N":100000}})"), Error);
    }
}

TEST_CASE("classify command output") {
    const auto out = runJob(fixtureJob("classify"));
    CHECK(out["kind"] == "type_two");
    CHECK(out["dets"][0].get<double>() == doctest::Approx(-2.0));
    CHECK(out["dets"][1].get<double>() == doctest::Approx(-2.0));
    CHECK(out["dets"][2].get<double>() == doctest::Approx(1.0));
    CHECK(out["rank_one_pairs"].size() == 0);
    CHECK(out["span_dim"] == 2);
    // round-trip: the output re-parses as JSON
    const auto reparsed = nlohmann::json::parse(out.dump());
    CHECK(reparsed["kind"] == "type_two");
}

TEST_CASE("hull command output") {
    const auto out = runJob(fixtureJob("hull"));
    CHECK(out["kind"] == "type_two");
    CHECK(out["pieces"].size() == 2);
    CHECK(out["pieces"][0]["type"] == "triangle");
    CHECK(out["U0"][0][0].get<double>() == doctest::Approx(1.0));
    CHECK(out["U0"][1][1].get<double>() == doctest::Approx(0.0));
    CHECK_FALSE(out["frame"].is_null());
}

TEST_CASE("bound command output") {
    const auto out = runJob(fixtureJob("bound"));
    CHECK(out["status"] == "bound_only");
    CHECK(out["C"][0][0].get<double>() == doctest::Approx(-1.0));
    CHECK(out["C"][1][1].get<double>() == doctest::Approx(1.0));
    CHECK(out["C"][0][1].get<double>() == doctest::Approx(0.0));
    CHECK(out["U0"][0][0].get<double>() == doctest::Approx(1.0));
    CHECK(out["hCoeffs"]["xy"].get<double>() == doctest::Approx(3.0));
}

TEST_CASE("bound command redirects when the hull is exact") {
    JobSpec job = fixtureJob("bound");
    job.wells = {diag(1.0, 1.0), Sym2{}, diag(-1.0, 0.0)};
    const auto out = runJob(job);
    CHECK(out["status"] == "exact_equals_lamination");
    CHECK(out["C"].is_null());
}

TEST_CASE("member command output") {
    JobSpec job = fixtureJob("member");
    job.query_points.push_back(diag(1.0, 0.0));   // U0
    job.query_points.push_back(diag(9.0, 9.0));   // far away
    const auto out = runJob(job);
    CHECK(out["queries"].size() == 2);
    CHECK(out["queries"][0]["inLe"] == true);
    CHECK(out["queries"][0]["inOuter"] == true);
    CHECK(out["queries"][1]["inLe"] == false);
    CHECK(out["queries"][1]["inOuter"] == false);
    CHECK(out["queries"][0]["compatWithEachWell"].size() == 3);
}

TEST_CASE("degenerate input surfaces as a domain error") {
    JobSpec job = fixtureJob("hull");
    const Sym2 e11 = outer({1.0, 0.0});
    job.wells = {Sym2{}, e11, 2.0 * e11};
    CHECK_THROWS_AS(runJob(job), Error);
}

TEST_CASE("svg rendering") {
    SUBCASE("type two shows two filled triangles and U0") {
        const std::string svg = renderSVG(fixtureJob("plot"));
        CHECK(svg.find("<svg") == 0);
        std::size_t polygons = 0;
        for (std::size_t at = svg.find("<polygon"); at != std::string::npos;
             at = svg.find("<polygon", at + 1)) {
            ++polygons;
        }
        CHECK(polygons == 2);
        CHECK(svg.find("U0") != std::string::npos);
        CHECK(svg.find("stroke-dasharray") != std::string::npos);
    }
    SUBCASE("strict type one shows the bound curve") {
        JobSpec job = fixtureJob("plot");
        job.wells = {diag(1.0, 1.0), diag(0.0, -1.0), diag(-1.0, 0.0)};
        const std::string svg = renderSVG(job);
        CHECK(svg.find("<path") != std::string::npos);
    }
    SUBCASE("pairwise incompatible wells show dots only") {
        JobSpec job = fixtureJob("plot");
        job.wells = {Sym2{}, diag(1.0, 1.0), diag(3.0, 2.0)};
        const std::string svg = renderSVG(job);
        CHECK(svg.find("<polygon") == std::string::npos);
        CHECK(svg.find("<path") == std::string::npos);
    }
    SUBCASE("byte-identical across calls") {
        const JobSpec job = fixtureJob("plot");
        CHECK(renderSVG(job) == renderSVG(job));
    }
    SUBCASE("degenerate span is rejected") {
        JobSpec job = fixtureJob("plot");
        const Sym2 e11 = outer({1.0, 0.0});
        job.wells = {Sym2{}, e11, 2.0 * e11};
        CHECK_THROWS_AS(renderSVG(job), Error);
    }
}
