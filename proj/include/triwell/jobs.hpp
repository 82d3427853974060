#pragma once

// JSON job surface shared by the command-line tool and the tests:
// schema-validated input, machine-readable results, and the SVG diagram
// of the hulls in affine-plane coordinates.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "triwell/sym2.hpp"

namespace triwell {

struct OracleParams {
    int resolution = 60;
    int lambda_steps = 64;
    std::uint64_t seed = 0;
};

struct JobSpec {
    std::array<Sym2, 3> wells{};
    std::string command;  // classify | hull | bound | member | verify | plot
    std::vector<Sym2> query_points;
    OracleParams oracle;
    std::optional<double> det_tol;  // classification tolerance override
    std::string output;             // optional output path from the job file
};

// Parses and validates a JSON job document. Unknown fields are rejected;
// full-matrix well entries must be symmetric to 1e-12. Throws ParseError
// or AsymmetricInput.
JobSpec parseJob(const std::string& text);

// Runs every command except plot; returns the result document. Domain
// errors are propagated as triwell::Error.
nlohmann::ordered_json runJob(const JobSpec& job);

// Figure-style SVG of the configuration: rank-one lines through U0, the
// convex hull outline (solid compatible edges, dashed incompatible), the
// lamination hull in blue, the bound curve when present. Deterministic
// byte output for a fixed job.
std::string renderSVG(const JobSpec& job);

}  // namespace triwell
