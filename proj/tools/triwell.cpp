#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "triwell/jobs.hpp"

namespace {

int writeOut(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file: " << path << "\n";
        return 3;
    }
    out << payload;
    return 0;
}

int exitCodeFor(triwell::ErrorCode code) {
    switch (code) {
        case triwell::ErrorCode::ParseError:
        case triwell::ErrorCode::AsymmetricInput:
            return 2;
        default:
            return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"triwell: compatibility, hulls and quasiconvexity bounds for "
                 "three linear-elastic wells"};
    app.require_subcommand(1);

    std::string input;
    std::string output;
    std::uint64_t seed = 0;
    int grid = 0;
    int lambda_steps = 0;
    double tol = -1.0;

    const std::array<std::pair<const char*, const char*>, 6> commands{{
        {"classify", "Pairwise compatibility and well-set type"},
        {"hull", "Symmetric lamination convex hull"},
        {"bound", "Quadratic outer bound on the quasiconvex hull"},
        {"member", "Membership tests for query points"},
        {"verify", "Run the oracle and property campaigns"},
        {"plot", "SVG diagram in affine-plane coordinates"},
    }};
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--input", input, "job JSON file")->required();
        sub->add_option("--output", output, "output file (default: job output or stdout)");
        sub->add_option("--seed", seed, "oracle seed override");
        sub->add_option("--grid", grid, "oracle grid resolution override");
        sub->add_option("--lambda-steps", lambda_steps, "oracle lambda steps override");
        sub->add_option("--tol", tol, "determinant tolerance override");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    std::string out_path = output;
    std::string payload;
    int code = 0;
    try {
        std::ifstream in(input, std::ios::binary);
        if (!in) {
            throw triwell::Error(triwell::ErrorCode::ParseError,
                                 "cannot read input file: " + input);
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        triwell::JobSpec job = triwell::parseJob(buffer.str());
        if (!job.command.empty() && job.command != command) {
            throw triwell::Error(triwell::ErrorCode::ParseError,
                                 "job file requests command '" + job.command +
                                     "' but '" + command + "' was invoked");
        }
        job.command = command;
        if (app.get_subcommands().front()->count("--seed")) job.oracle.seed = seed;
        if (grid > 0) job.oracle.resolution = grid;
        if (lambda_steps > 0) job.oracle.lambda_steps = lambda_steps;
        if (tol >= 0.0) job.det_tol = tol;
        if (out_path.empty()) out_path = job.output;

        if (command == "plot") {
            payload = triwell::renderSVG(job);
        } else {
            payload = triwell::runJob(job).dump(2) + "\n";
        }
    } catch (const triwell::Error& e) {
        nlohmann::ordered_json doc;
        doc["error"] = triwell::errorCodeName(e.code());
        doc["detail"] = e.what();
        payload = doc.dump(2) + "\n";
        code = exitCodeFor(e.code());
    } catch (const std::exception& e) {
        nlohmann::ordered_json doc;
        doc["error"] = "Internal";
        doc["detail"] = e.what();
        payload = doc.dump(2) + "\n";
        code = 3;
    }
    const int write_code = writeOut(out_path, payload);
    return code != 0 ? code : write_code;
}
