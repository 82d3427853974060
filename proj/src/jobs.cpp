#include "triwell/jobs.hpp"

#include <cmath>
#include <set>

#include "triwell/hulls.hpp"
#include "triwell/verify.hpp"

namespace triwell {

namespace {

using nlohmann::ordered_json;

double finiteNumber(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number()) {
        throw Error(ErrorCode::ParseError, "expected a number at " + where);
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw Error(ErrorCode::ParseError, "non-finite number at " + where);
    }
    return v;
}

Sym2 parseMatrix(const nlohmann::json& j, const std::string& where) {
    if (j.is_object()) {
        for (const auto& item : j.items()) {
            if (item.key() != "xx" && item.key() != "yy" && item.key() != "xy") {
                throw Error(ErrorCode::ParseError,
                            "unknown matrix field '" + item.key() + "' at " + where);
            }
        }
        if (!j.contains("xx") || !j.contains("yy") || !j.contains("xy")) {
            throw Error(ErrorCode::ParseError,
                        "matrix object needs xx, yy, xy at " + where);
        }
        return {finiteNumber(j["xx"], where), finiteNumber(j["yy"], where),
                finiteNumber(j["xy"], where)};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() ||
        j[0].size() != 2 || j[1].size() != 2) {
        throw Error(ErrorCode::ParseError, "matrix must be 2x2 at " + where);
    }
    const double m11 = finiteNumber(j[0][0], where);
    const double m12 = finiteNumber(j[0][1], where);
    const double m21 = finiteNumber(j[1][0], where);
    const double m22 = finiteNumber(j[1][1], where);
    if (std::abs(m12 - m21) > 1e-12) {
        throw Error(ErrorCode::AsymmetricInput,
                    "matrix at " + where + " is not symmetric");
    }
    return {m11, m22, m12};
}

ordered_json matrixJson(const Sym2& m) {
    return ordered_json::array(
        {ordered_json::array({m.xx, m.xy}), ordered_json::array({m.xy, m.yy})});
}

const std::set<std::string>& knownCommands() {
    static const std::set<std::string> commands{"classify", "hull", "bound",
                                                "member", "verify", "plot"};
    return commands;
}

// Frame report shared by hull/member output: origin (U0 when it exists),
// rank-one directions, and per-well coordinates.
struct FrameReport {
    bool valid = false;
    Sym2 origin;
    ConeFrame frame;
    std::optional<Sym2> u0;
};

FrameReport buildFrame(const std::array<Sym2, 3>& wells, const WellClass& cls) {
    FrameReport report;
    if (cls.kind == WellKind::TypeOne || cls.kind == WellKind::TypeTwo) {
        report.u0 = computeU0(permuted(wells, cls), cls.kind).u0;
    }
    report.origin = report.u0 ? *report.u0 : wells[0];
    try {
        report.frame = frameFromNormal(affinePlane(wells));
        report.valid = true;
    } catch (const Error&) {
        report.valid = false;
    }
    return report;
}

ordered_json frameJson(const FrameReport& report) {
    if (!report.valid) return nullptr;
    ordered_json j;
    j["origin"] = matrixJson(report.origin);
    j["E_a"] = matrixJson(report.frame.ea);
    j["E_n"] = matrixJson(report.frame.en);
    j["a"] = ordered_json::array({report.frame.a.x, report.frame.a.y});
    j["n"] = ordered_json::array({report.frame.n.x, report.frame.n.y});
    return j;
}

ordered_json xyJson(const FrameReport& report, const Sym2& m) {
    if (!report.valid) return nullptr;
    const PlaneCoords c = toPlaneCoords(m, report.origin, report.frame);
    return ordered_json::array({c.xi, c.eta});
}

ordered_json pieceJson(const HullPiece& piece, const FrameReport& frame) {
    ordered_json j;
    auto vertexArray = [&](std::initializer_list<Sym2> vs) {
        ordered_json mats = ordered_json::array();
        ordered_json coords = ordered_json::array();
        for (const Sym2& v : vs) {
            mats.push_back(matrixJson(v));
            coords.push_back(xyJson(frame, v));
        }
        j["vertices"] = mats;
        j["vertices_xy"] = coords;
    };
    if (const auto* p = std::get_if<PointPiece>(&piece)) {
        j["type"] = "point";
        vertexArray({p->p});
    } else if (const auto* s = std::get_if<SegmentPiece>(&piece)) {
        j["type"] = "segment";
        vertexArray({s->a, s->b});
    } else if (const auto* t = std::get_if<TrianglePiece>(&piece)) {
        j["type"] = "triangle";
        vertexArray({t->a, t->b, t->c});
    } else if (const auto* c = std::get_if<CurvedPatchPiece>(&piece)) {
        j["type"] = "curved_patch";
        vertexArray({c->corners[0], c->corners[1], c->corners[2]});
    }
    return j;
}

ordered_json classifyJson(const std::array<Sym2, 3>& wells, const WellClass& cls) {
    ordered_json j;
    j["kind"] = wellKindName(cls.kind);
    ordered_json perm = ordered_json::array();
    for (int p : cls.perm) perm.push_back(p + 1);
    j["perm"] = perm;
    j["dets"] = ordered_json::array({cls.dets[0], cls.dets[1], cls.dets[2]});
    ordered_json pairs = ordered_json::array();
    for (const auto& [i, k] : cls.rank_one_pairs) {
        pairs.push_back(ordered_json::array({i + 1, k + 1}));
    }
    j["rank_one_pairs"] = pairs;
    j["span_dim"] = affinePlane(wells).span_dim;
    return j;
}

}  // namespace

JobSpec parseJob(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw Error(ErrorCode::ParseError, "job document must be an object");
    }
    static const std::set<std::string> allowed{"wells",  "command", "queryPoints",
                                              "oracle", "output",  "tolerances"};
    for (const auto& item : doc.items()) {
        if (!allowed.count(item.key())) {
            throw Error(ErrorCode::ParseError, "unknown field '" + item.key() + "'");
        }
    }
    if (!doc.contains("wells") || !doc["wells"].is_array() || doc["wells"].size() != 3) {
        throw Error(ErrorCode::ParseError, "'wells' must list exactly three matrices");
    }
    JobSpec job;
    for (int i = 0; i < 3; ++i) {
        job.wells[i] = parseMatrix(doc["wells"][i], "wells[" + std::to_string(i) + "]");
    }
    if (doc.contains("command")) {
        if (!doc["command"].is_string()) {
            throw Error(ErrorCode::ParseError, "'command' must be a string");
        }
        job.command = doc["command"].get<std::string>();
        if (!knownCommands().count(job.command)) {
            throw Error(ErrorCode::ParseError, "unknown command '" + job.command + "'");
        }
    }
    if (doc.contains("queryPoints")) {
        if (!doc["queryPoints"].is_array()) {
            throw Error(ErrorCode::ParseError, "'queryPoints' must be an array");
        }
        int i = 0;
        for (const auto& q : doc["queryPoints"]) {
            job.query_points.push_back(
                parseMatrix(q, "queryPoints[" + std::to_string(i++) + "]"));
        }
    }
    if (doc.contains("oracle")) {
        const auto& o = doc["oracle"];
        if (!o.is_object()) {
            throw Error(ErrorCode::ParseError, "'oracle' must be an object");
        }
        auto integer = [](const nlohmann::json& j, const char* where) {
            if (!j.is_number_integer() || j.get<long long>() < 0) {
                throw Error(ErrorCode::ParseError,
                            std::string("oracle field '") + where +
                                "' must be a non-negative integer");
            }
            return j.get<long long>();
        };
        for (const auto& item : o.items()) {
            if (item.key() == "N") {
                job.oracle.resolution = int(integer(item.value(), "N"));
            } else if (item.key() == "L") {
                job.oracle.lambda_steps = int(integer(item.value(), "L"));
            } else if (item.key() == "seed") {
                job.oracle.seed = std::uint64_t(integer(item.value(), "seed"));
            } else {
                throw Error(ErrorCode::ParseError,
                            "unknown oracle field '" + item.key() + "'");
            }
        }
        if (job.oracle.resolution < 2 || job.oracle.lambda_steps < 2 ||
            job.oracle.resolution > 2000) {
            throw Error(ErrorCode::ParseError,
                        "oracle N must be in [2, 2000] and L at least 2");
        }
    }
    if (doc.contains("tolerances")) {
        const auto& t = doc["tolerances"];
        if (!t.is_object()) {
            throw Error(ErrorCode::ParseError, "'tolerances' must be an object");
        }
        for (const auto& item : t.items()) {
            if (item.key() == "det") {
                const double v = finiteNumber(item.value(), "tolerances.det");
                if (v < 0.0) {
                    throw Error(ErrorCode::ParseError, "tolerances.det must be >= 0");
                }
                job.det_tol = v;
            } else {
                throw Error(ErrorCode::ParseError,
                            "unknown tolerance field '" + item.key() + "'");
            }
        }
    }
    if (doc.contains("output")) {
        if (!doc["output"].is_string()) {
            throw Error(ErrorCode::ParseError, "'output' must be a string");
        }
        job.output = doc["output"].get<std::string>();
    }
    return job;
}

nlohmann::ordered_json runJob(const JobSpec& job) {
    const double tol = job.det_tol.value_or(-1.0);
    const WellClass cls = classify(job.wells, tol);
    ordered_json out;
    out["command"] = job.command;

    if (job.command == "classify") {
        out.update(classifyJson(job.wells, cls));
        return out;
    }
    if (job.command == "hull") {
        if (cls.kind == WellKind::DegenerateSpan) {
            throw Error(ErrorCode::WrongClass, "hull: degenerate well set");
        }
        const FrameReport frame = buildFrame(job.wells, cls);
        const HullRegion region = laminationHull(job.wells, cls);
        out["kind"] = wellKindName(cls.kind);
        ordered_json pieces = ordered_json::array();
        for (const auto& piece : region.pieces) pieces.push_back(pieceJson(piece, frame));
        out["pieces"] = pieces;
        out["U0"] = frame.u0 ? matrixJson(*frame.u0) : ordered_json(nullptr);
        out["U0_xy"] = frame.u0 ? xyJson(frame, *frame.u0) : ordered_json(nullptr);
        out["frame"] = frameJson(frame);
        ordered_json wells_xy = ordered_json::array();
        for (const Sym2& w : job.wells) wells_xy.push_back(xyJson(frame, w));
        out["wells_xy"] = wells_xy;
        return out;
    }
    if (job.command == "bound") {
        if (cls.kind == WellKind::DegenerateSpan) {
            throw Error(ErrorCode::WrongClass, "bound: degenerate well set");
        }
        const QcHull qc = quasiconvexHull(job.wells);
        out["status"] = hullStatusName(qc.status);
        out["U0"] = qc.u0 ? matrixJson(*qc.u0) : ordered_json(nullptr);
        if (qc.status == HullStatus::BoundOnly) {
            out["C"] = matrixJson(qc.bound->c);
            ordered_json h;
            h["xy"] = qc.bound->h.a_xy;
            h["x"] = qc.bound->h.b_x;
            h["y"] = qc.bound->h.d_y;
            h["const"] = qc.bound->h.c0;
            out["hCoeffs"] = h;
            ordered_json centered = ordered_json::array();
            for (const Sym2& v : qc.bound->v) centered.push_back(matrixJson(v));
            out["wells_centered"] = centered;
        } else {
            // A rank-one pair (or full compatibility) makes the hull exact;
            // the bound machinery is not applicable.
            out["C"] = nullptr;
            out["hCoeffs"] = nullptr;
        }
        return out;
    }
    if (job.command == "member") {
        if (cls.kind == WellKind::DegenerateSpan) {
            throw Error(ErrorCode::WrongClass, "member: degenerate well set");
        }
        const QcHull qc = quasiconvexHull(job.wells);
        out["status"] = hullStatusName(qc.status);
        ordered_json queries = ordered_json::array();
        for (const Sym2& q : job.query_points) {
            ordered_json entry;
            entry["point"] = matrixJson(q);
            entry["inLe"] = regionContains(qc.inner, q, 1e-9);
            entry["inOuter"] = regionContains(qc.outer, q, 1e-9);
            ordered_json compat_list = ordered_json::array();
            for (const Sym2& w : job.wells) {
                const Compat c = job.det_tol ? compat(q, w, *job.det_tol) : compat(q, w);
                switch (c.kind) {
                    case CompatKind::Incompatible: compat_list.push_back("incompatible"); break;
                    case CompatKind::RankOne: compat_list.push_back("rank_one"); break;
                    case CompatKind::Compatible: compat_list.push_back("compatible"); break;
                }
            }
            entry["compatWithEachWell"] = compat_list;
            queries.push_back(entry);
        }
        out["queries"] = queries;
        return out;
    }
    if (job.command == "verify") {
        CampaignConfig config;
        config.seed = job.oracle.seed;
        config.resolution = job.oracle.resolution;
        config.lambda_steps = job.oracle.lambda_steps;
        const CampaignReport report = propertyCampaign(config);
        ordered_json cfg;
        cfg["seed"] = report.config.seed;
        cfg["resolution"] = report.config.resolution;
        cfg["lambda_steps"] = report.config.lambda_steps;
        cfg["pairs"] = report.config.pairs;
        cfg["sets"] = report.config.sets;
        cfg["sets_per_class"] = report.config.sets_per_class;
        cfg["kernel_sets"] = report.config.kernel_sets;
        cfg["equivalence_sets"] = report.config.equivalence_sets;
        cfg["equivalence_samples"] = report.config.equivalence_samples;
        cfg["transforms"] = report.config.transforms;
        out["config"] = cfg;
        ordered_json suites = ordered_json::array();
        for (const SuiteResult& s : report.suites) {
            ordered_json entry;
            entry["name"] = s.name;
            entry["seed"] = s.seed;
            entry["checks"] = s.checks;
            entry["failures"] = s.failures;
            entry["max_err"] = s.max_err;
            entry["min_val"] = s.min_val;
            if (!s.detail.empty()) entry["detail"] = s.detail;
            suites.push_back(entry);
        }
        out["suites"] = suites;
        out["pass"] = report.pass;
        return out;
    }
    if (job.command == "plot") {
        throw Error(ErrorCode::DomainError, "plot produces SVG; use renderSVG");
    }
    throw Error(ErrorCode::ParseError, "no command given");
}

}  // namespace triwell
