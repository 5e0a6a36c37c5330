#include "netlimit/json_io.hpp"

#include <cmath>

namespace netlimit {

Json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

Json verdict_json(const LimitVerdict& v) {
    Json j;
    j["kind"] = verdict_kind_name(v.kind);
    switch (v.kind) {
        case VerdictKind::Converges:
            j["value"] = finite_or_null(v.value);
            break;
        case VerdictKind::Oscillates:
            j["liminf"] = finite_or_null(v.liminf);
            j["limsup"] = finite_or_null(v.limsup);
            break;
        case VerdictKind::Inconclusive:
            j["reason"] = v.reason;
            break;
        default:
            break;
    }
    return j;
}

Json trace_json(const EnvelopeTrace& trace, const Direction& dir) {
    Json arr = Json::array();
    for (const EnvelopeStep& step : trace.steps) {
        Json entry;
        entry["x"] = finite_or_null(dir.progress(step.x));
        entry["m"] = finite_or_null(step.m);
        entry["M"] = finite_or_null(step.M);
        arr.push_back(std::move(entry));
    }
    return arr;
}

Json config_json(const EstimateConfig& cfg) {
    Json j;
    j["tolerance"] = cfg.tolerance;
    j["max_steps"] = cfg.max_steps;
    j["sub_samples"] = cfg.sub_samples;
    j["divergence_threshold"] = cfg.divergence_threshold;
    j["ratio"] = cfg.ratio;
    j["stabilization_tolerance"] = cfg.stabilization_tolerance;
    j["exec"] = kernels::exec_name(cfg.exec);
    return j;
}

Json estimate_json(const EstimateResult& result, const Direction& dir,
                   const EstimateConfig& cfg) {
    const LimitVerdict& v = result.verdict;
    Json j;
    j["verdict"] = verdict_kind_name(v.kind);
    j["value"] = v.converged() ? finite_or_null(v.value) : Json(nullptr);
    j["error_bound"] = finite_or_null(result.trace.error_bound());
    j["trace"] = trace_json(result.trace, dir);
    j["config"] = config_json(cfg);
    if (v.kind == VerdictKind::Oscillates) {
        j["liminf"] = finite_or_null(v.liminf);
        j["limsup"] = finite_or_null(v.limsup);
    }
    if (v.kind == VerdictKind::Inconclusive) j["reason"] = v.reason;
    return j;
}

Json certificate_json(const Certificate& cert, const Direction& dir) {
    Json entries = Json::array();
    for (const CertificateEntry& e : cert.entries) {
        Json entry;
        entry["epsilon"] = e.epsilon;
        entry["delta"] = finite_or_null(e.delta);
        entry["anchor"] = finite_or_null(dir.progress(e.anchor));
        entry["samples"] = e.samples;
        entries.push_back(std::move(entry));
    }
    Json j;
    j["limit"] = cert.limit;
    j["delta_label"] = cert.delta_label;
    j["entries"] = std::move(entries);
    return j;
}

Json axiom_reports_json(const std::vector<AxiomReport>& reports) {
    Json arr = Json::array();
    for (const AxiomReport& r : reports) {
        Json violations = Json::array();
        for (const AxiomViolation& v : r.violations) {
            Json jv;
            jv["function"] = v.function;
            jv["direction"] = v.direction;
            jv["expected"] = v.expected;
            jv["observed"] = v.observed;
            violations.push_back(std::move(jv));
        }
        Json jr;
        jr["axiom"] = r.axiom;
        jr["direction"] = r.direction;
        jr["cases"] = r.cases;
        jr["passed"] = r.passed();
        jr["violations"] = std::move(violations);
        arr.push_back(std::move(jr));
    }
    return arr;
}

std::string stable_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace netlimit
