#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "netlimit/axioms.hpp"
#include "netlimit/certificate.hpp"
#include "netlimit/envelope.hpp"

namespace netlimit {

using Json = nlohmann::json;

// Non-finite doubles have no JSON number representation; render as null.
Json finite_or_null(double v);

// {"kind": ..., "value": ...} plus liminf/limsup or reason when the verdict
// carries them.
Json verdict_json(const LimitVerdict& v);

// Array of {"x": progress scalar, "m": ..., "M": ...} in chain order.
Json trace_json(const EnvelopeTrace& trace, const Direction& dir);

Json config_json(const EstimateConfig& cfg);

// The full estimate envelope: {verdict, value, error_bound, trace, config}
// plus liminf/limsup/reason when the verdict carries them.
Json estimate_json(const EstimateResult& result, const Direction& dir,
                   const EstimateConfig& cfg);

// {limit, delta_label, entries: [{epsilon, delta, anchor, samples}]}.
Json certificate_json(const Certificate& cert, const Direction& dir);

Json axiom_reports_json(const std::vector<AxiomReport>& reports);

// Deterministic rendering: keys sorted, two-space indent, trailing newline.
std::string stable_dump(const Json& j);

}  // namespace netlimit
