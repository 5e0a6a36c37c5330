#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "netlimit/envelope.hpp"

namespace netlimit {

// One certified epsilon: every verification sample past `anchor` satisfied
// |f(x) - limit| <= epsilon. `delta` is the anchor translated into classical
// vocabulary (delta for point directions, threshold N for infinity/sequence
// directions, mesh for partitions); `samples` counts the verification
// evaluations backing the claim.
struct CertificateEntry {
    double epsilon = 0.0;
    Point anchor;
    double delta = 0.0;
    std::size_t samples = 0;
};

struct Certificate {
    double limit = 0.0;
    std::string delta_label;  // "delta", "past" or "mesh"
    std::vector<CertificateEntry> entries;  // in the order epsilons were given
};

// Certifies the claimed limit l against a verification grid 10x denser than
// the estimation grid: for each epsilon, finds the earliest probed chain
// anchor past which every verification sample stays within epsilon of l.
// Throws ParamError for an empty or non-positive epsilon list or non-finite l,
// CertificationFailure(epsilon) when some epsilon cannot be certified within
// the probed horizon, and EvaluationError from unusable samples.
Certificate epsilon_delta_certificate(const Net& f, const Direction& dir,
                                      double l, const std::vector<double>& eps_list,
                                      const EstimateConfig& cfg = {});

}  // namespace netlimit
