#pragma once

#include "degell/hamiltonians.hpp"
#include "degell/operators.hpp"
#include "degell/params.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace degell {

/// Worst sampled violation of one structural inequality (positive = violated).
struct ConditionResult {
    std::string name;
    double worst_margin = -kInf;
    bool required = true;
    bool passed = true;
    std::string note;
};

struct ConditionReport {
    std::vector<ConditionResult> results;
    int samples = 0;
    int dimension = 0;

    /// All required conditions passed.
    bool passed() const;
    const ConditionResult& get(const std::string& name) const;
    bool has(const std::string& name) const;
    std::string to_text() const;
};

inline constexpr double kConditionTolerance = 1e-9;

/// Sampling falsifier for (F1), its Y >= 0 form, (F2), and (H1) or (H2).
///
/// Conditions reported: "F1" (Y <= 0 upper bound beta lambda_N(Y)), "deg2" (Y >= 0 lower
/// bound beta lambda_1(Y)), "F2" (positive homogeneity), "deg2_negative_Y" (diagnostic,
/// the Y >= 0 bound tried on Y <= 0), then "H1" and "H_lower" for p > 1 or "H2_scaling"
/// and "H2_bounds" for p < 1. The comparison principle is listed as assumed.
/// Monge-Ampere is sampled on the cone X >= 0.
ConditionReport check_structural_conditions(const OperatorSpec& op, const HamiltonianSpec& ham,
                                            const Params& params, int sample_count, std::uint64_t seed,
                                            int dimension = 0);

} // namespace degell
