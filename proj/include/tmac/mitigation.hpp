#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tmac/assessment.hpp"
#include "tmac/catalog.hpp"
#include "tmac/diagnostic.hpp"
#include "tmac/elicitation.hpp"
#include "tmac/model.hpp"

namespace tmac {

struct ScenarioResult {
    MarkingMatrix matrix;
    std::vector<Diagnostic> warnings;  // e.g. overlapping cleared groups
};

/// Clears every marked cell whose interaction lies in one of the scenario's
/// groups and whose threat passes its filter. The input is not modified.
/// Throws tmac::Error for an unknown group or filtered threat.
ScenarioResult apply_scenario(const MarkingMatrix& matrix, const PetScenario& scenario, const Model& model);

/// Group names in `scopes` that share at least one flow with another listed group.
std::vector<std::string> overlapping_scopes(const Model& model, const std::vector<std::string>& scopes);

struct DiffRow {
    std::string threat;
    std::size_t occurrences_before = 0;
    std::size_t occurrences_after = 0;
    long long occurrences_delta = 0;  // before - after
    Ratio pia_before;
    Ratio pia_after;
    std::string pia_before_display;
    std::string pia_after_display;
    std::string band_before;
    std::string band_after;
    bool transition = false;

    bool operator==(const DiffRow&) const = default;
};

struct DiffReport {
    std::string model_name;
    std::string baseline;   // scenario name or "baseline"
    std::string mitigated;
    std::vector<std::string> cleared_scopes;
    std::vector<DiffRow> rows;  // catalog order

    std::vector<const DiffRow*> transitions() const;
    bool operator==(const DiffReport&) const = default;
};

/// Per-threat deltas between two assessments of the same model, catalog and
/// band configuration. Throws tmac::Error when the reports are not comparable.
DiffReport diff(const AssessmentReport& baseline, const AssessmentReport& mitigated,
                std::vector<std::string> cleared_scopes = {});

}  // namespace tmac
