#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tmac/assessment.hpp"
#include "tmac/elicitation.hpp"
#include "tmac/mitigation.hpp"
#include "tmac/model.hpp"

namespace tmac::report {

enum class Format { markdown, csv, json };

std::optional<Format> parse_format(std::string_view token);  // md|markdown, csv, json

/// Assessment table: Threat, I, Ta, C, Tn, L, PIA, Prioritization, plus the
/// ranked priority order (markdown and json only).
std::string render_assessment(const AssessmentReport& report, Format format);

/// Interaction x threat table with `x` marks and a totals row. With `scope`
/// set, only that group's interactions are listed and the totals row is the
/// scoped count.
std::string render_matrix(const MarkingMatrix& matrix, const Model& model, Format format,
                          const std::optional<std::string>& scope = std::nullopt);

/// Before/after columns per threat and a section listing band transitions.
std::string render_diff(const DiffReport& diff, Format format);

}  // namespace tmac::report
