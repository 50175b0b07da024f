#include "tmac/mitigation.hpp"

#include <algorithm>

namespace tmac {

std::vector<std::string> overlapping_scopes(const Model& model, const std::vector<std::string>& scopes) {
    std::vector<std::string> out;
    for (std::size_t a = 0; a < scopes.size(); ++a) {
        const Scope* sa = model.find_scope(scopes[a]);
        if (sa == nullptr) continue;
        for (std::size_t b = 0; b < scopes.size(); ++b) {
            if (a == b || scopes[a] == scopes[b]) continue;
            const Scope* sb = model.find_scope(scopes[b]);
            if (sb == nullptr) continue;
            const bool shared = std::any_of(sa->members.begin(), sa->members.end(),
                                            [&](const std::string& f) { return sb->contains(f); });
            if (shared) {
                out.push_back(scopes[a]);
                break;
            }
        }
    }
    return out;
}

ScenarioResult apply_scenario(const MarkingMatrix& matrix, const PetScenario& scenario, const Model& model) {
    std::vector<const Scope*> scopes;
    for (const auto& name : scenario.clears) {
        const Scope* s = model.find_scope(name);
        if (s == nullptr) throw Error("scenario '" + scenario.name + "' clears undeclared group '" + name + "'");
        scopes.push_back(s);
    }
    std::vector<std::size_t> threat_columns;
    if (scenario.threat_filter) {
        for (const auto& id : *scenario.threat_filter) {
            const auto t = matrix.threat_index(id);
            if (!t) throw Error("scenario '" + scenario.name + "' filters on unknown threat '" + id + "'");
            threat_columns.push_back(*t);
        }
    } else {
        for (std::size_t t = 0; t < matrix.threat_count(); ++t) threat_columns.push_back(t);
    }

    ScenarioResult result{matrix, {}};
    for (std::size_t i = 0; i < matrix.interaction_count(); ++i) {
        const auto& flow = matrix.interactions()[i].flow;
        const bool covered = std::any_of(scopes.begin(), scopes.end(), [&](const Scope* s) { return s->contains(flow); });
        if (!covered) continue;
        for (std::size_t t : threat_columns) {
            Cell& cell = result.matrix.cell(i, t);
            if (!cell.sources.empty()) cell.cleared_by.insert(scenario.name);
        }
    }

    const auto overlaps = overlapping_scopes(model, scenario.clears);
    if (!overlaps.empty()) {
        std::string names;
        for (const auto& n : overlaps) names += (names.empty() ? "" : ", ") + n;
        result.warnings.push_back(make_warning("scenario '" + scenario.name + "' clears overlapping groups (" + names +
                                                   "); shared interactions are cleared once, so Tn - sum of scoped "
                                                   "counts does not hold",
                                               scenario.location));
    }
    return result;
}

std::vector<const DiffRow*> DiffReport::transitions() const {
    std::vector<const DiffRow*> out;
    for (const auto& row : rows) {
        if (row.transition) out.push_back(&row);
    }
    return out;
}

DiffReport diff(const AssessmentReport& baseline, const AssessmentReport& mitigated,
                std::vector<std::string> cleared_scopes) {
    if (baseline.interactions != mitigated.interactions) {
        throw Error("reports are not comparable: Ti " + std::to_string(baseline.interactions) + " vs " +
                    std::to_string(mitigated.interactions));
    }
    if (baseline.band_fingerprint != mitigated.band_fingerprint) {
        throw Error("reports are not comparable: different band configurations");
    }
    if (baseline.rows.size() != mitigated.rows.size()) {
        throw Error("reports are not comparable: different catalogs");
    }
    for (std::size_t i = 0; i < baseline.rows.size(); ++i) {
        const auto& a = baseline.rows[i];
        const auto& b = mitigated.rows[i];
        if (a.threat != b.threat || a.consequence != b.consequence) {
            throw Error("reports are not comparable: different catalogs (row " + a.threat + ")");
        }
    }

    DiffReport out;
    out.model_name = baseline.model_name;
    out.baseline = baseline.scenario.value_or("baseline");
    out.mitigated = mitigated.scenario.value_or("baseline");
    out.cleared_scopes = std::move(cleared_scopes);
    for (std::size_t i = 0; i < baseline.rows.size(); ++i) {
        const auto& a = baseline.rows[i];
        const auto& b = mitigated.rows[i];
        DiffRow row;
        row.threat = a.threat;
        row.occurrences_before = a.occurrences;
        row.occurrences_after = b.occurrences;
        row.occurrences_delta = static_cast<long long>(a.occurrences) - static_cast<long long>(b.occurrences);
        row.pia_before = a.pia;
        row.pia_after = b.pia;
        row.pia_before_display = a.pia_display;
        row.pia_after_display = b.pia_display;
        row.band_before = a.band;
        row.band_after = b.band;
        row.transition = a.band != b.band;
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace tmac
