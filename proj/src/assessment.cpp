#include "tmac/assessment.hpp"

#include <algorithm>
#include <set>

namespace tmac {

BandConfig::BandConfig(std::vector<Band> bands, std::optional<Ratio> display_max)
    : bands_(std::move(bands)), display_max_(display_max) {
    if (bands_.empty()) throw Error("band configuration is empty");
    if (bands_.front().lower != Ratio(0)) {
        throw Error("lowest band '" + bands_.front().label + "' must start at 0");
    }
    std::set<std::string> labels;
    for (std::size_t i = 0; i < bands_.size(); ++i) {
        if (bands_[i].label.empty()) throw Error("band label is empty");
        if (!labels.insert(bands_[i].label).second) throw Error("duplicate band label '" + bands_[i].label + "'");
        if (i > 0 && !(bands_[i - 1].lower < bands_[i].lower)) {
            throw Error("band '" + bands_[i].label + "' does not start above '" + bands_[i - 1].label + "'");
        }
    }
    if (display_max_ && *display_max_ < Ratio(0)) throw Error("display maximum is negative");
}

BandConfig BandConfig::standard() {
    return BandConfig({{Ratio(0), "Low"}, {Ratio(1, 2), "Moderate"}, {Ratio(1), "High"}}, Ratio(2));
}

BandConfig BandConfig::parse(std::string_view spec) {
    std::vector<Band> bands;
    while (!spec.empty()) {
        const auto comma = spec.find(',');
        const std::string_view entry = spec.substr(0, comma);
        spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);

        const auto colon = entry.find(':');
        if (colon == std::string_view::npos) {
            throw Error("band entry '" + std::string(entry) + "' is not of the form label:lower");
        }
        const std::string_view label = entry.substr(0, colon);
        const auto lower = Ratio::parse_decimal(entry.substr(colon + 1));
        if (!lower) {
            throw Error("band '" + std::string(label) + "' has an invalid lower bound '" +
                        std::string(entry.substr(colon + 1)) + "'");
        }
        bands.push_back(Band{*lower, std::string(label)});
        if (comma != std::string_view::npos && spec.empty()) throw Error("trailing ',' in band specification");
    }
    return BandConfig(std::move(bands));
}

std::size_t BandConfig::index_of(const Ratio& value) const {
    if (value < Ratio(0)) throw Error("negative value " + value.to_string() + " has no band");
    std::size_t index = 0;
    for (std::size_t i = 0; i < bands_.size(); ++i) {
        if (bands_[i].lower <= value) index = i;
    }
    return index;
}

std::string BandConfig::fingerprint() const {
    std::string out;
    for (std::size_t i = 0; i < bands_.size(); ++i) {
        if (i > 0) out += ',';
        out += bands_[i].label + ':' + bands_[i].lower.to_string();
    }
    if (display_max_) out += ";max=" + display_max_->to_string();
    return out;
}

Ratio likelihood(std::size_t occurrences, std::size_t interactions) {
    if (interactions == 0) throw Error("cannot assess a model with no interactions (Ti = 0)");
    if (occurrences > interactions) {
        throw Error("occurrence count " + std::to_string(occurrences) + " exceeds interaction count " +
                    std::to_string(interactions));
    }
    return Ratio(static_cast<std::int64_t>(occurrences), static_cast<std::int64_t>(interactions));
}

Ratio pia(const Ratio& l, int c) {
    if (c < 0) throw Error("negative consequence");
    if (l < Ratio(0) || Ratio(1) < l) throw Error("likelihood " + l.to_string() + " outside [0, 1]");
    return l * Ratio(c);
}

BandAssignment band_of(const Ratio& value, const BandConfig& config) {
    const std::size_t index = config.index_of(value);
    BandAssignment out;
    out.label = config.bands()[index].label;
    out.rank = index;
    out.exceeds_display_max = config.display_max() && *config.display_max() < value;
    return out;
}

AssessmentReport assess(const MarkingMatrix& matrix, const Catalog& catalog, const BandConfig& config,
                        const AssessOptions& options) {
    AssessmentReport report;
    report.model_name = options.model_name;
    report.scenario = options.scenario;
    report.scope = options.scope;
    report.band_fingerprint = config.fingerprint();
    for (const auto& b : config.bands()) report.band_labels.push_back(b.label);

    const Scope* scope = nullptr;
    if (options.scope) {
        if (options.model == nullptr) throw Error("scope restriction requires the model");
        scope = options.model->find_scope(*options.scope);
        if (scope == nullptr) throw Error("unknown group '" + *options.scope + "'");
    }

    std::vector<std::size_t> rows_in_force;
    for (std::size_t i = 0; i < matrix.interaction_count(); ++i) {
        if (scope == nullptr || scope->contains(matrix.interactions()[i].flow)) rows_in_force.push_back(i);
    }
    report.interactions = rows_in_force.size();

    for (const auto& threat : catalog.threats) {
        const auto t = matrix.threat_index(threat.id);
        if (!t) throw Error("threat '" + threat.id + "' is not a column of the marking matrix");

        ThreatAssessment row;
        row.threat = threat.id;
        row.name = threat.name;
        row.initial_consequence = threat.initial_consequence;
        row.aggravated = aggravation_count(threat);
        row.consequence = consequence(threat);
        row.occurrences = static_cast<std::size_t>(
            std::count_if(rows_in_force.begin(), rows_in_force.end(), [&](std::size_t i) { return matrix.marked(i, *t); }));
        row.likelihood = likelihood(row.occurrences, report.interactions);
        row.pia = pia(row.likelihood, row.consequence);
        row.likelihood_display = row.likelihood.to_fixed(kLikelihoodDecimals);
        row.pia_display = row.pia.to_fixed(kPiaDecimals);
        const BandAssignment band = band_of(row.pia, config);
        row.band = band.label;
        row.band_rank = band.rank;
        row.exceeds_display_max = band.exceeds_display_max;
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<ThreatAssessment> prioritize(const AssessmentReport& report) {
    std::vector<ThreatAssessment> out = report.rows;
    std::stable_sort(out.begin(), out.end(), [](const ThreatAssessment& a, const ThreatAssessment& b) {
        if (a.pia != b.pia) return b.pia < a.pia;
        return compare_threat_ids(a.threat, b.threat) < 0;
    });
    return out;
}

}  // namespace tmac
