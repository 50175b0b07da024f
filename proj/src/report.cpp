#include "tmac/report.hpp"

#include <json.hpp>
#include <sstream>

namespace tmac::report {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json ratio_json(const Ratio& r, const std::string& display) {
    ordered_json j;
    j["num"] = r.num();
    j["den"] = r.den();
    j["display"] = display;
    return j;
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string md_cell(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (c == '|') out += '\\';
        out += c == '\n' ? ' ' : c;
    }
    return out;
}

std::string element_label(const Model& model, const std::string& id) {
    const Element* e = model.find_element(id);
    return e != nullptr && !e->name.empty() ? e->name : id;
}

std::string flow_label(const Model& model, const std::string& id) {
    const Flow* f = model.find_flow(id);
    return f != nullptr && !f->label.empty() ? f->label : id;
}

std::string priority_line(const AssessmentReport& report) {
    std::string out;
    for (const auto& row : prioritize(report)) {
        if (!out.empty()) out += ", ";
        out += row.threat;
    }
    return out;
}

}  // namespace

std::optional<Format> parse_format(std::string_view token) {
    if (token == "md" || token == "markdown") return Format::markdown;
    if (token == "csv") return Format::csv;
    if (token == "json") return Format::json;
    return std::nullopt;
}

std::string render_assessment(const AssessmentReport& report, Format format) {
    const bool mitigated = report.scenario.has_value();
    const char* tn_header = mitigated ? "T'n" : "Tn";
    std::ostringstream os;

    switch (format) {
        case Format::markdown: {
            os << "# Privacy risk assessment: " << md_cell(report.model_name) << "\n\n";
            if (report.scenario) os << "Scenario: " << md_cell(*report.scenario) << "\n";
            if (report.scope) os << "Group: " << md_cell(*report.scope) << "\n";
            os << "Ti = " << report.interactions << "\n\n";
            os << "| Threat | I | Ta | C | " << tn_header << " | L | PIA | Prioritization |\n";
            os << "|---|---|---|---|---|---|---|---|\n";
            for (const auto& r : report.rows) {
                os << "| " << md_cell(r.threat) << " | " << r.initial_consequence << " | " << r.aggravated << " | "
                   << r.consequence << " | " << r.occurrences << " | " << r.likelihood_display << " | "
                   << r.pia_display << " | " << md_cell(r.band) << " |\n";
            }
            if (!report.rows.empty()) os << "\nPriority order: " << priority_line(report) << "\n";
            for (const auto& r : report.rows) {
                if (r.exceeds_display_max) {
                    os << "\nwarning: PIA of " << r.threat << " (" << r.pia_display
                       << ") exceeds the top of the display scale\n";
                }
            }
            break;
        }
        case Format::csv: {
            os << "threat,i,ta,c," << (mitigated ? "tn_after" : "tn") << ",l,pia,band\n";
            for (const auto& r : report.rows) {
                os << csv_field(r.threat) << ',' << r.initial_consequence << ',' << r.aggravated << ','
                   << r.consequence << ',' << r.occurrences << ',' << r.likelihood_display << ',' << r.pia_display
                   << ',' << csv_field(r.band) << '\n';
            }
            break;
        }
        case Format::json: {
            ordered_json j;
            j["model"] = report.model_name;
            j["ti"] = report.interactions;
            if (report.scenario) j["scenario"] = *report.scenario;
            if (report.scope) j["scope"] = *report.scope;
            j["bands"] = report.band_fingerprint;
            ordered_json rows = ordered_json::array();
            for (const auto& r : report.rows) {
                ordered_json row;
                row["threat"] = r.threat;
                row["i"] = r.initial_consequence;
                row["ta"] = r.aggravated;
                row["c"] = r.consequence;
                row["tn"] = r.occurrences;
                row["l"] = ratio_json(r.likelihood, r.likelihood_display);
                row["pia"] = ratio_json(r.pia, r.pia_display);
                row["band"] = r.band;
                rows.push_back(std::move(row));
            }
            j["rows"] = std::move(rows);
            ordered_json priority = ordered_json::array();
            for (const auto& r : prioritize(report)) priority.push_back(r.threat);
            j["priority"] = std::move(priority);
            os << j.dump(2) << '\n';
            break;
        }
    }
    return os.str();
}

std::string render_matrix(const MarkingMatrix& matrix, const Model& model, Format format,
                          const std::optional<std::string>& scope) {
    const Scope* group = nullptr;
    if (scope) {
        group = model.find_scope(*scope);
        if (group == nullptr) throw Error("unknown group '" + *scope + "'");
    }
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < matrix.interaction_count(); ++i) {
        if (group == nullptr || group->contains(matrix.interactions()[i].flow)) rows.push_back(i);
    }
    std::vector<std::size_t> totals(matrix.threat_count(), 0);
    for (std::size_t i : rows) {
        for (std::size_t t = 0; t < matrix.threat_count(); ++t) {
            if (matrix.marked(i, t)) ++totals[t];
        }
    }
    const std::string total_label = scope ? "Total (" + *scope + ")" : "Total (Tn)";

    std::ostringstream os;
    switch (format) {
        case Format::markdown: {
            os << "# Threat mapping: " << md_cell(model.name) << "\n\n";
            if (scope) os << "Group: " << md_cell(*scope) << "\n";
            os << "Interactions: " << rows.size() << "\n\n";
            os << "| Source | Flow | Destination |";
            for (const auto& t : matrix.threats()) os << ' ' << md_cell(t) << " |";
            os << "\n|---|---|---|";
            for (std::size_t t = 0; t < matrix.threat_count(); ++t) os << "---|";
            os << '\n';
            for (std::size_t i : rows) {
                const Interaction& in = matrix.interactions()[i];
                os << "| " << md_cell(element_label(model, in.source)) << " | " << md_cell(flow_label(model, in.flow))
                   << " | " << md_cell(element_label(model, in.destination)) << " |";
                for (std::size_t t = 0; t < matrix.threat_count(); ++t) os << (matrix.marked(i, t) ? " x |" : "  |");
                os << '\n';
            }
            os << "| " << md_cell(total_label) << " | | |";
            for (std::size_t n : totals) os << ' ' << n << " |";
            os << '\n';
            break;
        }
        case Format::csv: {
            os << "source,flow,destination";
            for (const auto& t : matrix.threats()) os << ',' << csv_field(t);
            os << '\n';
            for (std::size_t i : rows) {
                const Interaction& in = matrix.interactions()[i];
                os << csv_field(in.source) << ',' << csv_field(in.flow) << ',' << csv_field(in.destination);
                for (std::size_t t = 0; t < matrix.threat_count(); ++t) os << (matrix.marked(i, t) ? ",x" : ",");
                os << '\n';
            }
            os << csv_field(total_label) << ",,";
            for (std::size_t n : totals) os << ',' << n;
            os << '\n';
            break;
        }
        case Format::json: {
            ordered_json j;
            j["model"] = model.name;
            if (scope) j["scope"] = *scope;
            j["threats"] = matrix.threats();
            ordered_json out_rows = ordered_json::array();
            for (std::size_t i : rows) {
                const Interaction& in = matrix.interactions()[i];
                ordered_json row;
                row["ordinal"] = in.ordinal;
                row["source"] = in.source;
                row["flow"] = in.flow;
                row["destination"] = in.destination;
                ordered_json marks = ordered_json::array();
                ordered_json cleared = ordered_json::object();
                for (std::size_t t = 0; t < matrix.threat_count(); ++t) {
                    const Cell& c = matrix.cell(i, t);
                    if (c.marked()) {
                        ordered_json mark;
                        mark["threat"] = matrix.threats()[t];
                        ordered_json why = ordered_json::array();
                        for (const auto& p : c.sources) {
                            why.push_back(p.kind == Provenance::Kind::explicit_mark
                                              ? std::string("explicit")
                                              : "rule#" + std::to_string(p.rule_ordinal));
                        }
                        mark["provenance"] = std::move(why);
                        marks.push_back(std::move(mark));
                    } else if (!c.cleared_by.empty()) {
                        cleared[matrix.threats()[t]] = c.cleared_by;
                    }
                }
                row["marks"] = std::move(marks);
                if (!cleared.empty()) row["cleared"] = std::move(cleared);
                out_rows.push_back(std::move(row));
            }
            j["rows"] = std::move(out_rows);
            ordered_json tot = ordered_json::object();
            for (std::size_t t = 0; t < matrix.threat_count(); ++t) tot[matrix.threats()[t]] = totals[t];
            j["totals"] = std::move(tot);
            os << j.dump(2) << '\n';
            break;
        }
    }
    return os.str();
}

std::string render_diff(const DiffReport& d, Format format) {
    std::ostringstream os;
    switch (format) {
        case Format::markdown: {
            os << "# Scenario comparison: " << md_cell(d.baseline) << " -> " << md_cell(d.mitigated) << "\n\n";
            if (!d.cleared_scopes.empty()) {
                os << "Cleared groups: ";
                for (std::size_t i = 0; i < d.cleared_scopes.size(); ++i) {
                    os << (i ? ", " : "") << md_cell(d.cleared_scopes[i]);
                }
                os << "\n\n";
            }
            os << "| Threat | Tn | T'n | dTn | PIA before | PIA after | Band before | Band after |\n";
            os << "|---|---|---|---|---|---|---|---|\n";
            for (const auto& r : d.rows) {
                os << "| " << md_cell(r.threat) << " | " << r.occurrences_before << " | " << r.occurrences_after
                   << " | " << r.occurrences_delta << " | " << r.pia_before_display << " | " << r.pia_after_display
                   << " | " << md_cell(r.band_before) << " | " << md_cell(r.band_after) << " |\n";
            }
            os << "\n## Band transitions\n\n";
            const auto changed = d.transitions();
            if (changed.empty()) os << "(none)\n";
            for (const DiffRow* r : changed) {
                os << "- " << r->threat << ": " << r->band_before << " -> " << r->band_after << " (PIA "
                   << r->pia_before_display << " -> " << r->pia_after_display << ")\n";
            }
            break;
        }
        case Format::csv: {
            os << "threat,tn_before,tn_after,delta_tn,pia_before,pia_after,band_before,band_after,transition\n";
            for (const auto& r : d.rows) {
                os << csv_field(r.threat) << ',' << r.occurrences_before << ',' << r.occurrences_after << ','
                   << r.occurrences_delta << ',' << r.pia_before_display << ',' << r.pia_after_display << ','
                   << csv_field(r.band_before) << ',' << csv_field(r.band_after) << ','
                   << (r.transition ? "yes" : "no") << '\n';
            }
            break;
        }
        case Format::json: {
            ordered_json j;
            j["model"] = d.model_name;
            j["baseline"] = d.baseline;
            j["mitigated"] = d.mitigated;
            j["cleared"] = d.cleared_scopes;
            ordered_json rows = ordered_json::array();
            for (const auto& r : d.rows) {
                ordered_json row;
                row["threat"] = r.threat;
                row["tn_before"] = r.occurrences_before;
                row["tn_after"] = r.occurrences_after;
                row["delta_tn"] = r.occurrences_delta;
                row["pia_before"] = ratio_json(r.pia_before, r.pia_before_display);
                row["pia_after"] = ratio_json(r.pia_after, r.pia_after_display);
                row["band_before"] = r.band_before;
                row["band_after"] = r.band_after;
                row["transition"] = r.transition;
                rows.push_back(std::move(row));
            }
            j["rows"] = std::move(rows);
            ordered_json transitions = ordered_json::array();
            for (const DiffRow* r : d.transitions()) transitions.push_back(r->threat);
            j["transitions"] = std::move(transitions);
            os << j.dump(2) << '\n';
            break;
        }
    }
    return os.str();
}

}  // namespace tmac::report
