#include <doctest.h>

#include <json.hpp>
#include <random>
#include <sstream>

#include "generators.hpp"
#include "support.hpp"
#include "tmac/report.hpp"

using namespace tmac;
using namespace tmac::testing;
using tmac::report::Format;

namespace {

struct Fixture {
    Model model = reference_model();
    MarkingMatrix matrix = elicit(model, default_catalog(), {});
    AssessmentReport baseline = assess(matrix, default_catalog(), BandConfig::standard(),
                                       AssessOptions{"Smart Home", {}, {}, nullptr});
    MarkingMatrix mitigated_matrix = apply_scenario(matrix, reference_scenario(), model).matrix;
    AssessmentReport mitigated = assess(mitigated_matrix, default_catalog(), BandConfig::standard(),
                                        AssessOptions{"Smart Home", "masking+e2ee", {}, nullptr});
};

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string line_starting(const std::string& text, const std::string& prefix) {
    for (const auto& l : lines_of(text)) {
        if (l.rfind(prefix, 0) == 0) return l;
    }
    return {};
}

}  // namespace

TEST_CASE("markdown assessment follows the published column order") {
    const Fixture f;
    const auto text = report::render_assessment(f.baseline, Format::markdown);
    CHECK(line_starting(text, "| Threat") == "| Threat | I | Ta | C | Tn | L | PIA | Prioritization |");
    CHECK(line_starting(text, "| T11 ") == "| T11 | 1 | 4 | 5 | 13 | 0.37143 | 1.86 | High |");
    CHECK(line_starting(text, "| T1 ") == "| T1 | 1 | 1 | 2 | 7 | 0.20000 | 0.40 | Low |");
    CHECK(line_starting(text, "Ti = ") == "Ti = 35");
    CHECK(line_starting(text, "Priority order:") == "Priority order: T11, T8, T6, T2, T5, T7, T3, T1, T4, T10, T9");
    CHECK(text.find("warning") == std::string::npos);
}

TEST_CASE("mitigated markdown uses the residual column") {
    const Fixture f;
    const auto text = report::render_assessment(f.mitigated, Format::markdown);
    CHECK(line_starting(text, "| Threat") == "| Threat | I | Ta | C | T'n | L | PIA | Prioritization |");
    CHECK(line_starting(text, "| T1 ") == "| T1 | 1 | 1 | 2 | 0 | 0.00000 | 0.00 | Low |");
    CHECK(line_starting(text, "Scenario: ") == "Scenario: masking+e2ee");
}

TEST_CASE("empty report renders a header-only table") {
    AssessmentReport empty;
    empty.model_name = "empty";
    const auto text = report::render_assessment(empty, Format::markdown);
    const auto lines = lines_of(text);
    CHECK(lines.back() == "|---|---|---|---|---|---|---|---|");
    CHECK(report::render_assessment(empty, Format::csv) == "threat,i,ta,c,tn,l,pia,band\n");
}

TEST_CASE("csv and markdown carry identical numbers") {
    const Fixture f;
    for (const auto* r : {&f.baseline, &f.mitigated}) {
        const auto csv = lines_of(report::render_assessment(*r, Format::csv));
        const auto md = report::render_assessment(*r, Format::markdown);
        REQUIRE(csv.size() == 12);
        for (std::size_t i = 0; i < 11; ++i) {
            const auto& row = r->rows[i];
            CHECK(csv[i + 1] == row.threat + ",1," + std::to_string(row.aggravated) + "," + std::to_string(row.consequence) +
                                    "," + std::to_string(row.occurrences) + "," + row.likelihood_display + "," +
                                    row.pia_display + "," + row.band);
            CHECK(md.find("| " + row.threat + " | 1 | " + std::to_string(row.aggravated) + " | " +
                          std::to_string(row.consequence) + " | " + std::to_string(row.occurrences) + " | " +
                          row.likelihood_display + " | " + row.pia_display + " | " + row.band + " |") != std::string::npos);
        }
    }
}

TEST_CASE("json export round trips every value") {
    const Fixture f;
    for (const auto* r : {&f.baseline, &f.mitigated}) {
        const auto j = nlohmann::json::parse(report::render_assessment(*r, Format::json));
        CHECK(j["model"] == "Smart Home");
        CHECK(j["ti"] == 35);
        CHECK(j.contains("scenario") == r->scenario.has_value());
        REQUIRE(j["rows"].size() == 11);
        for (std::size_t i = 0; i < 11; ++i) {
            const auto& row = r->rows[i];
            const auto& jr = j["rows"][i];
            CHECK(jr["threat"] == row.threat);
            CHECK(jr["tn"] == row.occurrences);
            CHECK(Ratio(jr["l"]["num"].get<std::int64_t>(), jr["l"]["den"].get<std::int64_t>()) == row.likelihood);
            CHECK(Ratio(jr["pia"]["num"].get<std::int64_t>(), jr["pia"]["den"].get<std::int64_t>()) == row.pia);
            CHECK(jr["l"]["display"] == row.likelihood_display);
            CHECK(jr["pia"]["display"] == row.pia_display);
            CHECK(jr["band"] == row.band);
        }
    }
}

TEST_CASE("matrix totals for the two published groups") {
    const Fixture f;
    const auto uam = report::render_matrix(f.matrix, f.model, Format::markdown, "user-access-management");
    CHECK(line_starting(uam, "| Total") == "| Total (user-access-management) | | | 1 | 6 | 3 | 3 | 5 | 6 | 0 | 6 | 0 | 0 | 3 |");
    CHECK(line_starting(uam, "Interactions: ") == "Interactions: 14");
    const auto dev = report::render_matrix(f.matrix, f.model, Format::markdown, "device-commissioning");
    CHECK(line_starting(dev, "| Total") == "| Total (device-commissioning) | | | 6 | 0 | 4 | 2 | 0 | 0 | 6 | 0 | 0 | 1 | 7 |");
    const auto all = report::render_matrix(f.matrix, f.model, Format::markdown);
    CHECK(line_starting(all, "| Total") == "| Total (Tn) | | | 7 | 11 | 8 | 6 | 6 | 13 | 6 | 11 | 1 | 2 | 13 |");
    const auto csv = report::render_matrix(f.matrix, f.model, Format::csv, "device-commissioning");
    CHECK(lines_of(csv).back() == "Total (device-commissioning),,,6,0,4,2,0,0,6,0,0,1,7");
    CHECK_THROWS_AS(report::render_matrix(f.matrix, f.model, Format::csv, "nowhere"), Error);
}

TEST_CASE("all-false matrix renders without marks") {
    const auto m = model_of("model \"m\" {\n element a kind=process\n flow f from=a to=a\n}");
    const auto matrix = elicit(*m, default_catalog(), {});
    const auto text = report::render_matrix(matrix, *m, Format::markdown);
    CHECK(text.find(" x ") == std::string::npos);
    CHECK(line_starting(text, "| Total") == "| Total (Tn) | | | 0 | 0 | 0 | 0 | 0 | 0 | 0 | 0 | 0 | 0 | 0 |");
}

TEST_CASE("matrix json shows provenance and cleared cells") {
    const Fixture f;
    const auto j = nlohmann::json::parse(report::render_matrix(f.mitigated_matrix, f.model, Format::json, "device-commissioning"));
    CHECK(j["totals"]["T11"] == 0);
    REQUIRE(j["rows"].size() == 11);
    CHECK(j["rows"][0]["marks"].empty());
    CHECK(j["rows"][0]["cleared"].begin().value()[0] == "masking+e2ee");
    const auto base = nlohmann::json::parse(report::render_matrix(f.matrix, f.model, Format::json));
    CHECK(base["totals"]["T6"] == 13);
    CHECK(base["rows"][0]["marks"][0]["provenance"][0] == "explicit");
}

TEST_CASE("diff rendering lists exactly the band transitions") {
    const Fixture f;
    const auto d = diff(f.baseline, f.mitigated, reference_scenario().clears);
    const auto text = report::render_diff(d, Format::markdown);
    const auto section = text.substr(text.find("## Band transitions"));
    const auto lines = lines_of(section);
    std::vector<std::string> bullets;
    for (const auto& l : lines) {
        if (l.rfind("- ", 0) == 0) bullets.push_back(l);
    }
    CHECK(bullets == std::vector<std::string>{
                         "- T2: Moderate -> Low (PIA 0.94 -> 0.43)",
                         "- T5: Moderate -> Low (PIA 0.51 -> 0.09)",
                         "- T6: High -> Moderate (PIA 1.11 -> 0.60)",
                         "- T7: Moderate -> Low (PIA 0.51 -> 0.00)",
                         "- T8: High -> Moderate (PIA 1.57 -> 0.71)",
                         "- T11: High -> Low (PIA 1.86 -> 0.43)",
                     });
    CHECK(line_starting(text, "| T11 ") == "| T11 | 13 | 3 | 10 | 1.86 | 0.43 | High | Low |");

    const auto j = nlohmann::json::parse(report::render_diff(d, Format::json));
    CHECK(j["transitions"] == nlohmann::json::array({"T2", "T5", "T6", "T7", "T8", "T11"}));
    const auto csv = lines_of(report::render_diff(d, Format::csv));
    CHECK(csv[11] == "T11,13,3,10,1.86,0.43,High,Low,yes");
}

TEST_CASE("identical reports have an empty transitions section") {
    const Fixture f;
    const auto text = report::render_diff(diff(f.baseline, f.baseline), Format::markdown);
    CHECK(text.substr(text.find("## Band transitions")) == "## Band transitions\n\n(none)\n");
}

TEST_CASE("values above the display maximum are flagged") {
    const auto m = model_of("model \"m\" {\n element a kind=process\n flow f from=a to=a\n mark f threats=[T8]\n}");
    const auto r = assess(elicit(*m, default_catalog(), {}), default_catalog(), BandConfig::standard());
    CHECK(r.rows[7].exceeds_display_max);
    CHECK(report::render_assessment(r, Format::markdown).find("warning: PIA of T8 (5.00)") != std::string::npos);
}

TEST_CASE("rendering is deterministic") {
    std::mt19937 rng(71);
    for (int k = 0; k < 50; ++k) {
        const auto c = random_case(rng);
        const auto m = to_model(c, rng);
        const auto cat = to_catalog(c);
        const auto matrix = elicit(m, cat, {});
        const auto r = assess(matrix, cat, BandConfig::standard());
        for (auto fmt : {Format::markdown, Format::csv, Format::json}) {
            CHECK(report::render_assessment(r, fmt) == report::render_assessment(r, fmt));
            CHECK(report::render_matrix(matrix, m, fmt) == report::render_matrix(matrix, m, fmt));
        }
    }
}

TEST_CASE("format tokens") {
    CHECK(report::parse_format("md") == Format::markdown);
    CHECK(report::parse_format("markdown") == Format::markdown);
    CHECK(report::parse_format("csv") == Format::csv);
    CHECK(report::parse_format("json") == Format::json);
    CHECK_FALSE(report::parse_format("xml").has_value());
}
