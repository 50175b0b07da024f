#include "tmac/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tmac/assessment.hpp"
#include "tmac/bundled.hpp"
#include "tmac/dsl.hpp"
#include "tmac/elicitation.hpp"
#include "tmac/mitigation.hpp"
#include "tmac/report.hpp"
#include "tmac/workspace.hpp"

namespace tmac::cli {
namespace {

struct Options {
    std::vector<std::string> inputs;
    std::string format = "md";
    std::string bands;
    std::string scenario;
    std::string scope;
    std::string out_path;
    bool with_diff = false;
    bool no_style_warnings = false;
};

/// Thrown to unwind with a specific exit code after the message was printed.
struct Exit {
    int code;
};

class Runner {
public:
    Runner(const Options& options, std::ostream& out, std::ostream& err) : opt_(options), out_(out), err_(err) {}

    int validate() {
        load(false);
        const auto diags = validate_workspace(ws_, validation_options());
        for (const auto& d : diags) out_ << format_diagnostic(d) << '\n';
        const std::size_t errors = count_errors(diags);
        out_ << errors << " error(s), " << diags.size() - errors << " warning(s)\n";
        if (ws_.model) {
            out_ << "model '" << ws_.model->name << "': " << ws_.model->elements.size() << " elements, "
                 << ws_.model->flows.size() << " interactions, " << ws_.model->scopes.size() << " groups\n";
        }
        out_ << "catalog: " << ws_.catalog.threats.size() << " threats"
             << (ws_.default_catalog_in_use ? " (built-in default)" : "") << '\n';
        return errors > 0 ? kExitValidation : kExitOk;
    }

    int interactions() {
        load(true);
        MarkingMatrix matrix = baseline_matrix();
        if (!opt_.scenario.empty()) matrix = apply(matrix, scenario());
        std::optional<std::string> scope;
        if (!opt_.scope.empty()) scope = opt_.scope;
        emit(report::render_matrix(matrix, *ws_.model, format(), scope));
        return kExitOk;
    }

    int assess() {
        load(true);
        const BandConfig config = bands();
        const MarkingMatrix matrix = baseline_matrix();
        emit(report::render_assessment(run_assessment(matrix, config, std::nullopt), format()));
        return kExitOk;
    }

    int what_if(bool assessment, bool diff_section) {
        load(true);
        if (opt_.scenario.empty()) {
            err_ << "error: --scenario <name> is required\n";
            throw Exit{kExitUsage};
        }
        const BandConfig config = bands();
        const PetScenario chosen = scenario();
        const MarkingMatrix baseline = baseline_matrix();
        const MarkingMatrix mitigated = apply(baseline, chosen);

        const AssessmentReport before = run_assessment(baseline, config, std::nullopt);
        const AssessmentReport after = run_assessment(mitigated, config, chosen.name);

        std::string text;
        if (assessment) text += report::render_assessment(after, format());
        if (diff_section) {
            if (!text.empty() && format() == report::Format::markdown) text += '\n';
            text += report::render_diff(diff(before, after, chosen.clears), format());
        }
        emit(text);
        return kExitOk;
    }

    int fmt() {
        std::string text;
        for (const auto& path : opt_.inputs) {
            const auto doc = parse_file(path);
            if (!text.empty()) text += '\n';
            text += dsl::render(doc);
        }
        emit(text);
        return kExitOk;
    }

private:
    ValidationOptions validation_options() const {
        return ValidationOptions{.dfd_style_warnings = !opt_.no_style_warnings};
    }

    report::Format format() const { return *report::parse_format(opt_.format); }

    BandConfig bands() const {
        if (opt_.bands.empty()) return BandConfig::standard();
        try {
            return BandConfig::parse(opt_.bands);
        } catch (const Error& e) {
            err_ << "error: --bands: " << e.what() << '\n';
            throw Exit{kExitUsage};
        }
    }

    std::string read_file(const std::string& path) const {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            err_ << "error: cannot read '" << path << "'\n";
            throw Exit{kExitUsage};
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    dsl::Document parse_file(const std::string& path) const {
        auto result = dsl::parse(read_file(path), path);
        for (const auto& d : result.diagnostics) err_ << format_diagnostic(d) << '\n';
        if (!result.ok()) throw Exit{kExitParse};
        return std::move(*result.document);
    }

    void load(bool analysis) {
        std::vector<dsl::Document> docs;
        for (const auto& path : opt_.inputs) docs.push_back(parse_file(path));
        auto merged = merge_documents(docs);
        ws_ = std::move(merged.workspace);
        if (has_errors(merged.diagnostics)) {
            for (const auto& d : merged.diagnostics) err_ << format_diagnostic(d) << '\n';
            throw Exit{kExitValidation};
        }
        if (!analysis) {
            // validate reports workspace diagnostics itself; duplicates above are fatal regardless
            return;
        }
        const auto diags = validate_workspace(ws_, validation_options());
        for (const auto& d : diags) err_ << format_diagnostic(d) << '\n';
        if (has_errors(diags)) throw Exit{kExitValidation};
        if (!ws_.model) {
            err_ << "error: no model block in the inputs\n";
            throw Exit{kExitValidation};
        }
    }

    MarkingMatrix baseline_matrix() const { return elicit(*ws_.model, ws_.catalog, ws_.rules); }

    PetScenario scenario() const {
        if (const PetScenario* s = ws_.find_scenario(opt_.scenario)) return *s;
        auto bundled = dsl::parse(bundled::masking_e2ee_scenario(), "<bundled>/masking-e2ee.tma");
        if (bundled.ok()) {
            for (const PetScenario* s : bundled.document->scenarios()) {
                if (s->name == opt_.scenario) return *s;
            }
        }
        err_ << "error: unknown scenario '" << opt_.scenario << "'\n";
        throw Exit{kExitUsage};
    }

    MarkingMatrix apply(const MarkingMatrix& matrix, const PetScenario& s) const {
        auto result = apply_scenario(matrix, s, *ws_.model);
        for (const auto& w : result.warnings) err_ << format_diagnostic(w) << '\n';
        return std::move(result.matrix);
    }

    AssessmentReport run_assessment(const MarkingMatrix& matrix, const BandConfig& config,
                                    std::optional<std::string> scenario_name) const {
        AssessOptions options;
        options.model_name = ws_.model->name;
        options.scenario = std::move(scenario_name);
        options.model = &*ws_.model;
        return tmac::assess(matrix, ws_.catalog, config, options);
    }

    void emit(const std::string& text) const {
        if (opt_.out_path.empty()) {
            out_ << text;
            return;
        }
        std::ofstream file(opt_.out_path, std::ios::binary | std::ios::trunc);
        if (!file) {
            err_ << "error: cannot write '" << opt_.out_path << "'\n";
            throw Exit{kExitUsage};
        }
        file << text;
    }

    const Options& opt_;
    std::ostream& out_;
    std::ostream& err_;
    Workspace ws_;
};

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Privacy threat modeling as code: elicitation, risk scoring and PET what-if analysis", "tmac"};
    app.require_subcommand(1, 1);

    auto add_inputs = [&](CLI::App* cmd, bool required) {
        auto* o = cmd->add_option("inputs", opt.inputs, ".tma input files (merged in order)");
        if (required) o->required();
    };
    auto add_report_flags = [&](CLI::App* cmd) {
        cmd->add_option("--format", opt.format, "Output format: md, csv or json")
            ->check(CLI::IsMember({"md", "markdown", "csv", "json"}));
        cmd->add_option("--bands", opt.bands, "Band thresholds as label:lower,... (e.g. low:0,moderate:0.5,high:1)");
        cmd->add_option("--out", opt.out_path, "Write output to this file instead of standard output");
        cmd->add_flag("--no-style-warnings", opt.no_style_warnings, "Do not warn on flows that touch no process");
    };

    auto* validate = app.add_subcommand("validate", "Parse and validate inputs, print diagnostics");
    add_inputs(validate, true);
    validate->add_flag("--no-style-warnings", opt.no_style_warnings, "Do not warn on flows that touch no process");

    auto* interactions = app.add_subcommand("interactions", "Print the interaction x threat matrix and Ti");
    add_inputs(interactions, true);
    add_report_flags(interactions);
    interactions->add_option("--scope", opt.scope, "Only list the interactions of this group");
    interactions->add_option("--scenario", opt.scenario, "Show markings after applying this scenario");

    auto* assess = app.add_subcommand("assess", "Print the baseline risk assessment");
    add_inputs(assess, true);
    add_report_flags(assess);

    auto* what_if = app.add_subcommand("what-if", "Apply a PET scenario and print the mitigated assessment");
    add_inputs(what_if, true);
    add_report_flags(what_if);
    what_if->add_option("--scenario", opt.scenario, "Scenario name")->required();
    what_if->add_flag("--diff", opt.with_diff, "Also print the before/after comparison");

    auto* diff_cmd = app.add_subcommand("diff", "Print the before/after comparison for a PET scenario");
    add_inputs(diff_cmd, true);
    add_report_flags(diff_cmd);
    diff_cmd->add_option("--scenario", opt.scenario, "Scenario name")->required();

    auto* fmt = app.add_subcommand("fmt", "Print inputs in canonical formatting");
    add_inputs(fmt, true);
    fmt->add_option("--out", opt.out_path, "Write output to this file instead of standard output");

    std::vector<std::string> argv_storage;
    argv_storage.emplace_back("tmac");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n" << "run 'tmac --help' for usage\n";
        return kExitUsage;
    }

    Runner runner(opt, out, err);
    try {
        if (validate->parsed()) return runner.validate();
        if (interactions->parsed()) return runner.interactions();
        if (assess->parsed()) return runner.assess();
        if (what_if->parsed()) return runner.what_if(true, opt.with_diff);
        if (diff_cmd->parsed()) return runner.what_if(false, true);
        if (fmt->parsed()) return runner.fmt();
    } catch (const Exit& e) {
        return e.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace tmac::cli
