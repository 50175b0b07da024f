#include "tmac/workspace.hpp"

#include <algorithm>
#include <set>

namespace tmac {

const PetScenario* Workspace::find_scenario(std::string_view name) const {
    auto it = std::find_if(scenarios.begin(), scenarios.end(), [&](const PetScenario& s) { return s.name == name; });
    return it == scenarios.end() ? nullptr : &*it;
}

MergeResult merge_documents(std::span<const dsl::Document> documents) {
    MergeResult result;
    Workspace& ws = result.workspace;
    std::optional<Catalog> catalog;

    for (const auto& doc : documents) {
        for (const auto& item : doc.items) {
            if (const auto* m = std::get_if<Model>(&item)) {
                if (ws.model) {
                    result.diagnostics.push_back(make_error("duplicate model block '" + m->name + "' (model '" +
                                                                ws.model->name + "' already loaded)",
                                                            m->location));
                } else {
                    ws.model = *m;
                }
            } else if (const auto* c = std::get_if<Catalog>(&item)) {
                if (catalog) {
                    result.diagnostics.push_back(make_error("duplicate catalog block", c->location));
                } else {
                    catalog = *c;
                }
            } else if (const auto* rs = std::get_if<RuleSet>(&item)) {
                ws.rules.insert(ws.rules.end(), rs->rules.begin(), rs->rules.end());
            } else if (const auto* s = std::get_if<PetScenario>(&item)) {
                ws.scenarios.push_back(*s);
            }
        }
    }

    if (catalog) {
        ws.catalog = std::move(*catalog);
        ws.default_catalog_in_use = false;
    } else {
        ws.catalog = default_catalog();
    }
    sort_diagnostics(result.diagnostics);
    return result;
}

namespace {

void check_groups(const Expr& e, const Model* model, const Rule& rule, std::vector<Diagnostic>& out) {
    if (e.op == Expr::Op::in_group) {
        if (model != nullptr && model->find_scope(e.value) == nullptr) {
            out.push_back(make_error("rule for '" + rule.threat + "' references undeclared group '" + e.value + "'",
                                     rule.location));
        }
    }
    for (const auto& child : e.operands) check_groups(child, model, rule, out);
}

}  // namespace

std::vector<Diagnostic> validate_workspace(const Workspace& ws, const ValidationOptions& options) {
    std::vector<Diagnostic> out = validate_catalog(ws.catalog);
    const Model* model = ws.model ? &*ws.model : nullptr;

    if (model != nullptr) {
        auto model_diags = validate_model(*model, options);
        out.insert(out.end(), model_diags.begin(), model_diags.end());
        for (const auto& mark : model->marks) {
            for (const auto& id : mark.threats) {
                if (ws.catalog.find(id) == nullptr) {
                    out.push_back(make_error("mark on flow '" + mark.flow + "' references unknown threat '" + id + "'",
                                             mark.location));
                }
            }
        }
    }

    for (const auto& rule : ws.rules) {
        if (ws.catalog.find(rule.threat) == nullptr) {
            out.push_back(make_error("rule references unknown threat '" + rule.threat + "'", rule.location));
        }
        check_groups(rule.predicate, model, rule, out);
    }

    std::set<std::string> scenario_names;
    for (const auto& s : ws.scenarios) {
        if (!scenario_names.insert(s.name).second) {
            out.push_back(make_error("duplicate scenario '" + s.name + "'", s.location));
        }
        if (s.clears.empty()) {
            out.push_back(make_error("scenario '" + s.name + "' clears no groups", s.location));
        }
        for (const auto& scope : s.clears) {
            if (model != nullptr && model->find_scope(scope) == nullptr) {
                out.push_back(make_error("scenario '" + s.name + "' clears undeclared group '" + scope + "'", s.location));
            }
        }
        if (s.threat_filter) {
            for (const auto& id : *s.threat_filter) {
                if (ws.catalog.find(id) == nullptr) {
                    out.push_back(make_error("scenario '" + s.name + "' filters on unknown threat '" + id + "'", s.location));
                }
            }
        }
    }

    sort_diagnostics(out);
    return out;
}

}  // namespace tmac
