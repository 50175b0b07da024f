#include "tmac/model.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace tmac {

std::string_view to_string(ElementKind kind) {
    switch (kind) {
        case ElementKind::entity: return "entity";
        case ElementKind::process: return "process";
        case ElementKind::store: return "store";
    }
    return "process";
}

std::optional<ElementKind> parse_element_kind(std::string_view token) {
    if (token == "entity") return ElementKind::entity;
    if (token == "process") return ElementKind::process;
    if (token == "store") return ElementKind::store;
    return std::nullopt;
}

bool is_known_layer(std::string_view token) {
    return std::find(std::begin(kLayers), std::end(kLayers), token) != std::end(kLayers);
}

bool is_identifier(std::string_view token) {
    if (token.empty()) return false;
    const auto head = static_cast<unsigned char>(token.front());
    if (!std::isalpha(head) && head != '_') return false;
    return std::all_of(token.begin() + 1, token.end(), [](char c) {
        const auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || c == '_' || c == '-';
    });
}

bool Element::has_tag(std::string_view tag) const {
    return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

bool Flow::carries(std::string_view tag) const {
    return std::find(payload.begin(), payload.end(), tag) != payload.end();
}

bool Scope::contains(std::string_view flow_id) const {
    return std::find(members.begin(), members.end(), flow_id) != members.end();
}

const Element* Model::find_element(std::string_view id) const {
    auto it = std::find_if(elements.begin(), elements.end(), [&](const Element& e) { return e.id == id; });
    return it == elements.end() ? nullptr : &*it;
}

const Flow* Model::find_flow(std::string_view id) const {
    auto it = std::find_if(flows.begin(), flows.end(), [&](const Flow& f) { return f.id == id; });
    return it == flows.end() ? nullptr : &*it;
}

const Scope* Model::find_scope(std::string_view name) const {
    auto it = std::find_if(scopes.begin(), scopes.end(), [&](const Scope& s) { return s.name == name; });
    return it == scopes.end() ? nullptr : &*it;
}

namespace {

bool is_lowercase_token(std::string_view tag) {
    return is_identifier(tag) &&
           std::none_of(tag.begin(), tag.end(), [](char c) { return std::isupper(static_cast<unsigned char>(c)); });
}

void check_tags(const std::vector<std::string>& tags, std::string_view owner, const SourceLocation& where,
                std::vector<Diagnostic>& out) {
    for (const auto& tag : tags) {
        if (!is_lowercase_token(tag)) {
            out.push_back(make_error("tag '" + tag + "' on '" + std::string(owner) + "' is not a lowercase token", where));
        }
    }
}

}  // namespace

std::vector<Diagnostic> validate_model(const Model& model, const ValidationOptions& options) {
    std::vector<Diagnostic> out;

    std::unordered_set<std::string> element_ids;
    for (const auto& e : model.elements) {
        if (!is_identifier(e.id)) {
            out.push_back(make_error("element id '" + e.id + "' is not a valid identifier", e.location));
        }
        if (!element_ids.insert(e.id).second) {
            out.push_back(make_error("duplicate element id '" + e.id + "'", e.location));
        }
        if (e.layer && !is_known_layer(*e.layer)) {
            out.push_back(make_error("element '" + e.id + "' has unknown layer '" + *e.layer +
                                         "' (expected application, event-processing, aggregation or device)",
                                     e.location));
        }
        check_tags(e.tags, e.id, e.location, out);
    }

    std::unordered_set<std::string> flow_ids;
    for (const auto& f : model.flows) {
        if (!is_identifier(f.id)) {
            out.push_back(make_error("flow id '" + f.id + "' is not a valid identifier", f.location));
        }
        if (!flow_ids.insert(f.id).second) {
            out.push_back(make_error("duplicate flow id '" + f.id + "'", f.location));
        }
        const Element* src = model.find_element(f.source);
        const Element* dst = model.find_element(f.destination);
        if (src == nullptr) {
            out.push_back(make_error("flow '" + f.id + "' references undeclared element '" + f.source + "'", f.location));
        }
        if (dst == nullptr && f.destination != f.source) {
            out.push_back(
                make_error("flow '" + f.id + "' references undeclared element '" + f.destination + "'", f.location));
        }
        if (options.dfd_style_warnings && src != nullptr && dst != nullptr && src->kind != ElementKind::process &&
            dst->kind != ElementKind::process) {
            out.push_back(make_warning("flow '" + f.id + "' connects two non-process elements ('" + f.source +
                                           "' -> '" + f.destination + "')",
                                       f.location));
        }
        check_tags(f.payload, f.id, f.location, out);
    }

    std::unordered_set<std::string> scope_names;
    for (const auto& s : model.scopes) {
        if (!scope_names.insert(s.name).second) {
            out.push_back(make_error("duplicate group '" + s.name + "'", s.location));
        }
        std::unordered_set<std::string> seen;
        for (const auto& member : s.members) {
            if (model.find_flow(member) == nullptr) {
                out.push_back(make_error("group '" + s.name + "' references undeclared flow '" + member + "'", s.location));
            } else if (!seen.insert(member).second) {
                out.push_back(make_warning("group '" + s.name + "' lists flow '" + member + "' twice", s.location));
            }
        }
    }

    for (const auto& m : model.marks) {
        if (model.find_flow(m.flow) == nullptr) {
            out.push_back(make_error(std::string(m.mode == MarkMode::include ? "mark" : "unmark") +
                                         " references undeclared flow '" + m.flow + "'",
                                     m.location));
        }
    }

    sort_diagnostics(out);
    return out;
}

std::vector<Interaction> enumerate_interactions(const Model& model) {
    const auto diagnostics = validate_model(model, ValidationOptions{.dfd_style_warnings = false});
    if (has_errors(diagnostics)) {
        const auto first = std::find_if(diagnostics.begin(), diagnostics.end(),
                                        [](const Diagnostic& d) { return d.severity == Severity::error; });
        throw Error("model '" + model.name + "' has validation errors: " + first->message);
    }
    std::vector<Interaction> out;
    out.reserve(model.flows.size());
    for (std::size_t i = 0; i < model.flows.size(); ++i) {
        const Flow& f = model.flows[i];
        out.push_back(Interaction{f.source, f.id, f.destination, i});
    }
    return out;
}

std::vector<Interaction> scope_members(const Model& model, std::string_view scope_name) {
    const Scope* scope = model.find_scope(scope_name);
    if (scope == nullptr) {
        throw Error("unknown group '" + std::string(scope_name) + "'");
    }
    std::vector<Interaction> out;
    for (auto& interaction : enumerate_interactions(model)) {
        if (scope->contains(interaction.flow)) out.push_back(std::move(interaction));
    }
    return out;
}

}  // namespace tmac
