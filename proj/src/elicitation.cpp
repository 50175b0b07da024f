#include "tmac/elicitation.hpp"

#include <algorithm>

namespace tmac {

MarkingMatrix::MarkingMatrix(std::vector<Interaction> interactions, std::vector<std::string> threats)
    : interactions_(std::move(interactions)),
      threats_(std::move(threats)),
      cells_(interactions_.size() * threats_.size()) {}

const Cell& MarkingMatrix::cell(std::size_t interaction, std::size_t threat) const {
    return cells_.at(interaction * threats_.size() + threat);
}

Cell& MarkingMatrix::cell(std::size_t interaction, std::size_t threat) {
    return cells_.at(interaction * threats_.size() + threat);
}

std::optional<std::size_t> MarkingMatrix::threat_index(std::string_view id) const {
    auto it = std::find(threats_.begin(), threats_.end(), id);
    if (it == threats_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - threats_.begin());
}

std::optional<std::size_t> MarkingMatrix::interaction_index(std::string_view flow_id) const {
    auto it = std::find_if(interactions_.begin(), interactions_.end(),
                           [&](const Interaction& i) { return i.flow == flow_id; });
    if (it == interactions_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - interactions_.begin());
}

namespace {

bool test_element(const Expr& e, const Element* element) {
    if (element == nullptr) return false;
    switch (e.field) {
        case Field::kind: return to_string(element->kind) == e.value;
        case Field::layer: return element->layer && *element->layer == e.value;
        case Field::tags: return element->has_tag(e.value);
        case Field::payload: return false;
    }
    return false;
}

void collect_groups(const Expr& e, std::vector<std::string>& out) {
    if (e.op == Expr::Op::in_group) out.push_back(e.value);
    for (const auto& child : e.operands) collect_groups(child, out);
}

}  // namespace

bool evaluate(const Expr& e, const Interaction& interaction, const Model& model) {
    switch (e.op) {
        case Expr::Op::all_of:
            return std::all_of(e.operands.begin(), e.operands.end(),
                               [&](const Expr& child) { return evaluate(child, interaction, model); });
        case Expr::Op::any_of:
            return std::any_of(e.operands.begin(), e.operands.end(),
                               [&](const Expr& child) { return evaluate(child, interaction, model); });
        case Expr::Op::negate:
            return !evaluate(e.operands.front(), interaction, model);
        case Expr::Op::in_group: {
            const Scope* scope = model.find_scope(e.value);
            return scope != nullptr && scope->contains(interaction.flow);
        }
        case Expr::Op::test:
            switch (e.selector) {
                case Selector::source: return test_element(e, model.find_element(interaction.source));
                case Selector::dest: return test_element(e, model.find_element(interaction.destination));
                case Selector::flow: {
                    const Flow* flow = model.find_flow(interaction.flow);
                    return flow != nullptr && e.field == Field::payload && flow->carries(e.value);
                }
            }
    }
    return false;
}

bool evaluate_rule(const Rule& rule, const Interaction& interaction, const Model& model) {
    return evaluate(rule.predicate, interaction, model);
}

MarkingMatrix elicit(const Model& model, const Catalog& catalog, std::span<const Rule> rules) {
    std::vector<std::string> threat_ids;
    threat_ids.reserve(catalog.threats.size());
    for (const auto& t : catalog.threats) threat_ids.push_back(t.id);

    MarkingMatrix matrix(enumerate_interactions(model), std::move(threat_ids));

    for (std::size_t r = 0; r < rules.size(); ++r) {
        const Rule& rule = rules[r];
        const auto t = matrix.threat_index(rule.threat);
        if (!t) throw Error("rule references unknown threat '" + rule.threat + "'");
        std::vector<std::string> groups;
        collect_groups(rule.predicate, groups);
        for (const auto& g : groups) {
            if (model.find_scope(g) == nullptr) {
                throw Error("rule for '" + rule.threat + "' references undeclared group '" + g + "'");
            }
        }
        for (std::size_t i = 0; i < matrix.interaction_count(); ++i) {
            if (evaluate_rule(rule, matrix.interactions()[i], model)) {
                matrix.cell(i, *t).sources.push_back(Provenance{Provenance::Kind::rule, r});
            }
        }
    }

    for (const auto& mark : model.marks) {
        const auto i = matrix.interaction_index(mark.flow);
        if (!i) throw Error("mark references undeclared flow '" + mark.flow + "'");
        for (const auto& id : mark.threats) {
            const auto t = matrix.threat_index(id);
            if (!t) throw Error("mark on flow '" + mark.flow + "' references unknown threat '" + id + "'");
            if (mark.mode == MarkMode::include) {
                Cell& c = matrix.cell(*i, *t);
                const Provenance p{Provenance::Kind::explicit_mark, 0};
                if (std::find(c.sources.begin(), c.sources.end(), p) == c.sources.end()) {
                    c.sources.insert(c.sources.begin(), p);
                }
            }
        }
    }

    // Exclusions dominate whatever rules or marks contributed.
    for (const auto& mark : model.marks) {
        if (mark.mode != MarkMode::exclude) continue;
        const std::size_t i = *matrix.interaction_index(mark.flow);
        for (const auto& id : mark.threats) {
            Cell& c = matrix.cell(i, *matrix.threat_index(id));
            c.sources.clear();
            c.excluded = true;
        }
    }
    return matrix;
}

std::size_t occurrences(const MarkingMatrix& matrix, std::string_view threat) {
    const auto t = matrix.threat_index(threat);
    if (!t) throw Error("unknown threat '" + std::string(threat) + "'");
    std::size_t n = 0;
    for (std::size_t i = 0; i < matrix.interaction_count(); ++i) {
        if (matrix.marked(i, *t)) ++n;
    }
    return n;
}

std::size_t occurrences(const MarkingMatrix& matrix, std::string_view threat, const Model& model,
                        std::string_view scope_name) {
    const auto t = matrix.threat_index(threat);
    if (!t) throw Error("unknown threat '" + std::string(threat) + "'");
    const Scope* scope = model.find_scope(scope_name);
    if (scope == nullptr) throw Error("unknown group '" + std::string(scope_name) + "'");
    std::size_t n = 0;
    for (std::size_t i = 0; i < matrix.interaction_count(); ++i) {
        if (scope->contains(matrix.interactions()[i].flow) && matrix.marked(i, *t)) ++n;
    }
    return n;
}

}  // namespace tmac
