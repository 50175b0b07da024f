#include <sstream>

#include "tmac/dsl.hpp"

namespace tmac::dsl {

std::string quote(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

namespace {

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out = "[";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i > 0) out += ", ";
        out += ids[i];
    }
    return out + "]";
}

std::string join_strings(const std::vector<std::string>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ", ";
        out += quote(values[i]);
    }
    return out + "]";
}

std::string render_expr(const Expr& e);

// Children of an n-ary node are parenthesized when they would otherwise be
// absorbed into the parent (same operator) or bind more loosely (or in and).
std::string render_operand(const Expr& child, Expr::Op parent) {
    const bool wrap = (child.op == Expr::Op::all_of || child.op == Expr::Op::any_of) &&
                      (child.op == parent || child.op == Expr::Op::any_of || parent == Expr::Op::negate);
    const bool wrap_negated = parent == Expr::Op::negate && child.op == Expr::Op::negate;
    std::string inner = render_expr(child);
    return wrap || wrap_negated ? "(" + inner + ")" : inner;
}

std::string render_expr(const Expr& e) {
    switch (e.op) {
        case Expr::Op::test:
            return std::string(to_string(e.selector)) + "." + std::string(to_string(e.field)) +
                   (e.comparison == Comparison::equals ? " == " : " has ") + e.value;
        case Expr::Op::in_group:
            return "in group " + e.value;
        case Expr::Op::negate:
            return "not " + render_operand(e.operands.front(), Expr::Op::negate);
        case Expr::Op::all_of:
        case Expr::Op::any_of: {
            const char* joiner = e.op == Expr::Op::all_of ? " and " : " or ";
            std::string out;
            for (std::size_t i = 0; i < e.operands.size(); ++i) {
                if (i > 0) out += joiner;
                out += render_operand(e.operands[i], e.op);
            }
            return out;
        }
    }
    return {};
}

void render_model(const Model& m, std::ostringstream& os) {
    os << "model " << quote(m.name) << " {\n";
    for (const auto& e : m.elements) {
        os << "  element " << e.id << " kind=" << to_string(e.kind);
        if (!e.tags.empty()) os << " tags=" << join_ids(e.tags);
        if (e.layer) os << " layer=" << *e.layer;
        if (!e.name.empty()) os << " name=" << quote(e.name);
        os << '\n';
    }
    for (const auto& f : m.flows) {
        os << "  flow " << f.id << " from=" << f.source << " to=" << f.destination;
        if (!f.label.empty()) os << " label=" << quote(f.label);
        if (!f.payload.empty()) os << " payload=" << join_ids(f.payload);
        os << '\n';
    }
    for (const auto& s : m.scopes) {
        os << "  group " << s.name << " {";
        for (std::size_t i = 0; i < s.members.size(); ++i) {
            os << (i == 0 ? " " : ", ") << s.members[i];
        }
        os << " }\n";
    }
    for (const auto& mark : m.marks) {
        os << "  " << (mark.mode == MarkMode::include ? "mark " : "unmark ") << mark.flow
           << " threats=" << join_ids(mark.threats) << '\n';
    }
    for (const auto& note : m.notes) {
        os << "  note " << quote(note) << '\n';
    }
    os << "}\n";
}

void render_catalog(const Catalog& c, std::ostringstream& os) {
    os << "catalog {\n";
    for (const auto& t : c.threats) {
        os << "  threat " << t.id << " name=" << quote(t.name);
        if (t.initial_consequence != 1) os << " i=" << t.initial_consequence;
        if (!t.aggravates.empty()) os << " aggravates=" << join_ids(t.aggravates);
        if (!t.misactors.empty()) {
            std::vector<std::string> names;
            for (auto m : t.misactors) names.emplace_back(to_string(m));
            os << " misactors=" << join_ids(names);
        }
        if (!t.assets.empty()) os << " assets=" << join_strings(t.assets);
        os << '\n';
    }
    os << "}\n";
}

void render_rules(const RuleSet& rs, std::ostringstream& os) {
    os << "rules {\n";
    for (const auto& r : rs.rules) {
        os << "  rule " << r.threat << " when " << render_expr(r.predicate) << '\n';
    }
    os << "}\n";
}

void render_scenario(const PetScenario& s, std::ostringstream& os) {
    os << "scenario " << quote(s.name) << " {\n";
    os << "  clears=" << join_ids(s.clears) << '\n';
    if (s.threat_filter) os << "  threats=" << join_ids(*s.threat_filter) << '\n';
    if (!s.pets.empty()) os << "  pets=" << join_strings(s.pets) << '\n';
    os << "}\n";
}

}  // namespace

std::string render(const Document& document) {
    std::ostringstream os;
    bool first = true;
    for (const auto& item : document.items) {
        if (!first) os << '\n';
        first = false;
        std::visit(
            [&](const auto& block) {
                using T = std::decay_t<decltype(block)>;
                if constexpr (std::is_same_v<T, Model>) {
                    render_model(block, os);
                } else if constexpr (std::is_same_v<T, Catalog>) {
                    render_catalog(block, os);
                } else if constexpr (std::is_same_v<T, RuleSet>) {
                    render_rules(block, os);
                } else {
                    render_scenario(block, os);
                }
            },
            item);
    }
    return os.str();
}

}  // namespace tmac::dsl
