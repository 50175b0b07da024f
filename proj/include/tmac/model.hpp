#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmac/diagnostic.hpp"

namespace tmac {

enum class ElementKind { entity, process, store };

std::string_view to_string(ElementKind kind);
std::optional<ElementKind> parse_element_kind(std::string_view token);

/// The four layers of the smart-home reference model. Reporting metadata only.
inline constexpr std::string_view kLayers[] = {"application", "event-processing", "aggregation", "device"};

bool is_known_layer(std::string_view token);

/// True when `token` matches [a-zA-Z_][a-zA-Z0-9_-]*.
bool is_identifier(std::string_view token);

struct Element {
    std::string id;
    std::string name;
    ElementKind kind = ElementKind::process;
    std::vector<std::string> tags;
    std::optional<std::string> layer;
    SourceLocation location;

    bool has_tag(std::string_view tag) const;
    bool operator==(const Element&) const = default;
};

/// A unidirectional data flow; request/response pairs are two flows.
struct Flow {
    std::string id;
    std::string label;
    std::string source;
    std::string destination;
    std::vector<std::string> payload;
    SourceLocation location;

    bool carries(std::string_view tag) const;
    bool operator==(const Flow&) const = default;
};

/// Named process group: an ordered set of flow ids.
struct Scope {
    std::string name;
    std::vector<std::string> members;
    SourceLocation location;

    bool contains(std::string_view flow_id) const;
    bool operator==(const Scope&) const = default;
};

enum class MarkMode { include, exclude };

/// One `mark` / `unmark` statement: forces threats on (or off) for a flow.
struct MarkStatement {
    std::string flow;
    std::vector<std::string> threats;
    MarkMode mode = MarkMode::include;
    SourceLocation location;

    bool operator==(const MarkStatement&) const = default;
};

struct Model {
    std::string name;
    std::vector<Element> elements;
    std::vector<Flow> flows;
    std::vector<Scope> scopes;
    std::vector<MarkStatement> marks;
    std::vector<std::string> notes;
    SourceLocation location;

    const Element* find_element(std::string_view id) const;
    const Flow* find_flow(std::string_view id) const;
    const Scope* find_scope(std::string_view name) const;

    bool operator==(const Model&) const = default;
};

/// A source-flow-destination triple, the unit of threat elicitation.
struct Interaction {
    std::string source;
    std::string flow;
    std::string destination;
    std::size_t ordinal = 0;

    bool operator==(const Interaction&) const = default;
};

struct ValidationOptions {
    /// Warn on flows that touch no process (classic DFD style rule).
    bool dfd_style_warnings = true;
};

/// Structural checks: id uniqueness, reference resolution, layer vocabulary.
/// Returns diagnostics sorted by location; empty when the model is sound.
std::vector<Diagnostic> validate_model(const Model& model, const ValidationOptions& options = {});

/// One interaction per flow, in declaration order. Throws tmac::Error if the
/// model does not validate.
std::vector<Interaction> enumerate_interactions(const Model& model);

/// Interactions whose flow belongs to `scope_name`, in declaration order.
/// Throws tmac::Error for an undeclared scope.
std::vector<Interaction> scope_members(const Model& model, std::string_view scope_name);

}  // namespace tmac
