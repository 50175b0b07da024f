#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tmac/catalog.hpp"
#include "tmac/diagnostic.hpp"
#include "tmac/model.hpp"
#include "tmac/rules.hpp"

namespace tmac::dsl {

using Item = std::variant<Model, Catalog, RuleSet, PetScenario>;

/// A parsed `.tma` file: model, catalog, rules and scenario blocks in source order.
struct Document {
    std::string source_name;
    std::vector<Item> items;

    const Model* model() const;
    const Catalog* catalog() const;
    std::vector<const RuleSet*> rule_sets() const;
    std::vector<const PetScenario*> scenarios() const;

    /// Structural equality: items only, source name and locations ignored.
    friend bool operator==(const Document& a, const Document& b) { return a.items == b.items; }
};

struct ParseResult {
    std::optional<Document> document;  // set iff diagnostics holds no error
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return document.has_value(); }
};

/// Parses `.tma` text. Never throws on malformed input; errors come back as
/// diagnostics ordered by (line, column).
ParseResult parse(std::string_view text, std::string source_name = {});

/// Canonical text: one statement per line, two-space indent, attributes in
/// grammar order, blank line between blocks.
std::string render(const Document& document);

/// Quotes and escapes a string literal the way render() does.
std::string quote(std::string_view text);

}  // namespace tmac::dsl
