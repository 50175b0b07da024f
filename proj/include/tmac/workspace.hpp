#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tmac/catalog.hpp"
#include "tmac/diagnostic.hpp"
#include "tmac/dsl.hpp"
#include "tmac/model.hpp"
#include "tmac/rules.hpp"

namespace tmac {

/// Everything needed for an analysis, merged from one or more documents.
struct Workspace {
    std::optional<Model> model;
    Catalog catalog;
    bool default_catalog_in_use = true;
    std::vector<Rule> rules;
    std::vector<PetScenario> scenarios;

    const PetScenario* find_scenario(std::string_view name) const;
};

struct MergeResult {
    Workspace workspace;
    std::vector<Diagnostic> diagnostics;  // duplicate model/catalog across documents
};

/// Concatenates blocks in document order. Falls back to default_catalog()
/// when no document carries a catalog block.
MergeResult merge_documents(std::span<const dsl::Document> documents);

/// Cross-block checks on top of validate_model/validate_catalog: mark and rule
/// threats resolve, rule groups exist, scenario scopes/threat filters resolve.
/// Group references are only checked when a model is loaded.
std::vector<Diagnostic> validate_workspace(const Workspace& workspace, const ValidationOptions& options = {});

}  // namespace tmac
