#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tmac/catalog.hpp"
#include "tmac/model.hpp"
#include "tmac/rules.hpp"

namespace tmac {

/// Why a cell was marked.
struct Provenance {
    enum class Kind { explicit_mark, rule };

    Kind kind = Kind::explicit_mark;
    std::size_t rule_ordinal = 0;  // index into the rule list, for Kind::rule

    bool operator==(const Provenance&) const = default;
};

/// One interaction x threat cell. A cell is marked when elicitation found a
/// reason for it and no PET scenario has cleared it since; provenance is kept
/// after clearing so reports can show what was removed.
struct Cell {
    std::vector<Provenance> sources;
    bool excluded = false;            // explicit `unmark`; sources is empty then
    std::set<std::string> cleared_by;  // scenario names

    bool marked() const { return !sources.empty() && cleared_by.empty(); }
    bool operator==(const Cell&) const = default;
};

/// The interaction x threat table.
class MarkingMatrix {
public:
    MarkingMatrix() = default;
    MarkingMatrix(std::vector<Interaction> interactions, std::vector<std::string> threats);

    const std::vector<Interaction>& interactions() const { return interactions_; }
    const std::vector<std::string>& threats() const { return threats_; }
    std::size_t interaction_count() const { return interactions_.size(); }
    std::size_t threat_count() const { return threats_.size(); }

    const Cell& cell(std::size_t interaction, std::size_t threat) const;
    Cell& cell(std::size_t interaction, std::size_t threat);
    bool marked(std::size_t interaction, std::size_t threat) const { return cell(interaction, threat).marked(); }

    std::optional<std::size_t> threat_index(std::string_view id) const;
    std::optional<std::size_t> interaction_index(std::string_view flow_id) const;

    bool operator==(const MarkingMatrix&) const = default;

private:
    std::vector<Interaction> interactions_;
    std::vector<std::string> threats_;
    std::vector<Cell> cells_;  // row-major, one row per interaction
};

/// Truth value of `expr` on one interaction.
bool evaluate(const Expr& expr, const Interaction& interaction, const Model& model);
bool evaluate_rule(const Rule& rule, const Interaction& interaction, const Model& model);

/// cell(i, t) = (some rule for t holds on i, or `mark`) and not `unmark`.
/// Throws tmac::Error when a rule or mark names an unknown threat or a rule
/// tests an undeclared group.
MarkingMatrix elicit(const Model& model, const Catalog& catalog, std::span<const Rule> rules);

/// Tn: marked cells for `threat` over all interactions.
std::size_t occurrences(const MarkingMatrix& matrix, std::string_view threat);

/// Tu/Td style scoped count: marked cells for `threat` restricted to the
/// flows of `scope`. Throws tmac::Error for an unknown threat or scope.
std::size_t occurrences(const MarkingMatrix& matrix, std::string_view threat, const Model& model,
                        std::string_view scope);

}  // namespace tmac
