#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmac/diagnostic.hpp"

namespace tmac {

enum class Misactor {
    unskilled_insider,
    skilled_insider,
    skilled_outsider,
    security_agent,
    government_authority,
    service_provider,
    third_party_provider,
    cloud_provider,
};

std::string_view to_string(Misactor m);
std::optional<Misactor> parse_misactor(std::string_view token);

/// A privacy threat with its documentation template fields.
///
/// Misactors and assets are report metadata; only `initial_consequence` and
/// the size of `aggravates` enter the score.
struct Threat {
    std::string id;
    std::string name;
    int initial_consequence = 1;
    std::vector<std::string> aggravates;
    std::vector<Misactor> misactors;
    std::vector<std::string> assets;
    SourceLocation location;

    bool operator==(const Threat&) const = default;
};

/// Number of other threats this one aggravates (duplicates counted once).
int aggravation_count(const Threat& threat);

/// C = I + Ta.
int consequence(const Threat& threat);

struct Catalog {
    std::vector<Threat> threats;
    SourceLocation location;

    const Threat* find(std::string_view id) const;
    bool operator==(const Catalog&) const = default;
};

/// The bundled eleven-threat smart-home catalog.
Catalog default_catalog();

/// Unique ids, no self-aggravation, every aggravation target declared,
/// non-negative initial consequence.
std::vector<Diagnostic> validate_catalog(const Catalog& catalog);

/// Threat id ordering: non-digit prefix lexicographically, then the trailing
/// integer numerically, so T2 < T10. Returns <0, 0, >0.
int compare_threat_ids(std::string_view a, std::string_view b);

/// A PET deployment: clears markings inside the named scopes.
struct PetScenario {
    std::string name;
    std::vector<std::string> clears;
    std::optional<std::vector<std::string>> threat_filter;  // nullopt: every threat
    std::vector<std::string> pets;                          // descriptive labels only
    SourceLocation location;

    bool applies_to(std::string_view threat_id) const;
    bool operator==(const PetScenario&) const = default;
};

}  // namespace tmac
