#include "tmac/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <unordered_set>
#include <utility>

namespace tmac {
namespace {

constexpr std::array<std::pair<Misactor, std::string_view>, 8> kMisactorNames{{
    {Misactor::unskilled_insider, "unskilled-insider"},
    {Misactor::skilled_insider, "skilled-insider"},
    {Misactor::skilled_outsider, "skilled-outsider"},
    {Misactor::security_agent, "security-agent"},
    {Misactor::government_authority, "government-authority"},
    {Misactor::service_provider, "service-provider"},
    {Misactor::third_party_provider, "third-party-provider"},
    {Misactor::cloud_provider, "cloud-provider"},
}};

Threat threat(std::string id, std::string name, std::vector<std::string> aggravates, std::vector<Misactor> misactors,
              std::vector<std::string> assets) {
    Threat t;
    t.id = std::move(id);
    t.name = std::move(name);
    t.aggravates = std::move(aggravates);
    t.misactors = std::move(misactors);
    t.assets = std::move(assets);
    return t;
}

}  // namespace

std::string_view to_string(Misactor m) {
    for (const auto& [kind, name] : kMisactorNames) {
        if (kind == m) return name;
    }
    return "unskilled-insider";
}

std::optional<Misactor> parse_misactor(std::string_view token) {
    for (const auto& [kind, name] : kMisactorNames) {
        if (name == token) return kind;
    }
    return std::nullopt;
}

int aggravation_count(const Threat& t) {
    std::set<std::string_view> distinct(t.aggravates.begin(), t.aggravates.end());
    return static_cast<int>(distinct.size());
}

int consequence(const Threat& t) {
    return t.initial_consequence + aggravation_count(t);
}

const Threat* Catalog::find(std::string_view id) const {
    auto it = std::find_if(threats.begin(), threats.end(), [&](const Threat& t) { return t.id == id; });
    return it == threats.end() ? nullptr : &*it;
}

Catalog default_catalog() {
    using enum Misactor;
    Catalog c;
    c.threats = {
        threat("T1", "Identification of SH element", {"T2"}, {skilled_insider, unskilled_insider},
               {"smart device data", "gateway data"}),
        threat("T2", "Identification of SH user", {"T5", "T6"}, {skilled_insider, skilled_outsider},
               {"SH user sensitive information (PII)", "login details"}),
        threat("T3", "Localization and tracking", {"T4"},
               {service_provider, cloud_provider, security_agent, government_authority},
               {"SH user", "smart device", "SH user and device location and activities"}),
        threat("T4", "Profiling", {"T3"}, {service_provider, cloud_provider, skilled_outsider}, {"SH users"}),
        threat("T5", "Impersonation", {"T1", "T2"}, {skilled_insider, skilled_outsider},
               {"SH users' access credentials"}),
        threat("T6", "Linkage (SH user)", {"T2", "T4"},
               {skilled_insider, skilled_outsider, service_provider, government_authority},
               {"SH users' personal information"}),
        threat("T7", "Linkage (SH element's data)", {"T1", "T2"},
               {skilled_insider, skilled_outsider, service_provider, government_authority},
               {"smart devices", "gateways"}),
        threat("T8", "Data leakage", {"T1", "T2", "T6", "T7"}, {skilled_insider, skilled_outsider, government_authority},
               {"smart device data", "gateway data", "SH users' information"}),
        threat("T9", "Jurisdiction risk", {}, {skilled_insider, skilled_outsider, service_provider},
               {"smart device data", "gateway data", "SH users' information"}),
        threat("T10", "Life cycle transition", {"T2", "T7"}, {skilled_outsider},
               {"smart device data", "gateway data", "SH users' information"}),
        threat("T11", "Inventory attack", {"T1", "T2", "T3", "T4"}, {skilled_outsider, security_agent, government_authority},
               {"smart device data", "gateway data", "SH users' information"}),
    };
    return c;
}

std::vector<Diagnostic> validate_catalog(const Catalog& catalog) {
    std::vector<Diagnostic> out;
    std::unordered_set<std::string> ids;
    for (const auto& t : catalog.threats) {
        if (!ids.insert(t.id).second) {
            out.push_back(make_error("duplicate threat id '" + t.id + "'", t.location));
        }
    }
    for (const auto& t : catalog.threats) {
        if (t.initial_consequence < 0) {
            out.push_back(make_error("threat '" + t.id + "' has a negative initial consequence", t.location));
        }
        for (const auto& target : t.aggravates) {
            if (target == t.id) {
                out.push_back(make_error("threat '" + t.id + "' aggravates itself", t.location));
            } else if (catalog.find(target) == nullptr) {
                out.push_back(make_error("threat '" + t.id + "' aggravates undeclared threat '" + target + "'", t.location));
            }
        }
    }
    sort_diagnostics(out);
    return out;
}

int compare_threat_ids(std::string_view a, std::string_view b) {
    auto split = [](std::string_view s) {
        std::size_t cut = s.size();
        while (cut > 0 && std::isdigit(static_cast<unsigned char>(s[cut - 1]))) --cut;
        return std::pair{s.substr(0, cut), s.substr(cut)};
    };
    const auto [pa, da] = split(a);
    const auto [pb, db] = split(b);
    if (const int c = pa.compare(pb); c != 0) return c < 0 ? -1 : 1;
    if (!da.empty() && !db.empty()) {
        // Compare digit strings numerically without overflow: strip leading zeros, then length, then lexically.
        auto strip = [](std::string_view d) {
            const auto nz = d.find_first_not_of('0');
            return nz == std::string_view::npos ? std::string_view{} : d.substr(nz);
        };
        const auto na = strip(da);
        const auto nb = strip(db);
        if (na.size() != nb.size()) return na.size() < nb.size() ? -1 : 1;
        if (const int c = na.compare(nb); c != 0) return c < 0 ? -1 : 1;
    } else if (da.empty() != db.empty()) {
        return da.empty() ? -1 : 1;
    }
    const int c = a.compare(b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

bool PetScenario::applies_to(std::string_view threat_id) const {
    if (!threat_filter) return true;
    return std::find(threat_filter->begin(), threat_filter->end(), threat_id) != threat_filter->end();
}

}  // namespace tmac
