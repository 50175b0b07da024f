#pragma once

// Random small threat models for property and oracle tests. Everything is
// driven by an explicit std::mt19937 so failures reproduce from the seed.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tmac/catalog.hpp"
#include "tmac/dsl.hpp"
#include "tmac/model.hpp"

namespace tmac::testing {

/// Raw description of a random case, independent of the library types.
struct RandomCase {
    int interactions = 0;
    int threats = 0;
    std::vector<int> initial;                        // I per threat
    std::vector<std::vector<int>> aggravates;        // per threat, may repeat
    std::vector<std::vector<int>> include;           // per flow, threat indices from `mark`
    std::vector<std::vector<int>> exclude;           // per flow, threat indices from `unmark`
    std::vector<std::vector<int>> scopes;            // flow indices per group
    std::vector<int> cleared;                        // group indices cleared by the scenario
    std::optional<std::vector<int>> threat_filter;   // threat indices, nullopt = all
};

inline int uniform(std::mt19937& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(std::mt19937& rng, double p = 0.5) {
    return std::bernoulli_distribution(p)(rng);
}

inline std::vector<int> random_subset(std::mt19937& rng, int n, double p) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i) {
        if (coin(rng, p)) out.push_back(i);
    }
    return out;
}

inline RandomCase random_case(std::mt19937& rng, int max_interactions = 12, int max_threats = 6) {
    RandomCase c;
    c.interactions = uniform(rng, 1, max_interactions);
    c.threats = uniform(rng, 1, max_threats);
    for (int t = 0; t < c.threats; ++t) {
        c.initial.push_back(uniform(rng, 0, 3));
        std::vector<int> agg;
        for (int k = 0; k < c.threats; ++k) {
            if (k != t && coin(rng, 0.35)) agg.push_back(k);
        }
        if (!agg.empty() && coin(rng, 0.2)) agg.push_back(agg.front());  // duplicates count once
        c.aggravates.push_back(agg);
    }
    const double density = std::uniform_real_distribution<double>(0.0, 0.9)(rng);
    for (int i = 0; i < c.interactions; ++i) {
        c.include.push_back(random_subset(rng, c.threats, density));
        c.exclude.push_back(random_subset(rng, c.threats, 0.1));
    }
    const int groups = uniform(rng, 1, 4);
    for (int g = 0; g < groups; ++g) c.scopes.push_back(random_subset(rng, c.interactions, 0.3));
    c.cleared = random_subset(rng, groups, 0.5);
    if (c.cleared.empty()) c.cleared.push_back(uniform(rng, 0, groups - 1));
    if (coin(rng, 0.4)) c.threat_filter = random_subset(rng, c.threats, 0.5);
    return c;
}

inline std::string threat_name(int t) { return "T" + std::to_string(t + 1); }
inline std::string flow_name(int i) { return "f" + std::to_string(i); }
inline std::string group_name(int g) { return "g" + std::to_string(g); }

inline Model to_model(const RandomCase& c, std::mt19937& rng) {
    Model m;
    m.name = "random";
    const int elements = std::max(2, c.interactions / 2);
    for (int e = 0; e < elements; ++e) {
        Element el;
        el.id = "e" + std::to_string(e);
        el.kind = static_cast<ElementKind>(uniform(rng, 0, 2));
        m.elements.push_back(el);
    }
    for (int i = 0; i < c.interactions; ++i) {
        Flow f;
        f.id = flow_name(i);
        f.source = "e" + std::to_string(uniform(rng, 0, elements - 1));
        f.destination = "e" + std::to_string(uniform(rng, 0, elements - 1));
        m.flows.push_back(f);
    }
    for (std::size_t g = 0; g < c.scopes.size(); ++g) {
        Scope s;
        s.name = group_name(static_cast<int>(g));
        for (int i : c.scopes[g]) s.members.push_back(flow_name(i));
        m.scopes.push_back(s);
    }
    for (int i = 0; i < c.interactions; ++i) {
        if (!c.include[static_cast<std::size_t>(i)].empty()) {
            MarkStatement mark{flow_name(i), {}, MarkMode::include, {}};
            for (int t : c.include[static_cast<std::size_t>(i)]) mark.threats.push_back(threat_name(t));
            m.marks.push_back(mark);
        }
    }
    for (int i = 0; i < c.interactions; ++i) {
        if (!c.exclude[static_cast<std::size_t>(i)].empty()) {
            MarkStatement mark{flow_name(i), {}, MarkMode::exclude, {}};
            for (int t : c.exclude[static_cast<std::size_t>(i)]) mark.threats.push_back(threat_name(t));
            m.marks.push_back(mark);
        }
    }
    // Shuffle statement order: include/exclude interleaving must not matter.
    std::shuffle(m.marks.begin(), m.marks.end(), rng);
    return m;
}

inline Catalog to_catalog(const RandomCase& c) {
    Catalog cat;
    for (int t = 0; t < c.threats; ++t) {
        Threat th;
        th.id = threat_name(t);
        th.name = "threat " + std::to_string(t + 1);
        th.initial_consequence = c.initial[static_cast<std::size_t>(t)];
        for (int k : c.aggravates[static_cast<std::size_t>(t)]) th.aggravates.push_back(threat_name(k));
        cat.threats.push_back(th);
    }
    return cat;
}

inline PetScenario to_scenario(const RandomCase& c, std::string name = "random-pet") {
    PetScenario s;
    s.name = std::move(name);
    for (int g : c.cleared) s.clears.push_back(group_name(g));
    if (c.threat_filter) {
        s.threat_filter.emplace();
        for (int t : *c.threat_filter) s.threat_filter->push_back(threat_name(t));
    }
    return s;
}

// -- random documents for DSL round-trips ----------------------------------

inline std::string random_ident(std::mt19937& rng) {
    static const std::string head = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_";
    static const std::string tail = "abcdefghijklmnopqrstuvwxyz0123456789_-";
    std::string s(1, head[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(head.size()) - 1))]);
    const int len = uniform(rng, 0, 8);
    for (int i = 0; i < len; ++i) s += tail[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(tail.size()) - 1))];
    return s;
}

inline std::string random_tag(std::mt19937& rng) {
    static const std::vector<std::string> tags{"user", "device", "third-party", "user-data", "device-data",
                                               "credential", "telemetry", "pii"};
    return tags[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(tags.size()) - 1))];
}

inline std::string random_text(std::mt19937& rng) {
    static const std::string alphabet = "abc XYZ 019 ,.;:()[]{}=#\"\\-+_'/\n";
    std::string s;
    const int len = uniform(rng, 0, 16);
    for (int i = 0; i < len; ++i) {
        s += alphabet[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(alphabet.size()) - 1))];
    }
    return s;
}

inline std::vector<std::string> random_list(std::mt19937& rng, int lo, int hi, std::string (*make)(std::mt19937&)) {
    std::vector<std::string> out;
    const int n = uniform(rng, lo, hi);
    for (int i = 0; i < n; ++i) out.push_back(make(rng));
    return out;
}

inline Expr random_expr(std::mt19937& rng, int depth) {
    const int pick = depth <= 0 ? uniform(rng, 0, 1) : uniform(rng, 0, 4);
    switch (pick) {
        case 0: {
            const Selector sel = static_cast<Selector>(uniform(rng, 0, 2));
            if (sel == Selector::flow) return Expr::test(sel, Field::payload, Comparison::has, random_tag(rng));
            const Field field = static_cast<Field>(uniform(rng, 0, 2));
            if (field == Field::kind) {
                static const char* kinds[] = {"entity", "process", "store"};
                return Expr::test(sel, field, Comparison::equals, kinds[uniform(rng, 0, 2)]);
            }
            if (field == Field::layer) {
                return Expr::test(sel, field, Comparison::equals, std::string(kLayers[uniform(rng, 0, 3)]));
            }
            return Expr::test(sel, field, Comparison::has, random_tag(rng));
        }
        case 1: return Expr::in_group(random_ident(rng));
        case 2: return Expr::negate(random_expr(rng, depth - 1));
        default: {
            std::vector<Expr> ops;
            const int n = uniform(rng, 2, 3);
            for (int i = 0; i < n; ++i) ops.push_back(random_expr(rng, depth - 1));
            return pick == 3 ? Expr::all_of(std::move(ops)) : Expr::any_of(std::move(ops));
        }
    }
}

inline dsl::Document random_document(std::mt19937& rng) {
    dsl::Document doc;
    doc.source_name = "random.tma";
    if (coin(rng, 0.8)) {
        Model m;
        m.name = random_text(rng);
        for (int i = uniform(rng, 0, 4); i > 0; --i) {
            Element e;
            e.id = random_ident(rng);
            e.kind = static_cast<ElementKind>(uniform(rng, 0, 2));
            if (coin(rng)) e.tags = random_list(rng, 1, 3, random_tag);
            if (coin(rng)) e.layer = random_ident(rng);
            if (coin(rng)) e.name = random_text(rng);
            m.elements.push_back(e);
        }
        for (int i = uniform(rng, 0, 4); i > 0; --i) {
            Flow f;
            f.id = random_ident(rng);
            f.source = random_ident(rng);
            f.destination = random_ident(rng);
            if (coin(rng)) f.label = random_text(rng);
            if (coin(rng)) f.payload = random_list(rng, 1, 3, random_tag);
            m.flows.push_back(f);
        }
        for (int i = uniform(rng, 0, 2); i > 0; --i) {
            m.scopes.push_back(Scope{random_ident(rng), random_list(rng, 0, 4, random_ident), {}});
        }
        for (int i = uniform(rng, 0, 3); i > 0; --i) {
            m.marks.push_back(MarkStatement{random_ident(rng), random_list(rng, 1, 3, random_ident),
                                            coin(rng) ? MarkMode::include : MarkMode::exclude, {}});
        }
        for (int i = uniform(rng, 0, 2); i > 0; --i) m.notes.push_back(random_text(rng));
        doc.items.emplace_back(std::move(m));
    }
    if (coin(rng, 0.6)) {
        Catalog c;
        for (int i = uniform(rng, 0, 4); i > 0; --i) {
            Threat t;
            t.id = random_ident(rng);
            t.name = random_text(rng);
            t.initial_consequence = uniform(rng, 0, 12);
            if (coin(rng)) t.aggravates = random_list(rng, 1, 3, random_ident);
            for (int k = uniform(rng, 0, 3); k > 0; --k) t.misactors.push_back(static_cast<Misactor>(uniform(rng, 0, 7)));
            if (coin(rng)) t.assets = random_list(rng, 1, 3, random_text);
            c.threats.push_back(t);
        }
        doc.items.emplace_back(std::move(c));
    }
    for (int i = uniform(rng, 0, 2); i > 0; --i) {
        RuleSet rs;
        for (int k = uniform(rng, 0, 3); k > 0; --k) {
            rs.rules.push_back(Rule{random_ident(rng), random_expr(rng, 3), {}});
        }
        doc.items.emplace_back(std::move(rs));
    }
    for (int i = uniform(rng, 0, 2); i > 0; --i) {
        PetScenario s;
        s.name = random_text(rng);
        s.clears = random_list(rng, 1, 3, random_ident);
        if (coin(rng)) s.threat_filter = random_list(rng, 1, 3, random_ident);
        if (coin(rng)) s.pets = random_list(rng, 1, 2, random_text);
        doc.items.emplace_back(std::move(s));
    }
    std::shuffle(doc.items.begin(), doc.items.end(), rng);
    return doc;
}

}  // namespace tmac::testing
