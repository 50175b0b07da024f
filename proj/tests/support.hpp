#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmac/dsl.hpp"
#include "tmac/workspace.hpp"

namespace tmac::testing {

inline std::string reference_path(const std::string& file) {
    return std::string(TMAC_REFERENCE_DIR) + "/" + file;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline dsl::Document parse_or_throw(const std::string& text, const std::string& name = "test.tma") {
    auto result = dsl::parse(text, name);
    if (!result.ok()) {
        std::string msg = "parse failed:";
        for (const auto& d : result.diagnostics) msg += "\n  " + format_diagnostic(d);
        throw std::runtime_error(msg);
    }
    return std::move(*result.document);
}

/// The model block of `text`, by value (the document itself is discarded).
inline std::optional<Model> model_of(const std::string& text) {
    const auto doc = parse_or_throw(text);
    if (doc.model() == nullptr) return std::nullopt;
    return *doc.model();
}

inline dsl::Document reference_document(const std::string& file) {
    return parse_or_throw(read_text(reference_path(file)), file);
}

inline Model reference_model() {
    return *reference_document("smart-home.tma").model();
}

inline Catalog reference_catalog() {
    return *reference_document("linddun-sh.tma").catalog();
}

inline PetScenario reference_scenario() {
    return *reference_document("masking-e2ee.tma").scenarios().front();
}

inline const std::vector<std::string>& threat_ids() {
    static const std::vector<std::string> ids{"T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "T9", "T10", "T11"};
    return ids;
}

}  // namespace tmac::testing
