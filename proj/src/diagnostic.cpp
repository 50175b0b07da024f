#include "tmac/diagnostic.hpp"

#include <algorithm>

namespace tmac {

Diagnostic make_error(std::string message, SourceLocation where) {
    return Diagnostic{Severity::error, std::move(message), std::move(where)};
}

Diagnostic make_warning(std::string message, SourceLocation where) {
    return Diagnostic{Severity::warning, std::move(message), std::move(where)};
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
    return count_errors(diagnostics) > 0;
}

std::size_t count_errors(std::span<const Diagnostic> diagnostics) {
    return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
        return d.severity == Severity::error;
    }));
}

void sort_diagnostics(std::vector<Diagnostic>& diagnostics) {
    std::stable_sort(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
        if (a.location.source != b.location.source) return a.location.source < b.location.source;
        if (a.location.line != b.location.line) return a.location.line < b.location.line;
        return a.location.column < b.location.column;
    });
}

std::string format_diagnostic(const Diagnostic& d) {
    std::string out = d.location.source.empty() ? std::string("<input>") : d.location.source;
    out += ':' + std::to_string(d.location.line) + ':' + std::to_string(d.location.column) + ": ";
    out += d.severity == Severity::error ? "error: " : "warning: ";
    out += d.message;
    return out;
}

}  // namespace tmac
