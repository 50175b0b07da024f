#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmac {

/// Position of a node in its source text (1-based). Zero means synthesized.
///
/// Locations are provenance, not content: two nodes that differ only in where
/// they were written compare equal, so reformatted documents stay equal.
struct SourceLocation {
    int line = 0;
    int column = 0;
    std::string source;  // file or buffer name, may be empty

    friend bool operator==(const SourceLocation&, const SourceLocation&) { return true; }
};

enum class Severity { error, warning };

struct Diagnostic {
    Severity severity = Severity::error;
    std::string message;
    SourceLocation location;
};

Diagnostic make_error(std::string message, SourceLocation where);
Diagnostic make_warning(std::string message, SourceLocation where);

bool has_errors(std::span<const Diagnostic> diagnostics);
std::size_t count_errors(std::span<const Diagnostic> diagnostics);

/// Stable sort by (source, line, column); ties keep emission order.
void sort_diagnostics(std::vector<Diagnostic>& diagnostics);

/// "source:line:column: error: message"
std::string format_diagnostic(const Diagnostic& d);

/// Raised when an operation is invoked on inputs that violate its
/// preconditions (unknown scope, unvalidated model, incomparable reports...).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tmac
