#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tmac/diagnostic.hpp"

namespace tmac {

enum class Selector { source, dest, flow };
enum class Field { kind, layer, tags, payload };
enum class Comparison { equals, has };

std::string_view to_string(Selector s);
std::string_view to_string(Field f);

/// Boolean predicate over a single interaction.
struct Expr {
    enum class Op { all_of, any_of, negate, test, in_group };

    Op op = Op::test;
    std::vector<Expr> operands;  // all_of / any_of: >= 2, negate: exactly 1
    Selector selector = Selector::source;
    Field field = Field::kind;
    Comparison comparison = Comparison::equals;
    std::string value;  // comparison operand, or the group name for in_group

    static Expr test(Selector selector, Field field, Comparison comparison, std::string value);
    static Expr in_group(std::string group);
    static Expr negate(Expr operand);
    static Expr all_of(std::vector<Expr> operands);
    static Expr any_of(std::vector<Expr> operands);

    bool operator==(const Expr&) const = default;
};

/// `rule <threat> when <expr>`: the threat applies wherever the predicate holds.
struct Rule {
    std::string threat;
    Expr predicate;
    SourceLocation location;

    bool operator==(const Rule&) const = default;
};

struct RuleSet {
    std::vector<Rule> rules;
    SourceLocation location;

    bool operator==(const RuleSet&) const = default;
};

/// Whether `comparison` is permitted for `field`, and `field` for `selector`.
bool comparison_fits(Field field, Comparison comparison);
bool field_fits(Selector selector, Field field);

}  // namespace tmac
