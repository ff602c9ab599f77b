#pragma once

#include "hori/qseries.hpp"

#include <memory>
#include <variant>

namespace hori::dsl {

/// 1-based line/column range inside the source text.
struct Span {
    int line = 0;
    int col = 0;
    int end_line = 0;
    int end_col = 0;

    bool empty() const { return line == 0; }
    std::string to_string() const;
};

struct Diagnostic {
    std::string message;
    Span span;
};

// --------------------------------------------------------------------------
// expression AST

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { literal, ident, add, sub, mul, neg, pow };
    Kind kind = Kind::literal;
    Scalar value;      // literal
    std::string name;  // ident
    ExprPtr lhs, rhs;  // binary ops; lhs only for neg/pow
    int exponent = 0;  // pow
    Span span;
};

bool equal(const ExprPtr& a, const ExprPtr& b);
std::string render(const ExprPtr& e);

/// Evaluates an expression over a fixed signature; throws hori::Error on
/// unknown identifiers or invalid powers.
GradedElement evaluate(const ExprPtr& e, const SignaturePtr& sig);

/// Parses and evaluates a single expression (used for coefficient strings
/// in JSON inputs).
GradedElement evaluate_text(const std::string& text, const SignaturePtr& sig);

// --------------------------------------------------------------------------
// statements

struct GenDecl {
    std::string name;
    int degree = 0;
    Span span;
};

struct DiffDecl {
    std::string gen;
    ExprPtr value;
    Span span;
};

struct AlgebraBlock {
    std::string name;
    std::vector<GenDecl> gens;
    std::vector<DiffDecl> diffs;
    Span span;
};

struct ConfigBlock {
    std::string name;
    std::string algebra;
    ExprPtr xL, xR, y;
    Span span;
};

struct ElementBlock {
    std::string name;
    ExprPtr value;
    Span span;
};

using Block = std::variant<AlgebraBlock, ConfigBlock, ElementBlock>;

struct Document {
    std::vector<Block> blocks;
};

bool equal(const Document& a, const Document& b);
std::string render(const Document& doc);

/// Recursive-descent parse; on failure the document is absent and
/// diagnostics carry spans.
struct ParseResult {
    std::optional<Document> document;
    std::vector<Diagnostic> diagnostics;
};

ParseResult parse_document(std::string_view text);

// --------------------------------------------------------------------------
// elaboration

/// A named element: either a plain algebra element or a Laurent series
/// over one side of a gerbe tower.
struct ElaboratedElement {
    enum class Space { plain, left_gerbe, right_gerbe };
    Space space = Space::plain;
    std::string config;              // owning config for gerbe elements
    GradedElement plain;             // Space::plain
    LaurentElement laurent;          // gerbe spaces
};

struct Elaborated {
    std::vector<std::string> algebra_order;
    std::map<std::string, FreeDGCA> algebras;
    std::vector<std::string> config_order;
    std::map<std::string, TDualityConfig> configs;
    std::map<std::string, std::shared_ptr<const HoriTransformer>> towers;
    std::vector<std::string> element_order;
    std::map<std::string, ElaboratedElement> elements;

    const HoriTransformer& tower_for(const std::string& config_name) const;
};

struct ElaborationResult {
    std::optional<Elaborated> elaborated;
    std::vector<Diagnostic> diagnostics;
};

ElaborationResult elaborate(const Document& doc);

} // namespace hori::dsl
