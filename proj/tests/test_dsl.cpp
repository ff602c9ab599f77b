#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hori/dsl.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hori;
using namespace hori::dsl;

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path corpus_dir()
{
    return std::filesystem::path(HORI_CORPUS_DIR);
}

} // namespace

TEST_CASE("parsing the classifying-algebra definition")
{
    ParseResult r = parse_document(
        "algebra C { gen x2L:2; gen x2R:2; gen y3:3; d y3 = x2L*x2R; }");
    REQUIRE(r.document);
    REQUIRE(r.document->blocks.size() == 1);
    const auto& alg = std::get<AlgebraBlock>(r.document->blocks[0]);
    CHECK(alg.name == "C");
    REQUIRE(alg.gens.size() == 3);
    CHECK(alg.gens[0].name == "x2L");
    CHECK(alg.gens[2].degree == 3);
    REQUIRE(alg.diffs.size() == 1);
    CHECK(alg.diffs[0].gen == "y3");
    CHECK(render(alg.diffs[0].value) == "x2L*x2R");
}

TEST_CASE("a dangling operator yields a span-carrying diagnostic")
{
    ParseResult r = parse_document("algebra C { gen x2L:2; gen y3:3; d y3 = x2L* }");
    REQUIRE(!r.document);
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].message.find("'}'") != std::string::npos);
    CHECK(!r.diagnostics[0].span.empty());
    CHECK(r.diagnostics[0].span.line == 1);
    CHECK(r.diagnostics[0].span.col == 46);
}

TEST_CASE("element expressions parse with negative exponents")
{
    ParseResult r = parse_document("element w = (a + e1L*b)*xi2L^-1;");
    REQUIRE(r.document);
    const auto& el = std::get<ElementBlock>(r.document->blocks[0]);
    CHECK(el.name == "w");
    CHECK(el.value->kind == Expr::Kind::mul);
    CHECK(el.value->rhs->kind == Expr::Kind::pow);
    CHECK(el.value->rhs->exponent == -1);
    CHECK(render(el.value) == "(a + e1L*b)*xi2L^-1");
}

TEST_CASE("rational literals lex as single numbers")
{
    ParseResult r = parse_document("element w = 3/2;");
    REQUIRE(r.document);
    const auto& el = std::get<ElementBlock>(r.document->blocks[0]);
    CHECK(el.value->kind == Expr::Kind::literal);
    CHECK(el.value->value == make_scalar(3, 2));

    ParseResult bad = parse_document("element w = 1/0;");
    REQUIRE(!bad.document);
    CHECK(!bad.diagnostics.empty());
    CHECK(!bad.diagnostics[0].span.empty());
}

TEST_CASE("every diagnostic carries a nonempty span inside the input")
{
    const char* inputs[] = {
        "algebra",
        "algebra A {",
        "algebra A { gen }",
        "algebra A { gen a 2; }",
        "config X on {",
        "element = 1;",
        "element x @ 1;",
        "element x = ;",
        "element x = (1;",
        "element x = a^b;",
    };
    for (const char* text : inputs) {
        ParseResult r = parse_document(text);
        REQUIRE(!r.document);
        REQUIRE(!r.diagnostics.empty());
        CHECK(!r.diagnostics[0].span.empty());
        CHECK(r.diagnostics[0].span.line >= 1);
        CHECK(r.diagnostics[0].span.col >= 1);
    }
}

TEST_CASE("elaborating the universal file matches universal_config()")
{
    ParseResult r = parse_document(slurp(corpus_dir() / "valid" / "01_universal.hori"));
    REQUIRE(r.document);
    ElaborationResult e = elaborate(*r.document);
    REQUIRE(e.elaborated);
    const Elaborated& elab = *e.elaborated;
    REQUIRE(elab.configs.count("univ") == 1);
    const TDualityConfig& cfg = elab.configs.at("univ");

    TDualityConfig reference = universal_config();
    CHECK(cfg.fxL().to_string() == reference.fxL().to_string());
    CHECK(cfg.fy().to_string() == reference.fy().to_string());
    CHECK(cfg.target().signature()->same_as(*reference.target().signature()));

    // the element layer picked the gerbe spaces
    CHECK(elab.elements.at("w").space == ElaboratedElement::Space::left_gerbe);
    CHECK(elab.elements.at("v").laurent.coefficient(1).to_string() == "x2L");
}

TEST_CASE("elaboration errors carry spans")
{
    struct Case {
        const char* text;
        const char* needle;
    };
    Case cases[] = {
        {"algebra A { gen a:2; }\nconfig c on A { xL = a; xR = a; y = 0; }", "fxL*fxR"},
        {"algebra A { gen e1L:1; }", "reserved"},
        {"algebra A { gen a:2; gen b:3; d b = a; }", "degree"},
        {"algebra A { gen a:2; }\nelement e = nope;", "unknown identifier"},
        {"algebra A { gen a:2; }\nelement e = (a+a)^-2;", "non-invertible"},
        {"algebra A { gen a:2; gen a:3; }", "duplicate"},
        {"algebra A { gen a:2; }\nalgebra A { gen b:2; }", "already defined"},
        {"element e = 1;", "before any algebra"},
        {"algebra A { gen a:2; d nope = a; }", "unknown generator"},
    };
    for (const Case& c : cases) {
        ParseResult r = parse_document(c.text);
        REQUIRE(r.document);
        ElaborationResult e = elaborate(*r.document);
        REQUIRE(!e.elaborated);
        REQUIRE(!e.diagnostics.empty());
        CHECK(e.diagnostics[0].message.find(c.needle) != std::string::npos);
        CHECK(!e.diagnostics[0].span.empty());
    }
}

TEST_CASE("mixing xi2L and xi2R in one element is rejected")
{
    ParseResult r = parse_document(
        "algebra A { gen w1:2; gen w2:2; gen v3:3; d v3 = w1*w2; }\n"
        "config c on A { xL = w1; xR = w2; y = v3; }\n"
        "element e = xi2L*xi2R;");
    REQUIRE(r.document);
    ElaborationResult e = elaborate(*r.document);
    REQUIRE(!e.elaborated);
    CHECK(e.diagnostics[0].message.find("mixes") != std::string::npos);
}

TEST_CASE("the whole valid corpus parses, elaborates, and round-trips")
{
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir() / "valid")) {
        INFO("file: " << entry.path().string());
        ParseResult first = parse_document(slurp(entry.path()));
        REQUIRE(first.document);
        ElaborationResult e = elaborate(*first.document);
        REQUIRE(e.elaborated);

        std::string printed = render(*first.document);
        ParseResult second = parse_document(printed);
        REQUIRE(second.document);
        CHECK(equal(*first.document, *second.document));
        // and printing again is a fixed point
        CHECK(render(*second.document) == printed);
        ++count;
    }
    CHECK(count >= 12);
}

TEST_CASE("the whole invalid corpus produces span-carrying diagnostics")
{
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir() / "invalid")) {
        INFO("file: " << entry.path().string());
        ParseResult r = parse_document(slurp(entry.path()));
        std::vector<Diagnostic> diags;
        if (!r.document) {
            diags = r.diagnostics;
        } else {
            ElaborationResult e = elaborate(*r.document);
            REQUIRE(!e.elaborated);
            diags = e.diagnostics;
        }
        REQUIRE(!diags.empty());
        CHECK(!diags[0].span.empty());
        CHECK(!diags[0].message.empty());
        ++count;
    }
    CHECK(count >= 8);
}

TEST_CASE("evaluate_text parses coefficient expressions")
{
    SignaturePtr sig = make_algebra({{"a", 2}, {"b", 2}});
    GradedElement e = evaluate_text("2*a*b - 1/2*b^2", sig);
    CHECK(e.to_string() == "2*a*b - 1/2*b^2");
    CHECK_THROWS_AS(evaluate_text("zzz", sig), Error);
}
