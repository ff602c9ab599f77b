// Command-line driver: parses a definition file, builds the gerbe towers,
// and runs checks and transforms on them.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 parse/elaboration or
// usage error.

#include "hori/jsonio.hpp"
#include "hori/random.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace hori;

struct Options {
    std::string file;
    bool json = false;
    std::uint64_t seed = 42;
    int truncation = 16;
    std::string dir = "LR";
    std::string element;
    std::string config;
    std::string pairs_file;
};

int fail_usage(const std::string& message)
{
    std::cerr << "error: " << message << "\n";
    return 2;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int report_diagnostics(const std::vector<dsl::Diagnostic>& diagnostics, const Options& opt)
{
    if (opt.json) {
        Json j;
        j["schema"] = 1;
        j["status"] = "error";
        Json arr = Json::array();
        for (const auto& d : diagnostics)
            arr.push_back(Json{{"severity", "error"},
                               {"message", d.message},
                               {"span", d.span.to_string()}});
        j["diagnostics"] = std::move(arr);
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& d : diagnostics)
            std::cerr << opt.file << ":" << d.span.to_string() << ": error: " << d.message
                      << "\n";
    }
    return 2;
}

// picks the config a tower-level command operates on
const std::string& select_config(const dsl::Elaborated& elab, const Options& opt)
{
    if (!opt.config.empty()) {
        if (!elab.configs.count(opt.config))
            throw Error("unknown config '" + opt.config + "'");
        return *std::find(elab.config_order.begin(), elab.config_order.end(), opt.config);
    }
    if (elab.config_order.empty())
        throw Error("the document declares no config");
    if (elab.config_order.size() > 1)
        throw Error("multiple configs declared; pick one with --config");
    return elab.config_order.front();
}

int emit_report(const std::string& command, const CheckReport& report, const Options& opt,
                const Json& extra = Json::object())
{
    if (opt.json) {
        Json j = report_to_json(command, report, extra);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << report.to_text();
        std::cout << (report.all_pass() ? "all checks passed" : "CHECKS FAILED") << "\n";
    }
    return report.all_pass() ? 0 : 1;
}

// --------------------------------------------------------------------------
// check: d^2 = 0 everywhere, morphism suite, nu identities

CheckReport run_check(const dsl::Elaborated& elab)
{
    CheckReport report;
    for (const auto& name : elab.algebra_order)
        report.merge(elab.algebras.at(name).check_d_squared());
    for (const auto& name : elab.config_order) {
        const HoriTransformer& machine = elab.tower_for(name);
        report.merge(machine.tower().verify());
        DgcaMorphism fwd = nu(machine.tower());
        DgcaMorphism bwd = nu_inv(machine.tower());
        report.merge(fwd.check());
        report.merge(bwd.check());
        DgcaMorphism round = bwd.compose_after(fwd);
        CheckResult r;
        r.check = "nu_inverse";
        r.subject = name;
        r.pass = true;
        for (std::size_t i = 0; i < round.source().signature()->size(); ++i)
            if (!(round.image_of(static_cast<int>(i)) ==
                  round.source().gen(static_cast<int>(i)))) {
                r.pass = false;
                r.witness = round.source().signature()->gen(static_cast<int>(i)).name;
                break;
            }
        report.add(std::move(r));
    }
    return report;
}

// --------------------------------------------------------------------------
// hori: apply a transform to a named element

int run_hori(const dsl::Elaborated& elab, const Options& opt)
{
    if (opt.element.empty())
        return fail_usage("hori requires --element");
    auto it = elab.elements.find(opt.element);
    if (it == elab.elements.end())
        return fail_usage("unknown element '" + opt.element + "'");
    const dsl::ElaboratedElement& el = it->second;
    if (el.space == dsl::ElaboratedElement::Space::plain)
        return fail_usage("element '" + opt.element + "' is not a Laurent element");
    const HoriTransformer& machine = elab.tower_for(el.config);

    LaurentElement input, output;
    if (opt.dir == "LR") {
        input = machine.to_left_gerbe(el.laurent);
        output = machine.hori_LR(input);
    } else if (opt.dir == "RL") {
        input = machine.to_right_gerbe(el.laurent);
        output = machine.hori_RL(input);
    } else {
        return fail_usage("--dir must be LR or RL");
    }

    if (opt.json) {
        Json j;
        j["schema"] = 1;
        j["command"] = "hori";
        j["dir"] = opt.dir;
        j["element"] = opt.element;
        j["input"] = laurent_to_json(input);
        HoriComponents comps = machine.components(
            opt.dir == "LR" ? machine.hat_iota_R(input) : machine.hat_iota_L(input));
        j["components"] = components_to_json(comps);
        j["result"] = laurent_to_json(output);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << output.to_string() << "\n";
    }
    return 0;
}

// --------------------------------------------------------------------------
// compose-check: T∘T = d/dxi on an element (or seeded random ones)

CheckReport run_compose_check(const dsl::Elaborated& elab, const Options& opt,
                              const std::string& config_name)
{
    const HoriTransformer& machine = elab.tower_for(config_name);
    CheckReport report;

    std::vector<std::pair<std::string, LaurentElement>> left_inputs;
    if (!opt.element.empty()) {
        auto it = elab.elements.find(opt.element);
        if (it == elab.elements.end())
            throw Error("unknown element '" + opt.element + "'");
        if (it->second.space != dsl::ElaboratedElement::Space::left_gerbe)
            throw Error("compose-check --element expects an element of the left gerbe");
        left_inputs.push_back({opt.element, machine.to_left_gerbe(it->second.laurent)});
    } else {
        Rng rng(opt.seed);
        for (int i = 0; i < 10; ++i)
            left_inputs.push_back({"random#" + std::to_string(i),
                                   random_laurent(rng, machine.GL_hat(), 6)});
    }

    for (const auto& [label, w] : left_inputs) {
        {
            CheckResult r;
            r.check = "compose_RL_LR";
            r.subject = label;
            r.pass = machine.hori_RL(machine.hori_LR(w)) == w.xi_derivative();
            if (!r.pass)
                r.detail = "T_RL(T_LR(w)) != dw/dxi2L";
            report.add(std::move(r));
        }
        {
            LaurentElement v = machine.hori_LR(w); // a right-gerbe element
            CheckResult r;
            r.check = "compose_LR_RL";
            r.subject = label;
            r.pass = machine.hori_LR(machine.hori_RL(v)) == v.xi_derivative();
            if (!r.pass)
                r.detail = "T_LR(T_RL(v)) != dv/dxi2R";
            report.add(std::move(r));
        }
    }
    return report;
}

// --------------------------------------------------------------------------
// q-hori: matrix action on a q-pair file

int run_q_hori(const dsl::Elaborated& elab, const Options& opt)
{
    if (opt.pairs_file.empty())
        return fail_usage("q-hori requires --pairs FILE");
    // coefficients live over the last declared algebra, or the ground field
    FreeDGCA ring;
    if (!elab.algebra_order.empty()) {
        ring = elab.algebras.at(elab.algebra_order.back());
    } else {
        SignaturePtr ground = make_algebra({});
        ring = FreeDGCA("K", ground, {});
    }
    Json input = Json::parse(read_file(opt.pairs_file));
    QPairFile pair = qpair_from_json(input, ring);
    QPairFile out;
    out.has_weights = pair.has_weights;
    if (pair.has_weights)
        out.jacobi = jacobi_hori(pair.jacobi);
    out.plain = hori_on_qpairs(pair.plain);
    std::cout << qpair_to_json(out).dump(2) << "\n";
    return 0;
}

// --------------------------------------------------------------------------
// verify-all: the full property suite with seeded randomisation

void verify_config(const std::string& name, const HoriTransformer& machine, Rng& rng,
                   int truncation, CheckReport& report)
{
    const GerbeTower& tower = machine.tower();
    report.merge(tower.verify());

    DgcaMorphism fwd = nu(tower);
    DgcaMorphism bwd = nu_inv(tower);
    report.merge(fwd.check());
    report.merge(bwd.check());

    // d(nu(xi2L)) literally equals fy - e1L*fxR
    {
        const FreeDGCA& GR = tower.GR_ext;
        GradedElement expected = promote(tower.config.fy(), GR.signature()) -
                                 GR.gen(kE1L) * promote(tower.config.fxR(), GR.signature());
        GradedElement lhs = GR.d(fwd.apply(tower.GL_ext.gen(kXi2L)));
        CheckResult r;
        r.check = "nu_xi2L_expansion";
        r.subject = name;
        r.pass = lhs == expected;
        report.add(std::move(r));
    }

    // hat-nu well-definedness on xi2L^{-1}: both routes give the displayed
    // series -fy xi^{-2} + e1L fxR xi^{-2} + 2 e1L e1R fy xi^{-3}
    {
        LaurentElement xi_inv = LaurentElement::xi_power(machine.GLext_hat(), 1);
        LaurentElement route_a = machine.hat_nu(xi_inv.d());
        LaurentElement route_b = machine.hat_nu(xi_inv).d();
        const FreeDGCA& GR = tower.GR_ext;
        GradedElement fy = promote(tower.config.fy(), GR.signature());
        GradedElement fxR = promote(tower.config.fxR(), GR.signature());
        LaurentElement expected =
            LaurentElement::xi_power(machine.GRext_hat(), 2)
                .scale_left(-fy + GR.gen(kE1L) * fxR) +
            LaurentElement::xi_power(machine.GRext_hat(), 3)
                .scale_left(GR.gen(kE1L) * GR.gen(kE1R) * fy * Scalar(2));
        CheckResult r;
        r.check = "hat_nu_xi_inverse";
        r.subject = name;
        r.pass = route_a == expected && route_b == expected;
        report.add(std::move(r));
    }

    // matrix identity and composition identities on random elements
    bool matrix_ok = true, compose_ok = true, pair_ok = true;
    for (int i = 0; i < 25; ++i) {
        LaurentElement w = random_laurent(rng, machine.GL_hat(), 6);
        LaurentElement composite = machine.hori_LR(w);
        if (!(composite == machine.hori_LR_closed_form(w)))
            matrix_ok = false;
        auto [first, second] = machine.unpack_pair(w);
        auto [out_first, out_second] = machine.unpack_pair(composite);
        if (machine.base_series(out_first) != machine.base_series(second) ||
            machine.base_series(out_second) != machine.base_series(first.xi_derivative()))
            pair_ok = false;
        if (!(machine.hori_RL(composite) == w.xi_derivative()))
            compose_ok = false;
        LaurentElement v = random_laurent(rng, machine.GR_hat(), 6);
        if (!(machine.hori_RL(v) == machine.hori_RL_closed_form(v)))
            matrix_ok = false;
        if (!(machine.hori_LR(machine.hori_RL(v)) == v.xi_derivative()))
            compose_ok = false;
    }
    report.add({"hori_matrix_form", name, matrix_ok, std::nullopt, ""});
    report.add({"hori_pair_action", name, pair_ok, std::nullopt, ""});
    report.add({"hori_compositions", name, compose_ok, std::nullopt, ""});

    // adjunction round trips over this configuration
    {
        bool ok = true;
        for (int i = 0; i < 10 && ok; ++i) {
            Side side = i % 2 == 0 ? Side::left : Side::right;
            AdjunctionInstance inst = random_adjunction_instance(rng, side);
            GradedElement t3 = hofib_cyc_forward(inst.extension, inst.phi, side);
            DgcaMorphism back = hofib_cyc_backward(inst.extension, t3, side);
            for (std::size_t g = 0; g < 3; ++g)
                if (!(back.image_of(static_cast<int>(g)) == inst.phi.image_of(static_cast<int>(g))))
                    ok = false;
            GradedElement t3b = random_degree3_cocycle(rng, inst, side);
            DgcaMorphism psi = hofib_cyc_backward(inst.extension, t3b, side);
            if (!(hofib_cyc_forward(inst.extension, psi, side) == t3b))
                ok = false;
        }
        report.add({"adjunction_round_trip", name, ok, std::nullopt, ""});
    }

    // q-level: commuting square and transport against the direct matrix
    {
        const TDualityConfig& config = machine.tower().config;
        bool square_ok = true, transport_ok = true;
        try {
            QTransport transport(config);
            for (int i = 0; i < 5; ++i) {
                int k = rng.uniform(0, 3);
                QSeries f = random_qseries(rng, transport.setup.A0, k, -3, truncation);
                LaurentElement lhs = mu(transport.setup, -1, q_log_derivative(f));
                LaurentElement rhs = mu(transport.setup, 0, f).xi_derivative();
                if (!lhs.agrees_up_to(rhs, *rhs.known_up_to()))
                    square_ok = false;
                QSeries g = random_qseries(rng, transport.setup.A0, k - 1, -3, truncation);
                QPair direct = hori_on_qpairs({f, g});
                LaurentElement packed = transport.pack_left({f, g});
                QPair through = transport.unpack_right(transport.machine.hori_LR(packed), k - 1, k);
                if (!through.first.agrees(direct.first) || !through.second.agrees(direct.second))
                    transport_ok = false;
            }
        } catch (const Error& e) {
            square_ok = false;
            transport_ok = false;
        }
        report.add({"q_commuting_square", name, square_ok, std::nullopt, ""});
        report.add({"q_hori_transport", name, transport_ok, std::nullopt, ""});
    }
}

CheckReport run_verify_all(const dsl::Elaborated& elab, const Options& opt)
{
    CheckReport report;
    Rng rng(opt.seed);
    for (const auto& name : elab.algebra_order)
        report.merge(elab.algebras.at(name).check_d_squared());
    for (const auto& name : elab.config_order)
        verify_config(name, elab.tower_for(name), rng, opt.truncation, report);
    return report;
}

} // namespace

int main(int argc, char** argv)
{
    Options opt;
    CLI::App app{"DGCA gerbe towers and graded Hori transforms"};
    app.add_option("file", opt.file, "definition file")->required();
    app.require_subcommand(1);
    app.fallthrough();

    app.add_flag("--json", opt.json, "emit a JSON report");
    app.add_option("--seed", opt.seed, "randomisation seed");
    app.add_option("--truncation", opt.truncation, "q-series truncation order");

    CLI::App* cmd_check = app.add_subcommand("check", "verify towers of every config");
    CLI::App* cmd_hori = app.add_subcommand("hori", "apply a graded Hori transform");
    cmd_hori->add_option("--dir", opt.dir, "LR or RL");
    cmd_hori->add_option("--element", opt.element, "element name")->required();
    CLI::App* cmd_compose = app.add_subcommand("compose-check", "verify T∘T = d/dxi");
    cmd_compose->add_option("--element", opt.element, "element name");
    cmd_compose->add_option("--config", opt.config, "config name");
    CLI::App* cmd_qhori = app.add_subcommand("q-hori", "matrix action on a q-pair file");
    cmd_qhori->add_option("--pairs", opt.pairs_file, "q-pair JSON file")->required();
    CLI::App* cmd_verify = app.add_subcommand("verify-all", "full property suite");
    cmd_verify->add_option("--config", opt.config, "config name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        std::string text = read_file(opt.file);
        dsl::ParseResult parsed = dsl::parse_document(text);
        if (!parsed.document)
            return report_diagnostics(parsed.diagnostics, opt);
        dsl::ElaborationResult elaborated = dsl::elaborate(*parsed.document);
        if (!elaborated.elaborated)
            return report_diagnostics(elaborated.diagnostics, opt);
        const dsl::Elaborated& elab = *elaborated.elaborated;

        Json extra;
        extra["file"] = opt.file;
        if (cmd_check->parsed()) {
            if (!opt.json)
                for (const auto& name : elab.config_order)
                    std::cout << tower_summary(elab.tower_for(name).tower());
            else {
                Json towers = Json::array();
                for (const auto& name : elab.config_order) {
                    const GerbeTower& tower = elab.tower_for(name).tower();
                    Json t;
                    t["config"] = name;
                    Json algebras = Json::array();
                    for (const FreeDGCA* A : tower.algebras()) {
                        Json a;
                        a["name"] = A->name();
                        Json gens = Json::array();
                        Json diffs = Json::object();
                        for (std::size_t i = 0; i < A->signature()->size(); ++i) {
                            const auto& g = A->signature()->gen(static_cast<int>(i));
                            gens.push_back(g.name + ":" + std::to_string(g.degree));
                            const GradedElement& dg = A->diff_of(static_cast<int>(i));
                            if (!dg.is_zero())
                                diffs[g.name] = dg.to_string();
                        }
                        a["generators"] = std::move(gens);
                        a["differentials"] = std::move(diffs);
                        algebras.push_back(std::move(a));
                    }
                    t["algebras"] = std::move(algebras);
                    towers.push_back(std::move(t));
                }
                extra["towers"] = std::move(towers);
            }
            return emit_report("check", run_check(elab), opt, extra);
        }
        if (cmd_hori->parsed())
            return run_hori(elab, opt);
        if (cmd_compose->parsed()) {
            extra["seed"] = opt.seed;
            return emit_report("compose-check",
                               run_compose_check(elab, opt, select_config(elab, opt)), opt,
                               extra);
        }
        if (cmd_qhori->parsed())
            return run_q_hori(elab, opt);
        if (cmd_verify->parsed()) {
            extra["seed"] = opt.seed;
            extra["truncation"] = opt.truncation;
            return emit_report("verify-all", run_verify_all(elab, opt), opt, extra);
        }
        return fail_usage("no command given");
    } catch (const Error& e) {
        return fail_usage(e.what());
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
}
