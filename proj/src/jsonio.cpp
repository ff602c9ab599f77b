#include "hori/jsonio.hpp"

namespace hori {

Json check_result_to_json(const CheckResult& r)
{
    Json j;
    j["check"] = r.check;
    j["subject"] = r.subject;
    j["status"] = r.pass ? "pass" : "fail";
    if (r.witness)
        j["witness"] = *r.witness;
    if (!r.detail.empty())
        j["detail"] = r.detail;
    return j;
}

Json report_to_json(const std::string& command, const CheckReport& report, const Json& extra)
{
    Json j;
    j["schema"] = 1;
    j["command"] = command;
    for (auto it = extra.begin(); it != extra.end(); ++it)
        j[it.key()] = it.value();
    j["status"] = report.all_pass() ? "pass" : "fail";
    int passed = 0;
    Json checks = Json::array();
    for (const auto& r : report.results) {
        checks.push_back(check_result_to_json(r));
        if (r.pass)
            ++passed;
    }
    j["summary"] = Json{{"total", report.results.size()},
                        {"passed", passed},
                        {"failed", report.results.size() - static_cast<std::size_t>(passed)}};
    j["checks"] = std::move(checks);
    return j;
}

Json qseries_to_json(const QSeries& f)
{
    Json j;
    j["degree"] = f.component_degree();
    j["n0"] = f.lower_bound();
    j["truncation"] = f.truncation();
    Json terms = Json::array();
    for (const auto& [n, c] : f.coefficients())
        terms.push_back(Json::array({n, c.to_string()}));
    j["terms"] = std::move(terms);
    return j;
}

Json jacobi_to_json(const JacobiElement& a)
{
    Json j = qseries_to_json(a.expansion);
    Json out;
    out["weight"] = a.weight;
    for (auto it = j.begin(); it != j.end(); ++it)
        out[it.key()] = it.value();
    return out;
}

Json laurent_to_json(const LaurentElement& w)
{
    Json j;
    j["variable"] = w.context().xi_info().name;
    j["shift"] = w.shift();
    if (w.known_up_to())
        j["known_up_to"] = *w.known_up_to();
    Json terms = Json::array();
    for (const auto& [n, c] : w.coefficients())
        terms.push_back(Json::array({-n, c.to_string()})); // stored by xi-power
    j["terms"] = std::move(terms);
    return j;
}

Json components_to_json(const HoriComponents& comps)
{
    auto series = [](const std::map<int, GradedElement>& m) {
        Json arr = Json::array();
        for (const auto& [n, c] : m)
            arr.push_back(Json::array({n, c.to_string()}));
        return arr;
    };
    Json j;
    j["alpha"] = series(comps.alpha);
    j["beta"] = series(comps.beta);
    j["gamma"] = series(comps.gamma);
    j["delta"] = series(comps.delta);
    return j;
}

namespace {

QSeries series_from_json(const Json& j, const FreeDGCA& ring)
{
    if (!j.contains("degree") || !j.contains("truncation") || !j.contains("terms"))
        throw Error("q-series object needs 'degree', 'truncation' and 'terms'");
    QSeries out(ring, j["degree"].get<int>(), j["truncation"].get<int>());
    for (const auto& term : j["terms"]) {
        if (!term.is_array() || term.size() != 2)
            throw Error("q-series term must be [n, expression]");
        int n = term[0].get<int>();
        std::string text = term[1].get<std::string>();
        out.set_coefficient(n, dsl::evaluate_text(text, ring.signature()));
    }
    return out;
}

} // namespace

QPairFile qpair_from_json(const Json& j, const FreeDGCA& ring)
{
    if (!j.contains("schema") || j["schema"].get<int>() != 1)
        throw Error("q-pair file must declare \"schema\": 1");
    if (!j.contains("first") || !j.contains("second"))
        throw Error("q-pair file needs 'first' and 'second' series");
    QPairFile out;
    QSeries first = series_from_json(j["first"], ring);
    QSeries second = series_from_json(j["second"], ring);
    out.has_weights = j["first"].contains("weight") && j["second"].contains("weight");
    if (out.has_weights) {
        out.jacobi = {{j["first"]["weight"].get<int>(), first},
                      {j["second"]["weight"].get<int>(), second}};
    }
    out.plain = {std::move(first), std::move(second)};
    return out;
}

Json qpair_to_json(const QPairFile& pair)
{
    Json j;
    j["schema"] = 1;
    if (pair.has_weights) {
        j["first"] = jacobi_to_json(pair.jacobi.first);
        j["second"] = jacobi_to_json(pair.jacobi.second);
    } else {
        j["first"] = qseries_to_json(pair.plain.first);
        j["second"] = qseries_to_json(pair.plain.second);
    }
    return j;
}

} // namespace hori
