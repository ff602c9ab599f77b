#pragma once

#include "hori/dsl.hpp"
#include "hori/report.hpp"

#include <json.hpp>

namespace hori {

using Json = nlohmann::ordered_json;

/// Versioned report wrapper: {"schema": 1, "command": ..., "checks": [...]}.
Json report_to_json(const std::string& command, const CheckReport& report,
                    const Json& extra = Json::object());

Json check_result_to_json(const CheckResult& r);

Json qseries_to_json(const QSeries& f);
Json jacobi_to_json(const JacobiElement& j);
Json laurent_to_json(const LaurentElement& w);
Json components_to_json(const HoriComponents& comps);

/// Parses a q-pair document: {"schema":1, "truncation":N,
/// "first": {"degree":k, "weight"?:s, "terms":[[n,"expr"],...]}, "second": ...}.
/// Coefficient expressions are evaluated over the given ring.
struct QPairFile {
    bool has_weights = false;
    JacobiPair jacobi;
    QPair plain;
};
QPairFile qpair_from_json(const Json& j, const FreeDGCA& ring);
Json qpair_to_json(const QPairFile& pair);

} // namespace hori
