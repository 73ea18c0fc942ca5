#pragma once

#include "primcob/bordism.hpp"

#include <json.hpp>

namespace primcob {

using Json = nlohmann::ordered_json;

/// Report envelope: {schema_version, meta, model, results, diagnostics}.
/// The timestamp lives only in meta.generated_at so byte-comparison of the
/// rest is meaningful.
Json report_envelope(const std::string& subcommand, const std::string& model_name,
                     const std::vector<Rat>& params, std::uint64_t seed);

Json point_set_json(const ResolvedPointSet& set);
Json parity_json(const ParityReport& rep);
Json genericity_json(const GenericityReport& rep);
Json trace_json(const TraceResult& res);

std::string residual_string(double r);

void write_report(const Json& report, const std::string& path);

} // namespace primcob
