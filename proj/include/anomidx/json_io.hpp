#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "anomidx/detect.hpp"
#include "anomidx/experiment.hpp"
#include "anomidx/simulate.hpp"
#include "anomidx/transfer.hpp"
#include "anomidx/transforms_io.hpp"

namespace anomidx {

using Json = nlohmann::ordered_json;

// Readers throw Error(ParseError) on malformed documents and leave semantic
// validation to the validate() overloads, so range errors keep their kind.

[[nodiscard]] Json to_json(const PiecewiseLinearBaseline& h);
[[nodiscard]] PiecewiseLinearBaseline baseline_from_json(const Json& j);

[[nodiscard]] Json to_json(const Series& s);
[[nodiscard]] Series series_from_json(const Json& j);

[[nodiscard]] Json to_json(const ArmaSpec& spec);
[[nodiscard]] Json to_json(const LomaxSpec& spec);
[[nodiscard]] Json to_json(const ScenarioSpec& spec);
/// Missing keys take the ScenarioSpec defaults.
[[nodiscard]] ScenarioSpec scenario_from_json(const Json& j);

[[nodiscard]] Json to_json(const DetectorConfig& config);
[[nodiscard]] Json to_json(const Verdict& verdict);
[[nodiscard]] Json to_json(const CurveAggregate& aggregate);
/// Spec, detector, detection rate, per-replication verdicts and the aggregate.
[[nodiscard]] Json to_json(const ScenarioResult& result);

[[nodiscard]] Json read_json_file(const std::filesystem::path& path);

}  // namespace anomidx
