#pragma once

#include <string>
#include <vector>

#include "powersindy/evaluate.hpp"
#include "powersindy/gridsearch.hpp"
#include "powersindy/ingest.hpp"
#include "powersindy/sigma_sweep.hpp"
#include "powersindy/simulate.hpp"

namespace powersindy {

// JSON payloads (2-space indent, trailing newline)

std::string to_json(const IngestSummary& summary);
std::string to_json(const LibrarySpec& spec);
std::string to_json(const OptimizerConfig& cfg);
std::string to_json(const FittedModel& model);
std::string to_json(const AggregateReport& report);
std::string to_json(const GridResult& result);

LibrarySpec library_spec_from_json(const std::string& text);
OptimizerConfig optimizer_config_from_json(const std::string& text);
FittedModel model_from_json(const std::string& text);

// CSV payloads (RFC 4180)

std::string sigma_sweep_csv(const SigmaSweepResult& result);
std::string records_csv(const std::vector<EvaluationRecord>& records);
std::string grid_csv(const GridResult& result);
std::string heatmap_csv(const HeatmapTable& table);
std::string trajectory_csv(const StateTrajectory& traj);

// Chunk round trip in the ingest schema (timestamp, frequency).
std::string chunk_csv(const FrequencyChunk& chunk);
std::string dataset_csv(const std::vector<FrequencyChunk>& chunks);

}  // namespace powersindy
