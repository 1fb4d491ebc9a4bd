#pragma once

#include <optional>
#include <vector>

#include "gainsched/core/types.hpp"
#include "gainsched/db/scenario_db.hpp"
#include "gainsched/embedding/embedder.hpp"

namespace gainsched::retrieval {

struct RetrievalConfig {
  double distance_threshold = 0.9;  // L2 distance between unit vectors
  double tie_margin = 0.02;         // relative gap required below the runner-up
};

struct RetrievalResult {
  enum class Kind { match, fallback };
  Kind kind = Kind::fallback;
  std::optional<std::size_t> record_index;
  double distance = 0.0;
  std::optional<double> runner_up_distance;
  PayloadReason reason = PayloadReason::empty_db;
};

/// Pre-computed embeddings of all scenario descriptions, order-aligned with
/// the database records. The database must outlive the index.
struct ScenarioIndex {
  const db::ScenarioDatabase* database = nullptr;
  std::vector<embedding::EmbeddingVector> vectors;
  std::string embedder_name;
};

ScenarioIndex build_index(const db::ScenarioDatabase& database,
                          embedding::Embedder& embedder);

/// Exact linear scan over every index vector. Match iff the best distance is
/// within the threshold and beats the runner-up by the relative tie margin;
/// otherwise a fallback result carrying the triggering reason.
RetrievalResult retrieve(const ScenarioIndex& index,
                         const embedding::EmbeddingVector& query,
                         const RetrievalConfig& cfg);

/// Match -> payload assembled from the record's gains and nominal speed;
/// fallback -> the provided conservative profile with the reason attached.
ImpedancePayload format_payload(const RetrievalResult& result,
                                const db::ScenarioDatabase& database,
                                const ImpedancePayload& fallback);

}  // namespace gainsched::retrieval
