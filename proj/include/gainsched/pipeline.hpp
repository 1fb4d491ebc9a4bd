#pragma once

#include <memory>
#include <string>

#include "gainsched/db/scenario_db.hpp"
#include "gainsched/embedding/embedder.hpp"
#include "gainsched/impedance/impedance.hpp"
#include "gainsched/perception/descriptor.hpp"
#include "gainsched/perception/vlm_client.hpp"
#include "gainsched/retrieval/retrieval.hpp"
#include "gainsched/safety/guards.hpp"

namespace gainsched {

/// The full offboard chain: describe -> normalize -> embed -> retrieve ->
/// guard. Immutable after construction; safe for concurrent queries.
class Pipeline {
 public:
  Pipeline(db::ScenarioDatabase database, percept::NormalizationTable table,
           percept::MockVlmClient vlm,
           std::unique_ptr<embedding::Embedder> embedder,
           retrieval::RetrievalConfig retrieval_cfg,
           safety::SafetyLimits limits);

  struct Answer {
    ImpedancePayload payload;               // guarded
    retrieval::RetrievalResult retrieval;
    percept::NormalizedDescriptor scene;
    std::string query_text;
  };

  Answer answer_stub(const std::string& stub) const;
  Answer answer_descriptor(const percept::SceneDescriptor& descriptor) const;

  const db::ScenarioDatabase& database() const { return database_; }
  const retrieval::ScenarioIndex& index() const { return index_; }
  const percept::NormalizationTable& normalization() const { return table_; }
  percept::MockVlmClient& vlm() const { return vlm_; }
  const safety::SafetyLimits& limits() const { return limits_; }
  const retrieval::RetrievalConfig& retrieval_config() const {
    return retrieval_cfg_;
  }
  embedding::Embedder& embedder() const { return *embedder_; }

 private:
  db::ScenarioDatabase database_;
  percept::NormalizationTable table_;
  mutable percept::MockVlmClient vlm_;
  std::unique_ptr<embedding::Embedder> embedder_;
  retrieval::RetrievalConfig retrieval_cfg_;
  safety::SafetyLimits limits_;
  retrieval::ScenarioIndex index_;
};

}  // namespace gainsched
