#include "gainsched/pipeline.hpp"

namespace gainsched {

Pipeline::Pipeline(db::ScenarioDatabase database,
                   percept::NormalizationTable table,
                   percept::MockVlmClient vlm,
                   std::unique_ptr<embedding::Embedder> embedder,
                   retrieval::RetrievalConfig retrieval_cfg,
                   safety::SafetyLimits limits)
    : database_(std::move(database)),
      table_(std::move(table)),
      vlm_(std::move(vlm)),
      embedder_(std::move(embedder)),
      retrieval_cfg_(retrieval_cfg),
      limits_(limits) {
  index_ = retrieval::build_index(database_, *embedder_);
}

Pipeline::Answer Pipeline::answer_stub(const std::string& stub) const {
  return answer_descriptor(vlm_.describe({stub, {}}));
}

Pipeline::Answer Pipeline::answer_descriptor(
    const percept::SceneDescriptor& descriptor) const {
  Answer ans;
  ans.scene = percept::normalize(table_, descriptor);
  ans.query_text = percept::to_query_text(ans.scene);
  const auto query = embedder_->embed(ans.query_text);
  ans.retrieval = retrieval::retrieve(index_, query, retrieval_cfg_);
  const ImpedancePayload raw = retrieval::format_payload(
      ans.retrieval, database_, impedance::fallback_payload());
  ans.payload = safety::apply_guards(raw, ans.scene, std::nullopt, limits_);
  // Guarding must not change why the payload was chosen.
  ans.payload.reason = raw.reason;
  ans.payload.scenario_id = raw.scenario_id;
  return ans;
}

}  // namespace gainsched
