#include "gainsched/retrieval/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gainsched/core/errors.hpp"
#include "gainsched/kernels/kernels.hpp"

namespace gainsched::retrieval {

ScenarioIndex build_index(const db::ScenarioDatabase& database,
                          embedding::Embedder& embedder) {
  ScenarioIndex index;
  index.database = &database;
  index.embedder_name = embedder.name();
  index.vectors.reserve(database.records.size());
  for (const auto& rec : database.records)
    index.vectors.push_back(embedder.embed(rec.description));
  return index;
}

RetrievalResult retrieve(const ScenarioIndex& index,
                         const embedding::EmbeddingVector& query,
                         const RetrievalConfig& cfg) {
  if (query.size() != embedding::kEmbeddingDim)
    throw ContractError("query embedding has dimension " +
                        std::to_string(query.size()) + ", expected " +
                        std::to_string(embedding::kEmbeddingDim));

  RetrievalResult result;
  if (index.vectors.empty()) {
    result.kind = RetrievalResult::Kind::fallback;
    result.reason = PayloadReason::empty_db;
    return result;
  }

  std::size_t best = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  double second_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < index.vectors.size(); ++i) {
    const double d_sq =
        kernels::squared_l2(index.vectors[i].data(), query.data(), query.size());
    if (d_sq < best_sq) {
      second_sq = best_sq;
      best_sq = d_sq;
      best = i;
    } else if (d_sq < second_sq) {
      second_sq = d_sq;
    }
  }

  result.distance = std::sqrt(best_sq);
  if (index.vectors.size() > 1)
    result.runner_up_distance = std::sqrt(second_sq);

  if (result.distance > cfg.distance_threshold) {
    result.kind = RetrievalResult::Kind::fallback;
    result.reason = PayloadReason::low_confidence;
    return result;
  }
  if (result.runner_up_distance) {
    constexpr double kEps = 1e-12;
    const double gap = (*result.runner_up_distance - result.distance) /
                       std::max(result.distance, kEps);
    if (gap < cfg.tie_margin) {
      result.kind = RetrievalResult::Kind::fallback;
      result.reason = PayloadReason::tie;
      return result;
    }
  }
  result.kind = RetrievalResult::Kind::match;
  result.record_index = best;
  result.reason = PayloadReason::ok;
  return result;
}

ImpedancePayload format_payload(const RetrievalResult& result,
                                const db::ScenarioDatabase& database,
                                const ImpedancePayload& fallback) {
  if (result.kind == RetrievalResult::Kind::fallback) {
    ImpedancePayload out = fallback;
    out.reason = result.reason;
    return out;
  }
  if (!result.record_index)
    throw ContractError("match result carries no record index");
  if (*result.record_index >= database.records.size())
    throw ContractError("record index " + std::to_string(*result.record_index) +
                        " out of bounds for database of " +
                        std::to_string(database.records.size()) + " records");

  const auto& rec = database.records[*result.record_index];
  if (rec.gains.kp.size() != kNumJoints || rec.gains.kd.size() != kNumJoints)
    throw ContractError("record '" + rec.scenario_id +
                        "' does not carry 14+14 gains");

  ImpedancePayload out;
  std::copy(rec.gains.kp.begin(), rec.gains.kp.end(), out.kp.begin());
  std::copy(rec.gains.kd.begin(), rec.gains.kd.end(), out.kd.begin());
  out.nominal_v = rec.nominal_v;
  out.scenario_id = rec.scenario_id;
  out.reason = PayloadReason::ok;
  return out;
}

}  // namespace gainsched::retrieval
