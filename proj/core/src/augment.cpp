#include "corruptkit/augment.hpp"

#include <algorithm>
#include <string>

#include <nlohmann/json.hpp>

#include "corruptkit/corruptions.hpp"
#include "corruptkit/error.hpp"
#include "corruptkit/rng.hpp"

namespace corruptkit {

void AugmentPolicy::validate() const {
  if (probability.empty()) throw InvalidInput("augment policy enables no corruption");
  for (const auto& [kind, p] : probability) {
    if (!is_per_image(kind)) {
      throw InvalidInput("augment policy: " + std::string(to_string(kind)) + " is a scene-level corruption");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidInput("augment policy: probability for " + std::string(to_string(kind)) + " must be in [0, 1]");
    }
  }
}

AugmentPolicy AugmentPolicy::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidInput("augment policy must be an object");
  AugmentPolicy policy;
  try {
    for (const auto& [name, p] : doc.at("kinds").items()) {
      const auto kind = parse_kind(name);
      if (!kind) throw InvalidInput("augment policy: unknown corruption '" + name + "'");
      policy.probability[*kind] = p.get<double>();
    }
    const std::string sev = doc.value("severity", std::string("uniform"));
    if (sev != "uniform") {
      policy.severity = parse_severity(sev);
      if (!policy.severity) throw InvalidInput("augment policy: unknown severity '" + sev + "'");
    }
    policy.seed = doc.value("seed", std::uint64_t{0});
    if (const auto it = doc.find("params"); it != doc.end()) policy.params = ParameterTable(*it);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("augment policy: ") + e.what());
  }
  policy.validate();
  return policy;
}

AugmentDecision plan_augment(const AugmentPolicy& policy, std::uint64_t step_index) {
  policy.validate();
  SeededRng rng = SeededRng(policy.seed).split("augment/" + std::to_string(step_index));
  std::vector<CorruptionKind> kinds;
  for (const auto& [kind, p] : policy.probability) kinds.push_back(kind);
  const CorruptionKind kind = kinds[rng.uniform_index(kinds.size())];
  AugmentDecision d;
  d.applied = rng.bernoulli(policy.probability.at(kind));
  const Severity sev = policy.severity ? *policy.severity : kAllSeverities[rng.uniform_index(3)];
  d.spec = policy.params.resolve(kind, sev);
  d.seed = rng.next_u64();
  return d;
}

ImageBuffer augment(const ImageBuffer& img, const AugmentPolicy& policy, std::uint64_t step_index,
                    AugmentDecision* decision) {
  const AugmentDecision d = plan_augment(policy, step_index);
  if (decision) *decision = d;
  return d.applied ? apply_corruption(img, d.spec, d.seed) : img;
}

std::vector<std::uint8_t> augment(std::span<const std::uint8_t> pixels, int height, int width, int channels,
                                  const AugmentPolicy& policy, std::uint64_t step_index) {
  if (channels != 3) throw InvalidInput("augment expects 3 channels, got " + std::to_string(channels));
  if (height < 0 || width < 0 ||
      pixels.size() != static_cast<std::size_t>(height) * static_cast<std::size_t>(width) * 3) {
    throw InvalidInput("augment: buffer size does not match " + std::to_string(height) + "x" +
                       std::to_string(width) + "x3");
  }
  const ImageBuffer img(width, height, std::vector<std::uint8_t>(pixels.begin(), pixels.end()));
  const ImageBuffer out = augment(img, policy, step_index);
  return {out.data().begin(), out.data().end()};
}

}  // namespace corruptkit
