#pragma once

#include <string>

#include <json.hpp>

#include "addsvm/kernel.hpp"
#include "addsvm/loss.hpp"
#include "addsvm/svm.hpp"

namespace addsvm {

// Kernel specs serialize to JSON:
//   {"type":"gaussian","gamma":2.0,"dim":1}
//   {"type":"polynomial","degree":2,"offset":1.0,"dim":1}
//   {"type":"dot","dim":2}
//   {"type":"sum","blocks":[{"range":[0,0],"kernel":{...}}, ...]}
//   {"type":"product","blocks":[...]}
nlohmann::json kernel_to_json(const KernelSpec& k);
KernelSpec kernel_from_json(const nlohmann::json& j);

// Loss specs serialize as tagged text: "pinball:0.5", "eps:0.1", "hinge".
std::string loss_to_tag(const LossSpec& L);
LossSpec loss_from_tag(const std::string& tag);

// Model files are versioned JSON; doubles round-trip bit-exactly (shortest
// round-trip serialization), so save/load/predict reproduces the original.
void save_model(const SvmModel& m, const std::string& path);
SvmModel load_model(const std::string& path);

nlohmann::json model_to_json(const SvmModel& m);
SvmModel model_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);

}  // namespace addsvm
