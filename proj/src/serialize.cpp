#include "addsvm/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace addsvm {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw std::runtime_error("parse error: " + what);
}

const json& need(const json& j, const char* field, const char* ctx) {
  auto it = j.find(field);
  if (it == j.end())
    parse_fail(std::string(ctx) + ": missing field '" + field + "'");
  return *it;
}

}  // namespace

json kernel_to_json(const KernelSpec& k) {
  json j;
  switch (k.kind()) {
    case KernelSpec::Kind::Gaussian:
      j["type"] = "gaussian";
      j["gamma"] = k.gamma();
      j["dim"] = k.input_dim();
      break;
    case KernelSpec::Kind::Polynomial:
      j["type"] = "polynomial";
      j["degree"] = k.degree();
      j["offset"] = k.offset();
      j["dim"] = k.input_dim();
      break;
    case KernelSpec::Kind::Dot:
      j["type"] = "dot";
      j["dim"] = k.input_dim();
      break;
    case KernelSpec::Kind::Sum:
    case KernelSpec::Kind::Product: {
      j["type"] = k.kind() == KernelSpec::Kind::Sum ? "sum" : "product";
      json blocks = json::array();
      for (const auto& b : k.blocks()) {
        json jb;
        jb["range"] = {b.range.lo, b.range.hi};
        jb["kernel"] = kernel_to_json(b.kernel);
        blocks.push_back(std::move(jb));
      }
      j["blocks"] = std::move(blocks);
      break;
    }
  }
  return j;
}

KernelSpec kernel_from_json(const json& j) {
  if (!j.is_object()) parse_fail("kernel: expected an object");
  std::string type = need(j, "type", "kernel").get<std::string>();
  if (type == "gaussian")
    return KernelSpec::gaussian(need(j, "gamma", "kernel").get<double>(),
                                need(j, "dim", "kernel").get<int>());
  if (type == "polynomial")
    return KernelSpec::polynomial(need(j, "degree", "kernel").get<int>(),
                                  need(j, "offset", "kernel").get<double>(),
                                  need(j, "dim", "kernel").get<int>());
  if (type == "dot") return KernelSpec::dot(need(j, "dim", "kernel").get<int>());
  if (type == "sum" || type == "product") {
    std::vector<KernelBlock> blocks;
    for (const auto& jb : need(j, "blocks", "kernel")) {
      const auto& r = need(jb, "range", "kernel block");
      if (!r.is_array() || r.size() != 2)
        parse_fail("kernel block: 'range' must be [lo, hi]");
      blocks.push_back(KernelBlock{{r[0].get<int>(), r[1].get<int>()},
                                   kernel_from_json(need(jb, "kernel",
                                                         "kernel block"))});
    }
    return type == "sum" ? KernelSpec::sum(std::move(blocks))
                         : KernelSpec::product(std::move(blocks));
  }
  parse_fail("kernel: unknown type '" + type + "'");
}

std::string loss_to_tag(const LossSpec& L) {
  char buf[64];
  switch (L.kind()) {
    case LossSpec::Kind::Pinball:
      std::snprintf(buf, sizeof buf, "pinball:%.17g", L.tau());
      return buf;
    case LossSpec::Kind::EpsInsensitive:
      std::snprintf(buf, sizeof buf, "eps:%.17g", L.eps());
      return buf;
    case LossSpec::Kind::Hinge:
      return "hinge";
  }
  return "";
}

LossSpec loss_from_tag(const std::string& tag) {
  if (tag == "hinge") return LossSpec::hinge();
  auto colon = tag.find(':');
  if (colon != std::string::npos) {
    std::string name = tag.substr(0, colon);
    double v = 0.0;
    try {
      v = std::stod(tag.substr(colon + 1));
    } catch (const std::exception&) {
      parse_fail("loss tag '" + tag + "': bad parameter");
    }
    if (name == "pinball") return LossSpec::pinball(v);
    if (name == "eps" || name == "eps-insensitive")
      return LossSpec::eps_insensitive(v);
  }
  parse_fail("loss tag '" + tag + "': unknown loss");
}

json model_to_json(const SvmModel& m) {
  json j;
  j["format"] = "addsvm-model";
  j["version"] = 1;
  j["kernel"] = kernel_to_json(m.kernel());
  j["loss"] = loss_to_tag(m.loss());
  j["lambda"] = m.lambda();
  json support = json::array();
  for (const auto& x : m.support()) {
    json row = json::array();
    for (Eigen::Index i = 0; i < x.size(); ++i) row.push_back(x[i]);
    support.push_back(std::move(row));
  }
  j["support"] = std::move(support);
  json alpha = json::array();
  for (Eigen::Index i = 0; i < m.alpha().size(); ++i)
    alpha.push_back(m.alpha()[i]);
  j["alpha"] = std::move(alpha);
  j["objective"] = m.objective();
  return j;
}

SvmModel model_from_json(const json& j) {
  if (!j.is_object()) parse_fail("model file: expected a JSON object");
  if (need(j, "format", "model file").get<std::string>() != "addsvm-model")
    parse_fail("model file: field 'format' is not 'addsvm-model'");
  KernelSpec k = kernel_from_json(need(j, "kernel", "model file"));
  LossSpec L = loss_from_tag(need(j, "loss", "model file").get<std::string>());
  double lambda = need(j, "lambda", "model file").get<double>();
  std::vector<Eigen::VectorXd> support;
  for (const auto& row : need(j, "support", "model file")) {
    Eigen::VectorXd x(row.size());
    for (std::size_t i = 0; i < row.size(); ++i)
      x[static_cast<Eigen::Index>(i)] = row[i].get<double>();
    support.push_back(std::move(x));
  }
  const auto& ja = need(j, "alpha", "model file");
  Eigen::VectorXd alpha(ja.size());
  for (std::size_t i = 0; i < ja.size(); ++i)
    alpha[static_cast<Eigen::Index>(i)] = ja[i].get<double>();
  if (support.size() != static_cast<std::size_t>(alpha.size()))
    parse_fail("model file: fields 'support' and 'alpha' disagree in length");
  SvmModel m(std::move(support), std::move(alpha), k, L, lambda);
  m.set_objective(need(j, "objective", "model file").get<double>());
  return m;
}

void save_model(const SvmModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << model_to_json(m).dump(2) << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("parse error in '" + path + "': " + e.what());
  }
  return j;
}

SvmModel load_model(const std::string& path) { return model_from_json(read_json_file(path)); }

}  // namespace addsvm
