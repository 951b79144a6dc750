#include "sigmkt/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace sigmkt {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("config: " + what);
}

void check_keys(const json& j, const std::string& context,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) known = true;
    if (!known) fail("unknown key '" + context + "." + item.key() + "'");
  }
}

const json& require(const json& j, const std::string& context,
                    const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) fail("missing key '" + context + "." + key + "'");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail("'" + where + "' must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail("'" + where + "' must be an integer");
  return j.get<int>();
}

std::uint64_t unsigned_integer(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail("'" + where + "' must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

WordCombination word_table(const json& j, const std::string& where) {
  if (!j.is_object())
    fail("'" + where + "' must map word strings to coefficients");
  WordCombination out;
  for (const auto& item : j.items()) {
    Word w;
    try {
      w = Word::parse(item.key());
    } catch (const std::invalid_argument& e) {
      fail("'" + where + "': " + e.what());
    }
    out.add_term(w, number(item.value(), where + "." + item.key()));
  }
  return out;
}

std::vector<ScalarJump> atom_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail("'" + where + "' must be an array");
  std::vector<ScalarJump> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const json& a = j[i];
    if (!a.is_object()) fail("'" + at + "' must be an object");
    check_keys(a, at, {"size", "intensity"});
    out.push_back({number(require(a, at, "size"), at + ".size"),
                   number(require(a, at, "intensity"), at + ".intensity")});
  }
  return out;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("top level must be an object");
  check_keys(root, "config", {"model", "market", "simulation", "task"});

  RunConfig out;

  const json& model = require(root, "config", "model");
  check_keys(model, "model", {"s0", "ell_w", "ell_nu"});
  out.s0 = number(require(model, "model", "s0"), "model.s0");
  out.ell_w = word_table(require(model, "model", "ell_w"), "model.ell_w");
  out.ell_nu = word_table(require(model, "model", "ell_nu"), "model.ell_nu");

  const json& market = require(root, "config", "market");
  check_keys(market, "market",
             {"brownian_variance", "atoms", "moment_count", "trunc_level"});
  out.brownian_variance = number(
      require(market, "market", "brownian_variance"),
      "market.brownian_variance");
  out.atoms = atom_list(require(market, "market", "atoms"), "market.atoms");
  out.moment_count =
      integer(require(market, "market", "moment_count"), "market.moment_count");
  out.trunc_level =
      integer(require(market, "market", "trunc_level"), "market.trunc_level");

  const json& sim = require(root, "config", "simulation");
  check_keys(sim, "simulation", {"horizon", "steps", "paths", "seed"});
  out.horizon = number(require(sim, "simulation", "horizon"),
                       "simulation.horizon");
  out.steps = integer(require(sim, "simulation", "steps"), "simulation.steps");
  out.paths = unsigned_integer(require(sim, "simulation", "paths"),
                               "simulation.paths");
  out.seed = unsigned_integer(require(sim, "simulation", "seed"),
                              "simulation.seed");

  out.fit_level = out.trunc_level;
  if (root.contains("task")) {
    const json& task = root["task"];
    check_keys(task, "task",
               {"payoff", "fit_level", "fit_target", "measure_change"});
    if (task.contains("payoff"))
      out.payoff = word_table(task["payoff"], "task.payoff");
    if (task.contains("fit_level"))
      out.fit_level = integer(task["fit_level"], "task.fit_level");
    if (task.contains("fit_target")) {
      if (!task["fit_target"].is_string())
        fail("'task.fit_target' must be a string");
      out.fit_target = task["fit_target"].get<std::string>();
      if (out.fit_target != "running-max" && out.fit_target != "terminal" &&
          out.fit_target != "payoff")
        fail("'task.fit_target' must be one of running-max, terminal, payoff");
    }
    if (task.contains("measure_change")) {
      const json& mc = task["measure_change"];
      const std::string at = "task.measure_change";
      check_keys(mc, at, {"f", "g", "allow_letter_one"});
      out.has_measure_change = true;
      out.measure_change.f = word_table(require(mc, at, "f"), at + ".f");
      const json& g = require(mc, at, "g");
      if (!g.is_array()) fail("'" + at + ".g' must be an array");
      for (std::size_t i = 0; i < g.size(); ++i)
        out.measure_change.g.push_back(
            number(g[i], at + ".g[" + std::to_string(i) + "]"));
      if (mc.contains("allow_letter_one")) {
        if (!mc["allow_letter_one"].is_boolean())
          fail("'" + at + ".allow_letter_one' must be a boolean");
        out.measure_change.allow_letter_one =
            mc["allow_letter_one"].get<bool>();
      }
    }
  }
  return out;
}

RunConfig load_run_config(const std::string& file_path) {
  std::ifstream in(file_path);
  if (!in) fail("cannot open file '" + file_path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

SigModelParams RunConfig::model_params() const {
  return SigModelParams(s0, ell_w, ell_nu, moment_count, trunc_level);
}

LevyTriplet RunConfig::market_triplet() const {
  return primary_process_triplet(moment_count, brownian_variance, atoms);
}

SigPayoff RunConfig::sig_payoff() const { return SigPayoff(payoff); }

}  // namespace sigmkt
