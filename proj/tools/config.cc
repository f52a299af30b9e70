// Copyright 2026 The dpdda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.h"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <memory>
#include <sstream>
#include <utility>
#include <variant>

#include "dpdda/errors.h"
#include "presets.h"

namespace dpdda::cli {
namespace {

// Collects problems while walking a document.
class Issues {
 public:
  void Add(const std::string& path, const std::string& message) {
    items_.push_back(path + ": " + message);
  }
  void AddRaw(std::string message) { items_.push_back(std::move(message)); }
  bool empty() const { return items_.empty(); }
  std::vector<std::string> take() { return std::move(items_); }

 private:
  std::vector<std::string> items_;
};

std::string Child(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string Index(const std::string& path, std::size_t k) {
  return path + "[" + std::to_string(k) + "]";
}

bool RequireObject(const Json& j, const std::string& path, Issues& issues) {
  if (!j.is_object()) {
    issues.Add(path, "expected an object");
    return false;
  }
  return true;
}

void AllowOnly(const Json& j, const std::string& path,
               std::initializer_list<const char*> keys, Issues& issues) {
  for (const auto& item : j.items()) {
    const bool known = std::any_of(keys.begin(), keys.end(), [&](const char* k) {
      return item.key() == k;
    });
    if (!known) issues.Add(Child(path, item.key()), "unknown key");
  }
}

std::optional<double> GetNumber(const Json& j, const char* key,
                                const std::string& path, Issues& issues) {
  if (!j.contains(key)) return std::nullopt;
  const Json& v = j.at(key);
  if (!v.is_number()) {
    issues.Add(Child(path, key), "expected a number");
    return std::nullopt;
  }
  return v.get<double>();
}

std::optional<long long> GetIntAt(const Json& v, const std::string& path,
                                  Issues& issues) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == static_cast<double>(static_cast<long long>(d))) {
      return static_cast<long long>(d);
    }
  }
  issues.Add(path, "expected an integer");
  return std::nullopt;
}

std::optional<long long> GetInt(const Json& j, const char* key,
                                const std::string& path, Issues& issues) {
  if (!j.contains(key)) return std::nullopt;
  return GetIntAt(j.at(key), Child(path, key), issues);
}

std::optional<bool> GetBool(const Json& j, const char* key,
                            const std::string& path, Issues& issues) {
  if (!j.contains(key)) return std::nullopt;
  if (!j.at(key).is_boolean()) {
    issues.Add(Child(path, key), "expected true or false");
    return std::nullopt;
  }
  return j.at(key).get<bool>();
}

std::optional<std::string> GetString(const Json& j, const char* key,
                                     const std::string& path, Issues& issues) {
  if (!j.contains(key)) return std::nullopt;
  if (!j.at(key).is_string()) {
    issues.Add(Child(path, key), "expected a string");
    return std::nullopt;
  }
  return j.at(key).get<std::string>();
}

std::vector<double> GetNumberList(const Json& j, const std::string& path,
                                  Issues& issues) {
  std::vector<double> out;
  if (!j.is_array()) {
    issues.Add(path, "expected a list of numbers");
    return out;
  }
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) {
      issues.Add(Index(path, k), "expected a number");
    } else {
      out.push_back(j[k].get<double>());
    }
  }
  return out;
}

// 1-based agent id to 0-based index.
std::optional<int> AgentId(const Json& v, const std::string& path, int agents,
                           Issues& issues) {
  const auto id = GetIntAt(v, path, issues);
  if (!id) return std::nullopt;
  if (*id < 1 || *id > agents) {
    issues.Add(path, "agent " + std::to_string(*id) + " outside 1.." +
                         std::to_string(agents));
    return std::nullopt;
  }
  return static_cast<int>(*id - 1);
}

// [from, to] pair, 1-based.
std::optional<graph::Edge> ParseEdge(const Json& v, const std::string& path,
                                     int agents, Issues& issues) {
  if (!v.is_array() || v.size() != 2) {
    issues.Add(path, "expected [from, to]");
    return std::nullopt;
  }
  const auto from = AgentId(v[0], Index(path, 0), agents, issues);
  const auto to = AgentId(v[1], Index(path, 1), agents, issues);
  if (!from || !to) return std::nullopt;
  return graph::Edge{*from, *to};
}

std::vector<graph::Edge> ParseEdges(const Json& v, const std::string& path,
                                    int agents, Issues& issues) {
  std::vector<graph::Edge> out;
  if (!v.is_array()) {
    issues.Add(path, "expected a list of [from, to] pairs");
    return out;
  }
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (auto e = ParseEdge(v[k], Index(path, k), agents, issues)) {
      out.push_back(*e);
    }
  }
  return out;
}

game::NashCournotParams ParseGame(const Json& j, Issues& issues) {
  game::NashCournotParams p;
  const std::string path = "game";
  if (!RequireObject(j, path, issues)) return p;
  AllowOnly(j, path,
            {"type", "lower", "upper", "base_price", "market_amplitude",
             "price_amplitude", "price_slope", "period"},
            issues);
  const auto type = GetString(j, "type", path, issues);
  if (!type) {
    issues.Add(Child(path, "type"), "missing required key");
  } else if (*type != "nash_cournot") {
    issues.Add(Child(path, "type"),
               "unsupported game '" + *type + "' (supported: nash_cournot)");
  }
  if (j.contains("lower")) p.lower = GetNumberList(j["lower"], Child(path, "lower"), issues);
  if (j.contains("upper")) p.upper = GetNumberList(j["upper"], Child(path, "upper"), issues);
  if (p.lower.size() != p.upper.size() || p.lower.empty()) {
    issues.Add(path, "lower and upper must be nonempty lists of equal length");
  } else {
    for (std::size_t k = 0; k < p.lower.size(); ++k) {
      if (!(p.lower[k] <= p.upper[k])) {
        issues.Add(Index(Child(path, "lower"), k), "exceeds the upper bound");
      }
    }
  }
  auto num = [&](const char* key, double& field) {
    if (auto v = GetNumber(j, key, path, issues)) field = *v;
  };
  num("base_price", p.base_price);
  num("market_amplitude", p.market_amplitude);
  num("price_amplitude", p.price_amplitude);
  num("price_slope", p.price_slope);
  num("period", p.period);
  if (!(p.period > 0.0)) issues.Add(Child(path, "period"), "must be > 0");
  return p;
}

std::vector<graph::IntermittentEdge> ParseIntermittent(
    const Json& v, const std::string& path, int agents, Issues& issues) {
  std::vector<graph::IntermittentEdge> out;
  if (!v.is_array()) {
    issues.Add(path, "expected a list");
    return out;
  }
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::string p = Index(path, k);
    const Json& e = v[k];
    if (!RequireObject(e, p, issues)) continue;
    AllowOnly(e, p, {"from", "to", "period", "phases"}, issues);
    graph::IntermittentEdge ie;
    std::optional<int> from, to;
    if (e.contains("from")) from = AgentId(e["from"], Child(p, "from"), agents, issues);
    else issues.Add(Child(p, "from"), "missing required key");
    if (e.contains("to")) to = AgentId(e["to"], Child(p, "to"), agents, issues);
    else issues.Add(Child(p, "to"), "missing required key");
    if (auto period = GetInt(e, "period", p, issues)) {
      ie.period = static_cast<int>(*period);
    }
    if (ie.period < 1) issues.Add(Child(p, "period"), "must be >= 1");
    if (e.contains("phases")) {
      const Json& ph = e["phases"];
      if (!ph.is_array()) {
        issues.Add(Child(p, "phases"), "expected a list of integers");
      } else {
        for (std::size_t q = 0; q < ph.size(); ++q) {
          if (auto x = GetIntAt(ph[q], Index(Child(p, "phases"), q), issues)) {
            if (*x < 0 || *x >= ie.period) {
              issues.Add(Index(Child(p, "phases"), q),
                         "phase outside 0..period-1");
            } else {
              ie.active_phases.push_back(static_cast<int>(*x));
            }
          }
        }
      }
    } else {
      issues.Add(Child(p, "phases"), "missing required key");
    }
    if (from && to) {
      ie.edge = {*from, *to};
      out.push_back(std::move(ie));
    }
  }
  return out;
}

GraphSpec ParseGraph(const Json& j, Issues& issues) {
  GraphSpec g;
  const std::string path = "graph";
  if (!RequireObject(j, path, issues)) return g;
  AllowOnly(j, path,
            {"agents", "self_loops", "require_self_loops", "static",
             "intermittent", "periodic"},
            issues);
  const auto agents = GetInt(j, "agents", path, issues);
  if (!agents) {
    issues.Add(Child(path, "agents"), "missing required key");
    return g;
  }
  if (*agents < 1) {
    issues.Add(Child(path, "agents"), "must be >= 1");
    return g;
  }
  g.agents = static_cast<int>(*agents);
  if (auto s = GetString(j, "self_loops", path, issues)) {
    if (*s == "auto") g.add_self_loops = true;
    else if (*s == "explicit") g.add_self_loops = false;
    else issues.Add(Child(path, "self_loops"), "expected 'auto' or 'explicit'");
  }
  if (auto r = GetBool(j, "require_self_loops", path, issues)) {
    g.require_self_loops = *r;
  }
  const bool has_periodic = j.contains("periodic");
  if (has_periodic && (j.contains("static") || j.contains("intermittent"))) {
    issues.Add(path, "'periodic' cannot be combined with 'static'/'intermittent'");
    return g;
  }
  if (has_periodic) {
    graph::PeriodicRule rule;
    const Json& ph = j["periodic"];
    if (!ph.is_array() || ph.empty()) {
      issues.Add(Child(path, "periodic"), "expected a nonempty list of edge lists");
    } else {
      for (std::size_t k = 0; k < ph.size(); ++k) {
        rule.phases.push_back(
            ParseEdges(ph[k], Index(Child(path, "periodic"), k), g.agents, issues));
      }
    }
    g.rule = std::move(rule);
    return g;
  }
  std::vector<graph::Edge> base;
  if (j.contains("static")) {
    base = ParseEdges(j["static"], Child(path, "static"), g.agents, issues);
  } else {
    issues.Add(path, "one of 'static' or 'periodic' is required");
  }
  if (j.contains("intermittent")) {
    g.rule = graph::ProceduralRule{
        std::move(base),
        ParseIntermittent(j["intermittent"], Child(path, "intermittent"),
                          g.agents, issues)};
  } else {
    g.rule = graph::StaticRule{std::move(base)};
  }
  return g;
}

void CheckDelay(long long d, int tau_max, const std::string& path,
                Issues& issues) {
  if (d < 0 || d > tau_max) {
    issues.Add(path, "delay " + std::to_string(d) + " outside [0, tau_max=" +
                         std::to_string(tau_max) + "]");
  }
}

std::optional<graph::UniformDelay> ParseUniform(const Json& u,
                                                const std::string& path,
                                                int tau_max,
                                                std::initializer_list<const char*> keys,
                                                Issues& issues) {
  if (!RequireObject(u, path, issues)) return std::nullopt;
  AllowOnly(u, path, keys, issues);
  const auto lo = GetInt(u, "lo", path, issues);
  const auto hi = GetInt(u, "hi", path, issues);
  if (!lo) issues.Add(Child(path, "lo"), "missing required key");
  if (!hi) issues.Add(Child(path, "hi"), "missing required key");
  if (!lo || !hi) return std::nullopt;
  CheckDelay(*lo, tau_max, Child(path, "lo"), issues);
  CheckDelay(*hi, tau_max, Child(path, "hi"), issues);
  if (*lo > *hi) issues.Add(path, "lo exceeds hi");
  return graph::UniformDelay{static_cast<int>(*lo), static_cast<int>(*hi)};
}

DelaySpec ParseDelays(const Json& j, int agents, Issues& issues) {
  DelaySpec d;
  const std::string path = "delays";
  if (!RequireObject(j, path, issues)) return d;
  AllowOnly(j, path, {"tau_max", "comm", "feedback", "warm_start"}, issues);
  if (auto t = GetInt(j, "tau_max", path, issues)) {
    if (*t < 0) issues.Add(Child(path, "tau_max"), "must be >= 0");
    else d.tau_max = static_cast<int>(*t);
  }
  if (auto w = GetString(j, "warm_start", path, issues)) {
    if (*w == "clamp") d.warm_start = engine::WarmStart::kClamp;
    else if (*w == "zero_gradient") d.warm_start = engine::WarmStart::kZeroGradient;
    else issues.Add(Child(path, "warm_start"), "expected 'clamp' or 'zero_gradient'");
  }
  if (j.contains("comm")) {
    const std::string p = Child(path, "comm");
    const Json& c = j["comm"];
    if (RequireObject(c, p, issues)) {
      AllowOnly(c, p, {"base", "fixed", "uniform"}, issues);
      if (auto b = GetInt(c, "base", p, issues)) {
        CheckDelay(*b, d.tau_max, Child(p, "base"), issues);
        d.comm.base = static_cast<int>(*b);
      }
      if (c.contains("fixed")) {
        const Json& f = c["fixed"];
        const std::string fp = Child(p, "fixed");
        if (!f.is_array()) {
          issues.Add(fp, "expected a list");
        } else {
          for (std::size_t k = 0; k < f.size(); ++k) {
            const std::string ep = Index(fp, k);
            if (!RequireObject(f[k], ep, issues)) continue;
            AllowOnly(f[k], ep, {"from", "to", "delay"}, issues);
            std::optional<int> from, to;
            if (f[k].contains("from")) from = AgentId(f[k]["from"], Child(ep, "from"), agents, issues);
            else issues.Add(Child(ep, "from"), "missing required key");
            if (f[k].contains("to")) to = AgentId(f[k]["to"], Child(ep, "to"), agents, issues);
            else issues.Add(Child(ep, "to"), "missing required key");
            const auto delay = GetInt(f[k], "delay", ep, issues);
            if (!delay) {
              if (!f[k].contains("delay")) issues.Add(Child(ep, "delay"), "missing required key");
              continue;
            }
            CheckDelay(*delay, d.tau_max, Child(ep, "delay"), issues);
            if (from && to && *from == *to && *delay != 0) {
              issues.Add(ep, "self delay must be 0");
            }
            if (from && to) {
              d.comm.fixed.push_back({{*from, *to}, static_cast<int>(*delay)});
            }
          }
        }
      }
      if (c.contains("uniform")) {
        const std::string up = Child(p, "uniform");
        d.comm.uniform = ParseUniform(c["uniform"], up, d.tau_max,
                                      {"lo", "hi", "edges"}, issues);
        if (c["uniform"].is_object() && c["uniform"].contains("edges")) {
          d.comm.uniform_edges = ParseEdges(c["uniform"]["edges"],
                                            Child(up, "edges"), agents, issues);
        }
      }
    }
  }
  if (j.contains("feedback")) {
    const std::string p = Child(path, "feedback");
    const Json& c = j["feedback"];
    if (RequireObject(c, p, issues)) {
      AllowOnly(c, p, {"base", "fixed", "uniform"}, issues);
      if (auto b = GetInt(c, "base", p, issues)) {
        CheckDelay(*b, d.tau_max, Child(p, "base"), issues);
        d.feedback.base = static_cast<int>(*b);
      }
      if (c.contains("fixed")) {
        const Json& f = c["fixed"];
        const std::string fp = Child(p, "fixed");
        if (!f.is_array()) {
          issues.Add(fp, "expected a list");
        } else {
          for (std::size_t k = 0; k < f.size(); ++k) {
            const std::string ep = Index(fp, k);
            if (!RequireObject(f[k], ep, issues)) continue;
            AllowOnly(f[k], ep, {"agent", "delay"}, issues);
            std::optional<int> agent;
            if (f[k].contains("agent")) agent = AgentId(f[k]["agent"], Child(ep, "agent"), agents, issues);
            else issues.Add(Child(ep, "agent"), "missing required key");
            const auto delay = GetInt(f[k], "delay", ep, issues);
            if (!delay) {
              if (!f[k].contains("delay")) issues.Add(Child(ep, "delay"), "missing required key");
              continue;
            }
            CheckDelay(*delay, d.tau_max, Child(ep, "delay"), issues);
            if (agent) {
              d.feedback.fixed.push_back({*agent, static_cast<int>(*delay)});
            }
          }
        }
      }
      if (c.contains("uniform")) {
        const std::string up = Child(p, "uniform");
        d.feedback.uniform = ParseUniform(c["uniform"], up, d.tau_max,
                                          {"lo", "hi", "agents"}, issues);
        if (c["uniform"].is_object() && c["uniform"].contains("agents")) {
          const Json& a = c["uniform"]["agents"];
          if (!a.is_array()) {
            issues.Add(Child(up, "agents"), "expected a list of agent ids");
          } else {
            for (std::size_t k = 0; k < a.size(); ++k) {
              if (auto id = AgentId(a[k], Index(Child(up, "agents"), k), agents, issues)) {
                d.feedback.uniform_agents.push_back(*id);
              }
            }
          }
        }
      }
    }
  }
  return d;
}

privacy::NoiseConfig ParsePrivacy(const Json& j, Issues& issues) {
  privacy::NoiseConfig n;
  const std::string path = "privacy";
  if (!RequireObject(j, path, issues)) return n;
  AllowOnly(j, path, {"mode", "epsilon", "sigma", "sensitivity", "shared_draw"},
            issues);
  const auto mode = GetString(j, "mode", path, issues);
  if (!mode) {
    issues.Add(Child(path, "mode"), "missing required key");
  } else if (*mode == "epsilon") {
    n.mode = privacy::NoiseMode::kFixedEpsilon;
  } else if (*mode == "sigma") {
    n.mode = privacy::NoiseMode::kFixedSigma;
  } else if (*mode == "disabled") {
    n.mode = privacy::NoiseMode::kDisabled;
  } else {
    issues.Add(Child(path, "mode"), "expected 'epsilon', 'sigma' or 'disabled'");
  }
  if (auto e = GetNumber(j, "epsilon", path, issues)) n.epsilon = *e;
  if (auto s = GetNumber(j, "sigma", path, issues)) n.sigma = *s;
  if (auto sd = GetBool(j, "shared_draw", path, issues)) n.shared_draw = *sd;
  if (j.contains("sensitivity")) {
    const std::string p = Child(path, "sensitivity");
    const Json& s = j["sensitivity"];
    if (RequireObject(s, p, issues)) {
      AllowOnly(s, p, {"mode", "delta"}, issues);
      const auto sm = GetString(s, "mode", p, issues);
      if (sm && *sm == "analytic") {
        n.sensitivity_mode = privacy::SensitivityMode::kAnalytic;
      } else if (sm && *sm == "manual") {
        n.sensitivity_mode = privacy::SensitivityMode::kManual;
      } else if (sm) {
        issues.Add(Child(p, "mode"), "expected 'manual' or 'analytic'");
      } else {
        issues.Add(Child(p, "mode"), "missing required key");
      }
      if (auto delta = GetNumber(s, "delta", p, issues)) {
        n.manual_sensitivity = *delta;
      }
    }
  }
  try {
    n.Validate();
  } catch (const ConfigError& e) {
    for (const auto& item : e.items()) issues.AddRaw(item);
  }
  return n;
}

std::vector<Vec> ParseInit(const Json& j, int agents, Issues& issues) {
  std::vector<Vec> out;
  if (!j.is_array()) {
    issues.Add("init", "expected a list with one entry per agent");
    return out;
  }
  if (static_cast<int>(j.size()) != agents) {
    issues.Add("init", "has " + std::to_string(j.size()) + " entries for " +
                           std::to_string(agents) + " agents");
  }
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (j[k].is_number()) {
      out.push_back({j[k].get<double>()});
    } else {
      out.push_back(GetNumberList(j[k], Index("init", k), issues));
    }
  }
  return out;
}

OutputSpec ParseOutput(const Json& j, Issues& issues) {
  OutputSpec o;
  if (!RequireObject(j, "output", issues)) return o;
  AllowOnly(j, "output", {"format", "path", "regret"}, issues);
  if (auto f = GetString(j, "format", "output", issues)) {
    try {
      o.format = ParseFormat(*f);
    } catch (const ConfigError& e) {
      issues.Add("output.format", e.items().front());
    }
  }
  if (auto p = GetString(j, "path", "output", issues)) o.path = *p;
  if (auto r = GetBool(j, "regret", "output", issues)) o.regret = *r;
  return o;
}

Json EdgeJson(const graph::Edge& e) { return Json::array({e.from + 1, e.to + 1}); }

Json EdgesJson(const std::vector<graph::Edge>& edges) {
  Json out = Json::array();
  for (const auto& e : edges) out.push_back(EdgeJson(e));
  return out;
}

}  // namespace

std::string FormatName(OutputFormat format) {
  return format == OutputFormat::kTabular ? "tabular" : "object-lines";
}

OutputFormat ParseFormat(const std::string& name) {
  if (name == "tabular") return OutputFormat::kTabular;
  if (name == "object-lines") return OutputFormat::kObjectLines;
  throw ConfigError("unknown format '" + name +
                    "' (expected tabular or object-lines)");
}

ScenarioConfig ParseScenario(const Json& input) {
  Issues issues;
  if (!input.is_object()) throw ConfigError("configuration must be an object");
  Json doc = input;
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw ConfigError("preset: expected a string");
    Json base = PresetDocument(doc["preset"].get<std::string>());
    doc.erase("preset");
    base.merge_patch(doc);
    doc = std::move(base);
  }
  AllowOnly(doc, "",
            {"game", "graph", "delays", "privacy", "horizon", "gamma", "init",
             "seed", "output", "connectivity", "run_id"},
            issues);
  for (const char* key : {"game", "graph", "horizon", "init"}) {
    if (!doc.contains(key)) issues.Add(key, "missing required key");
  }

  ScenarioConfig c;
  if (doc.contains("game")) c.game = ParseGame(doc["game"], issues);
  if (doc.contains("graph")) c.graph = ParseGraph(doc["graph"], issues);
  const int agents = c.graph.agents;
  if (agents > 0 && static_cast<int>(c.game.lower.size()) != agents) {
    issues.Add("graph.agents", std::to_string(agents) + " agents but the game has " +
                                   std::to_string(c.game.lower.size()) + " boxes");
  }
  if (doc.contains("delays") && agents > 0) {
    c.delays = ParseDelays(doc["delays"], agents, issues);
  }
  if (doc.contains("privacy")) c.privacy = ParsePrivacy(doc["privacy"], issues);
  if (auto h = GetInt(doc, "horizon", "", issues)) {
    if (*h < 1) issues.Add("horizon", "must be >= 1");
    else c.horizon = static_cast<int>(*h);
  }
  if (auto g = GetNumber(doc, "gamma", "", issues)) {
    if (!(*g > 0.0)) issues.Add("gamma", "must be > 0");
    c.gamma = *g;
  }
  if (doc.contains("init") && agents > 0) c.init = ParseInit(doc["init"], agents, issues);
  if (doc.contains("seed")) {
    if (doc["seed"].is_number_unsigned() || doc["seed"].is_number_integer()) {
      if (doc["seed"].is_number_integer() && !doc["seed"].is_number_unsigned() &&
          doc["seed"].get<long long>() < 0) {
        issues.Add("seed", "must be >= 0");
      } else {
        c.seed = doc["seed"].get<std::uint64_t>();
      }
    } else {
      issues.Add("seed", "expected an unsigned integer");
    }
  }
  if (doc.contains("output")) c.output = ParseOutput(doc["output"], issues);
  if (doc.contains("connectivity")) {
    const Json& cj = doc["connectivity"];
    if (RequireObject(cj, "connectivity", issues)) {
      AllowOnly(cj, "connectivity", {"validate", "B"}, issues);
      const bool validate = GetBool(cj, "validate", "connectivity", issues).value_or(true);
      const auto b = GetInt(cj, "B", "connectivity", issues);
      if (validate) {
        if (!b) issues.Add("connectivity.B", "required when validate is true");
        else if (*b < 1) issues.Add("connectivity.B", "must be >= 1");
        else c.connectivity_window = static_cast<int>(*b);
      }
    }
  }
  if (auto r = GetString(doc, "run_id", "", issues)) c.run_id = *r;

  // Box membership of the initial actions.
  if (c.init.size() == c.game.lower.size()) {
    for (std::size_t i = 0; i < c.init.size(); ++i) {
      if (c.init[i].size() != 1) {
        issues.Add(Index("init", i), "expected a scalar action");
      } else if (c.init[i][0] < c.game.lower[i] || c.init[i][0] > c.game.upper[i]) {
        issues.Add(Index("init", i),
                   "x_" + std::to_string(i + 1) + "(0) outside its action box");
      }
    }
  }
  if (!issues.empty()) throw ConfigError(issues.take());
  return c;
}

Json ReadConfigDocument(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    return Json::object();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

ScenarioConfig LoadScenario(const std::string& path) {
  return ParseScenario(ReadConfigDocument(path));
}

Json ToJson(const ScenarioConfig& c) {
  Json doc;
  doc["game"] = {{"type", "nash_cournot"},
                 {"lower", c.game.lower},
                 {"upper", c.game.upper},
                 {"base_price", c.game.base_price},
                 {"market_amplitude", c.game.market_amplitude},
                 {"price_amplitude", c.game.price_amplitude},
                 {"price_slope", c.game.price_slope},
                 {"period", c.game.period}};

  Json g = {{"agents", c.graph.agents},
            {"self_loops", c.graph.add_self_loops ? "auto" : "explicit"},
            {"require_self_loops", c.graph.require_self_loops}};
  std::visit(
      [&](const auto& rule) {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, graph::StaticRule>) {
          g["static"] = EdgesJson(rule.edges);
        } else if constexpr (std::is_same_v<R, graph::PeriodicRule>) {
          Json phases = Json::array();
          for (const auto& p : rule.phases) phases.push_back(EdgesJson(p));
          g["periodic"] = phases;
        } else {
          g["static"] = EdgesJson(rule.base);
          Json inter = Json::array();
          for (const auto& ie : rule.intermittent) {
            inter.push_back({{"from", ie.edge.from + 1},
                             {"to", ie.edge.to + 1},
                             {"period", ie.period},
                             {"phases", ie.active_phases}});
          }
          g["intermittent"] = inter;
        }
      },
      c.graph.rule);
  doc["graph"] = g;

  Json comm = {{"base", c.delays.comm.base}, {"fixed", Json::array()}};
  for (const auto& f : c.delays.comm.fixed) {
    comm["fixed"].push_back(
        {{"from", f.edge.from + 1}, {"to", f.edge.to + 1}, {"delay", f.delay}});
  }
  if (c.delays.comm.uniform) {
    comm["uniform"] = {{"lo", c.delays.comm.uniform->lo},
                       {"hi", c.delays.comm.uniform->hi}};
    if (!c.delays.comm.uniform_edges.empty()) {
      comm["uniform"]["edges"] = EdgesJson(c.delays.comm.uniform_edges);
    }
  }
  Json fb = {{"base", c.delays.feedback.base}, {"fixed", Json::array()}};
  for (const auto& f : c.delays.feedback.fixed) {
    fb["fixed"].push_back({{"agent", f.agent + 1}, {"delay", f.delay}});
  }
  if (c.delays.feedback.uniform) {
    fb["uniform"] = {{"lo", c.delays.feedback.uniform->lo},
                     {"hi", c.delays.feedback.uniform->hi}};
    if (!c.delays.feedback.uniform_agents.empty()) {
      Json a = Json::array();
      for (int id : c.delays.feedback.uniform_agents) a.push_back(id + 1);
      fb["uniform"]["agents"] = a;
    }
  }
  doc["delays"] = {{"tau_max", c.delays.tau_max},
                   {"comm", comm},
                   {"feedback", fb},
                   {"warm_start", c.delays.warm_start == engine::WarmStart::kClamp
                                      ? "clamp"
                                      : "zero_gradient"}};

  const char* mode = c.privacy.mode == privacy::NoiseMode::kFixedEpsilon ? "epsilon"
                     : c.privacy.mode == privacy::NoiseMode::kFixedSigma ? "sigma"
                                                                         : "disabled";
  Json sens = {{"mode", c.privacy.sensitivity_mode == privacy::SensitivityMode::kManual
                            ? "manual"
                            : "analytic"},
               {"delta", c.privacy.manual_sensitivity}};
  doc["privacy"] = {{"mode", mode},
                    {"epsilon", c.privacy.epsilon},
                    {"sigma", c.privacy.sigma},
                    {"sensitivity", sens},
                    {"shared_draw", c.privacy.shared_draw}};

  doc["horizon"] = c.horizon;
  doc["gamma"] = c.gamma;
  Json init = Json::array();
  for (const auto& x : c.init) init.push_back(x);
  doc["init"] = init;
  doc["seed"] = c.seed;
  doc["output"] = {{"format", FormatName(c.output.format)},
                   {"path", c.output.path},
                   {"regret", c.output.regret}};
  if (c.connectivity_window) {
    doc["connectivity"] = {{"validate", true}, {"B", *c.connectivity_window}};
  } else {
    doc["connectivity"] = {{"validate", false}};
  }
  doc["run_id"] = c.run_id;
  return doc;
}

void WriteConfig(const ScenarioConfig& config, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  out << ToJson(config).dump(2) << '\n';
  if (!out) throw Error(path + ": write failed");
}

graph::GraphSchedule BuildSchedule(const GraphSpec& spec) {
  auto with_loops = [&](std::vector<graph::Edge> edges) {
    if (spec.add_self_loops) {
      for (int i = 0; i < spec.agents; ++i) edges.push_back({i, i});
    }
    return edges;
  };
  graph::ScheduleRule rule = std::visit(
      [&](const auto& r) -> graph::ScheduleRule {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, graph::StaticRule>) {
          return graph::StaticRule{with_loops(r.edges)};
        } else if constexpr (std::is_same_v<R, graph::PeriodicRule>) {
          graph::PeriodicRule out;
          for (const auto& p : r.phases) out.phases.push_back(with_loops(p));
          return out;
        } else {
          return graph::ProceduralRule{with_loops(r.base), r.intermittent};
        }
      },
      spec.rule);
  return graph::GraphSchedule(spec.agents, std::move(rule),
                              spec.require_self_loops);
}

graph::DelaySchedule BuildDelays(const ScenarioConfig& config) {
  return graph::DelaySchedule(config.delays.tau_max, config.delays.comm,
                              config.delays.feedback, config.seed);
}

engine::RunConfig ToRunConfig(const ScenarioConfig& c) {
  engine::RunConfig rc;
  try {
    rc.game = std::make_shared<game::NashCournot>(c.game);
    rc.schedule = BuildSchedule(c.graph);
    rc.delays = BuildDelays(c);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  rc.noise = c.privacy;
  rc.horizon = c.horizon;
  rc.gamma = c.gamma;
  rc.initial_actions = c.init;
  rc.seed = c.seed;
  rc.warm_start = c.delays.warm_start;
  rc.connectivity_window = c.connectivity_window;
  rc.Validate();
  return rc;
}

engine::RunConfig LoadConfig(const std::string& path) {
  return ToRunConfig(LoadScenario(path));
}

}  // namespace dpdda::cli
