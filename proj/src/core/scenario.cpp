#include "netforge/core/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace netforge::core {

using nlohmann::json;

std::vector<int> ScenarioConfig::red_agent_ids() const {
  std::vector<int> out;
  for (const auto& a : agents) {
    if (a.team == Team::Red) out.push_back(a.id);
  }
  return out;
}

std::vector<int> ScenarioConfig::blue_agent_ids() const {
  std::vector<int> out;
  for (const auto& a : agents) {
    if (a.team == Team::Blue) out.push_back(a.id);
  }
  return out;
}

Topology build_topology(const ScenarioConfig& scenario) {
  const int n = static_cast<int>(scenario.nodes.size());
  if (n == 0) throw std::invalid_argument("scenario declares no nodes");
  if (n > kTargetSlots) {
    throw std::invalid_argument("node_count exceeds the 100 target slots: " +
                                std::to_string(n));
  }

  Topology topo;
  topo.nodes.resize(n);
  topo.adj.assign(static_cast<std::size_t>(n) * n, 0);

  std::set<int> seen_ids;
  int next_auto = 0;
  for (const NodeSpec& spec : scenario.nodes) {
    int id = spec.id;
    if (id < 0) {
      while (seen_ids.contains(next_auto)) ++next_auto;
      id = next_auto;
    }
    if (id >= n) throw std::invalid_argument("node id out of range");
    if (!seen_ids.insert(id).second) {
      throw std::invalid_argument("duplicate node id: " + std::to_string(id));
    }
    Node node;
    node.id = id;
    node.name = spec.name.empty() ? ("node-" + std::to_string(id)) : spec.name;
    node.zone = spec.zone;
    node.services = spec.services;
    if (!spec.token.empty()) node.holds_token = spec.token;
    topo.nodes[id] = std::move(node);
  }

  // Every declared zone must contain at least one node.
  for (const Zone& z : scenario.zones) {
    bool found = false;
    for (const Node& node : topo.nodes) {
      if (node.zone == z.name) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::invalid_argument(std::string("zone without nodes: ") +
                                  to_string(z.name));
    }
  }

  for (const auto& [a, b] : scenario.edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    topo.set_edge(a, b);
    if (!scenario.directed_edges) topo.set_edge(b, a);
  }

  std::set<std::string> universe(scenario.tokens.begin(), scenario.tokens.end());
  for (const Node& node : topo.nodes) {
    if (node.holds_token) universe.insert(*node.holds_token);
  }
  for (const ZoneGate& gate : scenario.gates) {
    if (!universe.contains(gate.token)) {
      throw std::invalid_argument("zone gate references unknown token: " +
                                  gate.token);
    }
  }
  topo.gates = scenario.gates;
  return topo;
}

WorldState init_world(const ScenarioConfig& scenario) {
  WorldState state;
  state.topology = build_topology(scenario);
  int max_id = -1;
  for (const auto& a : scenario.agents) max_id = std::max(max_id, a.id);
  state.inventories.resize(max_id + 1);
  for (const auto& a : scenario.agents) {
    AgentInventory inv;
    inv.agent_id = a.id;
    inv.team = a.team;
    inv.energy = scenario.energy_budget;
    state.inventories[a.id] = std::move(inv);
  }
  return state;
}

ScenarioConfig benchmark_scenario(int node_count) {
  if (node_count < 4 || node_count > kTargetSlots) {
    throw std::invalid_argument("benchmark node_count must be in [4, 100]");
  }
  ScenarioConfig sc;
  sc.name = "benchmark-" + std::to_string(node_count);
  sc.zones = {{ZoneName::Internet, "0.0.0.0/0"},
              {ZoneName::DMZ, "10.0.0.0/24"},
              {ZoneName::Corporate, "10.0.2.0/24"},
              {ZoneName::SecureVault, "10.0.1.0/24"}};
  sc.tokens = {"Enterprise_Admin_Token"};
  sc.gates = {{ZoneName::Corporate, ZoneName::SecureVault, "Enterprise_Admin_Token"},
              {ZoneName::SecureVault, ZoneName::Corporate, "Enterprise_Admin_Token"}};

  const int hosts = node_count - 1;
  const int dmz = std::max(1, hosts * 30 / 100);
  const int corp = std::max(1, hosts * 40 / 100);
  const int vault = hosts - dmz - corp;
  if (vault < 1) throw std::invalid_argument("benchmark too small for 3 subnets");

  auto pad2 = [](int i) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%02d", i);
    return std::string(buf);
  };

  sc.nodes.push_back({0, "internet-apt-operator", ZoneName::Internet, {}, ""});
  for (int i = 0; i < dmz; ++i) {
    NodeSpec n;
    n.zone = ZoneName::DMZ;
    switch (i % 3) {
      case 0:
        n.name = "dmz-web-" + pad2(i);
        n.services = {{"http", {"CVE-2021-41773"}}, {"smb", {"MS17-010"}}};
        break;
      case 1:
        n.name = "dmz-mail-" + pad2(i);
        n.services = {{"smtp", {}}, {"rdp", {"CVE-2019-0708"}}};
        break;
      default:
        n.name = "dmz-web-" + pad2(i);
        n.services = {{"http", {}}, {"smb", {"MS17-010"}}};
        break;
    }
    sc.nodes.push_back(std::move(n));
  }
  for (int i = 0; i < corp; ++i) {
    NodeSpec n;
    n.zone = ZoneName::Corporate;
    if (i == 0) {
      n.name = "corp-dc-00";
      n.services = {{"kerberos", {}}, {"ldap", {}}, {"smb", {"MS17-010"}}};
      n.token = "Enterprise_Admin_Token";
    } else {
      n.name = "corp-ws-" + pad2(i);
      n.services = {{"smb", {"MS17-010"}}};
      if (i % 2 == 1) n.services.push_back({"rdp", {"CVE-2019-0708"}});
    }
    sc.nodes.push_back(std::move(n));
  }
  for (int i = 0; i < vault; ++i) {
    NodeSpec n;
    n.zone = ZoneName::SecureVault;
    if (i % 2 == 0) {
      n.name = "vault-db-" + pad2(i);
      n.services = {{"sql", {}}, {"smb", {"MS17-010"}}};
    } else {
      n.name = "vault-ics-" + pad2(i);
      n.services = {{"scada", {}}};
    }
    sc.nodes.push_back(std::move(n));
  }

  // Dense intra-zone connectivity plus bipartite links along the chain
  // Internet -> DMZ -> Corporate -> SecureVault.
  auto zone_range = [&](ZoneName z) {
    std::vector<int> ids;
    for (int i = 0; i < static_cast<int>(sc.nodes.size()); ++i) {
      if (sc.nodes[i].zone == z) ids.push_back(i);
    }
    return ids;
  };
  const std::vector<ZoneName> chain = {ZoneName::Internet, ZoneName::DMZ,
                                       ZoneName::Corporate, ZoneName::SecureVault};
  for (ZoneName z : chain) {
    auto ids = zone_range(z);
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b) {
        sc.edges.emplace_back(ids[a], ids[b]);
      }
    }
  }
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    auto outer = zone_range(chain[k]);
    auto inner = zone_range(chain[k + 1]);
    for (int a : outer) {
      for (int b : inner) sc.edges.emplace_back(a, b);
    }
  }

  sc.agents = {{0, Team::Blue, ZoneName::DMZ},
               {1, Team::Blue, ZoneName::Corporate},
               {2, Team::Blue, ZoneName::SecureVault},
               {3, Team::Red, std::nullopt}};
  return sc;
}

namespace {

json service_to_json(const Service& s) {
  return json{{"name", s.name}, {"vulns", s.vuln_tags}};
}

Service service_from_json(const json& j) {
  Service s;
  s.name = j.at("name").get<std::string>();
  if (j.contains("vulns")) s.vuln_tags = j.at("vulns").get<std::vector<std::string>>();
  return s;
}

}  // namespace

std::string scenario_to_json_text(const ScenarioConfig& sc) {
  json j;
  j["name"] = sc.name;
  j["seed"] = sc.seed;
  j["horizon_ticks"] = sc.horizon_ticks;
  j["energy_budget"] = sc.energy_budget;
  j["sojourn_jitter"] = sc.sojourn_jitter;
  j["blue_concurrency_cap"] = sc.blue_concurrency_cap;
  j["honeytokens_enabled"] = sc.honeytokens_enabled;
  j["honeytoken_trip_bonus"] = sc.honeytoken_trip_bonus;
  j["encode_telemetry"] = sc.encode_telemetry;
  j["mode"] = sc.mode;
  j["action_registry"] = sc.action_registry_path;
  j["encoder_model"] = sc.encoder_model_path;
  j["green"] = {{"enabled", sc.green.enabled},
                {"lambda_day", sc.green.lambda_day},
                {"lambda_night", sc.green.lambda_night},
                {"day_start", sc.green.day_start},
                {"day_end", sc.green.day_end}};
  j["encoder"] = {{"corpus_size", sc.encoder.corpus_size},
                  {"fit_seed", sc.encoder.fit_seed},
                  {"vocab_cap", sc.encoder.vocab_cap},
                  {"ngram_min", sc.encoder.ngram_min},
                  {"ngram_max", sc.encoder.ngram_max}};
  j["zones"] = json::array();
  for (const auto& z : sc.zones) {
    j["zones"].push_back({{"name", to_string(z.name)}, {"cidr", z.cidr}});
  }
  j["nodes"] = json::array();
  for (const auto& n : sc.nodes) {
    json jn{{"name", n.name}, {"zone", to_string(n.zone)}};
    if (n.id >= 0) jn["id"] = n.id;
    if (!n.token.empty()) jn["token"] = n.token;
    jn["services"] = json::array();
    for (const auto& s : n.services) jn["services"].push_back(service_to_json(s));
    j["nodes"].push_back(std::move(jn));
  }
  j["edges"] = json::array();
  for (const auto& [a, b] : sc.edges) j["edges"].push_back({a, b});
  j["directed_edges"] = sc.directed_edges;
  j["zone_gates"] = json::array();
  for (const auto& g : sc.gates) {
    j["zone_gates"].push_back({{"src", to_string(g.src)},
                               {"dst", to_string(g.dst)},
                               {"token", g.token}});
  }
  j["tokens"] = sc.tokens;
  j["agents"] = json::array();
  for (const auto& a : sc.agents) {
    json ja{{"id", a.id}, {"team", to_string(a.team)}};
    if (a.zone) ja["zone"] = to_string(*a.zone);
    j["agents"].push_back(std::move(ja));
  }
  return j.dump(2);
}

ScenarioConfig scenario_from_json_text(const std::string& text) {
  json j = json::parse(text);
  ScenarioConfig sc;
  sc.name = j.value("name", std::string("scenario"));
  sc.seed = j.value("seed", std::uint64_t{0});
  sc.horizon_ticks = j.value("horizon_ticks", 500.0);
  sc.energy_budget = j.value("energy_budget", 1000.0);
  sc.sojourn_jitter = j.value("sojourn_jitter", 0.2);
  sc.blue_concurrency_cap = j.value("blue_concurrency_cap", 2);
  sc.honeytokens_enabled = j.value("honeytokens_enabled", true);
  sc.honeytoken_trip_bonus = j.value("honeytoken_trip_bonus", true);
  sc.encode_telemetry = j.value("encode_telemetry", true);
  sc.mode = j.value("mode", std::string("sim"));
  sc.action_registry_path = j.value("action_registry", std::string());
  sc.encoder_model_path = j.value("encoder_model", std::string());
  if (j.contains("green")) {
    const json& g = j["green"];
    sc.green.enabled = g.value("enabled", true);
    sc.green.lambda_day = g.value("lambda_day", 5.0);
    sc.green.lambda_night = g.value("lambda_night", 0.5);
    sc.green.day_start = g.value("day_start", 8);
    sc.green.day_end = g.value("day_end", 20);
  }
  if (j.contains("encoder")) {
    const json& e = j["encoder"];
    sc.encoder.corpus_size = e.value("corpus_size", 2000);
    sc.encoder.fit_seed = e.value("fit_seed", std::uint64_t{7});
    sc.encoder.vocab_cap = e.value("vocab_cap", 20000);
    sc.encoder.ngram_min = e.value("ngram_min", 3);
    sc.encoder.ngram_max = e.value("ngram_max", 5);
  }
  for (const json& jz : j.value("zones", json::array())) {
    sc.zones.push_back({zone_from_string(jz.at("name").get<std::string>()),
                        jz.value("cidr", std::string())});
  }
  for (const json& jn : j.value("nodes", json::array())) {
    NodeSpec n;
    n.id = jn.value("id", -1);
    n.name = jn.value("name", std::string());
    n.zone = zone_from_string(jn.at("zone").get<std::string>());
    n.token = jn.value("token", std::string());
    for (const json& js : jn.value("services", json::array())) {
      n.services.push_back(service_from_json(js));
    }
    sc.nodes.push_back(std::move(n));
  }
  for (const json& je : j.value("edges", json::array())) {
    sc.edges.emplace_back(je.at(0).get<int>(), je.at(1).get<int>());
  }
  sc.directed_edges = j.value("directed_edges", false);
  for (const json& jg : j.value("zone_gates", json::array())) {
    sc.gates.push_back({zone_from_string(jg.at("src").get<std::string>()),
                        zone_from_string(jg.at("dst").get<std::string>()),
                        jg.at("token").get<std::string>()});
  }
  sc.tokens = j.value("tokens", std::vector<std::string>{});
  for (const json& ja : j.value("agents", json::array())) {
    AgentSpec a;
    a.id = ja.at("id").get<int>();
    const std::string team = ja.at("team").get<std::string>();
    a.team = team == "Red" ? Team::Red : Team::Blue;
    if (ja.contains("zone")) a.zone = zone_from_string(ja["zone"].get<std::string>());
    sc.agents.push_back(a);
  }
  return sc;
}

ScenarioConfig load_scenario(const std::string& path_or_name) {
  if (path_or_name == "benchmark") return benchmark_scenario(100);
  if (path_or_name.rfind("benchmark:", 0) == 0) {
    return benchmark_scenario(std::stoi(path_or_name.substr(10)));
  }
  std::ifstream in(path_or_name);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path_or_name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str());
}

}  // namespace netforge::core
