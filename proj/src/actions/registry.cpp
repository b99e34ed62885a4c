#include "netforge/actions/registry.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace netforge::actions {

using nlohmann::json;

const char* to_string(EffectKind k) {
  switch (k) {
    case EffectKind::Exploit: return "Exploit";
    case EffectKind::PrivilegeEscalation: return "PrivilegeEscalation";
    case EffectKind::CredentialDump: return "CredentialDump";
    case EffectKind::LateralMove: return "LateralMove";
    case EffectKind::Scan: return "Scan";
    case EffectKind::Isolate: return "Isolate";
    case EffectKind::Unisolate: return "Unisolate";
    case EffectKind::Cleanup: return "Cleanup";
    case EffectKind::Patch: return "Patch";
    case EffectKind::CredentialReset: return "CredentialReset";
    case EffectKind::TokenRotate: return "TokenRotate";
    case EffectKind::Honeytoken: return "Honeytoken";
    case EffectKind::NoOp: return "NoOp";
  }
  return "?";
}

EffectKind effect_from_string(const std::string& s) {
  static const std::vector<EffectKind> all = {
      EffectKind::Exploit,        EffectKind::PrivilegeEscalation,
      EffectKind::CredentialDump, EffectKind::LateralMove,
      EffectKind::Scan,           EffectKind::Isolate,
      EffectKind::Unisolate,      EffectKind::Cleanup,
      EffectKind::Patch,          EffectKind::CredentialReset,
      EffectKind::TokenRotate,    EffectKind::Honeytoken,
      EffectKind::NoOp};
  for (EffectKind k : all) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown effect kind: " + s);
}

ActionRegistry::ActionRegistry(std::vector<ActionSpec> specs)
    : specs_(std::move(specs)) {
  if (static_cast<int>(specs_.size()) != kActionTypes) {
    throw std::invalid_argument("action registry must have exactly 32 entries");
  }
  for (int i = 0; i < kActionTypes; ++i) {
    if (specs_[i].type_id != i) {
      throw std::invalid_argument("action registry type ids must be 0..31 in order");
    }
  }
}

ActionRegistry ActionRegistry::builtin_default() {
  using E = EffectKind;
  const Team R = Team::Red;
  const Team B = Team::Blue;
  std::vector<ActionSpec> s = {
      // Red taxonomy.
      {0, "RedNoOp", R, "-", 0, 1, E::NoOp, {}},
      {1, "NetworkScan", R, "T1046", 1, 1, E::Scan, {}},
      {2, "ServiceEnumeration", R, "T1046", 1, 2, E::Scan, {}},
      {3, "VulnerabilityProbe", R, "T1595", 1, 3, E::Scan, {}},
      {4, "ExploitRemoteService", R, "T1210", 5, 5, E::Exploit, {"*"}},
      {5, "ExploitBlueKeep", R, "CVE-2019-0708", 3, 4, E::Exploit, {"CVE-2019-0708"}},
      {6, "ExploitEternalBlue", R, "MS17-010", 4, 6, E::Exploit, {"MS17-010"}},
      {7, "ExploitApacheRFI", R, "CVE-2021-41773", 3, 3, E::Exploit, {"CVE-2021-41773"}},
      {8, "ExploitSMBGhost", R, "CVE-2020-0796", 4, 5, E::Exploit, {"CVE-2020-0796"}},
      {9, "ExploitProxyLogon", R, "CVE-2021-26855", 5, 6, E::Exploit, {"CVE-2021-26855"}},
      {10, "PrivilegeEscalation", R, "T1068", 2, 3, E::PrivilegeEscalation, {}},
      {11, "KernelExploitEscalation", R, "T1068", 3, 4, E::PrivilegeEscalation, {}},
      {12, "DumpLSASS", R, "T1003.001", 1, 2, E::CredentialDump, {}},
      {13, "DumpNTDS", R, "T1003.003", 2, 4, E::CredentialDump, {}},
      {14, "PassTheTicket", R, "T1550.003", 1, 1, E::LateralMove, {}},
      {15, "PsExecLateralMove", R, "T1570", 2, 15, E::LateralMove, {}},
      // Blue taxonomy.
      {16, "BlueNoOp", B, "-", 0, 1, E::NoOp, {}},
      {17, "IsolateHost", B, "M1040", 1, 1, E::Isolate, {}},
      {18, "UnisolateHost", B, "M1030", 1, 1, E::Unisolate, {}},
      {19, "CleanupHost", B, "M1053", 2, 3, E::Cleanup, {}},
      {20, "RestoreFromBackup", B, "M1053", 4, 6, E::Cleanup, {}},
      {21, "PatchService", B, "M1051", 3, 4, E::Patch, {}},
      {22, "PatchCriticalService", B, "M1051", 5, 6, E::Patch, {}},
      {23, "ResetCredentials", B, "M1027", 2, 3, E::CredentialReset, {}},
      {24, "RotateServiceAccounts", B, "M1026", 3, 4, E::CredentialReset, {}},
      {25, "RotateKerberos", B, "T1550", 50, 4, E::TokenRotate, {}},
      {26, "DeployHoneytoken", B, "T1027", 5, 1, E::Honeytoken, {}},
      {27, "DeployDecoyShare", B, "T1027", 4, 2, E::Honeytoken, {}},
      {28, "AuditLogons", B, "M1047", 1, 2, E::Scan, {}},
      {29, "ThreatHuntZone", B, "M1047", 2, 4, E::Scan, {}},
      {30, "MonitorTraffic", B, "M1047", 1, 1, E::Scan, {}},
      {31, "ForensicSnapshot", B, "M1047", 2, 3, E::Scan, {}},
  };
  return ActionRegistry(std::move(s));
}

const ActionSpec* ActionRegistry::find(const std::string& name) const {
  for (const auto& s : specs_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::string ActionRegistry::to_json_text() const {
  json arr = json::array();
  for (const auto& s : specs_) {
    arr.push_back({{"id", s.type_id},
                   {"name", s.name},
                   {"team", core::to_string(s.team)},
                   {"mitre", s.mitre_ref},
                   {"energy", s.energy_cost},
                   {"duration", s.base_duration},
                   {"effect", to_string(s.effect)},
                   {"vulns", s.vuln_tags}});
  }
  return json{{"actions", arr}}.dump(2);
}

ActionRegistry ActionRegistry::from_json_text(const std::string& text) {
  json j = json::parse(text);
  std::vector<ActionSpec> specs;
  for (const json& ja : j.at("actions")) {
    ActionSpec s;
    s.type_id = ja.at("id").get<int>();
    s.name = ja.at("name").get<std::string>();
    s.team = ja.at("team").get<std::string>() == "Red" ? Team::Red : Team::Blue;
    s.mitre_ref = ja.value("mitre", std::string("-"));
    s.energy_cost = ja.at("energy").get<Real>();
    s.base_duration = ja.at("duration").get<Real>();
    s.effect = effect_from_string(ja.at("effect").get<std::string>());
    s.vuln_tags = ja.value("vulns", std::vector<std::string>{});
    specs.push_back(std::move(s));
  }
  return ActionRegistry(std::move(specs));
}

ActionRegistry ActionRegistry::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open action registry: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

}  // namespace netforge::actions
