#include "netforge/telemetry/logs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace netforge::telemetry {

using actions::EffectKind;
using nlohmann::json;

namespace {

std::string tick_str(Real tick) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", tick);
  return buf;
}

std::string ip_of(const core::Node& node) {
  const char* prefix = "10.0.9.";
  switch (node.zone) {
    case ZoneName::Internet: prefix = "203.0.113."; break;
    case ZoneName::DMZ: prefix = "10.0.0."; break;
    case ZoneName::Corporate: prefix = "10.0.2."; break;
    case ZoneName::SecureVault: prefix = "10.0.1."; break;
  }
  return prefix + std::to_string(10 + node.id);
}

struct Body {
  int event_id;
  std::string data;  // inner EventData elements
};

std::string data_field(const std::string& name, const std::string& value) {
  return "<Data Name=\"" + name + "\">" + value + "</Data>";
}

// (effect kind, outcome, team) -> event id and payload fields. Failed logons
// map to 4625, successful sessions to 4624, isolation to firewall-rule ids.
Body action_body(const LogDraft& d, const core::Node& node) {
  const std::string ip = ip_of(node);
  const std::string svc = d.service.empty() ? "host" : d.service;
  switch (d.kind) {
    case EffectKind::Exploit:
      if (d.success) {
        return {4624, data_field("LogonType", "3") +
                          data_field("TargetUserName", "svc_" + svc) +
                          data_field("IpAddress", ip) +
                          data_field("ProcessName", svc + ".exe")};
      }
      return {4625, data_field("Status", "0xC000006D") +
                        data_field("FailureReason", "bad credentials") +
                        data_field("IpAddress", ip) +
                        data_field("TargetService", svc)};
    case EffectKind::PrivilegeEscalation:
      if (d.success) {
        return {4672, data_field("PrivilegeList", "SeDebugPrivilege SeTcbPrivilege") +
                          data_field("TargetUserName", "SYSTEM")};
      }
      return {4673, data_field("Service", svc) + data_field("Status", "denied")};
    case EffectKind::CredentialDump:
      if (d.success) {
        return {4656, data_field("ObjectName", "\\Device\\HarddiskVolume2\\Windows\\System32\\lsass.exe") +
                          data_field("AccessMask", "0x1410") +
                          data_field("ProcessName", "rundll32.exe")};
      }
      return {4674, data_field("ObjectServer", "LSA") + data_field("Status", "denied")};
    case EffectKind::LateralMove:
      if (d.success) {
        return {4624, data_field("LogonType", "9") +
                          data_field("AuthenticationPackageName", "Kerberos") +
                          data_field("TargetUserName", "administrator") +
                          data_field("IpAddress", ip)};
      }
      return {4625, data_field("Status", "0xC000005E") +
                        data_field("FailureReason", "ticket rejected") +
                        data_field("AuthenticationPackageName", "Kerberos") +
                        data_field("IpAddress", ip)};
    case EffectKind::Scan:
      if (d.team == Team::Blue) {
        return {4798, data_field("CallerProcessName", "soc_audit.exe") +
                          data_field("TargetUserName", "operators")};
      }
      if (d.success) {
        return {5156, data_field("Direction", "inbound") +
                          data_field("SourceAddress", ip) +
                          data_field("DestPort", "445") +
                          data_field("Protocol", "6")};
      }
      return {5157, data_field("Direction", "inbound") +
                        data_field("SourceAddress", ip) +
                        data_field("FilterOrigin", "block rule")};
    case EffectKind::Isolate:
      return {4946, data_field("RuleName", "quarantine-" + node.name) +
                        data_field("ProfileChanged", "All") +
                        data_field("Action", "block all")};
    case EffectKind::Unisolate:
      return {4948, data_field("RuleName", "quarantine-" + node.name) +
                        data_field("Action", "rule deleted")};
    case EffectKind::Cleanup:
      return {1074, data_field("Reason", "planned remediation") +
                        data_field("Process", "soc_restore.exe") +
                        data_field("ShutdownType", "restart")};
    case EffectKind::Patch:
      return {19, data_field("UpdateTitle", "security update for " + svc) +
                      data_field("Result", "installed")};
    case EffectKind::CredentialReset:
      return {4723, data_field("TargetUserName", "svc_" + svc) +
                        data_field("Action", "password change")};
    case EffectKind::TokenRotate:
      return {4724, data_field("TargetUserName", "krbtgt") +
                        data_field("Action", "password reset")};
    case EffectKind::Honeytoken:
      if (d.success) {
        return {4720, data_field("TargetUserName", "backup_admin") +
                          data_field("SamAccountName", "backup_admin") +
                          data_field("DisplayName", "Backup Administrator")};
      }
      return {4720, data_field("TargetUserName", "backup_admin") +
                        data_field("Status", "rolled back")};
    case EffectKind::NoOp:
      break;
  }
  return {0, ""};
}

std::string wrap_xml(int event_id, Real tick, const std::string& computer,
                     const std::string& data) {
  std::string out;
  out.reserve(160 + data.size());
  out += "<Event><System><EventID>";
  out += std::to_string(event_id);
  out += "</EventID><TimeCreated SystemTime=\"";
  out += tick_str(tick);
  out += "\"/><Computer>";
  out += computer;
  out += "</Computer></System><EventData>";
  out += data;
  out += "</EventData></Event>";
  return out;
}

constexpr int kGreenTemplateCount = 6;

const char* const kUsers[] = {"alice", "bob", "carol", "dave",
                              "erin", "frank", "grace", "heidi"};
const char* const kFiles[] = {"q3_forecast.xlsx", "payroll.db", "design_notes.docx",
                              "build_logs.zip", "crm_export.csv"};

Body green_body(int variant, const core::Node& node, RngStream& rng) {
  const std::string user = kUsers[rng.uniform_int(0, 7)];
  const std::string ip = ip_of(node);
  switch (variant) {
    case 0:
      return {4624, data_field("LogonType", "2") + data_field("TargetUserName", user) +
                        data_field("IpAddress", ip)};
    case 1:
      return {4634, data_field("TargetUserName", user) + data_field("LogonType", "2")};
    case 2:
      return {4663, data_field("ObjectName", std::string("\\\\fileshare\\") +
                                                 kFiles[rng.uniform_int(0, 4)]) +
                        data_field("AccessMask", "0x1") +
                        data_field("SubjectUserName", user)};
    case 3:
      return {4768, data_field("TargetUserName", user) +
                        data_field("ServiceName", "krbtgt") +
                        data_field("TicketOptions", "0x40810010")};
    case 4:
      return {5156, data_field("Direction", "outbound") +
                        data_field("SourceAddress", ip) +
                        data_field("DestPort", "443") + data_field("Protocol", "6")};
    default:
      return {5156, data_field("Direction", "inbound") +
                        data_field("SourceAddress", ip) +
                        data_field("DestPort", "80") +
                        data_field("Application", "httpd")};
  }
}

}  // namespace

LogRecord synthesize_log(const LogDraft& draft, const core::Node& node, Real tick) {
  Body body = action_body(draft, node);
  LogRecord rec;
  rec.tick = tick;
  rec.node = node.id;
  rec.zone = node.zone;
  rec.event_id = body.event_id;
  rec.origin = draft.team;
  rec.xml_text = wrap_xml(body.event_id, tick, node.name, body.data);
  return rec;
}

bool is_business_hours(Real tick, const GreenConfig& cfg) {
  const long hour = static_cast<long>(std::floor(tick)) % 24;
  return hour >= cfg.day_start && hour < cfg.day_end;
}

Real green_rate(Real tick, const GreenConfig& cfg) {
  return is_business_hours(tick, cfg) ? cfg.lambda_day : cfg.lambda_night;
}

std::vector<LogRecord> green_noise(Real t0, Real t1, const GreenConfig& cfg,
                                   const std::vector<const core::Node*>& pool,
                                   RngStream& rng) {
  std::vector<LogRecord> out;
  if (!cfg.enabled || pool.empty() || t1 <= t0) return out;
  const Real lambda_max = std::max(cfg.lambda_day, cfg.lambda_night);
  if (lambda_max <= 0.0) return out;
  const long n = rng.poisson(lambda_max * (t1 - t0));
  std::vector<Real> ticks;
  ticks.reserve(n);
  for (long i = 0; i < n; ++i) {
    const Real t = rng.uniform(t0, t1);
    if (rng.uniform() < green_rate(t, cfg) / lambda_max) ticks.push_back(t);
  }
  std::sort(ticks.begin(), ticks.end());
  out.reserve(ticks.size());
  for (Real t : ticks) {
    const core::Node& node = *pool[rng.uniform_int(0, static_cast<int>(pool.size()) - 1)];
    Body body = green_body(rng.uniform_int(0, kGreenTemplateCount - 1), node, rng);
    LogRecord rec;
    rec.tick = t;
    rec.node = node.id;
    rec.zone = node.zone;
    rec.event_id = body.event_id;
    rec.origin = Team::Green;
    rec.xml_text = wrap_xml(body.event_id, t, node.name, body.data);
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

// Every (kind, outcome, team) combination the simulator can emit.
const std::vector<LogDraft>& action_templates() {
  static const std::vector<LogDraft> templates = [] {
    std::vector<LogDraft> t;
    auto add = [&](EffectKind k, bool ok, Team team) {
      LogDraft d;
      d.kind = k;
      d.success = ok;
      d.team = team;
      t.push_back(d);
    };
    for (EffectKind k : {EffectKind::Exploit, EffectKind::PrivilegeEscalation,
                         EffectKind::CredentialDump, EffectKind::LateralMove,
                         EffectKind::Scan}) {
      add(k, true, Team::Red);
      add(k, false, Team::Red);
    }
    add(EffectKind::Scan, true, Team::Blue);
    for (EffectKind k : {EffectKind::Isolate, EffectKind::Unisolate,
                         EffectKind::Cleanup, EffectKind::Patch,
                         EffectKind::CredentialReset, EffectKind::TokenRotate}) {
      add(k, true, Team::Blue);
    }
    add(EffectKind::Honeytoken, true, Team::Blue);
    add(EffectKind::Honeytoken, false, Team::Blue);
    return t;
  }();
  return templates;
}

}  // namespace

int template_count() {
  return static_cast<int>(action_templates().size()) + kGreenTemplateCount;
}

std::vector<LogRecord> generate_seed_corpus(const core::Topology& topo,
                                            RngStream& rng, int size) {
  if (size < 10 * template_count()) {
    throw std::invalid_argument(
        "seed corpus size must be at least 10 x template count (" +
        std::to_string(10 * template_count()) + ")");
  }
  const auto& templates = action_templates();
  const int total = template_count();
  std::vector<LogRecord> corpus;
  corpus.reserve(size);
  std::vector<const core::Node*> pool;
  for (const core::Node& n : topo.nodes) pool.push_back(&n);

  for (int i = 0; i < size; ++i) {
    const int t = i % total;
    const Real tick = rng.uniform(0.0, 500.0);
    const core::Node& node = *pool[i % pool.size()];
    if (t < static_cast<int>(templates.size())) {
      LogDraft d = templates[t];
      d.node = node.id;
      d.service = node.services.empty() ? "host" : node.services.front().name;
      corpus.push_back(synthesize_log(d, node, tick));
    } else {
      Body body = green_body(t - static_cast<int>(templates.size()), node, rng);
      LogRecord rec;
      rec.tick = tick;
      rec.node = node.id;
      rec.zone = node.zone;
      rec.event_id = body.event_id;
      rec.origin = Team::Green;
      rec.xml_text = wrap_xml(body.event_id, tick, node.name, body.data);
      corpus.push_back(std::move(rec));
    }
  }
  return corpus;
}

std::string log_to_json_text(const LogRecord& r) {
  json j{{"tick", r.tick},          {"node", r.node},
         {"zone", core::to_string(r.zone)}, {"event_id", r.event_id},
         {"xml", r.xml_text},       {"origin", core::to_string(r.origin)}};
  return j.dump();
}

LogRecord log_from_json_text(const std::string& text) {
  json j = json::parse(text);
  LogRecord r;
  r.tick = j.at("tick").get<Real>();
  r.node = j.at("node").get<int>();
  r.zone = core::zone_from_string(j.at("zone").get<std::string>());
  r.event_id = j.at("event_id").get<int>();
  r.xml_text = j.at("xml").get<std::string>();
  const std::string origin = j.at("origin").get<std::string>();
  r.origin = origin == "Red"    ? Team::Red
             : origin == "Blue" ? Team::Blue
             : origin == "Green" ? Team::Green
                                 : Team::System;
  return r;
}

}  // namespace netforge::telemetry
