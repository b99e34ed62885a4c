#pragma once

// SIEM log synthesis. Every interaction produces a Windows-Event-shaped XML
// record; the green agent injects benign background records as a
// non-homogeneous Poisson process with a diurnal rate.

#include <string>
#include <vector>

#include "netforge/actions/action_ops.hpp"
#include "netforge/core/scenario.hpp"
#include "netforge/core/state.hpp"
#include "netforge/rng.hpp"

namespace netforge::telemetry {

using actions::LogDraft;
using core::GreenConfig;
using core::Team;
using core::ZoneName;

struct LogRecord {
  Real tick = 0.0;
  NodeId node = -1;
  ZoneName zone = ZoneName::DMZ;
  int event_id = 0;
  std::string xml_text;
  Team origin = Team::System;  // ground truth only, hidden from agents
};

std::string log_to_json_text(const LogRecord& r);
LogRecord log_from_json_text(const std::string& text);

// Deterministic template expansion keyed by (effect kind, outcome):
// the same draft and fields always produce byte-identical XML.
LogRecord synthesize_log(const LogDraft& draft, const core::Node& node, Real tick);

// True while floor(tick) mod 24 falls inside business hours.
bool is_business_hours(Real tick, const GreenConfig& cfg);
Real green_rate(Real tick, const GreenConfig& cfg);

// Benign records over (t0, t1], count ~ Poisson(integral of the rate),
// timestamps via thinning against the peak rate. Sorted by tick.
std::vector<LogRecord> green_noise(Real t0, Real t1, const GreenConfig& cfg,
                                   const std::vector<const core::Node*>& pool,
                                   RngStream& rng);

// Number of distinct log templates (action outcomes plus the benign pool).
int template_count();

// Encoder-fitting corpus: cycles every template across the topology's nodes
// with randomized fields. Requires size >= 10 x template_count().
std::vector<LogRecord> generate_seed_corpus(const core::Topology& topo,
                                            RngStream& rng, int size);

}  // namespace netforge::telemetry
