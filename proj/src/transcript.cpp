// Copyright 2026 The qmonty Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmonty/transcript.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace qmonty::io {

using json = nlohmann::ordered_json;

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  std::string out(buf);
  // A locale with ',' as separator would leak into %g.
  std::replace(out.begin(), out.end(), ',', '.');
  return out;
}

double round12(double value) {
  if (std::abs(value) < 1e-12) return 0.0;
  return std::strtod(format_number(value).c_str(), nullptr);
}

std::string to_json_line(const protocol::ProtocolTranscript& t) {
  json rec;
  rec["seed"] = t.seed;
  rec["round"] = t.round;
  rec["protocol"] = protocol::to_string(t.kind);
  rec["config"] = {{"d", t.d}, {"n", t.n}, {"m", t.m}};
  rec["bits"] = t.bits;
  json switches = json::array();
  for (bool s : t.switches) switches.push_back(s ? "s" : "ns");
  rec["switches"] = switches;
  json approvals = json::array();
  for (bool a : t.approvals) approvals.push_back(a);
  rec["approvals"] = approvals;
  rec["outcomes"] = t.outcomes;
  json announcements = json::array();
  for (char c : t.announcements) announcements.push_back(std::string(1, c));
  rec["announcements"] = announcements;
  rec["final_keys"] = t.final_keys;
  rec["flags"] = {{"all_same", t.all_same},
                  {"agreement", t.agreement},
                  {"aborted", t.aborted},
                  {"abort_step", t.aborted ? json(t.abort_step) : json(nullptr)}};
  if (t.diagnostics) {
    const protocol::Diagnostics& d = *t.diagnostics;
    json marginals = json::array();
    for (const auto& ev : d.marginals) {
      json row = json::array();
      for (double v : ev) row.push_back(round12(v));
      marginals.push_back(row);
    }
    rec["diagnostics"] = {{"register", d.register_name},
                          {"marginals", marginals},
                          {"largest_eigenvalue", round12(d.largest_eigenvalue)},
                          {"entangled", d.entangled},
                          {"uniform", d.uniform},
                          {"pure", d.pure}};
  } else {
    rec["diagnostics"] = nullptr;
  }
  return rec.dump();
}

protocol::ProtocolTranscript from_json_line(const std::string& line) {
  try {
    const json rec = json::parse(line);
    protocol::ProtocolTranscript t;
    t.seed = rec.at("seed").get<std::uint64_t>();
    t.round = rec.at("round").get<std::uint64_t>();
    t.kind = protocol::parse_kind(rec.at("protocol").get<std::string>());
    t.d = rec.at("config").at("d").get<int>();
    t.n = rec.at("config").at("n").get<int>();
    t.m = rec.at("config").at("m").get<int>();
    t.bits = rec.at("bits").get<std::vector<int>>();
    for (const auto& s : rec.at("switches")) t.switches.push_back(s.get<std::string>() == "s");
    t.approvals = rec.at("approvals").get<std::vector<bool>>();
    t.outcomes = rec.at("outcomes").get<Labels>();
    for (const auto& a : rec.at("announcements")) t.announcements += a.get<std::string>();
    t.final_keys = rec.at("final_keys").get<std::vector<int>>();
    const json& flags = rec.at("flags");
    t.all_same = flags.at("all_same").get<bool>();
    t.agreement = flags.at("agreement").get<bool>();
    t.aborted = flags.at("aborted").get<bool>();
    if (!flags.at("abort_step").is_null()) t.abort_step = flags.at("abort_step").get<std::string>();
    const json& diag = rec.at("diagnostics");
    if (!diag.is_null()) {
      protocol::Diagnostics d;
      d.register_name = diag.at("register").get<std::string>();
      d.marginals = diag.at("marginals").get<std::vector<std::vector<double>>>();
      d.largest_eigenvalue = diag.at("largest_eigenvalue").get<double>();
      d.entangled = diag.at("entangled").get<bool>();
      d.uniform = diag.at("uniform").get<bool>();
      d.pure = diag.at("pure").get<bool>();
      t.diagnostics = d;
    }
    return t;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed transcript record: ") + e.what());
  }
}

void write_jsonl(std::ostream& out,
                 const std::vector<protocol::ProtocolTranscript>& transcripts) {
  for (const auto& t : transcripts) out << to_json_line(t) << '\n';
}

}  // namespace qmonty::io
