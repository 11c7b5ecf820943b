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

#include "commands.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qmonty/game.hpp"
#include "qmonty/oracles.hpp"
#include "qmonty/protocols.hpp"
#include "qmonty/random.hpp"
#include "qmonty/transcript.hpp"
#include "selectors.hpp"

namespace qmonty::cli {

namespace {

using json = nlohmann::ordered_json;
using io::format_number;
using io::round12;

constexpr const char* kVersion = "1.0.0";

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  return file;
}

void require_format(const std::string& format) {
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("--format must be csv or json, got '" + format + "'");
  }
}

void warn_if_not_special(const std::string& who, const std::string& selector,
                         const Strategy& s, std::ostream& err) {
  if (s.is_special()) return;
  err << "warning: " << who << " strategy '" << selector << "' has det = "
      << format_number(s.determinant().real()) << (s.determinant().imag() < 0 ? "" : "+")
      << format_number(s.determinant().imag())
      << "i, not 1; payoffs ignore global phase\n";
}

// ---------------------------------------------------------------------------
// sweep

struct CurveJob {
  std::string scenario;
  std::optional<int> k;
  Strategy alice;
  Strategy bob;
  bool ghz;
  std::function<double(double)> analytic;
  std::string file_tag;
};

struct Curve {
  oracles::PayoffCurve analytic;
  std::vector<double> simulated;
};

std::vector<CurveJob> plan_sweep(const SweepOptions& o, std::ostream& err) {
  const int d = o.d;
  const int m = o.m;
  // Only explicit selectors draw the det != 1 warning.
  auto pick = [&](const std::optional<std::string>& chosen, const char* fallback,
                  const std::string& who) {
    Strategy s = parse_strategy(chosen.value_or(fallback), d);
    if (chosen) warn_if_not_special(who, *chosen, s, err);
    return s;
  };
  auto cfg_at = [d, m](double gamma) { return game::GameConfig{d, m, 2, gamma}; };

  std::vector<CurveJob> jobs;
  const std::string& sc = o.scenario;
  if (o.family && sc != "separable-custom") {
    throw std::invalid_argument("--family only applies to the separable-custom scenario");
  }
  if (o.k && sc != "displacement") {
    throw std::invalid_argument("-k only applies to the displacement scenario");
  }
  if (sc == "classical-mixed") {
    jobs.push_back({sc, std::nullopt, pick(o.alice, "qft", "alice"), pick(o.bob, "sum:0", "bob"),
                    false, [d, m](double g) { return oracles::classical_mixed_payoff(d, m, g); },
                    ""});
  } else if (sc == "qft-player") {
    if (o.bob) throw std::invalid_argument("qft-player fixes --bob to qft");
    jobs.push_back({sc, std::nullopt, pick(o.alice, "identity", "alice"), pick({}, "qft", "bob"),
                    false,
                    [cfg_at](double g) { return oracles::payoff_qft_separable(cfg_at(g)); }, ""});
  } else if (sc == "separable-custom") {
    const Strategy alice = pick(o.alice, "qft", "alice");
    if (o.family) {
      if (o.bob) throw std::invalid_argument("--family sets --bob itself");
      for (int doors = 1; doors <= d; ++doors) {
        const Strategy bob = homogeneous_superposition(d, doors);
        jobs.push_back({sc, doors, alice, bob, false,
                        [alice, bob, cfg_at](double g) {
                          return oracles::payoff_separable(alice, bob, cfg_at(g));
                        },
                        "doors" + std::to_string(doors)});
      }
    } else {
      const Strategy bob = pick(o.bob, "qft", "bob");
      jobs.push_back({sc, std::nullopt, alice, bob, false,
                      [alice, bob, cfg_at](double g) {
                        return oracles::payoff_separable(alice, bob, cfg_at(g));
                      },
                      ""});
    }
  } else if (sc == "entangled-qft") {
    if (o.alice || o.bob) throw std::invalid_argument("entangled-qft fixes both strategies to qft");
    const Strategy q = pick({}, "qft", "alice and bob");
    jobs.push_back({sc, std::nullopt, q, q, true,
                    [q, cfg_at](double g) { return oracles::payoff_entangled(q, q, cfg_at(g)); },
                    ""});
  } else if (sc == "displacement") {
    if (o.alice || o.bob) throw std::invalid_argument("displacement fixes the strategies to sum:0 and sum:k");
    std::vector<int> ks;
    if (o.k) {
      if (*o.k < 0 || *o.k >= d) {
        throw std::invalid_argument("-k must lie in [0, d) (d=" + std::to_string(d) + ")");
      }
      ks.push_back(*o.k);
    } else {
      for (int k = 0; k < d; ++k) ks.push_back(k);
    }
    for (int k : ks) {
      jobs.push_back({sc, k, sum_d(d, 0), sum_d(d, k), true,
                      [k, cfg_at](double g) { return oracles::payoff_displacement(k, cfg_at(g)); },
                      "k" + std::to_string(k)});
    }
  } else {
    std::string known;
    for (const auto& s : kScenarios) known += (known.empty() ? "" : ", ") + s;
    throw std::invalid_argument("unknown scenario '" + sc + "' (expected one of " + known + ")");
  }
  return jobs;
}

Curve compute_curve(const CurveJob& job, const SweepOptions& o, const game::Game& engine) {
  Curve c;
  c.analytic.d = o.d;
  c.analytic.m = o.m;
  c.analytic.scenario = job.scenario;
  c.analytic.k = job.k;
  c.analytic.gammas = oracles::gamma_grid(o.grid);
  const std::size_t n = c.analytic.gammas.size();
  c.analytic.payoffs.assign(n, 0.0);
  std::optional<StateVector> prepared;
  if (o.simulate) {
    c.simulated.assign(n, 0.0);
    prepared = engine.prepare(job.alice, job.bob,
                              job.ghz ? game::entangled_initial_state(o.d, o.m)
                                      : game::separable_initial_state(o.d, o.m));
  }
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    const double g = c.analytic.gammas[i];
    c.analytic.payoffs[i] = job.analytic(g);
    if (prepared) c.simulated[i] = game::expected_payoff(engine.finish(*prepared, g));
  }
  c.analytic.validate();
  return c;
}

void write_csv_header(std::ostream& out, bool simulated) {
  out << "gamma,payoff,scenario,d,m,k" << (simulated ? ",simulated" : "") << '\n';
}

void write_csv_rows(std::ostream& out, const Curve& c) {
  const auto& a = c.analytic;
  for (std::size_t i = 0; i < a.gammas.size(); ++i) {
    out << format_number(a.gammas[i]) << ',' << format_number(round12(a.payoffs[i])) << ','
        << a.scenario << ',' << a.d << ',' << a.m << ','
        << (a.k ? std::to_string(*a.k) : std::string());
    if (!c.simulated.empty()) out << ',' << format_number(round12(c.simulated[i]));
    out << '\n';
  }
}

json curve_json(const Curve& c) {
  const auto& a = c.analytic;
  json j;
  j["scenario"] = a.scenario;
  j["d"] = a.d;
  j["m"] = a.m;
  j["k"] = a.k ? json(*a.k) : json(nullptr);
  json g = json::array();
  json p = json::array();
  for (std::size_t i = 0; i < a.gammas.size(); ++i) {
    g.push_back(round12(a.gammas[i]));
    p.push_back(round12(a.payoffs[i]));
  }
  j["gamma"] = g;
  j["payoff"] = p;
  if (!c.simulated.empty()) {
    json s = json::array();
    for (double v : c.simulated) s.push_back(round12(v));
    j["simulated"] = s;
  }
  return j;
}

std::string tagged_path(const std::string& path, const std::string& tag) {
  const std::filesystem::path p(path);
  std::filesystem::path out = p.parent_path() / (p.stem().string() + "_" + tag);
  out += p.extension();
  return out.string();
}

// ---------------------------------------------------------------------------
// verify

struct Worst {
  double deviation = 0.0;
  long points = 0;
  std::string where;

  void update(double dev, const std::string& at) {
    if (std::isnan(dev)) dev = std::numeric_limits<double>::infinity();
    ++points;
    if (where.empty() || dev > deviation) {
      deviation = dev;
      where = at;
    }
  }
  void merge(const Worst& other) {
    points += other.points;
    if (other.deviation > deviation || (where.empty() && !other.where.empty())) {
      deviation = other.deviation;
      where = other.where;
    }
  }
};

std::string tuple_text(int d, int m, double gamma, const std::string& extra) {
  return "d=" + std::to_string(d) + ", m=" + std::to_string(m) + ", gamma=" +
         format_number(gamma) + (extra.empty() ? "" : ", " + extra);
}

std::vector<double> verify_gammas(const VerifyOptions& o) {
  if (o.grid) return oracles::gamma_grid(*o.grid);
  return {0.0, std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 2};
}

}  // namespace

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  require_format(o.format);
  if (o.grid < 2) throw std::invalid_argument("--grid needs at least 2 points");
  game::GameConfig{o.d, o.m, 2, 0.0}.validate();
  const std::vector<CurveJob> jobs = plan_sweep(o, err);
  const game::Game engine(o.d, o.m);
  std::vector<Curve> curves;
  for (const CurveJob& job : jobs) curves.push_back(compute_curve(job, o, engine));

  if (o.format == "json") {
    json doc;
    doc["curves"] = json::array();
    for (const Curve& c : curves) doc["curves"].push_back(curve_json(c));
    const std::string text = doc.dump(2) + "\n";
    if (o.out.empty()) {
      out << text;
    } else {
      open_output(o.out) << text;
    }
    return kExitOk;
  }

  if (o.out.empty()) {
    write_csv_header(out, o.simulate);
    for (const Curve& c : curves) write_csv_rows(out, c);
    return kExitOk;
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const std::string path =
        curves.size() == 1 ? o.out : tagged_path(o.out, jobs[i].file_tag);
    std::ofstream file = open_output(path);
    write_csv_header(file, o.simulate);
    write_csv_rows(file, curves[i]);
    out << "wrote " << path << '\n';
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  if (o.format) require_format(*o.format);
  if (o.d_min < 2 || o.d_max > 6 || o.d_min > o.d_max) {
    throw std::invalid_argument("verify needs 2 <= d-min <= d-max <= 6");
  }
  if (o.pairs < 1) throw std::invalid_argument("--pairs must be >= 1");
  if (!(o.tolerance > 0.0)) throw std::invalid_argument("--tolerance must be positive");
  const std::vector<double> gammas = verify_gammas(o);
  const double shift = o.corrupt_oracle ? 1e-6 : 0.0;

  Worst separable;
  Worst entangled;
  Worst displacement;
  for (int d = o.d_min; d <= o.d_max; ++d) {
    for (int m = 0; m <= d - 2; ++m) {
      const game::Game engine(d, m);
      std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                        static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(m)};
      std::mt19937_64 rng(seq);
      std::vector<std::pair<Strategy, Strategy>> pairs;
      for (int p = 0; p < o.pairs; ++p) {
        Strategy a = random_unitary(d, rng);
        Strategy b = random_unitary(d, rng);
        pairs.emplace_back(std::move(a), std::move(b));
      }
      std::vector<Worst> sep(pairs.size());
      std::vector<Worst> ent(pairs.size());
#pragma omp parallel for schedule(dynamic)
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto& [a, b] = pairs[p];
        const StateVector ps = engine.prepare(a, b, game::separable_initial_state(d, m));
        const StateVector pe = engine.prepare(a, b, game::entangled_initial_state(d, m));
        for (double g : gammas) {
          const game::GameConfig cfg{d, m, 2, g};
          const std::string at = tuple_text(d, m, g, "pair=" + std::to_string(p));
          sep[p].update(std::abs(game::expected_payoff(engine.finish(ps, g)) -
                                 (oracles::payoff_separable(a, b, cfg) + shift)),
                        at);
          ent[p].update(std::abs(game::expected_payoff(engine.finish(pe, g)) -
                                 (oracles::payoff_entangled(a, b, cfg) + shift)),
                        at);
        }
      }
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        separable.merge(sep[p]);
        entangled.merge(ent[p]);
      }
      const StateVector ghz = game::entangled_initial_state(d, m);
      for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
          const StateVector prepared = engine.prepare(sum_d(d, i), sum_d(d, (i + k) % d), ghz);
          for (double g : gammas) {
            const game::GameConfig cfg{d, m, 2, g};
            displacement.update(
                std::abs(game::expected_payoff(engine.finish(prepared, g)) -
                         (oracles::payoff_displacement(k, cfg) + shift)),
                tuple_text(d, m, g, "i=" + std::to_string(i) + ", k=" + std::to_string(k)));
          }
        }
      }
    }
  }

  const std::vector<std::pair<std::string, const Worst*>> rows = {
      {"separable", &separable}, {"entangled", &entangled}, {"displacement", &displacement}};
  bool ok = true;
  for (const auto& [name, w] : rows) ok = ok && w->deviation <= o.tolerance;

  std::ostringstream report;
  if (!o.format) {
    for (const auto& [name, w] : rows) {
      report << name << ": max_deviation=" << format_number(w->deviation)
             << " points=" << w->points << " worst=(" << w->where << ") "
             << (w->deviation <= o.tolerance ? "ok" : "FAIL") << '\n';
    }
  } else if (*o.format == "csv") {
    report << "scenario,max_deviation,points,worst,pass\n";
    for (const auto& [name, w] : rows) {
      report << name << ',' << format_number(w->deviation) << ',' << w->points << ",\""
             << w->where << "\"," << (w->deviation <= o.tolerance ? "true" : "false") << '\n';
    }
  } else {
    json doc;
    doc["tolerance"] = o.tolerance;
    doc["pass"] = ok;
    doc["scenarios"] = json::array();
    for (const auto& [name, w] : rows) {
      doc["scenarios"].push_back({{"scenario", name},
                                  {"max_deviation", round12(w->deviation)},
                                  {"points", w->points},
                                  {"worst", w->where},
                                  {"pass", w->deviation <= o.tolerance}});
    }
    report << doc.dump(2) << '\n';
  }
  if (o.out.empty()) {
    out << report.str();
  } else {
    open_output(o.out) << report.str();
  }
  if (!ok) {
    for (const auto& [name, w] : rows) {
      if (w->deviation > o.tolerance) {
        err << "verification failed: " << name << " deviation "
            << format_number(w->deviation) << " > " << format_number(o.tolerance)
            << " at (" << w->where << ")\n";
      }
    }
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int cmd_protocol(const ProtocolOptions& o, std::ostream& out, std::ostream& /*err*/) {
  if (o.format) require_format(*o.format);
  protocol::ProtocolConfig cfg =
      protocol::ProtocolConfig::for_dimension(protocol::parse_kind(o.protocol), o.d);
  cfg.seed = o.seed;
  cfg.rounds = o.rounds;
  cfg.approvals = parse_approval_mask(o.approve, std::max(cfg.m, 0));
  cfg.validate();

  const protocol::BatchReport r = protocol::run_batch(cfg);
  if (!o.out.empty()) {
    std::ofstream file = open_output(o.out);
    io::write_jsonl(file, r.transcripts);
  }

  std::string mask;
  for (bool a : cfg.approvals) mask += a ? '1' : '0';
  const std::string diag =
      !r.diagnostics_applicable || r.diagnostic_rounds == 0
          ? "n/a"
          : (r.diagnostics_pass ? "pass" : "fail");
  const std::vector<std::pair<std::string, std::string>> fields = {
      {"protocol", protocol::to_string(cfg.kind)},
      {"d", std::to_string(cfg.d)},
      {"n", std::to_string(cfg.n)},
      {"m", std::to_string(cfg.m)},
      {"approvals", mask},
      {"seed", std::to_string(cfg.seed)},
      {"rounds", std::to_string(r.rounds)},
      {"flagged", std::to_string(r.flagged)},
      {"aborted", std::to_string(r.aborted)},
      {"counted", std::to_string(r.counted)},
      {"agreed", std::to_string(r.agreed)},
      {"agreement_rate", format_number(r.agreement_rate)},
      {"all_same_frequency", format_number(r.all_same_frequency)},
      {"expected_all_same", format_number(r.expected_all_same)},
      {"sigma", format_number(r.sigma)},
      {"all_same_within_5sigma", r.all_same_within_5sigma ? "true" : "false"},
      {"diagnostic_rounds", std::to_string(r.diagnostic_rounds)},
      {"diagnostic_failures", std::to_string(r.diagnostic_failures)},
      {"diagnostics", diag},
  };
  if (!o.format) {
    for (const auto& [key, value] : fields) out << key << ": " << value << '\n';
  } else if (*o.format == "csv") {
    out << "metric,value\n";
    for (const auto& [key, value] : fields) out << key << ',' << value << '\n';
  } else {
    json doc;
    doc["protocol"] = fields[0].second;
    doc["d"] = cfg.d;
    doc["n"] = cfg.n;
    doc["m"] = cfg.m;
    doc["approvals"] = mask;
    doc["seed"] = cfg.seed;
    doc["rounds"] = r.rounds;
    doc["flagged"] = r.flagged;
    doc["aborted"] = r.aborted;
    doc["counted"] = r.counted;
    doc["agreed"] = r.agreed;
    doc["agreement_rate"] = round12(r.agreement_rate);
    doc["all_same_frequency"] = round12(r.all_same_frequency);
    doc["expected_all_same"] = round12(r.expected_all_same);
    doc["sigma"] = round12(r.sigma);
    doc["all_same_within_5sigma"] = r.all_same_within_5sigma;
    doc["diagnostic_rounds"] = r.diagnostic_rounds;
    doc["diagnostic_failures"] = r.diagnostic_failures;
    doc["diagnostics"] = diag;
    out << doc.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_info(const InfoOptions& o, std::ostream& out, std::ostream& /*err*/) {
  if (o.format) require_format(*o.format);
  if (o.m && !o.d) throw std::invalid_argument("-m needs -d");
  std::optional<game::GameConfig> cfg;
  if (o.d) {
    cfg = game::GameConfig{*o.d, o.m.value_or(*o.d - 2), 2, 0.0};
    cfg->validate();
  }
  const int threads = omp_get_max_threads();
  if (o.format && *o.format == "json") {
    json doc;
    doc["name"] = "qmonty";
    doc["version"] = kVersion;
    doc["openmp_threads"] = threads;
    doc["label_order"] = "|o_m..o_1, p_n..p_1>, slot 0 = p_1 varies fastest";
    doc["scenarios"] = kScenarios;
    doc["strategy_selectors"] = strategy_selector_help();
    if (cfg) {
      doc["d"] = cfg->d;
      doc["m"] = cfg->m;
      doc["p_ns"] = round12(oracles::classical_p_ns(cfg->d));
      doc["p_s"] = round12(oracles::classical_p_s(cfg->d, cfg->m));
      doc["gamma_max"] = round12(oracles::gamma_max(cfg->d, cfg->m));
      doc["payoff_max"] = round12(oracles::payoff_max(cfg->d, cfg->m));
    }
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  if (o.format) {
    out << "key,value\n";
    out << "version," << kVersion << "\nopenmp_threads," << threads << '\n';
    if (cfg) {
      out << "d," << cfg->d << "\nm," << cfg->m << "\np_ns,"
          << format_number(oracles::classical_p_ns(cfg->d)) << "\np_s,"
          << format_number(oracles::classical_p_s(cfg->d, cfg->m)) << "\ngamma_max,"
          << format_number(oracles::gamma_max(cfg->d, cfg->m)) << "\npayoff_max,"
          << format_number(oracles::payoff_max(cfg->d, cfg->m)) << '\n';
    }
    return kExitOk;
  }
  out << "qmonty " << kVersion << " (OpenMP threads: " << threads << ")\n"
      << "labels: |o_m..o_1, p_n..p_1>, slot 0 = p_1 varies fastest\n"
      << "scenarios:";
  for (const auto& s : kScenarios) out << ' ' << s;
  out << '\n' << strategy_selector_help() << '\n';
  if (cfg) {
    out << "d=" << cfg->d << " m=" << cfg->m
        << ": P_ns=" << format_number(oracles::classical_p_ns(cfg->d))
        << " P_s=" << format_number(oracles::classical_p_s(cfg->d, cfg->m))
        << " gamma_max=" << format_number(oracles::gamma_max(cfg->d, cfg->m))
        << " payoff_max=" << format_number(oracles::payoff_max(cfg->d, cfg->m)) << '\n';
  }
  return kExitOk;
}

}  // namespace qmonty::cli
