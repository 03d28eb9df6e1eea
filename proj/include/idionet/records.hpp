#pragma once

// Run record and campaign summary serialization. A record JSON embeds
// everything a replay needs (map text, initial paratope, config, seed); the
// per-tick trace goes to a CSV whose bytes double as the determinism check.

#include "idionet/episode.hpp"
#include "idionet/experiments.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace idionet::records {

using nlohmann::json;

inline json matrix_to_json(const immune::Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline immune::Matrix matrix_from_json(const json& rows) {
  const auto r = rows.size();
  const auto c = rows.at(0).size();
  immune::Matrix m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows.at(i).at(j).get<double>();
  return m;
}

inline json scheme_to_json(const arbitration::Scheme& s) {
  const auto shares = [](const arbitration::RankShares& r) {
    return json{{"mu", r.mu}, {"ranks", r.ranks}};
  };
  return json{{"alt", static_cast<int>(s.alt)},
              {"branch", static_cast<int>(s.branch)},
              {"base", shares(s.base)},
              {"boosted", shares(s.boosted)}};
}

inline arbitration::Scheme scheme_from_json(const json& j) {
  arbitration::Scheme s;
  s.alt = static_cast<arbitration::AltChoice>(j.at("alt").get<int>());
  s.branch = static_cast<arbitration::Branch>(j.at("branch").get<int>());
  const auto shares = [](const json& v) {
    arbitration::RankShares r;
    r.mu = v.at("mu").get<double>();
    const auto& ranks = v.at("ranks");
    for (std::size_t i = 0; i < r.ranks.size(); ++i)
      r.ranks[i] = ranks.at(i).get<double>();
    return r;
  };
  s.base = shares(j.at("base"));
  s.boosted = shares(j.at("boosted"));
  return s;
}

inline json record_to_json(const episode::RunRecord& r) {
  json j;
  j["schema"] = "idionet.run/1";
  j["controller"] = r.controller;
  j["world"] = {{"name", r.world_name}, {"text", r.world_text}};
  j["seed"] = r.seed;
  j["paratope"] = {{"label", r.paratope_label},
                   {"matrix", matrix_to_json(r.initial_paratope)}};
  json cfg;
  cfg["b"] = r.config.immune.b;
  cfg["k1"] = r.config.immune.k1;
  cfg["k2"] = r.config.immune.k2;
  cfg["antibodies"] = r.config.immune.antibody_count;
  cfg["antigens"] = r.config.immune.antigen_count;
  cfg["r_success"] = r.config.rl.reward;
  cfg["r_failure"] = r.config.rl.penalty;
  cfg["max_time"] = r.config.max_time;
  cfg["idiotope"] = matrix_to_json(r.config.idiotope);
  if (r.config.scheme_override)
    cfg["scheme"] = scheme_to_json(*r.config.scheme_override);
  j["config"] = std::move(cfg);
  j["result"] = {{"completed", r.completed},
                 {"duration", r.duration},
                 {"stalls", r.stalls},
                 {"doors_passed", r.doors_passed},
                 {"concentration_resets", r.concentration_resets},
                 {"ticks", r.stats.ticks},
                 {"mu_count", r.stats.mu_count},
                 {"stalled_ticks", r.stats.stalled_ticks},
                 {"mu_count_stalled", r.stats.mu_count_stalled},
                 {"mu_rate", r.mu_rate()}};
  return j;
}

// Replay inputs: identity, config and world; results/trace are recomputed.
struct ReplaySpec {
  arbitration::ControllerId controller;
  world::Map map;
  std::string world_name;
  std::string world_text;
  immune::Matrix initial_paratope;
  std::string paratope_label;
  std::uint64_t seed = 0;
  episode::Config config;
};

inline ReplaySpec replay_spec_from_json(const json& j) {
  ReplaySpec spec;
  const auto controller = arbitration::parse_controller(j.at("controller"));
  if (!controller) throw std::invalid_argument("record: unknown controller");
  spec.controller = *controller;
  spec.world_name = j.at("world").at("name").get<std::string>();
  spec.world_text = j.at("world").at("text").get<std::string>();
  spec.map = world::parse_map(spec.world_text, spec.world_name);
  spec.initial_paratope = matrix_from_json(j.at("paratope").at("matrix"));
  spec.paratope_label = j.at("paratope").at("label").get<std::string>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  const auto& cfg = j.at("config");
  spec.config.immune.b = cfg.at("b").get<double>();
  spec.config.immune.k1 = cfg.at("k1").get<double>();
  spec.config.immune.k2 = cfg.at("k2").get<double>();
  spec.config.immune.antibody_count = cfg.at("antibodies").get<int>();
  spec.config.immune.antigen_count = cfg.at("antigens").get<int>();
  spec.config.rl.reward = cfg.at("r_success").get<double>();
  spec.config.rl.penalty = cfg.at("r_failure").get<double>();
  spec.config.max_time = cfg.at("max_time").get<double>();
  spec.config.idiotope = matrix_from_json(cfg.at("idiotope"));
  if (cfg.contains("scheme"))
    spec.config.scheme_override = scheme_from_json(cfg.at("scheme"));
  return spec;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

inline std::string trace_to_csv(const episode::RunRecord& r) {
  std::string out =
      "tick,t,presenting,dominant,alpha,chosen,mu_event,stalled,reward,x,y,"
      "heading\n";
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const auto& row = r.trace[i];
    out += std::to_string(i);
    out += ',';
    out += format_double(row.t);
    out += ',';
    for (std::size_t k = 0; k < row.presenting.size(); ++k) {
      if (k) out += ';';
      out += std::to_string(row.presenting[k]);
    }
    out += ',';
    out += std::to_string(row.dominant);
    out += ',';
    out += std::to_string(row.alpha);
    out += ',';
    out += std::to_string(row.chosen);
    out += ',';
    out += row.mu_event ? '1' : '0';
    out += ',';
    out += row.stalled ? '1' : '0';
    out += ',';
    out += format_double(row.reward);
    out += ',';
    out += format_double(row.pose.position.x);
    out += ',';
    out += format_double(row.pose.position.y);
    out += ',';
    out += format_double(row.pose.heading);
    out += '\n';
  }
  return out;
}

inline json summary_to_json(const experiments::WorldSummary& s) {
  json j;
  j["schema"] = "idionet.summary/1";
  j["world"] = s.world;
  j["phi"] = {{"value", s.phi.value}, {"defined", s.phi.defined}};
  j["controllers"] = json::array();
  for (const auto& c : s.controllers)
    j["controllers"].push_back({{"controller", c.controller},
                                {"runs", c.runs},
                                {"completed", c.completed},
                                {"mean_duration", c.mean_duration},
                                {"mean_stalls", c.mean_stalls},
                                {"mean_fitness", c.mean_f},
                                {"mean_mu_rate", c.mean_mu_rate},
                                {"good_pct", c.good_pct},
                                {"bad_pct", c.bad_pct},
                                {"stalled_tick_share", c.stalled_tick_share},
                                {"mu_rate_stalled", c.mu_rate_stalled},
                                {"mu_rate_free", c.mu_rate_free}});
  j["significance"] = json::array();
  for (const auto& row : s.significance)
    j["significance"].push_back({{"controller", row.controller},
                                 {"metric", row.metric},
                                 {"t", row.t},
                                 {"dof", row.dof},
                                 {"p", row.p},
                                 {"level_pct", row.level_pct},
                                 {"significant_95", row.significant_95},
                                 {"significant_99", row.significant_99},
                                 {"significant_999", row.significant_999}});
  j["runs"] = json::array();
  for (const auto& r : s.runs) {
    json row = {{"controller", r.controller}, {"paratope", r.paratope},
                {"seed", r.seed},             {"completed", r.completed},
                {"duration", r.duration},     {"stalls", r.stalls},
                {"mu_rate", r.mu_rate}};
    if (r.completed) {
      row["fitness"] = r.f;
      row["good"] = r.good;
      row["bad"] = r.bad;
    }
    j["runs"].push_back(std::move(row));
  }
  return j;
}

inline std::string runs_to_csv(const experiments::WorldSummary& s) {
  std::string out =
      "controller,paratope,seed,completed,duration,stalls,fitness,mu_rate,"
      "good,bad\n";
  for (const auto& r : s.runs) {
    out += r.controller + ',' + r.paratope + ',' + std::to_string(r.seed) + ',';
    out += r.completed ? '1' : '0';
    out += ',' + format_double(r.duration) + ',' + std::to_string(r.stalls) + ',';
    out += r.completed ? format_double(r.f) : "";
    out += ',' + format_double(r.mu_rate) + ',';
    if (r.completed) {
      out += r.good ? '1' : '0';
      out += ',';
      out += r.bad ? '1' : '0';
    } else {
      out += ',';
    }
    out += '\n';
  }
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace idionet::records
