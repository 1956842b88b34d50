#include "fama/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace fama::cli {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& context,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (key == a) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ConfigError("unknown key '" + key + "' in " + context);
    }
  }
}

ScatteringEnvironment parse_environment(const json& j) {
  check_keys(j, "'environment'", {"k_factor", "omega", "n_paths"});
  ScatteringEnvironment env;
  env.k_factor = j.value("k_factor", env.k_factor);
  env.omega = j.value("omega", env.omega);
  env.n_paths = j.value("n_paths", env.n_paths);
  return env;
}

SyntheticProfile parse_profile(const json& j) {
  check_keys(j, "'antenna.profile'",
             {"base_gain_dbi", "lobe_center_deg", "lobe_width_deg", "floor_dbi",
              "null_depth_db", "null_width_deg", "null_start_deg",
              "null_drift_deg", "grid_step_deg"});
  SyntheticProfile p;
  p.base_gain_dbi = j.value("base_gain_dbi", p.base_gain_dbi);
  p.lobe_center_deg = j.value("lobe_center_deg", p.lobe_center_deg);
  p.lobe_width_deg = j.value("lobe_width_deg", p.lobe_width_deg);
  p.floor_dbi = j.value("floor_dbi", p.floor_dbi);
  p.null_depth_db = j.value("null_depth_db", p.null_depth_db);
  p.null_width_deg = j.value("null_width_deg", p.null_width_deg);
  p.null_start_deg = j.value("null_start_deg", p.null_start_deg);
  p.null_drift_deg = j.value("null_drift_deg", p.null_drift_deg);
  p.grid_step_deg = j.value("grid_step_deg", p.grid_step_deg);
  return p;
}

SelectionStrategy parse_strategy(const std::string& s) {
  if (s == "dynamic") return SelectionStrategy::dynamic();
  if (s == "static") return SelectionStrategy::static_random();
  if (s.rfind("fixed:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(s.substr(6));
    } catch (const std::exception&) {
      throw ConfigError("malformed strategy '" + s + "'");
    }
    if (k < 1) throw ConfigError("fixed port index must be >= 1 in '" + s + "'");
    return SelectionStrategy::fixed(k - 1);
  }
  throw ConfigError("unknown strategy '" + s +
                    "' (expected dynamic, static, or fixed:<k>)");
}

std::vector<double> parse_snr_axis(const json& j) {
  std::vector<double> snr;
  if (j.is_number()) {
    snr.push_back(j.get<double>());
  } else if (j.is_array()) {
    for (const auto& v : j) snr.push_back(v.get<double>());
  } else if (j.is_object()) {
    check_keys(j, "'sweep.snr_db'", {"start", "stop", "step"});
    double start = j.at("start").get<double>();
    double stop = j.at("stop").get<double>();
    double step = j.value("step", 1.0);
    if (!(step > 0.0)) throw ConfigError("key 'sweep.snr_db.step' must be > 0");
    for (double s = start; s <= stop + 1e-9; s += step) snr.push_back(s);
  } else {
    throw ConfigError("key 'sweep.snr_db' must be a number, array, or range");
  }
  if (snr.empty()) throw ConfigError("key 'sweep.snr_db' is empty");
  return snr;
}

struct AntennaSetup {
  PortSet ports;
  PatternSet patterns;
  std::string name;
  std::string pattern_file;
};

AntennaSetup parse_antenna(const json& j, const std::string& base_dir) {
  check_keys(j, "'antenna'",
             {"kind", "name", "n_ports", "n1", "n2", "w", "mapping",
              "pattern_file", "profile"});
  const std::string kind = j.value("kind", std::string("omni"));
  const SyntheticProfile profile =
      j.contains("profile") ? parse_profile(j.at("profile")) : SyntheticProfile{};

  DcfaMapping mapping = DcfaMapping::kIndexLinear;
  if (j.contains("mapping")) {
    const std::string m = j.at("mapping").get<std::string>();
    if (m == "index-linear") {
      mapping = DcfaMapping::kIndexLinear;
    } else if (m == "first-channel") {
      mapping = DcfaMapping::kFirstChannel;
    } else {
      throw ConfigError("key 'antenna.mapping': unknown value '" + m + "'");
    }
  }

  std::string pattern_file;
  if (j.contains("pattern_file")) {
    std::filesystem::path p = j.at("pattern_file").get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    pattern_file = p.string();
  }

  if (kind == "omni") {
    int n = j.value("n_ports", 20);
    double w = j.value("w", kDefaultScfaW);
    return {linear_ports(n, w, AntennaKind::kOmni), make_omni_set(n),
            j.value("name", std::string("omni")), ""};
  }
  if (kind == "scfa") {
    PatternSet patterns = pattern_file.empty()
                              ? make_synthetic_set(j.value("n_ports", 20), profile)
                              : load_pattern_set_file(pattern_file);
    int n = static_cast<int>(patterns.size());
    if (j.contains("n_ports") && j.at("n_ports").get<int>() != n) {
      throw ConfigError("key 'antenna.n_ports' disagrees with the pattern count");
    }
    double w = j.value("w", kDefaultScfaW);
    return {linear_ports(n, w, AntennaKind::kScfa), std::move(patterns),
            j.value("name", std::string("scfa")), pattern_file};
  }
  if (kind == "dcfa") {
    int n1 = j.value("n1", 12);
    int n2 = j.value("n2", 12);
    PatternSet patterns = pattern_file.empty()
                              ? make_synthetic_grid_set(n1, n2, profile)
                              : load_pattern_set_file(pattern_file);
    if (patterns.size() != static_cast<std::size_t>(n1) * n2) {
      throw ConfigError("keys 'antenna.n1'/'antenna.n2' disagree with the pattern count");
    }
    double w = j.value("w", kDefaultDcfaW);
    return {dcfa_grid(n1, n2, w, mapping), std::move(patterns),
            j.value("name", std::string("dcfa")), pattern_file};
  }
  if (kind == "file") {
    if (pattern_file.empty()) {
      throw ConfigError("key 'antenna.pattern_file' is required for kind 'file'");
    }
    PatternSet patterns = load_pattern_set_file(pattern_file);
    int n = static_cast<int>(patterns.size());
    double w = j.value("w", kDefaultScfaW);
    return {linear_ports(n, w, AntennaKind::kCustom), std::move(patterns),
            j.value("name", std::string("file")), pattern_file};
  }
  throw ConfigError("key 'antenna.kind': unknown value '" + kind + "'");
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(std::string("cannot open ") + what + " '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

}  // namespace

RunSpec parse_run_config(const std::string& json_text,
                         const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, "config",
             {"environment", "antenna", "users", "sweep", "strategies",
              "trials", "seed", "common_random_numbers", "threads"});

  AntennaSetup ant = parse_antenna(j.value("antenna", json::object()), base_dir);

  RunSpec spec{SimConfig(std::move(ant.ports), std::move(ant.patterns)),
               SweepAxes{}, false, ant.pattern_file};
  spec.base.antenna_name = ant.name;
  if (j.contains("environment")) {
    spec.base.env = parse_environment(j.at("environment"));
  }

  if (j.contains("users")) {
    const json& u = j.at("users");
    if (u.is_number_integer()) {
      spec.axes.m_users.push_back(u.get<int>());
    } else if (u.is_array()) {
      for (const auto& v : u) spec.axes.m_users.push_back(v.get<int>());
    } else {
      throw ConfigError("key 'users' must be an integer or an array");
    }
  } else {
    spec.axes.m_users.push_back(1);
  }
  for (int m : spec.axes.m_users) {
    if (m < 1) throw ConfigError("key 'users': user counts must be >= 1");
  }

  const json sweep_j = j.value("sweep", json::object());
  check_keys(sweep_j, "'sweep'", {"snr_db", "gamma_db", "noise_var"});
  spec.axes.snr_db = sweep_j.contains("snr_db")
                         ? parse_snr_axis(sweep_j.at("snr_db"))
                         : std::vector<double>{20.0};
  spec.base.gamma_db = sweep_j.value("gamma_db", 0.0);
  spec.base.noise_var = sweep_j.value("noise_var", 1.0);

  if (j.contains("strategies")) {
    for (const auto& s : j.at("strategies")) {
      spec.axes.strategies.push_back(parse_strategy(s.get<std::string>()));
    }
    if (spec.axes.strategies.empty()) throw ConfigError("key 'strategies' is empty");
  } else {
    spec.axes.strategies.push_back(SelectionStrategy::dynamic());
  }

  spec.base.n_trials = j.value("trials", std::uint64_t{1'000'000});
  if (spec.base.n_trials < 1) throw ConfigError("key 'trials' must be >= 1");
  spec.base.master_seed = j.value("seed", std::uint64_t{0});
  spec.base.n_threads = j.value("threads", 1);
  spec.common_random_numbers = j.value("common_random_numbers", false);

  // Fixed-port strategies must address an existing port.
  for (const auto& s : spec.axes.strategies) {
    if (s.kind == SelectionStrategy::Kind::kFixedPort &&
        s.fixed_port >= static_cast<int>(spec.base.ports.size())) {
      throw ConfigError("key 'strategies': fixed port index exceeds the port count");
    }
  }
  return spec;
}

void write_results_csv(const std::vector<SimEstimate>& table,
                       std::ostream& out) {
  out << "snr_db,m_users,strategy,antenna,n_trials,outage,ci_low,ci_high,"
         "mux_gain,seed\n";
  for (const auto& row : table) {
    out << fmt("%.17g", row.snr_db) << ',' << row.m_users << ','
        << row.strategy << ',' << row.antenna << ',' << row.n_trials << ','
        << fmt("%.17g", row.outage_hat) << ',' << fmt("%.17g", row.ci_low)
        << ',' << fmt("%.17g", row.ci_high) << ','
        << fmt("%.17g", row.mux_gain) << ',' << row.seed << '\n';
  }
}

int cmd_run(const std::string& config_path, const std::string& output_path,
            const Overrides& overrides, std::ostream& err) {
  try {
    const auto wall_start = std::chrono::steady_clock::now();
    std::string config_text;
    try {
      config_text = read_file(config_path, "config file");
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << "\n";
      return kExitConfigError;
    }

    std::optional<RunSpec> parsed;
    try {
      parsed.emplace(parse_run_config(
          config_text, std::filesystem::path(config_path).parent_path().string()));
    } catch (const PatternError& e) {
      err << "error: " << e.what() << "\n";
      return kExitDataError;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitConfigError;
    }
    RunSpec& spec = *parsed;
    if (overrides.seed) spec.base.master_seed = *overrides.seed;
    if (overrides.threads) spec.base.n_threads = *overrides.threads;
    if (overrides.trials) spec.base.n_trials = *overrides.trials;

    std::vector<SimEstimate> table =
        sweep(spec.base, spec.axes, spec.common_random_numbers);

    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
      err << "error: cannot write output file '" << output_path << "'\n";
      return kExitInternalError;
    }
    write_results_csv(table, out);
    out.close();

    const auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - wall_start)
                             .count();

    // Manifest sidecar: provenance only, never part of the results bytes.
    json manifest;
    manifest["tool_version"] = kToolVersion;
    manifest["config_path"] = config_path;
    {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%016llx",
                    static_cast<unsigned long long>(fnv1a64(config_text)));
      manifest["config_digest_fnv1a64"] = buf;
    }
    if (!spec.pattern_file.empty()) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%016llx",
                    static_cast<unsigned long long>(
                        fnv1a64(read_file(spec.pattern_file, "pattern file"))));
      manifest["pattern_file"] = spec.pattern_file;
      manifest["pattern_file_digest_fnv1a64"] = buf;
    }
    manifest["master_seed"] = spec.base.master_seed;
    manifest["trials"] = spec.base.n_trials;
    manifest["threads"] = spec.base.n_threads;
    manifest["common_random_numbers"] = spec.common_random_numbers;
    manifest["antenna"] = spec.base.antenna_name;
    manifest["rows"] = table.size();
    manifest["wall_ms"] = wall_ms;
    manifest["generated_unix_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    std::ofstream mout(output_path + ".manifest.json");
    mout << manifest.dump(2) << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

int cmd_rpdr(const std::string& pattern_path, const std::string& output_path,
             std::ostream& err) {
  try {
    PatternSet set = load_pattern_set_file(pattern_path);
    // Envelope over the file's own angular grid.
    std::vector<double> grid;
    for (const auto& s : set[0].samples()) grid.push_back(s.angle_deg);
    RpdrEnvelope env = rpdr(set, grid);

    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
      err << "error: cannot write output file '" << output_path << "'\n";
      return kExitInternalError;
    }
    out << "angle_deg,upper_dbi,lower_dbi,range_db\n";
    for (std::size_t i = 0; i < env.angles_deg.size(); ++i) {
      out << fmt("%.3f", env.angles_deg[i]) << ','
          << fmt("%.4f", env.upper_dbi[i]) << ','
          << fmt("%.4f", env.lower_dbi[i]) << ','
          << fmt("%.4f", env.range_db[i]) << '\n';
    }
    out << "# avg_range_db," << fmt("%.4f", env.avg_range_db) << '\n';
    return kExitOk;
  } catch (const PatternError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

int cmd_gen_patterns(const GenOptions& options, const std::string& output_path,
                     std::ostream& err) {
  try {
    PatternSet set =
        options.grid_n1 && options.grid_n2
            ? make_synthetic_grid_set(*options.grid_n1, *options.grid_n2,
                                      options.profile)
            : make_synthetic_set(options.n_ports, options.profile);
    save_pattern_set_file(set, output_path);
    return kExitOk;
  } catch (const PatternError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

}  // namespace fama::cli
