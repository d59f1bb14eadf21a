#include "fns/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace fns {

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::conserve: return "conserve";
    case ExperimentKind::identity: return "identity";
    case ExperimentKind::acl: return "acl";
    case ExperimentKind::morawetz: return "morawetz";
    case ExperimentKind::lemma1: return "lemma1";
    case ExperimentKind::scatter: return "scatter";
  }
  return "?";
}

const char* to_string(DataKind k) {
  switch (k) {
    case DataKind::planewave: return "planewave";
    case DataKind::gaussian: return "gaussian";
    case DataKind::random: return "random";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

double parse_double(const std::string& key, const std::string& v) {
  // accepts plain literals and exact rationals "a/b"
  try {
    auto slash = v.find('/');
    if (slash != std::string::npos) {
      double num = std::stod(v.substr(0, slash));
      double den = std::stod(v.substr(slash + 1));
      return num / den;
    }
    if (v == "inf") return std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "': cannot parse number '" + v +
                      "'");
  }
}

long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "': cannot parse integer '" + v +
                      "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw ConfigError("config: key '" + key + "': cannot parse boolean '" + v +
                    "'");
}

bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

using KV = std::map<std::string, std::string>;

const std::map<std::string, std::set<std::string>> kSchema = {
    {"experiment",
     {"kind", "seeds", "lambdas", "dealias", "nonlinearity", "pairs"}},
    {"grid", {"dim", "points", "length"}},
    {"data",
     {"kind", "amplitude", "width", "center", "mode", "seed", "band",
      "profile", "profile_width", "mean_free"}},
    {"time", {"T", "dt", "snapshot_stride"}},
    {"imethod", {"s", "N"}},
};

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  std::map<std::string, KV> sections;
  std::string current;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: malformed section header at line " +
                          std::to_string(lineno));
      current = trim(line.substr(1, line.size() - 2));
      if (!kSchema.count(current))
        throw ConfigError("config: unknown section '" + current + "'");
      sections[current];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected 'key = value' at line " +
                        std::to_string(lineno));
    if (current.empty())
      throw ConfigError("config: key outside any section at line " +
                        std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!kSchema.at(current).count(key))
      throw ConfigError("config: unknown key '" + key + "' in section [" +
                        current + "]");
    if (sections[current].count(key))
      throw ConfigError("config: duplicate key '" + key + "' in section [" +
                        current + "]");
    sections[current][key] = value;
  }

  auto get = [&](const std::string& sec, const std::string& key,
                 const char* fallback = nullptr) -> std::string {
    auto s = sections.find(sec);
    if (s != sections.end()) {
      auto it = s->second.find(key);
      if (it != s->second.end()) return it->second;
    }
    if (fallback) return fallback;
    throw ConfigError("config: missing required key '" + key +
                      "' in section [" + sec + "]");
  };

  ExperimentConfig c;

  std::string kind = get("experiment", "kind");
  if (kind == "conserve") c.kind = ExperimentKind::conserve;
  else if (kind == "identity") c.kind = ExperimentKind::identity;
  else if (kind == "acl") c.kind = ExperimentKind::acl;
  else if (kind == "morawetz") c.kind = ExperimentKind::morawetz;
  else if (kind == "lemma1") c.kind = ExperimentKind::lemma1;
  else if (kind == "scatter") c.kind = ExperimentKind::scatter;
  else throw ConfigError("config: key 'kind': unknown experiment '" + kind + "'");

  c.dim = static_cast<int>(parse_int("dim", get("grid", "dim")));
  if (c.dim < 1 || c.dim > 7)
    throw ConfigError("config: key 'dim': must be in 1..7");
  long points = parse_int("points", get("grid", "points"));
  // lemma1 runs are static spectral checks and may use any even P (the n=7
  // matrix uses P=6); everything that evolves requires a power of two.
  bool allow_non_pow2 = c.kind == ExperimentKind::lemma1;
  if (!is_power_of_two(points) && !(allow_non_pow2 && points % 2 == 0))
    throw ConfigError("config: key 'points': points_per_axis must be a power "
                      "of two");
  if (points < 4)
    throw ConfigError("config: key 'points': must be >= 4");
  c.points = static_cast<int>(points);
  c.length = parse_double("length", get("grid", "length"));
  if (!(c.length > 0.0))
    throw ConfigError("config: key 'length': must be positive");

  std::string dkind = get("data", "kind");
  if (dkind == "planewave") c.data.kind = DataKind::planewave;
  else if (dkind == "gaussian") c.data.kind = DataKind::gaussian;
  else if (dkind == "random") c.data.kind = DataKind::random;
  else throw ConfigError("config: key 'kind': unknown data kind '" + dkind + "'");

  c.data.amplitude = parse_double("amplitude", get("data", "amplitude", "1"));
  c.data.width = parse_double("width", get("data", "width", "1"));
  std::string center = get("data", "center", "auto");
  if (center != "auto") {
    for (const auto& part : split(center, ','))
      c.data.center.push_back(parse_double("center", part));
    if (static_cast<int>(c.data.center.size()) != c.dim)
      throw ConfigError("config: key 'center': expected " +
                        std::to_string(c.dim) + " components");
  }
  std::string mode = get("data", "mode", "auto");
  if (mode != "auto") {
    for (const auto& part : split(mode, ','))
      c.data.mode.push_back(static_cast<int>(parse_int("mode", part)));
    if (static_cast<int>(c.data.mode.size()) != c.dim)
      throw ConfigError("config: key 'mode': expected " +
                        std::to_string(c.dim) + " components");
  }
  c.data.random.seed =
      static_cast<std::uint64_t>(parse_int("seed", get("data", "seed", "0")));
  c.data.random.band =
      static_cast<int>(parse_int("band", get("data", "band", "1")));
  if (c.data.random.band > c.points / 2 - 1)
    throw ConfigError("config: key 'band': must be <= points/2 - 1");
  std::string profile = get("data", "profile", "flat");
  if (profile == "flat") c.data.random.profile = SpectralProfile::flat;
  else if (profile == "gaussian") c.data.random.profile = SpectralProfile::gaussian;
  else throw ConfigError("config: key 'profile': unknown profile '" + profile + "'");
  c.data.random.profile_width =
      parse_double("profile_width", get("data", "profile_width", "1"));
  c.data.random.mean_free =
      parse_bool("mean_free", get("data", "mean_free", "false"));
  c.data.random.amplitude = c.data.amplitude;

  c.T = parse_double("T", get("time", "T"));
  c.dt = parse_double("dt", get("time", "dt"));
  if (!(c.T > 0.0)) throw ConfigError("config: key 'T': must be positive");
  if (!(c.dt > 0.0)) throw ConfigError("config: key 'dt': must be positive");
  c.snapshot_stride = static_cast<int>(
      parse_int("snapshot_stride", get("time", "snapshot_stride", "1")));
  if (c.snapshot_stride < 1)
    throw ConfigError("config: key 'snapshot_stride': must be >= 1");

  c.s = parse_double("s", get("imethod", "s", "1"));
  if (!(c.s > 0.0 && c.s < 2.0))
    throw ConfigError(
        "config: key 's': the smoothing multiplier requires 0 < s < 2");
  for (const auto& part : split(get("imethod", "N", "4"), ','))
    c.N_list.push_back(parse_double("N", part));
  for (double N : c.N_list) {
    if (N < 1.0) throw ConfigError("config: key 'N': entries must be >= 1");
    double l = std::log2(N);
    if (std::abs(l - std::round(l)) > 1e-12)
      throw ConfigError("config: key 'N': entries must be dyadic");
  }

  c.seeds = static_cast<int>(parse_int("seeds", get("experiment", "seeds", "20")));
  if (c.seeds < 1) throw ConfigError("config: key 'seeds': must be >= 1");
  std::string dealias_s = get("experiment", "dealias", "half");
  if (dealias_s == "half") c.dealias = DealiasRule::half_rule;
  else if (dealias_s == "none") c.dealias = DealiasRule::none;
  else throw ConfigError("config: key 'dealias': must be 'half' or 'none'");
  c.nonlinearity =
      parse_bool("nonlinearity", get("experiment", "nonlinearity", "true"));
  c.lambdas.clear();
  for (const auto& part : split(get("experiment", "lambdas", "2,4"), ','))
    c.lambdas.push_back(parse_double("lambdas", part));
  std::string pairs = get("experiment", "pairs", "");
  if (!pairs.empty()) {
    for (const auto& part : split(pairs, ',')) {
      auto colon = part.find(':');
      if (colon == std::string::npos)
        throw ConfigError("config: key 'pairs': expected 'gamma:rho' entries");
      StrichartzPair p;
      p.gamma = parse_double("pairs", trim(part.substr(0, colon)));
      p.rho = parse_double("pairs", trim(part.substr(colon + 1)));
      if (!biharmonic_admissible(p, c.dim))
        throw ConfigError(
            "config: key 'pairs': (" + part +
            ") violates the admissibility relation 4/gamma = n(1/2 - 1/rho)");
      c.pairs.push_back(p);
    }
  }

  // per-kind constraints
  if (c.kind == ExperimentKind::lemma1 && (c.dim < 5 || c.dim > 7))
    throw ConfigError("config: key 'dim': lemma1 requires dim in {5,6,7}");
  if (c.kind == ExperimentKind::identity &&
      c.data.kind == DataKind::random &&
      c.data.random.band > c.points / 6)
    throw ConfigError(
        "config: key 'band': identity check requires band <= points/6");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(c.kind);
  j["grid"] = {{"dim", c.dim}, {"points", c.points}, {"length", c.length}};
  nlohmann::ordered_json d;
  d["kind"] = to_string(c.data.kind);
  d["amplitude"] = c.data.amplitude;
  d["width"] = c.data.width;
  d["center"] = c.data.center;
  d["mode"] = c.data.mode;
  d["seed"] = c.data.random.seed;
  d["band"] = c.data.random.band;
  d["profile"] =
      c.data.random.profile == SpectralProfile::flat ? "flat" : "gaussian";
  d["profile_width"] = c.data.random.profile_width;
  d["mean_free"] = c.data.random.mean_free;
  j["data"] = d;
  j["time"] = {{"T", c.T}, {"dt", c.dt}, {"snapshot_stride", c.snapshot_stride}};
  j["imethod"] = {{"s", c.s}, {"N", c.N_list}};
  j["dealias"] = c.dealias == DealiasRule::half_rule ? "half" : "none";
  j["nonlinearity"] = c.nonlinearity;
  j["seeds"] = c.seeds;
  j["lambdas"] = c.lambdas;
  // strings rather than numbers: gamma may be infinite, which JSON numbers
  // cannot carry
  nlohmann::ordered_json pl = nlohmann::ordered_json::array();
  for (const auto& p : c.pairs) {
    char buf[64];
    if (std::isinf(p.gamma))
      std::snprintf(buf, sizeof(buf), "inf:%.17g", p.rho);
    else
      std::snprintf(buf, sizeof(buf), "%.17g:%.17g", p.gamma, p.rho);
    pl.push_back(std::string(buf));
  }
  j["pairs"] = pl;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  std::string kind = j.at("kind");
  for (auto k : {ExperimentKind::conserve, ExperimentKind::identity,
                 ExperimentKind::acl, ExperimentKind::morawetz,
                 ExperimentKind::lemma1, ExperimentKind::scatter})
    if (kind == to_string(k)) c.kind = k;
  c.dim = j.at("grid").at("dim");
  c.points = j.at("grid").at("points");
  c.length = j.at("grid").at("length");
  const auto& d = j.at("data");
  std::string dk = d.at("kind");
  for (auto k : {DataKind::planewave, DataKind::gaussian, DataKind::random})
    if (dk == to_string(k)) c.data.kind = k;
  c.data.amplitude = d.at("amplitude");
  c.data.width = d.at("width");
  c.data.center = d.at("center").get<std::vector<double>>();
  c.data.mode = d.at("mode").get<std::vector<int>>();
  c.data.random.seed = d.at("seed");
  c.data.random.band = d.at("band");
  c.data.random.profile = d.at("profile") == "flat" ? SpectralProfile::flat
                                                    : SpectralProfile::gaussian;
  c.data.random.profile_width = d.at("profile_width");
  c.data.random.mean_free = d.at("mean_free");
  c.data.random.amplitude = c.data.amplitude;
  c.T = j.at("time").at("T");
  c.dt = j.at("time").at("dt");
  c.snapshot_stride = j.at("time").at("snapshot_stride");
  c.s = j.at("imethod").at("s");
  c.N_list = j.at("imethod").at("N").get<std::vector<double>>();
  c.dealias = j.at("dealias") == "half" ? DealiasRule::half_rule
                                        : DealiasRule::none;
  c.nonlinearity = j.at("nonlinearity");
  c.seeds = j.at("seeds");
  c.lambdas = j.at("lambdas").get<std::vector<double>>();
  c.pairs.clear();
  for (const auto& p : j.at("pairs")) {
    std::string text = p;
    auto colon = text.find(':');
    StrichartzPair pair;
    std::string g1 = text.substr(0, colon);
    pair.gamma = g1 == "inf" ? std::numeric_limits<double>::infinity()
                             : std::stod(g1);
    pair.rho = std::stod(text.substr(colon + 1));
    c.pairs.push_back(pair);
  }
  return c;
}

ComplexField make_initial_data(const ExperimentConfig& c) {
  Grid g = c.grid();
  switch (c.data.kind) {
    case DataKind::planewave: {
      std::vector<int> mode = c.data.mode;
      if (mode.empty()) {
        mode.assign(g.dim, 0);
        mode[0] = 1;
      }
      ComplexField f(g, Representation::spectral);
      // locate the storage slot of the requested lattice mode
      std::size_t flat = 0;
      for (int a = 0; a < g.dim; ++a) {
        int ka = mode[a];
        if (ka < -g.points / 2 || ka > g.points / 2 - 1)
          throw ConfigError("config: key 'mode': index out of lattice range");
        int ia = ka >= 0 ? ka : ka + g.points;
        flat = flat * g.points + ia;
      }
      f[flat] = c.data.amplitude;
      return to_physical(f);
    }
    case DataKind::gaussian: {
      std::vector<double> center = c.data.center;
      if (center.empty()) center.assign(g.dim, 0.5 * g.length);
      ComplexField f(g, Representation::physical);
      const double h = g.length / g.points;
      std::vector<int> idx(g.dim, 0);
      for (std::size_t i = 0; i < f.size(); ++i) {
        double r2 = 0.0;
        for (int a = 0; a < g.dim; ++a) {
          double d = idx[a] * h - center[a];
          d -= g.length * std::round(d / g.length);
          r2 += d * d;
        }
        f[i] = c.data.amplitude *
               std::exp(-r2 / (2.0 * c.data.width * c.data.width));
        for (int a = g.dim - 1; a >= 0; --a) {
          if (++idx[a] < g.points) break;
          idx[a] = 0;
        }
      }
      return f;
    }
    case DataKind::random: {
      RandomFieldSpec spec = c.data.random;
      spec.amplitude = c.data.amplitude;  // the [data] amplitude is the one
                                          // source of truth
      return seeded_random_field(g, spec);
    }
  }
  throw ConfigError("config: unreachable data kind");
}

}  // namespace fns
