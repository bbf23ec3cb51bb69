#include "sthawkes/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace hawkes {

using nlohmann::json;

namespace {

constexpr int kChainFormatVersion = 1;
constexpr const char* kChainFormatName = "sthawkes-chain";

std::string hexDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parseHexDouble(const std::string& s, const char* where) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw std::runtime_error(std::string("chain file: bad number in ") +
                             where + ": '" + s + "'");
  }
  return v;
}

double parseDoubleField(std::string_view field, const std::string& path,
                        size_t lineNo, const std::string& column) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw std::runtime_error(path + ":" + std::to_string(lineNo) +
                             ": cannot parse '" + std::string(field) +
                             "' in column " + column);
  }
  if (!std::isfinite(v)) {
    throw std::runtime_error(path + ":" + std::to_string(lineNo) +
                             ": non-finite value in column " + column);
  }
  return v;
}

std::vector<std::string_view> splitLine(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string_view stripCr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

}  // namespace

DistanceUnit parseDistanceUnit(const std::string& s) {
  if (s == "m") return DistanceUnit::Meters;
  if (s == "km") return DistanceUnit::Km;
  throw std::invalid_argument("unknown distance unit '" + s +
                              "' (expected m|km)");
}

TimeUnit parseTimeUnit(const std::string& s) {
  if (s == "s") return TimeUnit::Seconds;
  if (s == "min") return TimeUnit::Minutes;
  if (s == "h") return TimeUnit::Hours;
  if (s == "d") return TimeUnit::Days;
  throw std::invalid_argument("unknown time unit '" + s +
                              "' (expected s|min|h|d)");
}

double distanceUnitToKm(DistanceUnit u) {
  return u == DistanceUnit::Meters ? units::metersToKm(1.0) : 1.0;
}

double timeUnitToDays(TimeUnit u) {
  switch (u) {
    case TimeUnit::Seconds:
      return units::secondsToDays(1.0);
    case TimeUnit::Minutes:
      return units::minutesToDays(1.0);
    case TimeUnit::Hours:
      return units::hoursToDays(1.0);
    case TimeUnit::Days:
      return 1.0;
  }
  return 1.0;
}

EventSet readEvents(const std::string& path, const EventFileSpec& spec) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open event file: " + path);
  }

  const double distScale = distanceUnitToKm(spec.distanceUnit);
  const double timeScale = timeUnitToDays(spec.timeUnit);

  std::optional<double> metaWindowEnd;
  double metaTimeOrigin = 0.0;

  std::string lineBuf;
  size_t lineNo = 0;

  // Leading '#' lines: "key=value" metadata.
  std::string headerLine;
  while (std::getline(in, lineBuf)) {
    ++lineNo;
    std::string_view line = stripCr(lineBuf);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const size_t eq = line.find('=');
      if (eq != std::string_view::npos) {
        std::string_view key = line.substr(1, eq - 1);
        while (!key.empty() && key.front() == ' ') key.remove_prefix(1);
        while (!key.empty() && key.back() == ' ') key.remove_suffix(1);
        const std::string value(line.substr(eq + 1));
        if (key == "window_end_days") {
          metaWindowEnd = parseDoubleField(value, path, lineNo, "metadata");
        } else if (key == "time_origin_days") {
          metaTimeOrigin = parseDoubleField(value, path, lineNo, "metadata");
        }
      }
      continue;
    }
    headerLine = std::string(line);
    break;
  }
  if (headerLine.empty()) {
    throw std::runtime_error(path + ": missing header line");
  }

  const auto header = splitLine(headerLine, spec.delimiter);
  int xCol = -1, yCol = -1, tCol = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == spec.xColumn) xCol = static_cast<int>(i);
    if (header[i] == spec.yColumn) yCol = static_cast<int>(i);
    if (header[i] == spec.tColumn) tCol = static_cast<int>(i);
  }
  if (xCol < 0 || yCol < 0 || tCol < 0) {
    throw std::runtime_error(path + ": header lacks required columns '" +
                             spec.xColumn + "', '" + spec.yColumn + "', '" +
                             spec.tColumn + "'");
  }

  std::vector<double> xs, ys, ts;
  while (std::getline(in, lineBuf)) {
    ++lineNo;
    std::string_view line = stripCr(lineBuf);
    if (line.empty()) continue;
    const auto fields = splitLine(line, spec.delimiter);
    if (fields.size() != header.size()) {
      throw std::runtime_error(path + ":" + std::to_string(lineNo) +
                               ": expected " + std::to_string(header.size()) +
                               " fields, found " +
                               std::to_string(fields.size()));
    }
    xs.push_back(distScale * parseDoubleField(fields[static_cast<size_t>(xCol)],
                                              path, lineNo, spec.xColumn));
    ys.push_back(distScale * parseDoubleField(fields[static_cast<size_t>(yCol)],
                                              path, lineNo, spec.yColumn));
    ts.push_back(timeScale * parseDoubleField(fields[static_cast<size_t>(tCol)],
                                              path, lineNo, spec.tColumn));
  }
  if (xs.empty()) {
    throw std::runtime_error(path + ": no event rows");
  }

  const Index n = static_cast<Index>(xs.size());
  Eigen::ArrayXd x = Eigen::Map<Eigen::ArrayXd>(xs.data(), n);
  Eigen::ArrayXd y = Eigen::Map<Eigen::ArrayXd>(ys.data(), n);
  Eigen::ArrayXd t = Eigen::Map<Eigen::ArrayXd>(ts.data(), n);

  double origin = metaTimeOrigin;
  if (spec.timeReference == TimeReference::Epoch) {
    const double shift = t.minCoeff();
    t -= shift;
    origin += shift;
  }

  std::optional<double> windowEnd = spec.windowEndDays;
  if (!windowEnd.has_value()) windowEnd = metaWindowEnd;

  try {
    return EventSet::sortedByTime(x, y, t, windowEnd, origin);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void writeEvents(const EventSet& events, const std::string& path,
                 const Eigen::VectorXi* parent) {
  if (parent != nullptr && parent->size() != events.size()) {
    throw std::invalid_argument("writeEvents: parent length mismatch");
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  char buf[40];
  out << "# sthawkes events v1\n";
  std::snprintf(buf, sizeof buf, "%.17g", events.windowEnd());
  out << "# window_end_days=" << buf << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", events.timeOrigin());
  out << "# time_origin_days=" << buf << "\n";
  out << (parent != nullptr ? "x,y,t,parent\n" : "x,y,t\n");
  for (Index i = 0; i < events.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", events.xs()[i]);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", events.ys()[i]);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", events.ts()[i]);
    out << buf;
    if (parent != nullptr) out << ',' << (*parent)[i];
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("failed writing event file: " + path);
  }
}

EventSet deduplicate(const EventSet& events, double radiusKm,
                     double windowDays) {
  if (radiusKm < 0.0 || windowDays < 0.0) {
    throw std::invalid_argument("deduplicate: thresholds must be >= 0");
  }
  if (radiusKm == 0.0 && windowDays == 0.0) return events;

  const Index n = events.size();
  const double r2 = radiusKm * radiusKm;
  std::vector<Index> kept;
  kept.reserve(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) {
    bool duplicate = false;
    // Retained events are time-sorted: scan back only within the window.
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
      const Index j = *it;
      const double dt = events.ts()[i] - events.ts()[j];
      if (dt > windowDays) break;
      const double dx = events.xs()[i] - events.xs()[j];
      const double dy = events.ys()[i] - events.ys()[j];
      if (dx * dx + dy * dy <= r2) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) kept.push_back(i);
  }

  const Index m = static_cast<Index>(kept.size());
  Eigen::ArrayXd x(m), y(m), t(m);
  for (Index i = 0; i < m; ++i) {
    x[i] = events.xs()[kept[static_cast<size_t>(i)]];
    y[i] = events.ys()[kept[static_cast<size_t>(i)]];
    t[i] = events.ts()[kept[static_cast<size_t>(i)]];
  }
  return EventSet(std::move(x), std::move(y), std::move(t),
                  events.windowEnd(), events.timeOrigin());
}

namespace {

json backendToJson(const Backend& b) {
  std::string kind;
  switch (b.kind) {
    case BackendKind::Serial:
      kind = "serial";
      break;
    case BackendKind::Vectorized:
      kind = "simd";
      break;
    case BackendKind::Threaded:
      kind = "threads";
      break;
    case BackendKind::ThreadedVectorized:
      kind = "threads+simd";
      break;
  }
  return json{{"kind", kind},
              {"threads", b.threadCount},
              {"lanes", b.laneWidth}};
}

void requireKeys(const json& obj, const std::string& where,
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
      throw std::runtime_error("config: unknown key '" + where + key + "'");
    }
  }
}

Backend backendFromJson(const json& j, const std::string& where) {
  requireKeys(j, where, {"kind", "threads", "lanes"});
  const std::string kind = j.value("kind", "serial");
  const int threads = j.value("threads", 1);
  const int lanes = j.value("lanes", 4);
  return parseBackend(kind, threads, lanes);
}

json priorsToJson(const PriorSpec& p) {
  json j;
  for (int d = 0; d < kFreeParams; ++d) {
    j[kFreeParamNames[static_cast<size_t>(d)]] = {
        {"mean", hexDouble(p.coord[static_cast<size_t>(d)].mean)},
        {"sd", hexDouble(p.coord[static_cast<size_t>(d)].sd)}};
  }
  return j;
}

PriorSpec priorsFromChainJson(const json& j) {
  PriorSpec p;
  for (int d = 0; d < kFreeParams; ++d) {
    const auto& cj = j.at(kFreeParamNames[static_cast<size_t>(d)]);
    p.coord[static_cast<size_t>(d)].mean =
        parseHexDouble(cj.at("mean").get<std::string>(), "priors.mean");
    p.coord[static_cast<size_t>(d)].sd =
        parseHexDouble(cj.at("sd").get<std::string>(), "priors.sd");
  }
  return p;
}

}  // namespace

void writeChain(const Chain& chain, const std::string& path) {
  if (chain.draws.rows() == 0) {
    throw std::invalid_argument("writeChain: refusing to write empty chain");
  }
  if (chain.draws.rows() != chain.logPost.size() ||
      static_cast<size_t>(chain.draws.rows()) != chain.scannedCoord.size() ||
      static_cast<size_t>(chain.draws.rows()) != chain.accepted.size()) {
    throw std::invalid_argument("writeChain: inconsistent chain bookkeeping");
  }

  json j;
  j["format"] = kChainFormatName;
  j["version"] = kChainFormatVersion;
  j["chainIndex"] = chain.chainIndex;
  j["chainSeed"] = chain.chainSeed;
  j["eventCount"] = chain.eventCount;

  const SamplerConfig& c = chain.config;
  json cfg;
  cfg["iterations"] = c.iterations;
  cfg["burnIn"] = c.burnIn;
  cfg["seed"] = c.seed;
  cfg["targetAcceptance"] = hexDouble(c.targetAcceptance);
  cfg["initialTheta"] = json::array();
  cfg["initialProposalSd"] = json::array();
  for (int d = 0; d < kFreeParams; ++d) {
    cfg["initialTheta"].push_back(hexDouble(c.initialTheta[d]));
    cfg["initialProposalSd"].push_back(hexDouble(c.initialProposalSd[d]));
  }
  cfg["initialAdaptBound"] = hexDouble(c.initialAdaptBound);
  cfg["adapt"] = c.adapt;
  cfg["tauX"] = hexDouble(c.tauX);
  cfg["tauT"] = hexDouble(c.tauT);
  cfg["backend"] = backendToJson(c.backend);
  cfg["chainCount"] = c.chainCount;
  j["config"] = cfg;
  j["priors"] = priorsToJson(chain.priors);
  j["paramNames"] = json::array();
  for (const char* name : kFreeParamNames) j["paramNames"].push_back(name);

  json draws = json::array();
  for (Index i = 0; i < chain.draws.rows(); ++i) {
    json row = json::array();
    for (int d = 0; d < kFreeParams; ++d) {
      row.push_back(hexDouble(chain.draws(i, d)));
    }
    draws.push_back(std::move(row));
  }
  j["draws"] = std::move(draws);

  json logPost = json::array();
  for (Index i = 0; i < chain.logPost.size(); ++i) {
    logPost.push_back(hexDouble(chain.logPost[i]));
  }
  j["logPost"] = std::move(logPost);
  j["scannedCoord"] = chain.scannedCoord;
  j["accepted"] = chain.accepted;

  json adapts = json::array();
  for (const auto& a : chain.adaptations) {
    adapts.push_back(json{{"step", a.step},
                          {"coord", a.coord},
                          {"v", hexDouble(a.vAfter)},
                          {"b", hexDouble(a.bAfter)}});
  }
  j["adaptations"] = std::move(adapts);

  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open chain file for writing: " + path);
  }
  out << j.dump(1, '\t') << '\n';
  if (!out) {
    throw std::runtime_error("failed writing chain file: " + path);
  }
}

Chain readChain(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open chain file: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("chain file " + path +
                             " is truncated or corrupt: " + e.what());
  }

  try {
    if (j.at("format").get<std::string>() != kChainFormatName) {
      throw std::runtime_error("chain file " + path + ": unrecognized format");
    }
    if (j.at("version").get<int>() != kChainFormatVersion) {
      throw std::runtime_error(
          "chain file " + path + ": unsupported version " +
          std::to_string(j.at("version").get<int>()) + " (expected " +
          std::to_string(kChainFormatVersion) + ")");
    }

    Chain chain;
    chain.chainIndex = j.at("chainIndex").get<int>();
    chain.chainSeed = j.at("chainSeed").get<std::uint64_t>();
    chain.eventCount = j.at("eventCount").get<Index>();

    const json& cfg = j.at("config");
    SamplerConfig& c = chain.config;
    c.iterations = cfg.at("iterations").get<long>();
    c.burnIn = cfg.at("burnIn").get<long>();
    c.seed = cfg.at("seed").get<std::uint64_t>();
    c.targetAcceptance = parseHexDouble(
        cfg.at("targetAcceptance").get<std::string>(), "targetAcceptance");
    for (int d = 0; d < kFreeParams; ++d) {
      c.initialTheta[d] = parseHexDouble(
          cfg.at("initialTheta").at(d).get<std::string>(), "initialTheta");
      c.initialProposalSd[d] =
          parseHexDouble(cfg.at("initialProposalSd").at(d).get<std::string>(),
                         "initialProposalSd");
    }
    c.initialAdaptBound = parseHexDouble(
        cfg.at("initialAdaptBound").get<std::string>(), "initialAdaptBound");
    c.adapt = cfg.at("adapt").get<bool>();
    c.tauX = parseHexDouble(cfg.at("tauX").get<std::string>(), "tauX");
    c.tauT = parseHexDouble(cfg.at("tauT").get<std::string>(), "tauT");
    c.backend = backendFromJson(cfg.at("backend"), "config.backend.");
    c.chainCount = cfg.at("chainCount").get<int>();
    chain.priors = priorsFromChainJson(j.at("priors"));

    const json& draws = j.at("draws");
    const Index s = static_cast<Index>(draws.size());
    if (s == 0) {
      throw std::runtime_error("chain file " + path + ": no draws");
    }
    chain.draws.resize(s, kFreeParams);
    for (Index i = 0; i < s; ++i) {
      for (int d = 0; d < kFreeParams; ++d) {
        chain.draws(i, d) =
            parseHexDouble(draws.at(i).at(d).get<std::string>(), "draws");
      }
    }
    const json& logPost = j.at("logPost");
    if (static_cast<Index>(logPost.size()) != s) {
      throw std::runtime_error("chain file " + path + ": logPost length");
    }
    chain.logPost.resize(s);
    for (Index i = 0; i < s; ++i) {
      chain.logPost[i] =
          parseHexDouble(logPost.at(i).get<std::string>(), "logPost");
    }
    chain.scannedCoord = j.at("scannedCoord").get<std::vector<std::int8_t>>();
    chain.accepted = j.at("accepted").get<std::vector<std::int8_t>>();
    if (chain.scannedCoord.size() != static_cast<size_t>(s) ||
        chain.accepted.size() != static_cast<size_t>(s)) {
      throw std::runtime_error("chain file " + path +
                               ": bookkeeping length mismatch");
    }
    for (const auto& a : j.at("adaptations")) {
      chain.adaptations.push_back(
          {a.at("step").get<long>(), a.at("coord").get<int>(),
           parseHexDouble(a.at("v").get<std::string>(), "adaptations.v"),
           parseHexDouble(a.at("b").get<std::string>(), "adaptations.b")});
    }
    return chain;
  } catch (const json::exception& e) {
    throw std::runtime_error("chain file " + path +
                             " is truncated or corrupt: " + e.what());
  }
}

RunConfig loadRunConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config file " + path + ": " + e.what());
  }

  RunConfig rc;
  requireKeys(j, "",
              {"data", "model", "priors", "sampler", "backend", "output"});

  if (j.contains("data")) {
    const json& d = j["data"];
    requireKeys(d, "data.",
                {"path", "delimiter", "distanceUnit", "timeUnit",
                 "timeReference", "columns", "windowEndDays", "dedup"});
    rc.dataPath = d.value("path", "");
    const std::string delim = d.value("delimiter", ",");
    if (delim.size() != 1) {
      throw std::runtime_error("config: data.delimiter must be one character");
    }
    rc.fileSpec.delimiter = delim[0];
    rc.fileSpec.distanceUnit =
        parseDistanceUnit(d.value("distanceUnit", "km"));
    rc.fileSpec.timeUnit = parseTimeUnit(d.value("timeUnit", "d"));
    const std::string ref = d.value("timeReference", "window");
    if (ref == "window") {
      rc.fileSpec.timeReference = TimeReference::WindowRelative;
    } else if (ref == "epoch") {
      rc.fileSpec.timeReference = TimeReference::Epoch;
    } else {
      throw std::runtime_error(
          "config: data.timeReference must be window|epoch");
    }
    if (d.contains("columns")) {
      requireKeys(d["columns"], "data.columns.", {"x", "y", "t"});
      rc.fileSpec.xColumn = d["columns"].value("x", "x");
      rc.fileSpec.yColumn = d["columns"].value("y", "y");
      rc.fileSpec.tColumn = d["columns"].value("t", "t");
    }
    if (d.contains("windowEndDays")) {
      rc.fileSpec.windowEndDays = d["windowEndDays"].get<double>();
    }
    if (d.contains("dedup")) {
      requireKeys(d["dedup"], "data.dedup.",
                  {"radiusMeters", "windowMinutes"});
      rc.dedup.radiusKm =
          units::metersToKm(d["dedup"].value("radiusMeters", 0.0));
      rc.dedup.windowDays =
          units::minutesToDays(d["dedup"].value("windowMinutes", 0.0));
    }
  }

  if (j.contains("model")) {
    requireKeys(j["model"], "model.", {"tauXKm", "tauTDays"});
    rc.sampler.tauX = j["model"].value("tauXKm", rc.sampler.tauX);
    rc.sampler.tauT = j["model"].value("tauTDays", rc.sampler.tauT);
  }

  if (j.contains("priors")) {
    requireKeys(j["priors"], "priors.", {"mu0", "theta", "omega", "hInv"});
    for (int d = 0; d < kFreeParams; ++d) {
      const char* name = kFreeParamNames[static_cast<size_t>(d)];
      if (j["priors"].contains(name)) {
        requireKeys(j["priors"][name], std::string("priors.") + name + ".",
                    {"mean", "sd"});
        auto& coord = rc.priors.coord[static_cast<size_t>(d)];
        coord.mean = j["priors"][name].value("mean", coord.mean);
        coord.sd = j["priors"][name].value("sd", coord.sd);
      }
    }
  }

  if (j.contains("sampler")) {
    const json& s = j["sampler"];
    requireKeys(s, "sampler.",
                {"iterations", "burnIn", "seed", "chains", "targetAcceptance",
                 "adapt", "initial", "proposalSd"});
    rc.sampler.iterations = s.value("iterations", rc.sampler.iterations);
    rc.sampler.burnIn = s.value("burnIn", rc.sampler.burnIn);
    rc.sampler.seed = s.value("seed", rc.sampler.seed);
    rc.sampler.chainCount = s.value("chains", rc.sampler.chainCount);
    rc.sampler.targetAcceptance =
        s.value("targetAcceptance", rc.sampler.targetAcceptance);
    rc.sampler.adapt = s.value("adapt", rc.sampler.adapt);
    for (const char* key : {"initial", "proposalSd"}) {
      if (!s.contains(key)) continue;
      requireKeys(s[key], std::string("sampler.") + key + ".",
                  {"mu0", "theta", "omega", "hInv"});
      for (int d = 0; d < kFreeParams; ++d) {
        const char* name = kFreeParamNames[static_cast<size_t>(d)];
        if (!s[key].contains(name)) continue;
        const double v = s[key][name].get<double>();
        if (std::strcmp(key, "initial") == 0) {
          rc.sampler.initialTheta[d] = v;
        } else {
          rc.sampler.initialProposalSd[d] = v;
        }
      }
    }
  }

  if (j.contains("backend")) {
    rc.sampler.backend = backendFromJson(j["backend"], "backend.");
  }

  if (j.contains("output")) {
    requireKeys(j["output"], "output.", {"prefix"});
    rc.outputPrefix = j["output"].value("prefix", rc.outputPrefix);
  }

  return rc;
}

}  // namespace hawkes
