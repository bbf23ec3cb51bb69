#ifndef STHAWKES_IO_HPP
#define STHAWKES_IO_HPP

#include <Eigen/Core>
#include <optional>
#include <string>

#include "sthawkes/sampler.hpp"
#include "sthawkes/types.hpp"

namespace hawkes {

enum class DistanceUnit { Meters, Km };
enum class TimeUnit { Seconds, Minutes, Hours, Days };
enum class TimeReference {
  WindowRelative,  // times already measured from the window start
  Epoch,           // shift so the earliest time becomes 0; offset recorded
};

DistanceUnit parseDistanceUnit(const std::string& s);
TimeUnit parseTimeUnit(const std::string& s);
double distanceUnitToKm(DistanceUnit u);
double timeUnitToDays(TimeUnit u);

// How to read a delimited event file. Required columns x, y, t (renamable);
// optional parent column. Lines starting with '#' before the header carry
// "key=value" metadata (window_end_days, time_origin_days) written by
// writeEvents.
struct EventFileSpec {
  char delimiter = ',';
  std::string xColumn = "x";
  std::string yColumn = "y";
  std::string tColumn = "t";
  DistanceUnit distanceUnit = DistanceUnit::Km;
  TimeUnit timeUnit = TimeUnit::Days;
  TimeReference timeReference = TimeReference::WindowRelative;
  // Window end in canonical days (after any epoch shift); overrides file
  // metadata. Defaults to the last event time.
  std::optional<double> windowEndDays;
};

EventSet readEvents(const std::string& path, const EventFileSpec& spec = {});

// Canonical km/days CSV with metadata comment lines; parent (1-based, 0 =
// immigrant) written as an extra column when provided. Full double
// precision; readEvents(writeEvents(e)) reproduces e exactly.
void writeEvents(const EventSet& events, const std::string& path,
                 const Eigen::VectorXi* parent = nullptr);

// Greedy forward sweep: drop an event when some earlier *retained* event
// lies within `radiusKm` and `windowDays`. Thresholds are inclusive; both
// zero disables deduplication entirely.
EventSet deduplicate(const EventSet& events, double radiusKm,
                     double windowDays);

// Versioned chain container (JSON, hex-float encoded draws: lossless for
// finite doubles).
void writeChain(const Chain& chain, const std::string& path);
Chain readChain(const std::string& path);

struct DedupOptions {
  double radiusKm = 0.0;
  double windowDays = 0.0;
};

// One structured configuration document driving `fit`. Unknown keys anywhere
// in the document are errors.
struct RunConfig {
  std::string dataPath;
  EventFileSpec fileSpec;
  DedupOptions dedup;
  SamplerConfig sampler;
  PriorSpec priors;
  std::string outputPrefix = "chain";
};

RunConfig loadRunConfig(const std::string& path);

}  // namespace hawkes

#endif  // STHAWKES_IO_HPP
