#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "solvers/solvers.hpp"

namespace fsr {

inline constexpr const char* kSchemaVersion = "fsrteam/1";

// Parse failure; what() starts with the JSON path of the offending value.
class DocumentError : public std::invalid_argument {
 public:
  DocumentError(const std::string& path, const std::string& msg)
      : std::invalid_argument(path + ": " + msg), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Canonical text: sorted keys, two-space indent, point fields and squares
// row-major, trailing newline. parse(serialize(i)) serializes identically.
std::string serialize_instance(const Instance& inst);
Instance parse_instance(const std::string& text);

std::string serialize_environment(const Environment& env);
std::string serialize_controller(const Controller& c, const Vocabulary& v);

// One glyph per square, north row first, then a legend. Robots print as R
// and win over everything; structure squares print as X.
struct RenderOverlay {
  std::vector<Coord> robots;
  std::vector<Coord> structure;
};
inline constexpr int kRenderLimit = 200;
std::string render_ascii(const Environment& env, const RenderOverlay& overlay = {});

struct RunReport {
  std::string command;
  std::string outcome;  // Success, Failed, TimedOut, or a DesignSolution kind
  std::optional<Verdict> verdict;
  std::optional<DesignSolution> solution;
  std::optional<std::string> trace_path;
  double wall_ms = 0;
  std::optional<std::string> error;
};

// Single line, no trailing newline.
std::string report_json(const RunReport& r, const Vocabulary* v = nullptr);
// Full trace as JSON lines: one object per configuration.
std::string trace_jsonl(const Trace& t, const Team& team);

}  // namespace fsr
