#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solvers/instance.hpp"

namespace fsr {

// Undirected simple graph on vertices 1..n.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  void validate() const;
  bool adjacent(int u, int v) const;
  // Closed neighbourhood N_C(v), ascending.
  std::vector<int> closed_neighbourhood(int v) const;
};

// Header line "n", then one "u v" pair per line; '#' starts a comment.
Graph parse_graph(const std::string& text);
std::string format_graph(const Graph& g);
// All 2^(n(n-1)/2) labelled graphs on n vertices, in edge-bitmask order.
std::vector<Graph> all_labelled_graphs(int n);

// Subsets of size <= k; refuses n > 20.
bool oracle_dominating_set(const Graph& g, int k);

struct Dtm {
  std::vector<std::string> states;   // states[0] is initial
  int accept = 0;
  std::vector<std::string> symbols;  // symbols[0] is the blank
  struct Rule {
    int next;
    int write;
    int dir;  // -1 left, +1 right
  };
  std::map<std::pair<int, int>, Rule> delta;

  void validate() const;
};

// JSON: {"states":[..],"accept":"qA","blank":"_","symbols":[..],
//        "delta":[{"state":..,"read":..,"next":..,"write":..,"move":"L"|"R"}]}
Dtm parse_dtm(const std::string& json_text);
std::vector<int> encode_input(const Dtm& m, const std::string& input);  // one symbol per char

// Runs M on x within k tape squares for at most |Q| * k * |Sigma|^k steps.
bool oracle_dtm_run(const Dtm& m, const std::vector<int>& x, int k);

Instance gadget_cdtmc_to_verify_sf(const Dtm& m, const std::vector<int>& x, int k);

enum class TeamDesVariant : std::uint8_t { Base, Collapsed, ReducedFields, ReducedFieldsCollapsed };
enum class EnvDesVariant : std::uint8_t { Column, ColumnCollapsed, Track, TrackCollapsed, Multirobot };

const char* variant_name(TeamDesVariant v);
const char* variant_name(EnvDesVariant v);
std::optional<TeamDesVariant> parse_teamdes_variant(const std::string& s);
std::optional<EnvDesVariant> parse_envdes_variant(const std::string& s);

Instance gadget_domset_to_teamdes_sf(const Graph& g, int k, TeamDesVariant v);
Instance gadget_domset_to_envdes_sf(const Graph& g, int k, EnvDesVariant v);
Instance gadget_domset_to_codesign_sf(const Graph& g, int k, EnvDesVariant v);

// Length of the circulation ring used by the team-design gadget, and the
// per-run step budget 2 * ring * (k + 1) derived from it.
int teamdes_ring_length(const Graph& g, TeamDesVariant v);

// Two length-9 walls, nine robots, a seed east of the walls on `seed_row`
// (rows 2..6; 2 and 6 are the degenerate placements).
Instance line_builder_instance(int seed_row, Sensing sensing);
inline constexpr int kLineBuilderHeight = 7;

}  // namespace fsr
