#include "solvers/env_search.hpp"

#include <bit>
#include <memory>
#include <stdexcept>
#include <vector>

#include "solvers/solvers.hpp"

namespace fsr {

LazySearchResult lazy_env_search(const Instance& inst, const Team& team, const std::vector<Coord>& p_i,
                                 const RunOptions& opts, std::uint64_t max_leaves) {
  const Vocabulary& v = *inst.vocab;
  PartialEnv partial;
  std::vector<int> edge_specs;
  for (int id : inst.placeable_ids()) {
    if (v.sensing() == Sensing::SF && v.spec(id).kind == FieldKind::Edge) edge_specs.push_back(id);
  }
  if (v.sensing() == Sensing::SF) partial.cell_options.push_back(kNoField);
  for (int id : inst.placeable_ids())
    if (v.sensing() == Sensing::ST || v.spec(id).kind == FieldKind::Point)
      partial.cell_options.push_back(static_cast<CellValue>(id));
  if (partial.cell_options.size() > 64) throw std::invalid_argument("lazy search supports at most 64 square options");
  if (edge_specs.size() > 6) throw std::invalid_argument("lazy search supports at most 6 placeable edge specs");
  partial.edge_specs = edge_specs;
  auto full = [](std::size_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; };
  partial.cell_mask.assign(static_cast<std::size_t>(inst.env.size.cells()), full(partial.cell_options.size()));
  for (std::size_t d = 0; d < 4; ++d) {
    partial.edge_open[d] = !edge_specs.empty();
    partial.edge_mask[d] = full(std::size_t{1} << edge_specs.size());
  }

  Environment env = inst.env;
  env.cells.assign(static_cast<std::size_t>(env.size.cells()), kUnknown);
  for (auto& e : env.edges) e.clear();

  for (const auto& c : team) c.validate(v);
  auto compiled = std::make_shared<const CompiledTeam>(team);
  std::vector<RobotState> robots;
  for (std::size_t i = 0; i < team.size(); ++i) robots.push_back({static_cast<int>(i), 0, p_i[i]});
  std::uint64_t bound = opts.bound.value_or(step_bound(env.size, team));

  LazySearchResult result;
  std::vector<Runner> stack;
  stack.emplace_back(Engine(compiled, env, robots, opts.swaps, partial), &inst.x, inst.p_x, bound,
                     opts.detect_cycles);
  while (!stack.empty()) {
    Runner r = std::move(stack.back());
    stack.pop_back();
    try {
      Verdict verdict = r.run();
      if (++result.leaves > max_leaves)
        throw ResourceLimit("dependency-driven search exceeded its run budget", max_leaves);
      if (!verdict.success()) continue;
      const PartialEnv& p = *r.engine().partial();
      Environment w = inst.env;
      for (int i = 0; i < w.size.cells(); ++i)
        w.cells[static_cast<std::size_t>(i)] =
            p.cell_options[static_cast<std::size_t>(std::countr_zero(p.cell_mask[static_cast<std::size_t>(i)]))];
      for (auto& e : w.edges) e.clear();
      for (Dir d : kAllDirs) {
        auto di = static_cast<std::size_t>(d);
        if (!p.edge_open[di]) continue;
        int subset = std::countr_zero(p.edge_mask[di]);
        for (std::size_t k = 0; k < p.edge_specs.size(); ++k)
          if ((subset >> k) & 1) w.add_edge(d, p.edge_specs[k]);
      }
      result.witness = std::move(w);
      result.verdict = verdict;
      return result;
    } catch (const Unresolved& u) {
      ++result.branch_points;
      for (auto it = u.classes.rbegin(); it != u.classes.rend(); ++it) {
        Runner child = r;
        auto& p = *child.engine().partial();
        if (u.edge) p.edge_mask[static_cast<std::size_t>(u.index)] = *it;
        else p.cell_mask[static_cast<std::size_t>(u.index)] = *it;
        stack.push_back(std::move(child));
      }
    }
  }
  return result;
}

}  // namespace fsr
