#include "fsrteam/fsrteam.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "io/io.hpp"
#include "reductions/reductions.hpp"

struct fsr_instance {
  fsr::Instance inst;
  std::string problem;
};

struct fsr_result {
  std::string outcome;
  bool positive = false;
  std::optional<fsr::Verdict> verdict;
  std::optional<fsr::DesignSolution> solution;
  std::shared_ptr<const fsr::Vocabulary> vocab;
};

namespace {

thread_local std::string last_error;

fsr_status fail(fsr_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

char* dup(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs f, translating exceptions into status codes.
template <class F>
fsr_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const fsr::DocumentError& e) {
    return fail(FSR_ERR_PARSE, e.what());
  } catch (const fsr::ResourceLimit& e) {
    return fail(FSR_ERR_RESOURCE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(FSR_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(FSR_ERR_INTERNAL, e.what());
  }
}

fsr_instance* wrap(fsr::Instance inst) {
  auto* h = new fsr_instance{std::move(inst), {}};
  h->problem = fsr::problem_name(h->inst.problem);
  return h;
}

fsr::SolverOptions solver_options(const fsr_options* o) {
  fsr::SolverOptions s;
  if (!o) return s;
  s.run.swaps = o->forbid_swaps ? fsr::SwapPolicy::Forbid : fsr::SwapPolicy::Allow;
  if (o->step_bound) s.run.bound = o->step_bound;
  if (o->max_candidates) s.max_candidates = o->max_candidates;
  if (o->env_search == FSR_ENV_SEARCH_EXHAUSTIVE) s.env_search = fsr::EnvSearch::Exhaustive;
  if (o->env_search == FSR_ENV_SEARCH_LAZY) s.env_search = fsr::EnvSearch::Lazy;
  s.threads = o->threads == 0 ? 1 : o->threads;
  return s;
}

fsr_result* verdict_result(const fsr::Instance& inst, fsr::Verdict v) {
  auto* r = new fsr_result;
  r->outcome = fsr::verdict_name(v.kind);
  r->positive = v.success();
  r->vocab = inst.vocab;
  r->verdict = std::move(v);
  return r;
}

}  // namespace

extern "C" {

const char* fsr_version(void) { return "1.0.0"; }

const char* fsr_last_error(void) { return last_error.c_str(); }

void fsr_options_init(fsr_options* opts) {
  if (!opts) return;
  *opts = fsr_options{};
  opts->env_search = FSR_ENV_SEARCH_DEFAULT;
  opts->threads = 1;
}

void fsr_string_free(char* s) { delete[] s; }

fsr_status fsr_instance_parse(const char* json_text, fsr_instance** out) {
  if (!json_text || !out) return fail(FSR_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = wrap(fsr::parse_instance(json_text));
    return FSR_OK;
  });
}

fsr_status fsr_instance_load(const char* path, fsr_instance** out) {
  if (!path || !out) return fail(FSR_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(FSR_ERR_IO, std::string("cannot open ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return fsr_instance_parse(ss.str().c_str(), out);
}

void fsr_instance_free(fsr_instance* inst) { delete inst; }

fsr_status fsr_instance_serialize(const fsr_instance* inst, char** out) {
  if (!inst || !out) return fail(FSR_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(fsr::serialize_instance(inst->inst));
    return FSR_OK;
  });
}

fsr_status fsr_instance_render(const fsr_instance* inst, char** out) {
  if (!inst || !out) return fail(FSR_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const fsr::Instance& i = inst->inst;
    fsr::RenderOverlay o;
    const auto& starts = !i.p_i.empty() ? i.p_i : i.e_i;
    o.robots = starts;
    for (auto c : i.x.cells) o.structure.push_back(i.p_x + c);
    *out = dup(fsr::render_ascii(i.env, o));
    return FSR_OK;
  });
}

const char* fsr_instance_problem(const fsr_instance* inst) { return inst ? inst->problem.c_str() : ""; }

int fsr_instance_expected(const fsr_instance* inst) {
  if (!inst || !inst->inst.expected) return -1;
  return *inst->inst.expected ? 1 : 0;
}

fsr_status fsr_gadget_domset(const char* graph_text, int k, const char* family, const char* variant,
                             fsr_instance** out) {
  if (!graph_text || !family || !variant || !out) return fail(FSR_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    fsr::Graph g = fsr::parse_graph(graph_text);
    std::string fam = family;
    if (fam == "teamdes") {
      auto v = fsr::parse_teamdes_variant(variant);
      if (!v) return fail(FSR_ERR_ARGUMENT, std::string("unknown teamdes variant '") + variant + "'");
      *out = wrap(fsr::gadget_domset_to_teamdes_sf(g, k, *v));
    } else if (fam == "envdes" || fam == "codesign") {
      auto v = fsr::parse_envdes_variant(variant);
      if (!v) return fail(FSR_ERR_ARGUMENT, std::string("unknown ") + fam + " variant '" + variant + "'");
      *out = wrap(fam == "envdes" ? fsr::gadget_domset_to_envdes_sf(g, k, *v)
                                  : fsr::gadget_domset_to_codesign_sf(g, k, *v));
    } else {
      return fail(FSR_ERR_ARGUMENT, "family must be teamdes, envdes or codesign");
    }
    return FSR_OK;
  });
}

fsr_status fsr_gadget_cdtmc(const char* tm_json, const char* input, int k, fsr_instance** out) {
  if (!tm_json || !input || !out) return fail(FSR_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    fsr::Dtm m = fsr::parse_dtm(tm_json);
    *out = wrap(fsr::gadget_cdtmc_to_verify_sf(m, fsr::encode_input(m, input), k));
    return FSR_OK;
  });
}

fsr_status fsr_verify(const fsr_instance* inst, const fsr_options* opts, fsr_result** out) {
  if (!inst || !out) return fail(FSR_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  const fsr::Instance& i = inst->inst;
  if (i.problem != fsr::Problem::TeamEnvVer)
    return fail(FSR_ERR_PROBLEM, "verify needs a TeamEnvVer instance, got " + inst->problem);
  return guarded([&] {
    auto so = solver_options(opts);
    fsr::Verdict v = opts && opts->all_positionings
                         ? fsr::run_verify_all_positionings(i.env, i.team, i.p_i, i.x, i.p_x, so.run)
                         : fsr::verify_instance(i, so.run);
    *out = verdict_result(i, std::move(v));
    return FSR_OK;
  });
}

fsr_status fsr_design(const fsr_instance* inst, const fsr_options* opts, fsr_result** out) {
  if (!inst || !out) return fail(FSR_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  if (inst->inst.problem == fsr::Problem::TeamEnvVer)
    return fail(FSR_ERR_PROBLEM, "design needs a design instance, got TeamEnvVer");
  return guarded([&] {
    fsr::DesignSolution s = fsr::solve(inst->inst, solver_options(opts));
    auto* r = new fsr_result;
    r->outcome = fsr::solution_name(s.kind);
    r->positive = s.found();
    r->vocab = inst->inst.vocab;
    r->solution = std::move(s);
    *out = r;
    return FSR_OK;
  });
}

fsr_status fsr_trace(const fsr_instance* inst, const fsr_options* opts, char** trace_jsonl, fsr_result** out) {
  if (!inst || !out || !trace_jsonl) return fail(FSR_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  *trace_jsonl = nullptr;
  const fsr::Instance& i = inst->inst;
  if (i.problem != fsr::Problem::TeamEnvVer)
    return fail(FSR_ERR_PROBLEM, "trace needs a TeamEnvVer instance, got " + inst->problem);
  return guarded([&] {
    auto so = solver_options(opts);
    so.run.trace = fsr::TraceMode::Full;
    fsr::Verdict v = fsr::verify_instance(i, so.run);
    *trace_jsonl = dup(fsr::trace_jsonl(v.trace, i.team));
    v.trace = {};
    *out = verdict_result(i, std::move(v));
    return FSR_OK;
  });
}

int fsr_result_positive(const fsr_result* r) { return r && r->positive ? 1 : 0; }

const char* fsr_result_outcome(const fsr_result* r) { return r ? r->outcome.c_str() : ""; }

uint64_t fsr_result_steps(const fsr_result* r) {
  if (!r) return 0;
  if (r->verdict) return r->verdict->steps;
  if (r->solution && r->solution->found()) return r->solution->witness.steps;
  return 0;
}

uint64_t fsr_result_candidates_checked(const fsr_result* r) {
  return r && r->solution ? r->solution->candidates_checked : 0;
}

fsr_status fsr_result_report(const fsr_result* r, const char* command, double wall_ms, const char* trace_path,
                             char** out) {
  if (!r || !out) return fail(FSR_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    fsr::RunReport rep;
    rep.command = command ? command : "";
    rep.outcome = r->outcome;
    rep.verdict = r->verdict;
    rep.solution = r->solution;
    if (trace_path) rep.trace_path = trace_path;
    rep.wall_ms = wall_ms;
    *out = dup(fsr::report_json(rep, r->vocab.get()));
    return FSR_OK;
  });
}

void fsr_result_free(fsr_result* r) { delete r; }

}  // extern "C"
