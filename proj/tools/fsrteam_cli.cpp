#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fsrteam/fsrteam.h"

namespace {

enum Exit { kPositive = 0, kNegative = 1, kUsage = 2 };

struct Args {
  std::string instance;
  std::string kind;
  std::string graph;
  std::string family;
  std::string variant;
  std::string tm;
  std::string input;
  std::string out;
  int k = 1;
  std::uint64_t max_candidates = 0;
  std::uint64_t bound = 0;
  std::string env_search;
  unsigned threads = 1;
  bool all_positionings = false;
  bool forbid_swaps = false;
  bool seedless = false;
};

std::string json_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '"': o += "\\\""; break;
      case '\\': o += "\\\\"; break;
      case '\n': o += "\\n"; break;
      case '\t': o += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          o += buf;
        } else {
          o += c;
        }
    }
  }
  return o;
}

int error_report(const std::string& command, const std::string& msg) {
  std::cout << "{\"command\":\"" << json_escape(command) << "\",\"error\":\"" << json_escape(msg)
            << "\",\"outcome\":\"Error\",\"wall_ms\":0}\n";
  std::cerr << "fsrteam " << command << ": " << msg << '\n';
  return kUsage;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

class Session {
 public:
  explicit Session(std::string command) : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}
  ~Session() {
    if (inst_) fsr_instance_free(inst_);
    if (res_) fsr_result_free(res_);
  }

  int fail() { return error_report(command_, fsr_last_error()); }

  bool load(const std::string& path) { return fsr_instance_load(path.c_str(), &inst_) == FSR_OK; }

  int report(const char* trace_path = nullptr) {
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    char* text = nullptr;
    if (fsr_result_report(res_, command_.c_str(), ms, trace_path, &text) != FSR_OK) return fail();
    std::cout << text << '\n';
    fsr_string_free(text);
    return fsr_result_positive(res_) ? kPositive : kNegative;
  }

  fsr_instance* inst_ = nullptr;
  fsr_result* res_ = nullptr;
  std::string command_;

 private:
  std::chrono::steady_clock::time_point start_;
};

bool make_options(const Args& a, fsr_options& o, std::string& err) {
  fsr_options_init(&o);
  o.all_positionings = a.all_positionings;
  o.forbid_swaps = a.forbid_swaps;
  o.max_candidates = a.max_candidates;
  o.step_bound = a.bound;
  o.threads = a.threads;
  if (a.env_search == "exhaustive") {
    o.env_search = FSR_ENV_SEARCH_EXHAUSTIVE;
  } else if (a.env_search == "lazy") {
    o.env_search = FSR_ENV_SEARCH_LAZY;
  } else if (!a.env_search.empty()) {
    err = "--env-search must be exhaustive or lazy";
    return false;
  }
  return true;
}

int cmd_verify(const Args& a) {
  Session s("verify");
  fsr_options o;
  std::string err;
  if (!make_options(a, o, err)) return error_report(s.command_, err);
  if (!s.load(a.instance)) return s.fail();
  if (fsr_verify(s.inst_, &o, &s.res_) != FSR_OK) return s.fail();
  return s.report();
}

int cmd_design(const Args& a) {
  static const std::map<std::string, std::string> tags = {
      {"cont", "ContDesLS"}, {"team", "TeamDesLS"}, {"env", "EnvDes"}, {"codesign", "TeamEnvDesLS"}};
  Session s("design " + a.kind);
  fsr_options o;
  std::string err;
  if (!make_options(a, o, err)) return error_report(s.command_, err);
  if (!s.load(a.instance)) return s.fail();
  const std::string& want = tags.at(a.kind);
  if (want != fsr_instance_problem(s.inst_))
    return error_report(s.command_, "design " + a.kind + " needs a " + want + " instance, got " +
                                        fsr_instance_problem(s.inst_));
  if (fsr_design(s.inst_, &o, &s.res_) != FSR_OK) return s.fail();
  return s.report();
}

int emit_instance(Session& s, const std::string& out) {
  char* text = nullptr;
  if (fsr_instance_serialize(s.inst_, &text) != FSR_OK) return s.fail();
  int rc = kPositive;
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!(f << text)) rc = error_report(s.command_, "cannot write " + out);
  }
  fsr_string_free(text);
  return rc;
}

int cmd_gadget_domset(const Args& a) {
  Session s("gadget domset");
  std::string graph;
  if (!read_file(a.graph, graph)) return error_report(s.command_, "cannot open " + a.graph);
  if (fsr_gadget_domset(graph.c_str(), a.k, a.family.c_str(), a.variant.c_str(), &s.inst_) != FSR_OK) return s.fail();
  return emit_instance(s, a.out);
}

int cmd_gadget_cdtmc(const Args& a) {
  Session s("gadget cdtmc");
  std::string tm;
  if (!read_file(a.tm, tm)) return error_report(s.command_, "cannot open " + a.tm);
  if (fsr_gadget_cdtmc(tm.c_str(), a.input.c_str(), a.k, &s.inst_) != FSR_OK) return s.fail();
  return emit_instance(s, a.out);
}

int cmd_render(const Args& a) {
  Session s("render");
  if (!s.load(a.instance)) return s.fail();
  char* text = nullptr;
  if (fsr_instance_render(s.inst_, &text) != FSR_OK) return s.fail();
  std::cout << text;
  fsr_string_free(text);
  return kPositive;
}

int cmd_trace(const Args& a) {
  Session s("trace");
  fsr_options o;
  std::string err;
  if (!make_options(a, o, err)) return error_report(s.command_, err);
  if (!s.load(a.instance)) return s.fail();
  char* lines = nullptr;
  if (fsr_trace(s.inst_, &o, &lines, &s.res_) != FSR_OK) return s.fail();
  std::ofstream f(a.out, std::ios::binary);
  bool ok = static_cast<bool>(f << lines);
  fsr_string_free(lines);
  if (!ok) return error_report(s.command_, "cannot write " + a.out);
  return s.report(a.out.c_str());
}

void add_run_flags(CLI::App* c, Args& a) {
  c->add_option("--bound", a.bound, "Step bound (default 10(|E|+|Q|)^3)");
  c->add_flag("--forbid-swaps", a.forbid_swaps, "Robots may not exchange squares in one step");
  c->add_flag("--seedless", a.seedless, "Assert the run uses no randomness");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-state robot teams: simulation, verification and design"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fsr_version());
  Args a;

  auto* verify = app.add_subcommand("verify", "Run a TeamEnvVer instance");
  verify->add_option("instance", a.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  verify->add_flag("--all-positionings", a.all_positionings, "Try every assignment of the team to p_I");
  add_run_flags(verify, a);

  auto* design = app.add_subcommand("design", "Solve a design problem");
  design->add_option("kind", a.kind, "cont, team, env or codesign")
      ->required()
      ->check(CLI::IsMember({"cont", "team", "env", "codesign"}));
  design->add_option("instance", a.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  design->add_option("--max-candidates", a.max_candidates, "Refuse search spaces above this size");
  design->add_option("--env-search", a.env_search, "exhaustive or lazy")
      ->check(CLI::IsMember({"exhaustive", "lazy"}));
  design->add_option("--threads", a.threads, "Parallel candidate checks")->check(CLI::Range(1u, 256u));
  add_run_flags(design, a);

  auto* gadget = app.add_subcommand("gadget", "Generate a reduction instance");
  gadget->require_subcommand(1);
  auto* domset = gadget->add_subcommand("domset", "From a dominating-set instance");
  domset->add_option("graph", a.graph, "Graph file")->required()->check(CLI::ExistingFile);
  domset->add_option("--k", a.k, "Dominating set size")->required()->check(CLI::PositiveNumber);
  domset->add_option("--family", a.family, "teamdes, envdes or codesign")
      ->required()
      ->check(CLI::IsMember({"teamdes", "envdes", "codesign"}));
  domset->add_option("--variant", a.variant, "Gadget variant")->required();
  domset->add_option("--out", a.out, "Write the instance here instead of stdout");
  auto* cdtmc = gadget->add_subcommand("cdtmc", "From a bounded-tape Turing machine run");
  cdtmc->add_option("tm", a.tm, "Machine JSON")->required()->check(CLI::ExistingFile);
  cdtmc->add_option("input", a.input, "Input word, one symbol per character")->required();
  cdtmc->add_option("--k", a.k, "Tape length")->required()->check(CLI::PositiveNumber);
  cdtmc->add_option("--out", a.out, "Write the instance here instead of stdout");

  auto* render = app.add_subcommand("render", "Print the environment as text");
  render->add_option("instance", a.instance, "Instance JSON")->required()->check(CLI::ExistingFile);

  auto* trace = app.add_subcommand("trace", "Run and write every configuration as JSON lines");
  trace->add_option("instance", a.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  trace->add_option("--out", a.out, "Trace file")->required();
  add_run_flags(trace, a);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (verify->parsed()) return cmd_verify(a);
  if (design->parsed()) return cmd_design(a);
  if (domset->parsed()) return cmd_gadget_domset(a);
  if (cdtmc->parsed()) return cmd_gadget_cdtmc(a);
  if (render->parsed()) return cmd_render(a);
  if (trace->parsed()) return cmd_trace(a);
  return kUsage;
}
