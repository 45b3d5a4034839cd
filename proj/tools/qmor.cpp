// qmor: run workspace files or one-shot checks and print a report.
//
//   qmor run <file> [--budget N] [--seed S] [--report out] [--json out] [--jobs N] [--timing]
//   qmor check <kind> <args...>      args are block lists such as [1,1] or counts
//
// Exit codes: 0 pass, 1 fail, 2 unknown, 3 usage or parse error.

#include "qmor/workspace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kUsageError = 3;

nlohmann::json report_json(const qmor::Report& rep) {
  nlohmann::json j;
  j["format"] = "qmor-report";
  j["version"] = 1;
  j["budget"] = rep.options.budget;
  j["seed"] = rep.options.seed;
  j["status"] = rep.status();
  j["tasks"] = nlohmann::json::array();
  for (const auto& t : rep.tasks) {
    nlohmann::json jt;
    jt["task"] = t.index;
    jt["line"] = t.pos.line;
    jt["command"] = t.command;
    jt["status"] = t.status;
    jt["rewrite_steps"] = t.steps;
    if (rep.options.timing) jt["wall_ms"] = t.wall_ms;
    jt["fields"] = nlohmann::json::array();
    for (const auto& [k, v] : t.fields) jt["fields"].push_back({{"key", k}, {"value", v}});
    jt["items"] = nlohmann::json::array();
    for (const auto& i : t.items) {
      nlohmann::json ji{{"label", i.label}, {"verdict", qmor::to_string(i.verdict)}, {"steps", i.steps}};
      if (!i.certificate.empty()) ji["certificate"] = i.certificate;
      jt["items"].push_back(std::move(ji));
    }
    j["tasks"].push_back(std::move(jt));
  }
  return j;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "qmor: cannot write " << path << "\n";
    return false;
  }
  out << text;
  return static_cast<bool>(out);
}

// "[1,2]" or "1,2" -> "1,2"; empty when the argument is not a block list.
std::string block_list(const std::string& arg) {
  std::string s = arg;
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  if (s.empty() || s.find_first_not_of("0123456789, ") != std::string::npos) return "";
  return s;
}

struct Common {
  std::size_t budget = qmor::kDefaultBudget;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool timing = false;
  std::string report_path;
  std::string json_path;
};

int run_text(const std::string& text, const std::string& file, const Common& c, bool print_only) {
  qmor::Workspace ws;
  try {
    ws = qmor::parse_workspace(text, {c.budget});
  } catch (const qmor::ParseError& e) {
    std::cerr << e.describe(file) << "\n";
    return kUsageError;
  }
  if (print_only) {
    std::cout << qmor::pretty_print(ws);
    return 0;
  }
  qmor::RunOptions opt;
  opt.budget = c.budget;
  opt.seed = c.seed;
  opt.jobs = c.jobs;
  opt.timing = c.timing;
  const qmor::Report rep = qmor::run_workspace(ws, opt);
  const std::string text_report = qmor::format_report(rep);
  std::cout << text_report;
  if (!c.report_path.empty() && !write_file(c.report_path, text_report)) return kUsageError;
  if (!c.json_path.empty() && !write_file(c.json_path, report_json(rep).dump(2) + "\n")) return kUsageError;
  return rep.exit_code();
}

// Builds the workspace text that a one-shot check stands for.
std::string one_shot(const std::string& kind, const std::vector<std::string>& args) {
  if (kind == "functor" || kind == "surjective")
    throw CLI::ValidationError("check " + kind + " needs homs; write them in a workspace file and use `qmor run`");
  std::ostringstream text;
  std::string call = "check " + kind;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string blocks = block_list(args[i]);
    const bool count = kind == "slice-lemma" && args[i].find_first_not_of("0123456789") == std::string::npos;
    if (count) {
      call += " " + args[i];
    } else if (!blocks.empty()) {
      const std::string name = "A" + std::to_string(i + 1);
      text << "algebra " << name << " = blocks [" << blocks << "]\n";
      call += " " + name;
    } else {
      throw CLI::ValidationError("argument '" + args[i] + "' is not a block list like [1,1]");
    }
  }
  // coassoc and phi act on a Mor algebra built from the block lists.
  if (kind == "coassoc" && args.size() == 1) {
    text << "mor M = build A1 A1\n";
    call = "check coassoc M";
  } else if (kind == "phi" && args.size() == 2) {
    text << "mor M = build A1 A2\n";
    call = "check phi M";
  }
  text << call << "\n";
  return text.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum families of morphisms: build Mor(B, C) and verify its structure maps"};
  app.require_subcommand(1);
  Common c;
  if (const char* env = std::getenv("QMOR_BUDGET")) {
    try {
      c.budget = std::stoul(env);
    } catch (const std::exception&) {
      std::cerr << "qmor: QMOR_BUDGET must be a positive integer\n";
      return kUsageError;
    }
  }
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--budget", c.budget, "rewrite steps per identity (default 100000, or QMOR_BUDGET)");
    sub->add_option("--seed", c.seed, "seed for randomized tasks");
    sub->add_option("--report", c.report_path, "also write the text report to this file");
    sub->add_option("--json", c.json_path, "write the report as a JSON document");
    sub->add_option("--jobs", c.jobs, "tasks to run concurrently");
    sub->add_flag("--timing", c.timing, "include wall time per task");
  };

  std::string file;
  bool print_only = false;
  auto* run = app.add_subcommand("run", "run a workspace file");
  run->add_option("file", file, "workspace file")->required();
  run->add_flag("--print", print_only, "print the canonical form of the workspace and exit");
  add_common(run);

  std::string kind;
  std::vector<std::string> args;
  auto* check = app.add_subcommand("check", "one-shot check on algebras given by block lists");
  check->add_option("kind", kind, "explaw, coassoc, slice-lemma, dirsum, tensor-split, phi")->required();
  check->add_option("args", args, "block lists such as [1,1]");
  add_common(check);

  // CLI11 would read "[1,1]" as a list of values; hand it block lists without brackets.
  std::vector<std::string> argv_text(argv, argv + argc);
  for (auto& a : argv_text)
    if (!block_list(a).empty()) a = block_list(a);
  std::vector<char*> argv_fixed;
  for (auto& a : argv_text) argv_fixed.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv_fixed.size()), argv_fixed.data());
    if (c.budget == 0) throw CLI::ValidationError("--budget must be positive");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (run->parsed()) {
    std::ifstream in(file);
    if (!in) {
      std::cerr << "qmor: cannot read " << file << "\n";
      return kUsageError;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return run_text(ss.str(), file, c, print_only);
  }
  try {
    return run_text(one_shot(kind, args), "<check>", c, false);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "qmor: " << e.what() << "\n";
    return kUsageError;
  }
}
