#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "baode/baode.h"

namespace {

  constexpr int exit_pass  = 0;
  constexpr int exit_fail  = 1;
  constexpr int exit_input = 2;

  int report_error(baode_status status) {
    std::cerr << "baode: " << baode_status_name(status) << " error: "
              << baode_last_error() << '\n';
    return exit_input;
  }

  // Owns the workspace for the lifetime of one command.
  class Session {
   public:
    Session() {
      status_ = baode_workspace_new(&ws_);
    }
    ~Session() {
      baode_workspace_free(ws_);
    }
    Session(Session const&)            = delete;
    Session& operator=(Session const&) = delete;

    baode_status status() const {
      return status_;
    }
    baode_workspace* get() const {
      return ws_;
    }

   private:
    baode_workspace* ws_     = nullptr;
    baode_status     status_ = BAODE_OK;
  };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite Boolean algebras with operators: duality, amalgamation "
               "and dilation checks"};
  app.require_subcommand(1);

  std::string              out_dir;
  std::vector<std::string> loads;
  baode_options            options;
  baode_options_init(&options);
  bool verify_all_rho = false;

  app.add_option("--out", out_dir, "Directory receiving result files")
      ->required();
  app.add_option("--load", loads,
                 "Artifact file to bind before running (repeatable)");
  app.add_option("--seed", options.seed, "Seed for randomized campaigns");
  app.add_flag("--verify-all-rho", verify_all_rho,
               "Compare every admissible rho in dilation checks");
  app.add_option("--max-atoms", options.max_atoms,
                 "Atoms of generated algebras in campaigns")
      ->check(CLI::Range(1, 4));

  std::vector<std::string> refs(2);
  auto add = [&](char const* name, char const* help,
                 std::vector<char const*> const& args) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    for (std::size_t k = 0; k < args.size(); ++k) {
      sub->add_option(args[k], refs[k], "Bound name or artifact file")
          ->required();
    }
    return sub;
  };
  auto* cm  = add("cm", "Complex algebra of a frame", {"frame"});
  auto* at  = add("at", "Atom structure of an algebra", {"algebra"});
  auto* zz  = add("zigzag", "INSEP frame of two frame morphisms", {"left", "right"});
  auto* am  = add("amalgamate", "Superamalgam of an instance", {"instance"});
  auto* chk = add("check", "Check a schema in an algebra or frame",
                  {"algebra", "schema"});
  auto* pr  = add("property", "Run a property campaign", {"campaign"});

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto code = app.exit(e);
    return code == 0 ? exit_pass : exit_input;
  }
  options.verify_all_rho = verify_all_rho ? 1 : 0;

  if (char const* env = std::getenv("BAODE_MAX_UNIVERSE")) {
    char* end   = nullptr;
    auto  value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || value == 0) {
      std::cerr << "baode: BAODE_MAX_UNIVERSE must be a positive integer\n";
      return exit_input;
    }
    options.max_universe = static_cast<size_t>(value);
  }

  Session session;
  if (session.status() != BAODE_OK) {
    return report_error(session.status());
  }
  auto* ws = session.get();
  for (auto const& path : loads) {
    if (auto st = baode_workspace_load_file(ws, path.c_str()); st != BAODE_OK) {
      return report_error(st);
    }
  }

  baode_result result{0, nullptr};
  baode_status status = BAODE_ERR_ARGUMENT;
  char const*  out    = out_dir.c_str();
  if (cm->parsed()) {
    status = baode_cmd_cm(ws, refs[0].c_str(), out, &result);
  } else if (at->parsed()) {
    status = baode_cmd_at(ws, refs[0].c_str(), out, &result);
  } else if (zz->parsed()) {
    status = baode_cmd_zigzag(ws, refs[0].c_str(), refs[1].c_str(), out,
                              &result);
  } else if (am->parsed()) {
    status = baode_cmd_amalgamate(ws, refs[0].c_str(), out, &result);
  } else if (chk->parsed()) {
    status = baode_cmd_check(ws, refs[0].c_str(), refs[1].c_str(), out,
                             &result);
  } else if (pr->parsed()) {
    status = baode_cmd_property(ws, refs[0].c_str(), &options, out, &result);
  }
  if (status != BAODE_OK) {
    return report_error(status);
  }
  std::fputs(result.summary, stdout);
  int code = result.passed ? exit_pass : exit_fail;
  baode_result_free(&result);
  return code;
}
