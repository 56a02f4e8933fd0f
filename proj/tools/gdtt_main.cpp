#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gdtt/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"gdtt: a proof checker for guarded dependent type theory"};
  app.require_subcommand(1);

  std::string file;
  gdtt::CheckOptions opt;

  auto* check = app.add_subcommand("check", "Typecheck a source file");
  check->add_option("file", file, "source file")->required();
  check->add_option("--fuel", opt.fuel, "fix-unfolding budget per query");
  check->add_flag("--trace", opt.trace, "print conversion rule firings");
  check->add_option("--jobs", opt.jobs, "check declarations in parallel");

  std::string def_name;
  int depth = 1;
  auto* eval = app.add_subcommand("eval", "Observe a definition at finite depth");
  eval->add_option("file", file, "source file")->required();
  eval->add_option("--def", def_name, "definition to evaluate")->required();
  eval->add_option("--depth", depth, "observation depth")->required();
  eval->add_option("--fuel", opt.fuel, "fix-unfolding budget per query");

  auto* fmt = app.add_subcommand("fmt", "Reprint a source file");
  fmt->add_option("file", file, "source file")->required();

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) {
    return gdtt::run_check(file, opt, std::cout, std::cerr);
  }
  if (eval->parsed()) {
    return gdtt::run_eval(file, def_name, depth, opt, std::cout, std::cerr);
  }
  return gdtt::run_fmt(file, std::cout, std::cerr);
}
