#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "quip/errors.hpp"
#include "quip/frontend.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Evaluates nonmonotonic reasoning tasks through quantified boolean formulas"};
  std::string input;
  std::string encoding = "mt";
  std::size_t node_budget = 20'000'000;
  bool strict_exit = false;
  app.add_option("input", input, "Input file")->required();
  app.add_option("--encoding", encoding, "Default logic encoding")
      ->check(CLI::IsMember({"mt", "fullset", "both"}))
      ->capture_default_str();
  app.add_option("--node-budget", node_budget, "BDD node limit per query")->capture_default_str();
  app.add_flag("--strict-exit", strict_exit, "Exit with 1 when a yes/no query answers NO");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::ifstream file(input);
  if (!file) {
    std::cerr << "quip: cannot open '" << input << "'\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << file.rdbuf();

  quip::SessionOptions options;
  options.encoding = encoding == "mt"        ? quip::DlEncoding::Mt
                     : encoding == "fullset" ? quip::DlEncoding::FullSet
                                             : quip::DlEncoding::Both;
  options.node_budget = node_budget;

  bool any_no = false;
  try {
    auto statements = quip::parse_input(buffer.str());
    quip::Session session(options);
    for (const auto& s : statements) {
      quip::ExecResult r = session.execute(s);
      for (const auto& line : r.lines) std::cout << line << '\n';
      std::cout.flush();
      for (const auto& note : r.notes) std::cerr << note << '\n';
      if (r.answer && !r.detail && !*r.answer) any_no = true;
    }
  } catch (const quip::Error& e) {
    std::cout.flush();
    std::cerr << input << ": error: " << e.what() << '\n';
    return 2;
  }
  return strict_exit && any_no ? 1 : 0;
}
