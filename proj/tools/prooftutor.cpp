// Command-line front end: evaluation, incorrect-set generation, checking,
// feedback, an interactive tutor and the HTTP server.

#include <csignal>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "prooftutor/app.hpp"
#include "prooftutor/evaluation.hpp"
#include "prooftutor/http_api.hpp"
#include "prooftutor/text.hpp"

using namespace prooftutor;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config = PROOFTUTOR_DEFAULT_CONFIG;
  std::string backend;  // overrides the config file
  std::string checker;
  bool json_output = false;
};

AppContext load(const Options& o) {
  auto config = Config::load(o.config);
  config.apply_environment();
  if (o.backend == "remote") config.backend = BackendKind::remote;
  if (o.backend == "replay") config.backend = BackendKind::replay;
  if (o.backend == "mock") config.backend = BackendKind::mock;
  if (o.checker == "repl") config.checker = CheckerKind::repl;
  if (o.checker == "fixtures") config.checker = CheckerKind::fixtures;
  return load_app(std::move(config));
}

int cmd_theorems(const Options& o) {
  const auto app = load(o);
  const auto theorems = app.corpus.theorems();
  if (o.json_output) {
    std::vector<std::string> worlds;
    for (const auto& t : theorems)
      if (std::find(worlds.begin(), worlds.end(), t.world) == worlds.end()) worlds.push_back(t.world);
    std::cout << theorem_list_json(theorems, worlds).dump(2) << "\n";
    return 0;
  }
  for (const auto& t : theorems) std::cout << t.order_index << "\t" << t.world << "\t" << t.name << "\n";
  return 0;
}

int cmd_eval(const Options& o, const std::string& mode, const std::string& staff, const std::string& log_path) {
  const auto app = load(o);
  auto llm = app.config.make_backend();
  auto checker = app.config.checker_factory()();
  EvalOptions options{eval_mode_from_string(mode), staff == "on", app.config.knobs()};
  const auto report = evaluate_autoformalization(app.corpus, app.incorrect, *app.dictionaries, options, *llm, *checker);
  if (!log_path.empty()) text::write_file(log_path, report.verdict_log());
  if (o.json_output)
    std::cout << report.as_json().dump(2) << "\n";
  else
    std::cout << report.text();
  return 0;
}

int cmd_gen_incorrect(const Options& o, std::uint64_t seed, const std::string& out_dir) {
  const auto app = load(o);
  const auto set = generate_incorrect_set(app.corpus.proofs, seed);
  fs::create_directories(out_dir);
  Manifest manifest;
  for (const auto& p : set.proofs) {
    const auto decl = p.theorem.declaration();
    text::write_file((fs::path(out_dir) / (decl + ".lean")).string(), serialize_annotated_proof(p));
    manifest.entries.push_back({decl + ".lean", decl, p.theorem.name, p.theorem.world, p.theorem.order_index, p.persona,
                                p.label, p.skipped_index});
  }
  text::write_file((fs::path(out_dir) / "manifest.json").string(), manifest.dump());
  std::cout << "wrote " << set.proofs.size() << " incorrect proofs to " << out_dir << "\n";
  for (const auto& e : set.excluded) std::cout << "  excluded " << e << "\n";
  return 0;
}

int cmd_check(const Options& o, const std::string& file) {
  const auto app = load(o);
  const auto proofs = parse_annotated_file(text::read_file(file));
  if (proofs.empty()) throw HeaderError(file + " declares no theorem");
  auto checker = app.config.checker_factory()();
  for (const auto& proof : proofs) {
    std::cout << proof.theorem.declaration() << "\n";
    TacticList prefix;
    for (std::size_t i = 0; i < proof.steps.size(); ++i) {
      prefix.push_back(proof.steps[i].tactic);
      const auto r = checker->check({proof.theorem.statement_fl, prefix});
      std::cout << "  " << i + 1 << "\t" << to_string(r.status) << "\t" << proof.steps[i].tactic;
      if (r.message) std::cout << "\t" << text::split_lines(*r.message).front();
      std::cout << "\n";
      if (r.status == CheckStatus::error) break;
    }
  }
  return 0;
}

int cmd_feedback(const Options& o, const std::string& declaration, bool staff) {
  const auto app = load(o);
  const AnnotatedProof* proof = app.corpus.find(declaration);
  for (const auto& p : app.incorrect)
    if (p.theorem.declaration() == declaration) proof = &p;
  if (proof == nullptr) throw NotFound("no proof declared as " + declaration);
  auto llm = app.config.make_backend();
  auto checker = app.config.checker_factory()();
  const auto run = run_feedback_pipeline(*proof, app.corpus, app.dictionaries, app.config.search, staff, *llm, *checker);

  json out{{"declaration", declaration}, {"trace", run.trace}};
  if (run.search) out["search"] = *run.search;
  if (run.feedback) {
    out["next_step"] = run.feedback->next_step ? json(*run.feedback->next_step) : json(nullptr);
    out["feedback"] = feedback_json(run.feedback->bundle);
  }
  if (o.json_output) {
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  for (std::size_t i = 0; i < run.trace.accepted.size(); ++i) {
    const auto& e = run.trace.accepted[i];
    std::cout << i + 1 << "\t" << to_string(e.result.status) << "\t" << e.step.tactic << "\n";
  }
  if (!run.feedback) {
    std::cout << (run.trace.complete() ? "the proof checks; no feedback needed\n"
                                       : "the trace stopped without a checker error: " + run.trace.backend_error + "\n");
    return 0;
  }
  std::cout << "\nsearch log:\n" << run.search->log_text();
  if (!run.search->failure.empty()) std::cout << "search failed: " << run.search->failure << "\n";
  std::cout << "\n" << feedback_json(run.feedback->bundle).dump(2) << "\n";
  return 0;
}

void print_feedback(const FeedbackBundle& b) {
  if (b.kind == FeedbackKind::full) {
    std::cout << "  [" << b.type_label << "]\n  " << b.message << "\n";
  }
  std::cout << "  Question: " << b.question << "\n";
  std::cout << "  (type `reveal` to see a suggested next step)\n";
}

int cmd_tutor(const Options& o, const std::string& theorem) {
  const auto app = load(o);
  TutorService service(tutor_deps(app, app.config.make_backend()));
  const auto session = service.create_session(theorem);
  std::cout << session.theorem.statement_nl << "\n"
            << "Enter one proof step per line. Commands: hint, reveal, quit.\n";
  std::optional<FeedbackBundle> last;
  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    const auto input = std::string(text::trim(line));
    if (input.empty()) continue;
    if (input == "quit") break;
    try {
      if (input == "reveal") {
        std::cout << (last ? "  " + last->informalization : std::string("  nothing to reveal yet")) << "\n";
        continue;
      }
      if (input == "hint") {
        const auto h = service.hint(session.session_id);
        last = h.feedback;
        print_feedback(h.feedback);
        continue;
      }
      const auto out = service.submit_step(session.session_id, input);
      if (out.verdict == StepVerdict::error) {
        std::cout << "  That step does not follow.\n";
        if (out.feedback) {
          last = out.feedback;
          print_feedback(*out.feedback);
        }
        continue;
      }
      std::cout << "  " << text::join(text::split_lines(out.goal_summary), "\n  ") << "\n";
      if (out.verdict == StepVerdict::complete) {
        std::cout << "Proof complete.\n";
        break;
      }
    } catch (const BackendError& e) {
      std::cout << "  the model is unavailable right now (" << e.what() << "); try again\n";
    } catch (const ParseError& e) {
      std::cout << "  the model's answer was unusable (" << e.what() << "); try again\n";
    }
  }
  return 0;
}

HttpServer* g_server = nullptr;

int cmd_serve(const Options& o, const std::string& host, int port) {
  const auto app = load(o);
  TutorService service(tutor_deps(app, app.config.make_backend()));
  HttpServer server(service);
  const int bound = server.bind(host, port);
  if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  std::cout << "listening on http://" << host << ":" << bound << std::endl;
  server.listen();
  g_server = nullptr;
  return 0;
}

// Re-runs every fixture record against the REPL and reports disagreements.
int cmd_verify_fixtures(Options o) {
  o.checker = "repl";
  const auto app = load(o);
  std::map<std::string, std::string> headers;
  for (const auto& p : app.corpus.proofs) headers[p.theorem.declaration()] = p.theorem.statement_fl;
  for (const auto& p : app.incorrect) headers[p.theorem.declaration()] = p.theorem.statement_fl;

  auto checker = app.config.checker_factory()();
  int records = 0;
  int differing = 0;
  for (const auto& path : app.config.fixtures) {
    for (const auto& line : text::split_lines(text::read_file(path))) {
      if (text::is_blank(line)) continue;
      const auto record = json::parse(line);
      const auto decl = record.at("theorem").get<std::string>();
      const auto tactics = record.at("tactics").get<TacticList>();
      const auto expected = result_from_diagnostics(record.at("messages").get<std::vector<Diagnostic>>());
      if (!headers.count(decl)) {
        std::cout << "SKIP " << decl << ": no header in the corpus\n";
        continue;
      }
      ++records;
      const auto actual = checker->check({headers[decl], tactics});
      bool same = actual.status == expected.status;
      if (same && expected.goal_state) same = states_equivalent(*actual.goal_state, *expected.goal_state);
      if (same && expected.message) same = actual.message == expected.message;
      if (same) continue;
      ++differing;
      std::cout << "DIFF " << decl << " [" << text::join(tactics, "; ") << "]\n  fixture: "
                << to_string(expected.status) << "\n  lean:    " << to_string(actual.status) << "\n";
      if (actual.goal_state) std::cout << "  repl state:\n" << actual.goal_state->render() << "\n";
      if (actual.message) std::cout << "  lean message: " << *actual.message << "\n";
    }
  }
  std::cout << records - differing << "/" << records << " fixture records agree with the REPL\n";
  return differing == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Natural-language proof tutoring over a Lean checker"};
  cli.require_subcommand(1);
  Options o;
  cli.add_option("--config", o.config, "configuration file")->capture_default_str();
  cli.add_option("--backend", o.backend, "model backend override")->check(CLI::IsMember({"remote", "replay", "mock"}));
  cli.add_option("--checker", o.checker, "checker override")->check(CLI::IsMember({"fixtures", "repl"}));
  cli.add_flag("--json", o.json_output, "machine-readable output");

  auto* theorems = cli.add_subcommand("theorems", "list the theorems in curriculum order");

  std::string mode = "step";
  std::string staff = "on";
  std::string log_path;
  auto* eval = cli.add_subcommand("eval-autoform", "score autoformalization on the corpus");
  eval->add_option("--mode", mode)->check(CLI::IsMember({"step", "whole"}))->capture_default_str();
  eval->add_option("--staff-solution", staff)->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  eval->add_option("--verdict-log", log_path, "write one JSON line per compared tactic");

  std::uint64_t seed = 0;
  std::string out_dir;
  auto* gen = cli.add_subcommand("gen-incorrect", "delete one step from each eligible correct proof");
  gen->add_option("--seed", seed)->required();
  gen->add_option("--out", out_dir)->required();

  std::string file;
  auto* check = cli.add_subcommand("check", "check every prefix of the proofs in an annotated file");
  check->add_option("file", file)->required()->check(CLI::ExistingFile);

  std::string declaration;
  std::string feedback_staff = "on";
  auto* feedback = cli.add_subcommand("feedback", "trace, search and feedback for one proof");
  feedback->add_option("declaration", declaration)->required();
  feedback->add_option("--staff-solution", feedback_staff)->check(CLI::IsMember({"on", "off"}))->capture_default_str();

  std::string theorem;
  auto* tutor = cli.add_subcommand("tutor", "interactive tutoring in the terminal");
  tutor->add_option("theorem", theorem)->required();

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = cli.add_subcommand("serve", "run the HTTP API");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();

  auto* verify = cli.add_subcommand("verify-fixtures", "compare checker fixtures with a real Lean REPL");

  CLI11_PARSE(cli, argc, argv);
  try {
    if (theorems->parsed()) return cmd_theorems(o);
    if (eval->parsed()) return cmd_eval(o, mode, staff, log_path);
    if (gen->parsed()) return cmd_gen_incorrect(o, seed, out_dir);
    if (check->parsed()) return cmd_check(o, file);
    if (feedback->parsed()) return cmd_feedback(o, declaration, feedback_staff == "on");
    if (tutor->parsed()) return cmd_tutor(o, theorem);
    if (serve->parsed()) return cmd_serve(o, host, port);
    if (verify->parsed()) return cmd_verify_fixtures(o);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const BackendUnavailable& e) {
    std::cerr << "checker unavailable: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
