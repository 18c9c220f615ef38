// Command-line driver over the C API.

#include <polycubify/polycubify.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitValid = 0;
constexpr int kExitFailure = 1;
constexpr int kExitNotValid = 2;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(pcy_status s, const std::string& context) {
  if (s != PCY_OK) throw CliError(context + ": " + pcy_status_name(s) + ": " + pcy_last_error());
}

struct MeshDeleter {
  void operator()(pcy_mesh* m) const { pcy_mesh_free(m); }
};
struct LabelingDeleter {
  void operator()(pcy_labeling* l) const { pcy_labeling_free(l); }
};
struct RunDeleter {
  void operator()(pcy_run* r) const { pcy_run_free(r); }
};
using MeshPtr = std::unique_ptr<pcy_mesh, MeshDeleter>;
using LabelingPtr = std::unique_ptr<pcy_labeling, LabelingDeleter>;
using RunPtr = std::unique_ptr<pcy_run, RunDeleter>;

MeshPtr load_mesh(const std::string& path) {
  pcy_mesh* m = nullptr;
  check(pcy_mesh_load(path.c_str(), &m), "loading " + path);
  return MeshPtr(m);
}

LabelingPtr load_labeling(const pcy_mesh* mesh, const std::string& path) {
  pcy_labeling* l = nullptr;
  check(pcy_labeling_read(mesh, path.c_str(), &l), "reading " + path);
  return LabelingPtr(l);
}

json report(const pcy_mesh* mesh, const pcy_labeling* labeling, const pcy_weights& w) {
  char* s = nullptr;
  check(pcy_report_json(mesh, labeling, &w, &s), "evaluating");
  json j = json::parse(s);
  pcy_string_free(s);
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw CliError("cannot write " + path.string());
  out << text;
  if (!out) throw CliError("failed writing " + path.string());
}

std::string format_of(const std::string& input) {
  std::string ext = fs::path(input).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (!ext.empty()) ext.erase(0, 1);
  return ext == "mesh" ? "medit" : ext;
}

json fitness_json(const pcy_fitness& f) {
  return {{"v_p", f.v_p}, {"e_w", f.e_w}, {"e_f", f.e_f}, {"e_c", f.e_c}, {"total", f.total}};
}

// Binds every named option of `app` and its subcommands to POLYCUBIFY_<NAME>.
void bind_environment(CLI::App* app) {
  for (CLI::Option* opt : app->get_options()) {
    if (opt->get_lnames().empty()) continue;
    if (opt->get_lnames().front() == "help" || opt->get_lnames().front() == "version") continue;
    std::string name = "POLYCUBIFY_" + opt->get_lnames().front();
    for (char& c : name) c = c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    opt->envname(name);
  }
  for (CLI::App* sub : app->get_subcommands({})) bind_environment(sub);
}

struct WeightOptions {
  pcy_weights w{};
  WeightOptions() { pcy_weights_default(&w); }
  void add(CLI::App* cmd) {
    cmd->add_option("--w1", w.workability, "Workability weight")->capture_default_str();
    cmd->add_option("--w2", w.fidelity, "Fidelity weight")->capture_default_str();
    cmd->add_option("--w3", w.compactness, "Compactness weight")->capture_default_str();
  }
};

// --- init ------------------------------------------------------------------

struct InitArgs {
  std::string input;
  double ratio = 3.0;
  std::string output;
  std::string report;
  bool no_repair = false;
  WeightOptions weights;
};

int run_init(const InitArgs& a) {
  const MeshPtr mesh = load_mesh(a.input);
  pcy_labeling* raw = nullptr;
  check(pcy_labeling_graphcut(mesh.get(), a.ratio, &raw), "graph-cut initialization");
  const LabelingPtr labeling(raw);
  if (!a.no_repair) check(pcy_labeling_repair(mesh.get(), labeling.get(), &a.weights.w), "repairing");

  const fs::path stem = fs::path(a.input).stem();
  const fs::path out = a.output.empty() ? fs::path(stem.string() + ".labels") : fs::path(a.output);
  const fs::path rep = a.report.empty() ? fs::path(out).replace_extension(".json") : fs::path(a.report);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  check(pcy_labeling_write(labeling.get(), out.string().c_str()), "writing " + out.string());
  json j = report(mesh.get(), labeling.get(), a.weights.w);
  j["ratio"] = a.ratio;
  write_text(rep, j.dump(2) + "\n");
  std::cout << "wrote " << out.string() << " (v_p " << j["v_p"].get<int>() << ")\n";
  return kExitValid;
}

// --- optimize --------------------------------------------------------------

struct OptimizeArgs {
  std::string input;
  std::string labeling;
  std::string out_dir = ".";
  pcy_ga_config cfg{};
  WeightOptions weights;
  bool no_retry = false;
  bool verbose = false;
  OptimizeArgs() { pcy_ga_config_default(&cfg); }
};

int run_optimize(OptimizeArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const MeshPtr mesh = load_mesh(a.input);
  const double load_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  LabelingPtr init;
  if (!a.labeling.empty()) init = load_labeling(mesh.get(), a.labeling);

  a.cfg.weights = a.weights.w;
  a.cfg.allow_retry = a.no_retry ? 0 : 1;
  pcy_progress_fn progress = nullptr;
  if (a.verbose)
    progress = [](const pcy_history_row* r, void*) {
      std::fprintf(stderr, "attempt %d gen %3d  total %.9g  v_p %d  e_w %.6g  e_f %.6g  e_c %d  archive %d\n",
                   r->attempt, r->generation, r->best.total, r->best.v_p, r->best.e_w, r->best.e_f, r->best.e_c,
                   r->archive_size);
    };
  pcy_run* raw_run = nullptr;
  check(pcy_optimize(mesh.get(), init.get(), &a.cfg, progress, nullptr, &raw_run), "optimizing");
  const RunPtr run(raw_run);

  pcy_labeling* raw_best = nullptr;
  check(pcy_run_best_labeling(run.get(), &raw_best), "collecting result");
  const LabelingPtr best(raw_best);
  pcy_fitness fit;
  pcy_run_best_fitness(run.get(), &fit);

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  const std::string stem = fs::path(a.input).stem().string();
  const fs::path labels_path = dir / (stem + ".labels");
  check(pcy_labeling_write(best.get(), labels_path.string().c_str()), "writing " + labels_path.string());

  std::string csv = "generation,best_total,v_p,e_w,e_f,e_c,archive_size,attempt\n";
  char line[512];
  for (size_t i = 0; i < pcy_run_history_size(run.get()); ++i) {
    pcy_history_row r;
    check(pcy_run_history_row(run.get(), i, &r), "reading history");
    std::snprintf(line, sizeof line, "%d,%.17g,%d,%.17g,%.17g,%d,%d,%d\n", r.generation, r.best.total, r.best.v_p,
                  r.best.e_w, r.best.e_f, r.best.e_c, r.archive_size, r.attempt);
    csv += line;
  }
  write_text(dir / (stem + ".history.csv"), csv);

  json rep = report(mesh.get(), best.get(), a.weights.w);
  write_text(dir / (stem + ".report.json"), rep.dump(2) + "\n");

  pcy_timings t;
  pcy_run_timings(run.get(), &t);
  json attempts = json::array();
  for (int k = 0; k < pcy_run_attempts(run.get()); ++k)
    attempts.push_back({{"generations", pcy_run_generations(run.get(), k)}, {"stalled", pcy_run_stalled(run.get(), k) != 0}});
  const json manifest = {
      {"tool", "polycubify"},
      {"version", pcy_version()},
      {"input", {{"path", a.input}, {"format", format_of(a.input)}}},
      {"initial_labeling", a.labeling.empty() ? json(nullptr) : json(a.labeling)},
      {"ga",
       {{"population", a.cfg.population},
        {"crossovers", a.cfg.crossovers},
        {"generations", a.cfg.generations},
        {"stall_limit", a.cfg.stall_limit},
        {"archive_size", a.cfg.archive_capacity},
        {"threads", a.cfg.threads},
        {"seed", a.cfg.seed},
        {"weights", {{"w1", a.cfg.weights.workability}, {"w2", a.cfg.weights.fidelity}, {"w3", a.cfg.weights.compactness}}}}},
      {"ratio", a.cfg.ratio},
      {"retry", {{"allowed", a.cfg.allow_retry != 0}, {"executed", pcy_run_retried(run.get()) != 0}}},
      {"attempts", attempts},
      {"output_dir", a.out_dir},
      {"outputs", {{"labeling", labels_path.string()}, {"history", (dir / (stem + ".history.csv")).string()},
                   {"report", (dir / (stem + ".report.json")).string()}}},
      {"final", fitness_json(fit)},
      {"timings",
       {{"load", load_seconds}, {"init", t.init_seconds}, {"evolve", t.evolve_seconds},
        {"retry", t.retry_seconds}, {"optimize_total", t.total_seconds}}},
  };
  write_text(dir / (stem + ".manifest.json"), manifest.dump(2) + "\n");

  std::cout << "wrote " << labels_path.string() << "  total " << fit.total << "  v_p " << fit.v_p
            << (pcy_run_retried(run.get()) ? "  (retried)" : "") << "\n";
  if (fit.v_p > 0) {
    std::cerr << "no pseudo-valid labeling found (v_p = " << fit.v_p << ")\n";
    return kExitNotValid;
  }
  return kExitValid;
}

// --- evaluate / export -----------------------------------------------------

struct EvaluateArgs {
  std::string input;
  std::string labeling;
  std::string output;
  WeightOptions weights;
};

int run_evaluate(const EvaluateArgs& a) {
  const MeshPtr mesh = load_mesh(a.input);
  const LabelingPtr labeling = load_labeling(mesh.get(), a.labeling);
  const std::string text = report(mesh.get(), labeling.get(), a.weights.w).dump(2) + "\n";
  if (a.output.empty())
    std::cout << text;
  else
    write_text(a.output, text);
  return kExitValid;
}

struct ExportArgs {
  std::string input;
  std::string labeling;
  std::string ply;
  std::string obj;
};

int run_export(const ExportArgs& a) {
  const MeshPtr mesh = load_mesh(a.input);
  const LabelingPtr labeling = load_labeling(mesh.get(), a.labeling);
  const std::string stem = fs::path(a.input).stem().string();
  const std::string ply = a.ply.empty() ? stem + ".labels.ply" : a.ply;
  const std::string obj = a.obj.empty() ? stem + ".polycube.obj" : a.obj;
  for (const std::string& p : {ply, obj})
    if (fs::path(p).has_parent_path()) fs::create_directories(fs::path(p).parent_path());
  check(pcy_export_colored_ply(mesh.get(), labeling.get(), ply.c_str()), "writing " + ply);
  check(pcy_export_polycube_obj(mesh.get(), labeling.get(), obj.c_str()), "writing " + obj);
  std::cout << "wrote " << ply << " and " << obj << "\n";
  return kExitValid;
}

// --- mutate ----------------------------------------------------------------

struct MutateArgs {
  std::string input;
  std::string labeling;
  std::string output;
  std::string kind;
  pcy_mutation spec{PCY_MUTATION_CHART_REMOVAL, -1, -1, -1, 0, 0, 0.0};
  std::optional<std::uint64_t> random_seed;
  int generation = 1;
};

int kind_from_name(const std::string& name) {
  if (name == "directional-path") return PCY_MUTATION_DIRECTIONAL_PATH;
  if (name == "chart-removal") return PCY_MUTATION_CHART_REMOVAL;
  if (name == "chart-propagation") return PCY_MUTATION_CHART_PROPAGATION;
  throw CliError("unknown mutation kind '" + name + "'");
}

int run_mutate(MutateArgs& a) {
  const MeshPtr mesh = load_mesh(a.input);
  const LabelingPtr labeling = load_labeling(mesh.get(), a.labeling);
  pcy_labeling* raw = nullptr;
  if (a.random_seed) {
    check(pcy_mutate_random(mesh.get(), labeling.get(), *a.random_seed, a.generation, &a.spec, &raw), "mutating");
  } else {
    if (a.kind.empty()) throw CliError("--kind or --random is required");
    a.spec.kind = kind_from_name(a.kind);
    if (a.spec.width <= 0.0) a.spec.width = 2.0 * pcy_mesh_average_edge_length(mesh.get());
    check(pcy_mutate(mesh.get(), labeling.get(), &a.spec, a.generation, &raw), "mutating");
  }
  const LabelingPtr out(raw);
  const std::string path = a.output.empty() ? fs::path(a.labeling).stem().string() + ".mutated.labels" : a.output;
  check(pcy_labeling_write(out.get(), path.c_str()), "writing " + path);
  static const char* kKinds[] = {"directional-path", "chart-removal", "chart-propagation"};
  std::cout << "applied " << kKinds[a.spec.kind] << " (chart " << a.spec.chart << ", boundary " << a.spec.boundary
            << ", vertex " << a.spec.vertex << ", width " << a.spec.width << ") -> " << path << "\n";
  return kExitValid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polycube labeling of closed triangle meshes"};
  app.set_version_flag("--version", std::string(pcy_version()));
  app.require_subcommand(1);

  InitArgs init;
  CLI::App* init_cmd = app.add_subcommand("init", "Graph-cut initial labeling");
  init_cmd->add_option("input", init.input, "Mesh (.obj .stl .ply .mesh)")->required()->check(CLI::ExistingFile);
  init_cmd->add_option("--ratio", init.ratio, "Unary/binary cost ratio")->capture_default_str();
  init_cmd->add_option("-o,--output", init.output, "Labeling file (default <stem>.labels)");
  init_cmd->add_option("--report", init.report, "JSON report (default next to the labeling)");
  init_cmd->add_flag("--no-repair", init.no_repair, "Skip the validity repairs");
  init.weights.add(init_cmd);

  OptimizeArgs opt;
  CLI::App* opt_cmd = app.add_subcommand("optimize", "Evolve a labeling");
  opt_cmd->add_option("input", opt.input, "Mesh (.obj .stl .ply .mesh)")->required()->check(CLI::ExistingFile);
  opt_cmd->add_option("-l,--labeling", opt.labeling, "Initial labeling (skips graph-cut and retry)")
      ->check(CLI::ExistingFile);
  opt_cmd->add_option("-d,--out-dir", opt.out_dir, "Output directory")->capture_default_str();
  opt_cmd->add_option("--seed", opt.cfg.seed, "Master seed")->capture_default_str();
  opt_cmd->add_option("--generations", opt.cfg.generations, "Maximum generations")->capture_default_str();
  opt_cmd->add_option("--population", opt.cfg.population, "Mutants per generation")->capture_default_str();
  opt_cmd->add_option("--crossovers", opt.cfg.crossovers, "Crossovers per generation")->capture_default_str();
  opt_cmd->add_option("--archive-size", opt.cfg.archive_capacity, "Archive capacity")->capture_default_str();
  opt_cmd->add_option("--stall-limit", opt.cfg.stall_limit, "Generations without progress before stopping")
      ->capture_default_str();
  opt_cmd->add_option("--threads", opt.cfg.threads, "Worker threads, 0 for all cores")->capture_default_str();
  opt_cmd->add_option("--ratio", opt.cfg.ratio, "Unary/binary cost ratio")->capture_default_str();
  opt_cmd->add_flag("--no-retry", opt.no_retry, "Do not restart with a lower ratio");
  opt_cmd->add_flag("-v,--verbose", opt.verbose, "Print one line per generation");
  opt.weights.add(opt_cmd);

  EvaluateArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Report fitness and chart statistics");
  eval_cmd->add_option("input", eval.input, "Mesh")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("labeling", eval.labeling, "Labeling file")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("-o,--output", eval.output, "Write the JSON here instead of stdout");
  eval.weights.add(eval_cmd);

  ExportArgs exp;
  CLI::App* exp_cmd = app.add_subcommand("export", "Colored PLY and polycube OBJ");
  exp_cmd->add_option("input", exp.input, "Mesh")->required()->check(CLI::ExistingFile);
  exp_cmd->add_option("labeling", exp.labeling, "Labeling file")->required()->check(CLI::ExistingFile);
  exp_cmd->add_option("--ply", exp.ply, "Colored mesh (default <stem>.labels.ply)");
  exp_cmd->add_option("--obj", exp.obj, "Polycube geometry (default <stem>.polycube.obj)");

  MutateArgs mut;
  CLI::App* mut_cmd = app.add_subcommand("mutate", "Apply one mutation (debugging)");
  mut_cmd->add_option("input", mut.input, "Mesh")->required()->check(CLI::ExistingFile);
  mut_cmd->add_option("labeling", mut.labeling, "Labeling file")->required()->check(CLI::ExistingFile);
  mut_cmd->add_option("-o,--output", mut.output, "Output labeling");
  mut_cmd->add_option("--kind", mut.kind, "directional-path | chart-removal | chart-propagation");
  mut_cmd->add_option("--chart", mut.spec.chart, "Chart id (removal)");
  mut_cmd->add_option("--boundary", mut.spec.boundary, "Boundary id (path, propagation)");
  mut_cmd->add_option("--vertex", mut.spec.vertex, "Start / center vertex");
  mut_cmd->add_option("--side", mut.spec.side, "0: left chart, 1: right chart");
  mut_cmd->add_option("--direction", mut.spec.direction, "Direction index 0..3 (path)");
  mut_cmd->add_option("--width", mut.spec.width, "Band width (default 2 average edge lengths)");
  mut_cmd->add_option("--random", mut.random_seed, "Draw a random mutation with this seed");
  mut_cmd->add_option("--generation", mut.generation, "Stamp for relabeled triangles")->capture_default_str();

  bind_environment(&app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitValid : kExitFailure;
  }

  try {
    if (*init_cmd) return run_init(init);
    if (*opt_cmd) return run_optimize(opt);
    if (*eval_cmd) return run_evaluate(eval);
    if (*exp_cmd) return run_export(exp);
    if (*mut_cmd) return run_mutate(mut);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
