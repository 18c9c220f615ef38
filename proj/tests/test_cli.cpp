#include "labeling.hpp"
#include "mesh_io.hpp"
#include "scratch.hpp"
#include "shapes.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int cli(const std::string& args, const fs::path& log, const std::string& env = "") {
  const std::string cmd =
      env + std::string(" \"") + POLYCUBIFY_CLI_PATH + "\" " + args + " >\"" + log.string() + "\" 2>&1";
  const int raw = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(raw));
  return WEXITSTATUS(raw);
}

void save(const fs::path& path, const polycubify::SurfaceMesh& m) {
  polycubify::write_obj(path, m.vertices(), m.triangles());
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

struct Workspace {
  fs::path dir = scratch_dir("cli");
  fs::path cube = dir / "cube.obj";
  fs::path tet = dir / "tet.obj";
  fs::path log = dir / "log.txt";
  Workspace() {
    save(cube, shapes::grid_cube(2));
    save(tet, shapes::single_tet());
  }
};

}  // namespace

TEST_CASE("optimize writes its outputs and exits 0 on success") {
  Workspace ws;
  const fs::path out = ws.dir / "run";
  REQUIRE(cli("optimize " + q(ws.cube) + " -d " + q(out) + " --seed 3 --population 12 --crossovers 2", ws.log) == 0);
  for (const char* ext : {".labels", ".history.csv", ".report.json", ".manifest.json"})
    CHECK_MESSAGE(fs::exists(out / (std::string("cube") + ext)), ext);

  const json manifest = json::parse(read_text(out / "cube.manifest.json"));
  CHECK(manifest["ga"]["seed"] == 3);
  CHECK(manifest["ga"]["population"] == 12);
  CHECK(manifest["final"]["v_p"] == 0);
  CHECK(manifest["retry"]["executed"] == false);

  std::istringstream csv(read_text(out / "cube.history.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("generation,best_total,v_p", 0) == 0);
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == manifest["attempts"][0]["generations"].get<int>() + 1);

  // Evaluating the written labeling reproduces the optimizer's report.
  const json saved = json::parse(read_text(out / "cube.report.json"));
  const fs::path eval = ws.dir / "eval.json";
  REQUIRE(cli("evaluate " + q(ws.cube) + " " + q(out / "cube.labels") + " -o " + q(eval), ws.log) == 0);
  const json again = json::parse(read_text(eval));
  CHECK(again == saved);
  CHECK(saved["e_c"] == 8);
}

TEST_CASE("same seed, same labeling, regardless of threads") {
  Workspace ws;
  const fs::path l_obj = ws.dir / "l.obj";
  save(l_obj, shapes::l_block(2));
  const std::string common = " --seed 9 --population 10 --crossovers 2 --generations 4 ";
  REQUIRE(cli("optimize " + q(l_obj) + common + "--threads 1 -d " + q(ws.dir / "a"), ws.log) != 1);
  REQUIRE(cli("optimize " + q(l_obj) + common + "--threads 4 -d " + q(ws.dir / "b"), ws.log) != 1);
  CHECK(read_text(ws.dir / "a" / "l.labels") == read_text(ws.dir / "b" / "l.labels"));
  CHECK(read_text(ws.dir / "a" / "l.history.csv") == read_text(ws.dir / "b" / "l.history.csv"));
}

TEST_CASE("exit 2 when no pseudo-valid labeling is found") {
  Workspace ws;
  // Four triangles cannot give every chart four neighbors.
  CHECK(cli("optimize " + q(ws.tet) + " -d " + q(ws.dir / "t") + " --population 4 --generations 2", ws.log) == 2);
  CHECK(fs::exists(ws.dir / "t" / "tet.labels"));
  CHECK(read_text(ws.log).find("v_p") != std::string::npos);
}

TEST_CASE("exit 1 on errors") {
  Workspace ws;
  CHECK(cli("optimize " + q(ws.dir / "missing.obj"), ws.log) == 1);
  CHECK(cli("frobnicate", ws.log) == 1);
  CHECK(cli("optimize " + q(ws.cube) + " --population 0 -d " + q(ws.dir / "x"), ws.log) == 1);
  CHECK(read_text(ws.log).find("error") != std::string::npos);

  write_text(ws.dir / "broken.obj", "v 0 0 0\nv 1 0 0\nf 1 2 3\n");
  CHECK(cli("evaluate " + q(ws.dir / "broken.obj") + " " + q(ws.dir / "broken.obj"), ws.log) == 1);

  write_text(ws.dir / "short.labels", "0\n0\n");
  CHECK(cli("evaluate " + q(ws.cube) + " " + q(ws.dir / "short.labels"), ws.log) == 1);
  CHECK(cli("optimize " + q(ws.cube) + " -l " + q(ws.dir / "short.labels"), ws.log) == 1);
}

TEST_CASE("init, export and mutate") {
  Workspace ws;
  const fs::path labels = ws.dir / "init.labels";
  REQUIRE(cli("init " + q(ws.cube) + " -o " + q(labels), ws.log) == 0);
  const polycubify::SurfaceMesh m = polycubify::load_mesh(ws.cube);
  const polycubify::Labeling l = polycubify::read_labeling(labels, m.num_triangles());
  CHECK(l.same_labels(polycubify::naive_normal_labeling(m)));
  const json rep = json::parse(read_text(ws.dir / "init.json"));
  CHECK(rep["ratio"] == 3.0);

  const fs::path ply = ws.dir / "c.ply", obj = ws.dir / "p.obj";
  REQUIRE(cli("export " + q(ws.cube) + " " + q(labels) + " --ply " + q(ply) + " --obj " + q(obj), ws.log) == 0);
  CHECK(polycubify::load_mesh(obj).num_triangles() == m.num_triangles());
  CHECK(polycubify::load_mesh(ply).num_triangles() == m.num_triangles());

  const fs::path mutated = ws.dir / "m.labels";
  REQUIRE(cli("mutate " + q(ws.cube) + " " + q(labels) + " --kind chart-removal --chart 0 -o " + q(mutated), ws.log) ==
          0);
  CHECK_FALSE(polycubify::read_labeling(mutated, m.num_triangles()).same_labels(l));
  CHECK(cli("mutate " + q(ws.cube) + " " + q(labels) + " --kind teleport", ws.log) == 1);
}

TEST_CASE("documented command examples") {
  Workspace ws;
  SUBCASE("huge ratio gives the naive labeling") {
    const fs::path sphere = ws.dir / "sphere.obj";
    save(sphere, shapes::icosphere(2));
    const fs::path out = ws.dir / "s.labels";
    REQUIRE(cli("init " + q(sphere) + " --ratio 1000000 --no-repair -o " + q(out), ws.log) == 0);
    const polycubify::SurfaceMesh m = polycubify::load_mesh(sphere);
    CHECK(polycubify::read_labeling(out, m.num_triangles()).same_labels(polycubify::naive_normal_labeling(m)));
  }
  SUBCASE("init reports parse failures") {
    write_text(ws.dir / "broken.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 x\n");
    CHECK(cli("init " + q(ws.dir / "broken.obj"), ws.log) == 1);
    CHECK(read_text(ws.log).find("error") != std::string::npos);
  }
  SUBCASE("single chart on the cube") {
    std::string all_up;
    for (int i = 0; i < shapes::grid_cube(2).num_triangles(); ++i) all_up += "4\n";
    write_text(ws.dir / "one.labels", all_up);
    REQUIRE(cli("evaluate " + q(ws.cube) + " " + q(ws.dir / "one.labels") + " -o " + q(ws.dir / "one.json"), ws.log) ==
            0);
    CHECK(json::parse(read_text(ws.dir / "one.json"))["v_p"] == 4);
  }
  SUBCASE("wedge takes the retry path") {
    const fs::path wedge = ws.dir / "wedge.obj";
    save(wedge, shapes::thin_wedge());
    const int code = cli("optimize " + q(wedge) + " -d " + q(ws.dir / "w") + " --seed 1", ws.log);
    REQUIRE((code == 0 || code == 2));
    const json manifest = json::parse(read_text(ws.dir / "w" / "wedge.manifest.json"));
    if (code == 2) {
      CHECK(manifest["retry"]["executed"] == true);
      CHECK(manifest["attempts"].size() == 2);
      CHECK(manifest["final"]["v_p"].get<int>() > 0);
    }
  }
  SUBCASE("flags fall back to environment variables") {
    REQUIRE(cli("optimize " + q(ws.cube) + " -d " + q(ws.dir / "e"), ws.log,
                "POLYCUBIFY_POPULATION=7 POLYCUBIFY_SEED=5 POLYCUBIFY_VERSION=1") == 0);
    const json manifest = json::parse(read_text(ws.dir / "e" / "cube.manifest.json"));
    CHECK(manifest["ga"]["population"] == 7);
    CHECK(manifest["ga"]["seed"] == 5);
  }
  SUBCASE("repeat runs are byte-identical") {
    for (const char* d : {"r1", "r2"})
      REQUIRE(cli("optimize " + q(ws.cube) + " --seed 1 --population 8 -d " + q(ws.dir / d), ws.log) == 0);
    CHECK(read_text(ws.dir / "r1" / "cube.labels") == read_text(ws.dir / "r2" / "cube.labels"));
    CHECK(read_text(ws.dir / "r1" / "cube.history.csv") == read_text(ws.dir / "r2" / "cube.history.csv"));
  }
}
