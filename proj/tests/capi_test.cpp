#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "baode/baode.h"

#ifndef BAODE_DATA_DIR
#error "BAODE_DATA_DIR must name the sample data directory"
#endif

namespace {

  std::string data(char const* file) {
    return std::string(BAODE_DATA_DIR) + "/" + file;
  }

  std::string slurp(std::string const& path) {
    std::ifstream      in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  std::string out_dir(char const* leaf) {
    auto dir = std::filesystem::temp_directory_path() / "baode-capi-test" / leaf;
    std::filesystem::remove_all(dir);
    return dir.string();
  }

  struct WorkspaceGuard {
    baode_workspace* ws = nullptr;
    WorkspaceGuard() {
      REQUIRE(baode_workspace_new(&ws) == BAODE_OK);
    }
    ~WorkspaceGuard() {
      baode_workspace_free(ws);
    }
  };

  char const* two_point_frame = R"({"kind": "frame", "points": 2,
      "signature": {"dim": 1, "diagonals": false, "transformations": "identity"},
      "t": [[[0, 1]]], "s": [[[0, 0], [1, 1]]], "d": []})";

}  // namespace

TEST_CASE("frames and algebras through handles") {
  baode_frame* f = nullptr;
  REQUIRE(baode_frame_from_json(two_point_frame, &f) == BAODE_OK);
  CHECK(baode_frame_size(f) == 2);

  baode_bao* a = nullptr;
  REQUIRE(baode_complex_algebra(f, &a) == BAODE_OK);
  CHECK(baode_bao_atom_count(a) == 2);

  baode_frame* g = nullptr;
  REQUIRE(baode_atom_structure(a, &g) == BAODE_OK);
  char* fj = nullptr;
  char* gj = nullptr;
  REQUIRE(baode_frame_to_json(f, &fj) == BAODE_OK);
  REQUIRE(baode_frame_to_json(g, &gj) == BAODE_OK);
  CHECK(std::string(fj) == std::string(gj));

  char* aj = nullptr;
  REQUIRE(baode_bao_to_json(a, &aj) == BAODE_OK);
  baode_bao* b = nullptr;
  REQUIRE(baode_bao_from_json(aj, &b) == BAODE_OK);
  int iso = 0;
  REQUIRE(baode_bao_isomorphic(a, b, &iso) == BAODE_OK);
  CHECK(iso == 1);

  baode_string_free(fj);
  baode_string_free(gj);
  baode_string_free(aj);
  baode_bao_free(a);
  baode_bao_free(b);
  baode_frame_free(f);
  baode_frame_free(g);
}

TEST_CASE("failures return status codes and a message") {
  baode_frame* f = nullptr;
  CHECK(baode_frame_from_json("{\"kind\": ", &f) == BAODE_ERR_PARSE);
  CHECK(f == nullptr);
  CHECK(std::string(baode_last_error()).find("byte") != std::string::npos);

  std::string bad_index = two_point_frame;
  bad_index.replace(bad_index.find("[[0, 1]]"), 8, "[[0, 7]]");
  CHECK(baode_frame_from_json(bad_index.c_str(), &f) == BAODE_ERR_INDEX);
  CHECK(baode_frame_from_json(nullptr, &f) == BAODE_ERR_ARGUMENT);
  CHECK(baode_complex_algebra(nullptr, nullptr) == BAODE_ERR_ARGUMENT);
  CHECK(std::string(baode_status_name(BAODE_ERR_UNBOUND)) == "unbound");
  CHECK(std::string(baode_status_name(BAODE_OK)) == "ok");

  WorkspaceGuard w;
  baode_result   r{};
  CHECK(baode_cmd_cm(w.ws, "nobody", out_dir("unbound").c_str(), &r)
        == BAODE_ERR_UNBOUND);
  CHECK(r.summary == nullptr);
  CHECK(baode_workspace_load_file(w.ws, "/nonexistent.json") == BAODE_ERR_IO);
}

TEST_CASE("workspace bindings") {
  WorkspaceGuard w;
  REQUIRE(baode_workspace_load_json(w.ws, two_point_frame, "chain") == BAODE_OK);
  char* j = nullptr;
  REQUIRE(baode_workspace_get_json(w.ws, "chain", &j) == BAODE_OK);
  baode_frame* f = nullptr;
  CHECK(baode_frame_from_json(j, &f) == BAODE_OK);
  baode_frame_free(f);
  baode_string_free(j);
  CHECK(baode_workspace_load_json(w.ws, two_point_frame, "chain")
        == BAODE_ERR_VALIDATION);
  CHECK(baode_workspace_get_json(w.ws, "other", &j) == BAODE_ERR_UNBOUND);
}

TEST_CASE("commands write their artifacts") {
  WorkspaceGuard w;
  auto           dir = out_dir("commands");
  baode_result   r{};

  REQUIRE(baode_cmd_cm(w.ws, data("noncommuting-frame.json").c_str(), dir.c_str(), &r)
          == BAODE_OK);
  CHECK(r.passed);
  CHECK(slurp(dir + "/cm.json").find("\"kind\": \"bao\"") != std::string::npos);
  baode_result_free(&r);

  REQUIRE(baode_cmd_check(w.ws, "noncommuting", data("commute-schema.json").c_str(),
                          dir.c_str(), &r)
          == BAODE_OK);
  CHECK(!r.passed);
  CHECK(std::string(r.summary).find("FAIL") != std::string::npos);
  baode_result_free(&r);

  REQUIRE(baode_cmd_zigzag(w.ws, data("collapse-f.json").c_str(),
                           data("collapse-h.json").c_str(), dir.c_str(), &r)
          == BAODE_OK);
  CHECK(r.passed);
  CHECK(std::filesystem::exists(dir + "/zigzag.json"));
  baode_result_free(&r);

  REQUIRE(baode_cmd_amalgamate(w.ws, data("instance-2-4-4.json").c_str(), dir.c_str(), &r)
          == BAODE_OK);
  CHECK(r.passed);
  CHECK(slurp(dir + "/certificate.json").find("\"certificate\"") != std::string::npos);
  baode_result_free(&r);

  REQUIRE(baode_cmd_at(w.ws, (dir + "/cm.json").c_str(), dir.c_str(), &r) == BAODE_OK);
  CHECK(r.passed);
  baode_result_free(&r);
}

TEST_CASE("property campaigns are reproducible") {
  baode_options opt;
  baode_options_init(&opt);
  CHECK(opt.seed == 1);
  CHECK(opt.max_atoms == 3);
  CHECK(opt.max_universe == 4);
  std::string reports[2];
  for (int run = 0; run < 2; ++run) {
    WorkspaceGuard w;
    auto           dir = out_dir(run == 0 ? "p0" : "p1");
    baode_result   r{};
    REQUIRE(baode_cmd_property(w.ws, data("smoke-campaign.json").c_str(), &opt,
                               dir.c_str(), &r)
            == BAODE_OK);
    CHECK(r.passed);
    baode_result_free(&r);
    reports[run] = slurp(dir + "/property.json");
  }
  CHECK(!reports[0].empty());
  CHECK(reports[0] == reports[1]);

  opt.max_atoms = 0;
  WorkspaceGuard w;
  baode_result   r{};
  CHECK(baode_cmd_property(w.ws, data("smoke-campaign.json").c_str(), &opt,
                           out_dir("bad").c_str(), &r)
        == BAODE_ERR_SIZE);
}
