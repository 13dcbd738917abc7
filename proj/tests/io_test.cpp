#include <filesystem>

#include "doctest.h"

#include "baode/generate.hpp"
#include "baode/io.hpp"
#include "support.hpp"

using namespace baode;
using baode::testing::error_kind;
using baode::testing::plain_frame;
using baode::testing::set_of;
using baode::testing::trivial_algebra;

#ifndef BAODE_SCHEMA_DIR
#error "BAODE_SCHEMA_DIR must name the schema directory"
#endif

namespace {

  template <typename T>
  T reparse(Json const& j, T (*read)(Json const&, Workspace const*)) {
    return read(parse_json(format_json(j), "test"), nullptr);
  }

  std::string schema_path(char const* file) {
    return std::string(BAODE_SCHEMA_DIR) + "/" + file;
  }

}  // namespace

TEST_CASE("artifacts survive a save and load") {
  Rng  rng(1);
  auto sig     = Signature::full(2, true);
  for (int trial = 0; trial < 30; ++trial) {
    auto n = 1 + rng.below(3);
    auto f = random_frame(rng, n, sig, enumerate_anti_actions(n, sig));
    CHECK(reparse(to_json(f), &frame_from_json) == f);
    auto a = complex_algebra(f);
    CHECK(reparse(to_json(a), &bao_from_json) == a);
  }

  auto partial = Signature(2, {Transformation{0, 1}, Transformation{0, 0}}, false);
  CHECK(signature_from_json(to_json(partial)) == partial);
  CHECK(to_json(sig)["transformations"] == "full");

  auto b = trivial_algebra(2);
  auto h = AlgebraMorphism(b, b, {set_of({1}), set_of({0})});
  auto h2 = reparse(to_json(h), &algebra_morphism_from_json);
  CHECK(h2.atom_images() == h.atom_images());
  CHECK(h2.source() == b);

  auto g  = plain_frame(2, {{{0, 1}}});
  auto m  = FrameMorphism(g, g, {0, 1});
  auto m2 = reparse(to_json(m), &frame_morphism_from_json);
  CHECK(m2.map == m.map);
  CHECK(m2.target == g);

  auto s = default_schema(sig, 1);
  CHECK(schema_from_json(parse_json(format_json(to_json(s)), "s")).equations()
        == s.equations());

  AmalgamationInstance inst{trivial_algebra(1), b, b,
                            AlgebraMorphism(trivial_algebra(1), b, {b.top()}),
                            AlgebraMorphism(trivial_algebra(1), b, {b.top()}),
                            Schema{"empty", {}}};
  auto inst2 = reparse(to_json(inst), &instance_from_json);
  CHECK(inst2.left == inst.left);
  CHECK(inst2.h.atom_images() == inst.h.atom_images());

  Campaign c{"c", {{"duality", 5}, {"supap", 0}}};
  auto     c2 = campaign_from_json(parse_json(format_json(to_json(c)), "c"));
  CHECK(c2.name == "c");
  REQUIRE(c2.items.size() == 2);
  CHECK(c2.items[1].property == "supap");
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_json("{\"kind\": [1, 2", "inline");
    FAIL("no error");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(std::string(e.what()).find("inline: byte 15") != std::string::npos);
  }
  CHECK(error_kind([] { read_json_file("/nonexistent/x.json"); })
        == ErrorKind::io);
  CHECK(error_kind([] { frame_from_json(Json{{"kind", "bao"}}); })
        == ErrorKind::parse);
  CHECK(error_kind([] { frame_from_json(Json{{"kind", "frame"}}); })
        == ErrorKind::parse);
  auto bad_term = Json::parse(R"({"kind": "schema", "entries": [
      {"name": "e", "lhs": "(c 0 x", "rhs": "x"}]})");
  try {
    schema_from_json(bad_term);
    FAIL("no error");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(std::string(e.what()).find("schema entry 'e'") != std::string::npos);
  }
  auto unknown = Json::parse(
      R"({"kind": "campaign", "properties": [{"property": "magic"}]})");
  CHECK(error_kind([&] { campaign_from_json(unknown); })
        == ErrorKind::validation);
  // Invariant violations surface as the module's own errors.
  auto out_of_range = to_json(plain_frame(2, {{{0, 1}}}));
  out_of_range["t"] = Json::parse("[[[0, 5]]]");
  CHECK(error_kind([&] { frame_from_json(out_of_range); }) == ErrorKind::index);
}

TEST_CASE("workspaces bind validated artifacts by name") {
  Workspace ws;
  auto      b = trivial_algebra(2);
  auto      a = trivial_algebra(1);
  auto      bj = to_json(b);
  bj["name"]   = "B";
  auto aj      = to_json(a);
  aj["name"]   = "A";
  ws.load_json(Json::array({bj, aj}), "file");
  CHECK(ws.contains("A"));
  CHECK(ws.names() == std::vector<std::string>{"A", "B"});

  auto inst = Json::parse(R"({"kind": "instance", "name": "I", "base": "A",
      "left": "B", "right": "B", "f": [[0, 1]], "h": [[0, 1]]})");
  CHECK(ws.load_json(inst, "x") == std::vector<std::string>{"I"});
  CHECK(ws.resolve_as<AmalgamationInstance>("I", "instance").left == b);

  CHECK(error_kind([&] { ws.load_json(aj, "again"); }) == ErrorKind::validation);
  CHECK(error_kind([&] { ws.get("missing"); }) == ErrorKind::unbound_variable);
  CHECK(error_kind([&] { ws.resolve("missing"); })
        == ErrorKind::unbound_variable);
  CHECK(error_kind([&] { ws.resolve_as<Frame>("A", "frame"); })
        == ErrorKind::validation);
  auto dangling = Json::parse(R"({"kind": "morphism", "source": "Z",
      "target": "B", "images": [[0, 1]]})");
  CHECK(error_kind([&] { ws.load_json(dangling, "d"); })
        == ErrorKind::unbound_variable);
  auto not_hom = Json::parse(R"({"kind": "instance", "base": "B",
      "left": "A", "right": "A", "f": [[0], []], "h": [[0], []]})");
  CHECK(error_kind([&] { ws.load_json(not_hom, "n"); }) == ErrorKind::morphism);
  CHECK(error_kind([&] { ws.load_json(Json{{"kind", "widget"}}, "w"); })
        == ErrorKind::parse);
  // Unnamed artifacts take the default name.
  CHECK(ws.load_json(to_json(a), "plain") == std::vector<std::string>{"plain"});
}

TEST_CASE("files resolve by path") {
  auto dir = std::filesystem::temp_directory_path() / "baode-io-test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "square.json").string();
  auto f    = assignment_frame(2, Signature::full(2, true));
  write_text_file(path, format_json(to_json(f)));
  Workspace ws;
  CHECK(ws.resolve_as<Frame>(path, "frame") == f);
  CHECK(ws.contains("square"));
  CHECK(artifact_to_json(ws.get("square")) == to_json(f));
}

TEST_CASE("shipped schema files match the generated default schema") {
  for (auto [file, base] : {std::pair{"default-alpha1.json", 1},
                            std::pair{"default-alpha2.json", 2}}) {
    auto j = read_json_file(schema_path(file));
    auto s = schema_from_json(j);
    auto sig = signature_from_json(j.at("signature"));
    CHECK(j.at("base_dim") == base);
    auto g = default_schema(sig, static_cast<std::size_t>(base));
    REQUIRE(s.entries.size() == g.entries.size());
    for (std::size_t k = 0; k < s.entries.size(); ++k) {
      CHECK(s.entries[k].equation.name == g.entries[k].equation.name);
      CHECK(s.entries[k].equation == g.entries[k].equation);
      CHECK(s.entries[k].annotated_positive.has_value());
    }
  }
}

TEST_CASE("compact formatting keeps short scalar arrays on one line") {
  auto text = format_json(Json::parse(R"({"a": [[0, 1], [2]], "b": {"c": []}})"));
  CHECK(text == "{\n  \"a\": [[0,1],[2]],\n  \"b\": {\n    \"c\": []\n  }\n}\n");
  CHECK(parse_json(text, "t") == Json::parse(text));
}
