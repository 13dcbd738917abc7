#include "baode/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "baode/error.hpp"

namespace baode {

  namespace {

    Json element_json(Element x) {
      return Json(atoms_of(x));
    }

    Element element_from(Json const& j) {
      return element_from_atoms(j.get<std::vector<std::size_t>>());
    }

    Json elements_json(std::vector<Element> const& xs) {
      Json out = Json::array();
      for (auto x : xs) {
        out.push_back(element_json(x));
      }
      return out;
    }

    std::vector<Element> elements_from(Json const& j) {
      std::vector<Element> out;
      for (auto const& x : j) {
        out.push_back(element_from(x));
      }
      return out;
    }

    Json relation_json(Relation const& r) {
      Json out = Json::array();
      for (auto [t, s] : relation_pairs(r)) {
        out.push_back({t, s});
      }
      return out;
    }

    Relation relation_from(Json const& j, std::size_t n) {
      return relation_from_pairs(
          n, j.get<std::vector<std::pair<std::size_t, std::size_t>>>());
    }

    void expect_kind(Json const& j, char const* kind) {
      if (!j.is_object() || !j.contains("kind") || j["kind"] != kind) {
        fail(ErrorKind::parse, std::string("expected an artifact of kind '")
                                   + kind + "'");
      }
    }

    // Runs f, turning JSON access errors into Error(parse).
    template <typename F>
    auto guarded(char const* what, F&& f) -> decltype(f()) {
      try {
        return f();
      } catch (Json::exception const& e) {
        fail(ErrorKind::parse, std::string("malformed ") + what + ": "
                                   + e.what());
      }
    }

    template <typename T, typename Read>
    T inline_or_named(Json const& j, Workspace const* ws, char const* what,
                      Read&& read) {
      if (j.is_string()) {
        if (ws == nullptr) {
          fail(ErrorKind::unbound_variable,
               "no workspace to look up '" + j.get<std::string>() + "'");
        }
        auto const& a = ws->get(j.get<std::string>());
        if (auto const* p = std::get_if<T>(&a)) {
          return *p;
        }
        fail(ErrorKind::validation,
             "'" + j.get<std::string>() + "' is not a " + what);
      }
      return read(j);
    }

    Frame frame_ref(Json const& j, Workspace const* ws) {
      return inline_or_named<Frame>(j, ws, "frame", [&](Json const& x) {
        return frame_from_json(x, ws);
      });
    }

    FiniteBao bao_ref(Json const& j, Workspace const* ws) {
      return inline_or_named<FiniteBao>(j, ws, "bao", [&](Json const& x) {
        return bao_from_json(x, ws);
      });
    }

    Schema schema_ref(Json const& j, Workspace const* ws) {
      return inline_or_named<Schema>(j, ws, "schema", [&](Json const& x) {
        return schema_from_json(x);
      });
    }

  }  // namespace

  Json to_json(Signature const& sig) {
    Json j{{"dim", sig.dim()}, {"diagonals", sig.with_diagonals()}};
    if (sig.transformations() == all_transformations(sig.dim())) {
      j["transformations"] = "full";
    } else {
      Json ts = Json::array();
      for (auto const& t : sig.transformations()) {
        ts.push_back(t.values());
      }
      j["transformations"] = std::move(ts);
    }
    return j;
  }

  Signature signature_from_json(Json const& j) {
    return guarded("signature", [&] {
      auto dim       = j.at("dim").get<std::size_t>();
      bool diagonals = j.value("diagonals", true);
      if (!j.contains("transformations") || j["transformations"] == "full") {
        return Signature::full(dim, diagonals);
      }
      if (j["transformations"] == "identity") {
        return Signature::identity_only(dim, diagonals);
      }
      std::vector<Transformation> ts;
      for (auto const& t : j["transformations"]) {
        ts.emplace_back(t.get<std::vector<std::size_t>>());
      }
      return Signature(dim, std::move(ts), diagonals);
    });
  }

  Json to_json(Frame const& f) {
    Json t = Json::array();
    for (auto const& r : f.t_relations()) {
      t.push_back(relation_json(r));
    }
    Json s = Json::array();
    for (auto const& r : f.s_relations()) {
      s.push_back(relation_json(r));
    }
    return {{"kind", "frame"},
            {"points", f.size()},
            {"signature", to_json(f.sig())},
            {"t", std::move(t)},
            {"s", std::move(s)},
            {"d", elements_json(f.diagonals())}};
  }

  Frame frame_from_json(Json const& j, Workspace const*) {
    expect_kind(j, "frame");
    return guarded("frame", [&] {
      auto n   = j.at("points").get<std::size_t>();
      auto sig = signature_from_json(j.at("signature"));
      std::vector<Relation> t;
      for (auto const& r : j.at("t")) {
        t.push_back(relation_from(r, n));
      }
      std::vector<Element> d;
      if (j.contains("d")) {
        d = elements_from(j["d"]);
      }
      if (j.contains("actions")) {
        return Frame::from_actions(
            n, sig, std::move(t),
            j["actions"].get<std::vector<std::vector<std::size_t>>>(),
            std::move(d));
      }
      std::vector<Relation> s;
      for (auto const& r : j.at("s")) {
        s.push_back(relation_from(r, n));
      }
      return Frame(n, sig, std::move(t), std::move(s), std::move(d));
    });
  }

  Json to_json(FiniteBao const& a) {
    Json cyl = Json::array();
    for (auto const& row : a.cyl_atoms()) {
      cyl.push_back(elements_json(row));
    }
    Json subst = Json::array();
    for (auto const& row : a.subst_atoms()) {
      subst.push_back(elements_json(row));
    }
    return {{"kind", "bao"},
            {"atoms", a.atom_count()},
            {"signature", to_json(a.sig())},
            {"cyl", std::move(cyl)},
            {"subst", std::move(subst)},
            {"diag", elements_json(a.diagonals())}};
  }

  FiniteBao bao_from_json(Json const& j, Workspace const*) {
    expect_kind(j, "bao");
    return guarded("bao", [&] {
      std::vector<std::vector<Element>> cyl;
      for (auto const& row : j.at("cyl")) {
        cyl.push_back(elements_from(row));
      }
      std::vector<std::vector<Element>> subst;
      for (auto const& row : j.at("subst")) {
        subst.push_back(elements_from(row));
      }
      std::vector<Element> diag;
      if (j.contains("diag")) {
        diag = elements_from(j["diag"]);
      }
      return FiniteBao(FiniteBA(j.at("atoms").get<std::size_t>()),
                       signature_from_json(j.at("signature")), std::move(cyl),
                       std::move(subst), std::move(diag));
    });
  }

  Json to_json(AlgebraMorphism const& h) {
    return {{"kind", "morphism"},
            {"source", to_json(h.source())},
            {"target", to_json(h.target())},
            {"images", elements_json(h.atom_images())}};
  }

  AlgebraMorphism algebra_morphism_from_json(Json const&      j,
                                             Workspace const* ws) {
    expect_kind(j, "morphism");
    return guarded("morphism", [&] {
      return AlgebraMorphism(bao_ref(j.at("source"), ws),
                             bao_ref(j.at("target"), ws),
                             elements_from(j.at("images")));
    });
  }

  Json to_json(FrameMorphism const& m) {
    return {{"kind", "morphism"},
            {"source", to_json(m.source)},
            {"target", to_json(m.target)},
            {"map", m.map}};
  }

  FrameMorphism frame_morphism_from_json(Json const& j, Workspace const* ws) {
    expect_kind(j, "morphism");
    return guarded("morphism", [&] {
      return FrameMorphism(frame_ref(j.at("source"), ws),
                           frame_ref(j.at("target"), ws),
                           j.at("map").get<std::vector<std::size_t>>());
    });
  }

  Json to_json(Schema const& s) {
    Json entries = Json::array();
    for (auto const& e : s.entries) {
      Json entry{{"name", e.equation.name},
                 {"lhs", to_string(e.equation.lhs)},
                 {"rhs", to_string(e.equation.rhs)}};
      if (e.annotated_positive) {
        entry["positive"] = *e.annotated_positive;
      }
      entries.push_back(std::move(entry));
    }
    return {{"kind", "schema"}, {"name", s.name}, {"entries", entries}};
  }

  Schema schema_from_json(Json const& j) {
    expect_kind(j, "schema");
    return guarded("schema", [&] {
      Schema s;
      s.name = j.value("name", std::string("schema"));
      for (auto const& e : j.at("entries")) {
        auto name = e.value("name", "entry-" + std::to_string(s.entries.size()));
        Equation eq;
        try {
          eq = parse_equation(e.at("lhs").get<std::string>(),
                              e.at("rhs").get<std::string>(), name);
        } catch (Error const& err) {
          fail(err.kind(), "schema entry '" + name + "': " + err.what());
        }
        std::optional<bool> positive;
        if (e.contains("positive")) {
          positive = e["positive"].get<bool>();
        }
        s.entries.push_back({std::move(eq), positive});
      }
      return s;
    });
  }

  Json to_json(AmalgamationInstance const& inst) {
    return {{"kind", "instance"},
            {"base", to_json(inst.base)},
            {"left", to_json(inst.left)},
            {"right", to_json(inst.right)},
            {"f", elements_json(inst.f.atom_images())},
            {"h", elements_json(inst.h.atom_images())},
            {"schema", to_json(inst.schema)}};
  }

  AmalgamationInstance instance_from_json(Json const& j, Workspace const* ws) {
    expect_kind(j, "instance");
    return guarded("instance", [&] {
      auto base  = bao_ref(j.at("base"), ws);
      auto left  = bao_ref(j.at("left"), ws);
      auto right = bao_ref(j.at("right"), ws);
      Schema schema{"empty", {}};
      if (j.contains("schema")) {
        schema = schema_ref(j["schema"], ws);
      }
      AmalgamationInstance inst{
          base,
          left,
          right,
          AlgebraMorphism(base, left, elements_from(j.at("f"))),
          AlgebraMorphism(base, right, elements_from(j.at("h"))),
          std::move(schema)};
      validate_instance(inst);
      return inst;
    });
  }

  Json to_json(Campaign const& c) {
    Json items = Json::array();
    for (auto const& i : c.items) {
      items.push_back({{"property", i.property}, {"count", i.count}});
    }
    return {{"kind", "campaign"}, {"name", c.name}, {"properties", items}};
  }

  Campaign campaign_from_json(Json const& j) {
    expect_kind(j, "campaign");
    return guarded("campaign", [&] {
      Campaign c;
      c.name          = j.value("name", std::string("campaign"));
      auto const known = property_names();
      for (auto const& i : j.at("properties")) {
        CampaignItem item{i.at("property").get<std::string>(),
                          i.value("count", std::size_t(0))};
        if (std::find(known.begin(), known.end(), item.property)
            == known.end()) {
          fail(ErrorKind::validation,
               "unknown property '" + item.property + "'");
        }
        c.items.push_back(std::move(item));
      }
      return c;
    });
  }

  Json to_json(InsepResult const& r) {
    auto frame      = to_json(r.subframe.frame);
    frame["tuples"] = r.subframe.points;
    return {{"kind", "zigzag"},
            {"frame", std::move(frame)},
            {"zigzag", r.zigzag},
            {"commutes", r.commutes}};
  }

  Json to_json(SupapReport const& r) {
    Json checks = Json::array();
    for (auto const& c : r.checks) {
      checks.push_back(
          {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    Json failures = Json::array();
    for (auto const& f : r.failures) {
      failures.push_back({{"b", element_json(f.b)},
                          {"c", element_json(f.c)},
                          {"least_cover", element_json(f.least_cover)}});
    }
    return {{"passed", r.passed()},
            {"pairs_checked", r.pairs_checked},
            {"strong_amalgamation", r.strong_amalgamation},
            {"checks", std::move(checks)},
            {"failures", std::move(failures)}};
  }

  Json to_json(SupapCertificate const& c) {
    return {{"kind", "certificate"},
            {"amalgam", to_json(c.amalgam)},
            {"g", elements_json(c.g.atom_images())},
            {"k", elements_json(c.k.atom_images())},
            {"frame", to_json(c.frame)},
            {"report", to_json(c.report)}};
  }

  Json to_json(PropertyResult const& r) {
    return {{"property", r.property},
            {"passed", r.passed()},
            {"trials", r.trials},
            {"failures", r.failures},
            {"first_failure", r.first_failure},
            {"notes", r.notes}};
  }

  Json to_json(std::vector<SchemaCheck> const& checks) {
    Json out = Json::array();
    for (auto const& c : checks) {
      Json line{{"name", c.name},
                {"equation", to_string(c.equation)},
                {"valid", c.result.valid}};
      if (!c.result.valid) {
        Json env = Json::object();
        for (auto const& [v, x] : c.result.counterexample) {
          env[v] = element_json(x);
        }
        line["counterexample"] = std::move(env);
        line["lhs"]            = element_json(c.result.lhs_value);
        line["rhs"]            = element_json(c.result.rhs_value);
      }
      out.push_back(std::move(line));
    }
    return out;
  }

  namespace {

    bool has_object(Json const& j) {
      if (j.is_object()) {
        return true;
      }
      if (j.is_array()) {
        for (auto const& x : j) {
          if (has_object(x)) {
            return true;
          }
        }
      }
      return false;
    }

    void format_into(std::string& out, Json const& j, std::size_t indent) {
      std::string const pad(indent, ' ');
      std::string const inner(indent + 2, ' ');
      if (j.is_object() && !j.empty()) {
        out += "{\n";
        std::size_t k = 0;
        for (auto const& [key, value] : j.items()) {
          out += inner + Json(key).dump() + ": ";
          format_into(out, value, indent + 2);
          out += ++k < j.size() ? ",\n" : "\n";
        }
        out += pad + "}";
        return;
      }
      if (j.is_array() && !j.empty()) {
        auto flat = j.dump();
        if (!has_object(j) && flat.size() + indent <= 72) {
          out += flat;
          return;
        }
        out += "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
          out += inner;
          format_into(out, j[k], indent + 2);
          out += k + 1 < j.size() ? ",\n" : "\n";
        }
        out += pad + "]";
        return;
      }
      out += j.dump();
    }

  }  // namespace

  std::string format_json(Json const& j) {
    std::string out;
    format_into(out, j, 0);
    return out + "\n";
  }

  Json parse_json(std::string const& text, std::string const& origin) {
    try {
      return Json::parse(text);
    } catch (Json::parse_error const& e) {
      fail(ErrorKind::parse, origin + ": byte " + std::to_string(e.byte)
                                 + ": " + e.what());
    }
  }

  Json read_json_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      fail(ErrorKind::io, "cannot read " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_json(text.str(), path);
  }

  void write_text_file(std::string const& path, std::string const& text) {
    auto parent = std::filesystem::path(path).parent_path();
    std::error_code ec;
    if (!parent.empty()) {
      std::filesystem::create_directories(parent, ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
      fail(ErrorKind::io, "cannot write " + path);
    }
  }

  void Workspace::bind(std::string const& name, Artifact value) {
    if (!bindings_.emplace(name, std::move(value)).second) {
      fail(ErrorKind::validation, "name '" + name + "' is already bound");
    }
  }

  bool Workspace::contains(std::string const& name) const {
    return bindings_.contains(name);
  }

  Workspace::Artifact const& Workspace::get(std::string const& name) const {
    auto it = bindings_.find(name);
    if (it == bindings_.end()) {
      fail(ErrorKind::unbound_variable, "unbound name '" + name + "'");
    }
    return it->second;
  }

  std::vector<std::string> Workspace::load_json(
      Json const& j, std::string const& default_name) {
    std::vector<std::string> bound;
    auto load_one = [&](Json const& a, std::string const& fallback) {
      if (!a.is_object() || !a.contains("kind") || !a["kind"].is_string()) {
        fail(ErrorKind::parse, fallback + ": artifact without a kind");
      }
      auto name = a.value("name", fallback);
      auto kind = a["kind"].get<std::string>();
      Artifact value = [&]() -> Artifact {
        if (kind == "frame") {
          return frame_from_json(a, this);
        }
        if (kind == "bao") {
          return bao_from_json(a, this);
        }
        if (kind == "morphism") {
          if (a.contains("map")) {
            return frame_morphism_from_json(a, this);
          }
          return algebra_morphism_from_json(a, this);
        }
        if (kind == "schema") {
          return schema_from_json(a);
        }
        if (kind == "instance") {
          return instance_from_json(a, this);
        }
        if (kind == "campaign") {
          return campaign_from_json(a);
        }
        fail(ErrorKind::parse, name + ": unknown kind '" + kind + "'");
      }();
      bind(name, std::move(value));
      bound.push_back(name);
    };
    if (j.is_array()) {
      for (std::size_t k = 0; k < j.size(); ++k) {
        load_one(j[k], default_name + "." + std::to_string(k));
      }
    } else {
      load_one(j, default_name);
    }
    return bound;
  }

  std::vector<std::string> Workspace::load_file(std::string const& path) {
    return load_json(read_json_file(path),
                     std::filesystem::path(path).stem().string());
  }

  Workspace::Artifact const& Workspace::resolve(std::string const& ref) {
    if (contains(ref)) {
      return get(ref);
    }
    std::error_code ec;
    if (!std::filesystem::is_regular_file(ref, ec)) {
      fail(ErrorKind::unbound_variable,
           "'" + ref + "' is neither a bound name nor a file");
    }
    auto names = load_file(ref);
    if (names.size() != 1) {
      fail(ErrorKind::validation, ref + " defines " + std::to_string(names.size())
                                      + " artifacts; name one of them");
    }
    return get(names.front());
  }

  std::vector<std::string> Workspace::names() const {
    std::vector<std::string> out;
    for (auto const& [name, value] : bindings_) {
      out.push_back(name);
    }
    return out;
  }

  void Workspace::throw_kind_mismatch(std::string const& ref,
                                      char const*        what) {
    fail(ErrorKind::validation, "'" + ref + "' is not a " + what);
  }

  Json artifact_to_json(Workspace::Artifact const& a) {
    return std::visit([](auto const& x) { return to_json(x); }, a);
  }

}  // namespace baode
