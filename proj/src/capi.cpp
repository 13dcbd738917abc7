#include "baode/baode.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <sstream>
#include <string>

#include "baode/error.hpp"
#include "baode/io.hpp"

struct baode_frame {
  baode::Frame value;
};

struct baode_bao {
  baode::FiniteBao value;
};

struct baode_workspace {
  baode::Workspace value;
};

namespace {

  thread_local std::string last_error;

  struct ArgumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  baode_status status_of(baode::ErrorKind kind) {
    using baode::ErrorKind;
    switch (kind) {
      case ErrorKind::size: return BAODE_ERR_SIZE;
      case ErrorKind::properness: return BAODE_ERR_PROPERNESS;
      case ErrorKind::signature: return BAODE_ERR_SIGNATURE;
      case ErrorKind::index: return BAODE_ERR_INDEX;
      case ErrorKind::unbound_variable: return BAODE_ERR_UNBOUND;
      case ErrorKind::morphism: return BAODE_ERR_MORPHISM;
      case ErrorKind::containment: return BAODE_ERR_CONTAINMENT;
      case ErrorKind::closure: return BAODE_ERR_CLOSURE;
      case ErrorKind::map: return BAODE_ERR_MAP;
      case ErrorKind::witness_index: return BAODE_ERR_WITNESS_INDEX;
      case ErrorKind::dimension_budget: return BAODE_ERR_DIMENSION_BUDGET;
      case ErrorKind::parse: return BAODE_ERR_PARSE;
      case ErrorKind::io: return BAODE_ERR_IO;
      case ErrorKind::validation: return BAODE_ERR_VALIDATION;
    }
    return BAODE_ERR_INTERNAL;
  }

  // Runs f, translating exceptions into a status and last_error.
  template <typename F>
  baode_status run(F&& f) noexcept {
    try {
      last_error.clear();
      f();
      return BAODE_OK;
    } catch (baode::Error const& e) {
      last_error = e.what();
      return status_of(e.kind());
    } catch (ArgumentError const& e) {
      last_error = e.what();
      return BAODE_ERR_ARGUMENT;
    } catch (std::bad_alloc const&) {
      last_error = "out of memory";
      return BAODE_ERR_INTERNAL;
    } catch (std::exception const& e) {
      last_error = e.what();
      return BAODE_ERR_INTERNAL;
    } catch (...) {
      last_error = "unknown failure";
      return BAODE_ERR_INTERNAL;
    }
  }

  void require(bool ok, char const* what) {
    if (!ok) {
      throw ArgumentError(what);
    }
  }

  char* copy_string(std::string const& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
      throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
  }

  std::string dump(baode::Json const& j) {
    return baode::format_json(j);
  }

  void write_artifact(char const* out_dir, char const* file,
                      baode::Json const& j) {
    baode::write_text_file((std::filesystem::path(out_dir) / file).string(),
                           dump(j));
  }

  void finish(baode_result* result, bool passed, std::string const& summary) {
    result->passed  = passed ? 1 : 0;
    result->summary = copy_string(summary);
  }

  void check_command_args(baode_workspace* ws, char const* out_dir,
                          baode_result* result) {
    require(ws != nullptr, "null workspace");
    require(out_dir != nullptr, "null output directory");
    require(result != nullptr, "null result");
    result->passed  = 0;
    result->summary = nullptr;
  }

  std::string elements_text(baode::Element x) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (auto a : baode::atoms_of(x)) {
      out << (first ? "" : ",") << a;
      first = false;
    }
    out << '}';
    return out.str();
  }

}  // namespace

extern "C" {

const char* baode_last_error(void) {
  return last_error.c_str();
}

const char* baode_status_name(baode_status status) {
  switch (status) {
    case BAODE_OK: return "ok";
    case BAODE_ERR_SIZE: return "size";
    case BAODE_ERR_PROPERNESS: return "properness";
    case BAODE_ERR_SIGNATURE: return "signature";
    case BAODE_ERR_INDEX: return "index";
    case BAODE_ERR_UNBOUND: return "unbound";
    case BAODE_ERR_MORPHISM: return "morphism";
    case BAODE_ERR_CONTAINMENT: return "containment";
    case BAODE_ERR_CLOSURE: return "closure";
    case BAODE_ERR_MAP: return "map";
    case BAODE_ERR_WITNESS_INDEX: return "witness-index";
    case BAODE_ERR_DIMENSION_BUDGET: return "dimension-budget";
    case BAODE_ERR_PARSE: return "parse";
    case BAODE_ERR_IO: return "io";
    case BAODE_ERR_VALIDATION: return "validation";
    case BAODE_ERR_ARGUMENT: return "argument";
    case BAODE_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void baode_string_free(char* s) {
  std::free(s);
}

void baode_result_free(baode_result* r) {
  if (r != nullptr) {
    std::free(r->summary);
    r->summary = nullptr;
  }
}

void baode_options_init(baode_options* options) {
  if (options != nullptr) {
    baode::CampaignOptions defaults;
    options->seed           = defaults.seed;
    options->verify_all_rho = defaults.verify_all_rho ? 1 : 0;
    options->max_atoms      = defaults.max_atoms;
    options->max_universe   = defaults.max_universe;
  }
}

baode_status baode_frame_from_json(const char* json, baode_frame** out) {
  return run([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new baode_frame{
        baode::frame_from_json(baode::parse_json(json, "frame"))};
  });
}

baode_status baode_frame_to_json(const baode_frame* f, char** out) {
  return run([&] {
    require(f != nullptr && out != nullptr, "null argument");
    *out = copy_string(dump(baode::to_json(f->value)));
  });
}

size_t baode_frame_size(const baode_frame* f) {
  return f == nullptr ? 0 : f->value.size();
}

void baode_frame_free(baode_frame* f) {
  delete f;
}

baode_status baode_bao_from_json(const char* json, baode_bao** out) {
  return run([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new baode_bao{baode::bao_from_json(baode::parse_json(json, "bao"))};
  });
}

baode_status baode_bao_to_json(const baode_bao* a, char** out) {
  return run([&] {
    require(a != nullptr && out != nullptr, "null argument");
    *out = copy_string(dump(baode::to_json(a->value)));
  });
}

size_t baode_bao_atom_count(const baode_bao* a) {
  return a == nullptr ? 0 : a->value.atom_count();
}

void baode_bao_free(baode_bao* a) {
  delete a;
}

baode_status baode_complex_algebra(const baode_frame* f, baode_bao** out) {
  return run([&] {
    require(f != nullptr && out != nullptr, "null argument");
    *out = new baode_bao{baode::complex_algebra(f->value)};
  });
}

baode_status baode_atom_structure(const baode_bao* a, baode_frame** out) {
  return run([&] {
    require(a != nullptr && out != nullptr, "null argument");
    *out = new baode_frame{baode::atom_structure(a->value)};
  });
}

baode_status baode_bao_isomorphic(const baode_bao* a, const baode_bao* b,
                                  int* out) {
  return run([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "null argument");
    *out = baode::find_isomorphism(a->value, b->value).has_value() ? 1 : 0;
  });
}

baode_status baode_workspace_new(baode_workspace** out) {
  return run([&] {
    require(out != nullptr, "null argument");
    *out = new baode_workspace{};
  });
}

void baode_workspace_free(baode_workspace* ws) {
  delete ws;
}

baode_status baode_workspace_load_file(baode_workspace* ws, const char* path) {
  return run([&] {
    require(ws != nullptr && path != nullptr, "null argument");
    ws->value.load_file(path);
  });
}

baode_status baode_workspace_load_json(baode_workspace* ws, const char* json,
                                       const char* default_name) {
  return run([&] {
    require(ws != nullptr && json != nullptr, "null argument");
    std::string name = default_name != nullptr ? default_name : "artifact";
    ws->value.load_json(baode::parse_json(json, name), name);
  });
}

baode_status baode_workspace_get_json(baode_workspace* ws, const char* name,
                                      char** out) {
  return run([&] {
    require(ws != nullptr && name != nullptr && out != nullptr,
            "null argument");
    auto j = baode::artifact_to_json(ws->value.get(name));
    j["name"] = name;
    *out      = copy_string(dump(j));
  });
}

baode_status baode_cmd_cm(baode_workspace* ws, const char* frame_ref,
                          const char* out_dir, baode_result* result) {
  return run([&] {
    check_command_args(ws, out_dir, result);
    require(frame_ref != nullptr, "null frame reference");
    auto const& f = ws->value.resolve_as<baode::Frame>(frame_ref, "frame");
    auto        a = baode::complex_algebra(f);
    write_artifact(out_dir, "cm.json", baode::to_json(a));
    finish(result, true,
           "Cm(" + std::string(frame_ref) + "): "
               + std::to_string(a.atom_count()) + " atoms, dimension "
               + std::to_string(a.dim()) + "\n");
  });
}

baode_status baode_cmd_at(baode_workspace* ws, const char* algebra_ref,
                          const char* out_dir, baode_result* result) {
  return run([&] {
    check_command_args(ws, out_dir, result);
    require(algebra_ref != nullptr, "null algebra reference");
    auto const& a =
        ws->value.resolve_as<baode::FiniteBao>(algebra_ref, "bao");
    auto f = baode::atom_structure(a);
    write_artifact(out_dir, "at.json", baode::to_json(f));
    bool round_trip =
        baode::find_isomorphism(baode::complex_algebra(f), a).has_value();
    finish(result, round_trip,
           "At(" + std::string(algebra_ref) + "): "
               + std::to_string(f.size()) + " points\n"
               + (round_trip ? "PASS" : "FAIL") + " Cm(At) isomorphic\n");
  });
}

baode_status baode_cmd_zigzag(baode_workspace* ws, const char* f_ref,
                              const char* h_ref, const char* out_dir,
                              baode_result* result) {
  return run([&] {
    check_command_args(ws, out_dir, result);
    require(f_ref != nullptr && h_ref != nullptr, "null morphism reference");
    auto const& f =
        ws->value.resolve_as<baode::FrameMorphism>(f_ref, "frame morphism");
    auto const& h =
        ws->value.resolve_as<baode::FrameMorphism>(h_ref, "frame morphism");
    auto r = baode::insep(f, h);
    write_artifact(out_dir, "zigzag.json", baode::to_json(r));
    std::ostringstream s;
    s << "INSEP(" << f_ref << ", " << h_ref
      << "): " << r.subframe.points.size() << " points\n"
      << (r.zigzag ? "PASS" : "FAIL") << " zigzag product\n"
      << (r.commutes ? "PASS" : "FAIL") << " square commutes\n";
    finish(result, r.zigzag && r.commutes, s.str());
  });
}

baode_status baode_cmd_amalgamate(baode_workspace* ws,
                                  const char* instance_ref,
                                  const char* out_dir, baode_result* result) {
  return run([&] {
    check_command_args(ws, out_dir, result);
    require(instance_ref != nullptr, "null instance reference");
    auto const& inst = ws->value.resolve_as<baode::AmalgamationInstance>(
        instance_ref, "instance");
    auto cert = baode::superamalgamate(inst);
    write_artifact(out_dir, "certificate.json", baode::to_json(cert));
    std::ostringstream s;
    s << "amalgam: " << cert.amalgam.atom_count() << " atoms, "
      << cert.report.pairs_checked << " pairs checked\n";
    for (auto const& c : cert.report.checks) {
      s << (c.passed ? "PASS " : "FAIL ") << c.name;
      if (!c.detail.empty()) {
        s << ": " << c.detail;
      }
      s << '\n';
    }
    for (auto const& f : cert.report.failures) {
      s << "  no interpolant for b=" << elements_text(f.b)
        << " c=" << elements_text(f.c) << '\n';
    }
    finish(result, cert.report.passed(), s.str());
  });
}

baode_status baode_cmd_check(baode_workspace* ws, const char* algebra_ref,
                             const char* schema_ref, const char* out_dir,
                             baode_result* result) {
  return run([&] {
    check_command_args(ws, out_dir, result);
    require(algebra_ref != nullptr && schema_ref != nullptr,
            "null reference");
    auto const& artifact = ws->value.resolve(algebra_ref);
    baode::FiniteBao a   = [&] {
      if (auto const* f = std::get_if<baode::Frame>(&artifact)) {
        return baode::complex_algebra(*f);
      }
      return ws->value.resolve_as<baode::FiniteBao>(algebra_ref,
                                                    "bao or frame");
    }();
    auto const& schema =
        ws->value.resolve_as<baode::Schema>(schema_ref, "schema");
    auto checks = baode::check_schema(a, schema);
    write_artifact(out_dir, "check.json",
                   baode::Json{{"kind", "report"},
                               {"algebra", algebra_ref},
                               {"schema", schema.name},
                               {"results", baode::to_json(checks)}});
    std::ostringstream s;
    bool               all = true;
    for (auto const& c : checks) {
      all = all && c.result.valid;
      s << (c.result.valid ? "PASS " : "FAIL ") << c.name;
      if (!c.result.valid) {
        s << " at";
        for (auto const& [v, x] : c.result.counterexample) {
          s << ' ' << v << '=' << elements_text(x);
        }
        s << " (lhs " << elements_text(c.result.lhs_value) << ", rhs "
          << elements_text(c.result.rhs_value) << ')';
      }
      s << '\n';
    }
    finish(result, all, s.str());
  });
}

baode_status baode_cmd_property(baode_workspace* ws, const char* campaign_ref,
                                const baode_options* options,
                                const char* out_dir, baode_result* result) {
  return run([&] {
    check_command_args(ws, out_dir, result);
    require(campaign_ref != nullptr, "null campaign reference");
    baode::CampaignOptions opts;
    if (options != nullptr) {
      opts.seed           = options->seed;
      opts.verify_all_rho = options->verify_all_rho != 0;
      opts.max_atoms      = options->max_atoms;
      opts.max_universe   = options->max_universe;
    }
    auto const& campaign =
        ws->value.resolve_as<baode::Campaign>(campaign_ref, "campaign");
    auto results = baode::run_campaign(campaign, opts);

    bool          all = true;
    baode::Json   lines = baode::Json::array();
    std::ostringstream s;
    for (auto const& r : results) {
      all = all && r.passed();
      lines.push_back(baode::to_json(r));
      s << (r.passed() ? "PASS " : "FAIL ") << r.property
        << " trials=" << r.trials << " failures=" << r.failures << '\n';
      if (!r.first_failure.empty()) {
        s << "  first failure: " << r.first_failure << '\n';
      }
      for (auto const& n : r.notes) {
        s << "  note: " << n << '\n';
      }
    }
    write_artifact(out_dir, "property.json",
                   baode::Json{{"kind", "report"},
                               {"campaign", campaign.name},
                               {"seed", opts.seed},
                               {"verify_all_rho", opts.verify_all_rho},
                               {"max_atoms", opts.max_atoms},
                               {"max_universe", opts.max_universe},
                               {"passed", all},
                               {"results", std::move(lines)}});
    finish(result, all, s.str());
  });
}

}  // extern "C"
