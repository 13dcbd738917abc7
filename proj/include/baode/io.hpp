#ifndef BAODE_IO_HPP_
#define BAODE_IO_HPP_

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "baode/amalgam.hpp"
#include "baode/bao.hpp"
#include "baode/frame.hpp"
#include "baode/property.hpp"
#include "baode/schema.hpp"

namespace baode {

  using Json = nlohmann::ordered_json;

  class Workspace;

  // Elements are atom-index lists, relations pair lists, terms
  // S-expression strings. Every artifact carries "kind"; "name" is
  // optional. Fields naming another artifact ("source", "target", "base",
  // ...) hold either the artifact inline or the name of a binding in the
  // workspace passed to the reader.
  Json      to_json(Signature const& sig);
  Signature signature_from_json(Json const& j);

  Json  to_json(Frame const& f);
  Frame frame_from_json(Json const& j, Workspace const* ws = nullptr);

  Json      to_json(FiniteBao const& a);
  FiniteBao bao_from_json(Json const& j, Workspace const* ws = nullptr);

  Json            to_json(AlgebraMorphism const& h);
  AlgebraMorphism algebra_morphism_from_json(Json const&      j,
                                             Workspace const* ws = nullptr);
  Json            to_json(FrameMorphism const& m);
  FrameMorphism   frame_morphism_from_json(Json const&      j,
                                           Workspace const* ws = nullptr);

  Json   to_json(Schema const& s);
  Schema schema_from_json(Json const& j);

  Json                 to_json(AmalgamationInstance const& inst);
  AmalgamationInstance instance_from_json(Json const&      j,
                                          Workspace const* ws = nullptr);

  Json     to_json(Campaign const& c);
  Campaign campaign_from_json(Json const& j);

  Json to_json(InsepResult const& r);
  Json to_json(SupapReport const& r);
  Json to_json(SupapCertificate const& c);
  Json to_json(PropertyResult const& r);
  Json to_json(std::vector<SchemaCheck> const& checks);

  // Two-space indentation with arrays free of objects kept on one line
  // when they fit in 72 columns; ends with a newline.
  std::string format_json(Json const& j);

  // Throws Error(parse) with the byte offset of a syntax error; origin
  // names the input in the message.
  Json parse_json(std::string const& text, std::string const& origin);
  // Error(io) when the file cannot be read.
  Json read_json_file(std::string const& path);
  void write_text_file(std::string const& path, std::string const& text);

  class Workspace {
   public:
    using Artifact = std::variant<Frame, FiniteBao, AlgebraMorphism,
                                  FrameMorphism, Schema, AmalgamationInstance,
                                  Campaign>;

    // Throws Error(validation) when the name is taken.
    void bind(std::string const& name, Artifact value);
    bool contains(std::string const& name) const;
    // Throws Error(unbound_variable).
    Artifact const& get(std::string const& name) const;

    // Validates and binds one artifact, or each element of a top-level
    // array, under its "name" (default: the file stem, suffixed by the
    // array index). Returns the names bound.
    std::vector<std::string> load_file(std::string const& path);
    std::vector<std::string> load_json(Json const& j,
                                       std::string const& default_name);

    // A bound name, or else a file whose single artifact is loaded and
    // returned; Error(unbound_variable) when neither exists.
    Artifact const& resolve(std::string const& ref);

    template <typename T>
    T const& resolve_as(std::string const& ref, char const* what) {
      auto const& a = resolve(ref);
      if (auto const* p = std::get_if<T>(&a)) {
        return *p;
      }
      throw_kind_mismatch(ref, what);
    }

    std::vector<std::string> names() const;

   private:
    [[noreturn]] static void throw_kind_mismatch(std::string const& ref,
                                                 char const*        what);

    std::map<std::string, Artifact> bindings_;
  };

  Json artifact_to_json(Workspace::Artifact const& a);

}  // namespace baode

#endif  // BAODE_IO_HPP_
