#include "baode/term.hpp"

#include <cctype>
#include <sstream>

#include "baode/error.hpp"

namespace baode {

  Term Term::var(std::string name) {
    Term t;
    t.op_   = Op::var;
    t.name_ = std::move(name);
    return t;
  }

  Term Term::zero() {
    return Term();
  }

  Term Term::one() {
    Term t;
    t.op_ = Op::one;
    return t;
  }

  Term Term::join(Term a, Term b) {
    Term t;
    t.op_   = Op::join;
    t.args_ = {std::move(a), std::move(b)};
    return t;
  }

  Term Term::meet(Term a, Term b) {
    Term t;
    t.op_   = Op::meet;
    t.args_ = {std::move(a), std::move(b)};
    return t;
  }

  Term Term::complement(Term a) {
    Term t;
    t.op_   = Op::complement;
    t.args_ = {std::move(a)};
    return t;
  }

  Term Term::cyl(std::size_t i, Term a) {
    Term t;
    t.op_   = Op::cyl;
    t.i_    = i;
    t.args_ = {std::move(a)};
    return t;
  }

  Term Term::subst(Transformation tau, Term a) {
    Term t;
    t.op_   = Op::subst;
    t.tau_  = std::move(tau);
    t.args_ = {std::move(a)};
    return t;
  }

  Term Term::diag(std::size_t i, std::size_t j) {
    Term t;
    t.op_ = Op::diag;
    t.i_  = i;
    t.j_  = j;
    return t;
  }

  std::set<std::string> Term::variables() const {
    std::set<std::string> out;
    if (op_ == Op::var) {
      out.insert(name_);
    }
    for (auto const& a : args_) {
      auto sub = a.variables();
      out.insert(sub.begin(), sub.end());
    }
    return out;
  }

  bool Term::contains_complement() const {
    if (op_ == Op::complement) {
      return true;
    }
    for (auto const& a : args_) {
      if (a.contains_complement()) {
        return true;
      }
    }
    return false;
  }

  std::string to_string(Term const& t) {
    switch (t.op()) {
      case Term::Op::var:
        return t.name();
      case Term::Op::zero:
        return "0";
      case Term::Op::one:
        return "1";
      case Term::Op::join:
        return "(+ " + to_string(t.args()[0]) + " " + to_string(t.args()[1])
               + ")";
      case Term::Op::meet:
        return "(* " + to_string(t.args()[0]) + " " + to_string(t.args()[1])
               + ")";
      case Term::Op::complement:
        return "(- " + to_string(t.args()[0]) + ")";
      case Term::Op::cyl:
        return "(c " + std::to_string(t.index()) + " "
               + to_string(t.args()[0]) + ")";
      case Term::Op::subst:
        return "(s " + to_string(t.transformation()) + " "
               + to_string(t.args()[0]) + ")";
      case Term::Op::diag:
        return "(d " + std::to_string(t.index()) + " "
               + std::to_string(t.second_index()) + ")";
    }
    return "?";
  }

  namespace {

    class Parser {
     public:
      explicit Parser(std::string_view text) : text_(text) {}

      Term parse() {
        Term t = term();
        skip_ws();
        if (pos_ != text_.size()) {
          error("trailing input");
        }
        return t;
      }

     private:
      [[noreturn]] void error(std::string const& what) const {
        fail(ErrorKind::parse, "term parse error at offset "
                                   + std::to_string(pos_) + ": " + what
                                   + " in \"" + std::string(text_) + "\"");
      }

      void skip_ws() {
        while (pos_ < text_.size()
               && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }

      bool at_end() {
        skip_ws();
        return pos_ == text_.size();
      }

      void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) {
          error(std::string("expected '") + c + "'");
        }
        ++pos_;
      }

      std::string token() {
        skip_ws();
        auto start = pos_;
        while (pos_ < text_.size()) {
          char c = text_[pos_];
          if (std::isspace(static_cast<unsigned char>(c)) || c == '('
              || c == ')' || c == '[' || c == ']') {
            break;
          }
          ++pos_;
        }
        if (start == pos_) {
          error("expected a token");
        }
        return std::string(text_.substr(start, pos_ - start));
      }

      std::size_t index() {
        auto save = pos_;
        auto tok  = token();
        for (char c : tok) {
          if (!std::isdigit(static_cast<unsigned char>(c))) {
            pos_ = save;
            error("expected an index, got \"" + tok + "\"");
          }
        }
        return std::stoul(tok);
      }

      Transformation transformation() {
        expect('[');
        std::vector<std::size_t> v;
        while (true) {
          skip_ws();
          if (pos_ < text_.size() && text_[pos_] == ']') {
            ++pos_;
            break;
          }
          if (at_end()) {
            error("unterminated transformation");
          }
          v.push_back(index());
        }
        try {
          return Transformation(std::move(v));
        } catch (Error const& e) {
          error(e.what());
        }
      }

      Term term() {
        if (at_end()) {
          error("unexpected end of input");
        }
        if (text_[pos_] == '(') {
          ++pos_;
          auto op = token();
          Term result;
          if (op == "+" || op == "*") {
            Term a = term();
            Term b = term();
            result = op == "+" ? Term::join(std::move(a), std::move(b))
                               : Term::meet(std::move(a), std::move(b));
          } else if (op == "-") {
            result = Term::complement(term());
          } else if (op == "c") {
            auto i = index();
            result = Term::cyl(i, term());
          } else if (op == "s") {
            auto tau = transformation();
            result   = Term::subst(std::move(tau), term());
          } else if (op == "d") {
            auto i = index();
            auto j = index();
            result = Term::diag(i, j);
          } else {
            error("unknown operator \"" + op + "\"");
          }
          expect(')');
          return result;
        }
        if (text_[pos_] == ')' || text_[pos_] == '[' || text_[pos_] == ']') {
          error("unexpected bracket");
        }
        auto start = pos_;
        auto tok   = token();
        if (tok == "0") {
          return Term::zero();
        }
        if (tok == "1") {
          return Term::one();
        }
        bool good = std::isalpha(static_cast<unsigned char>(tok[0])) != 0;
        for (char c : tok) {
          good = good && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        }
        if (!good) {
          pos_ = start;
          error("bad variable name \"" + tok + "\"");
        }
        return Term::var(tok);
      }

      std::string_view text_;
      std::size_t      pos_ = 0;
    };

  }  // namespace

  Term parse_term(std::string_view text) {
    return Parser(text).parse();
  }

  std::set<std::string> Equation::variables() const {
    auto out = lhs.variables();
    auto r   = rhs.variables();
    out.insert(r.begin(), r.end());
    return out;
  }

  Equation parse_equation(std::string_view lhs, std::string_view rhs,
                          std::string name) {
    return Equation{parse_term(lhs), parse_term(rhs), std::move(name)};
  }

  std::string to_string(Equation const& e) {
    return to_string(e.lhs) + " = " + to_string(e.rhs);
  }

  bool is_positive_equation(Equation const& e) {
    return !e.lhs.contains_complement() && !e.rhs.contains_complement();
  }

  void check_term_signature(Term const& t, Signature const& sig) {
    switch (t.op()) {
      case Term::Op::cyl:
        if (t.index() >= sig.dim()) {
          fail(ErrorKind::index, "cylindrifier index " + std::to_string(t.index())
                                     + " out of range in " + to_string(t));
        }
        break;
      case Term::Op::subst:
        if (!sig.index_of(t.transformation())) {
          fail(ErrorKind::index, "transformation "
                                     + to_string(t.transformation())
                                     + " not in the signature");
        }
        break;
      case Term::Op::diag:
        if (!sig.with_diagonals()) {
          fail(ErrorKind::index, "diagonal used in a diagonal-free signature");
        }
        if (t.index() >= sig.dim() || t.second_index() >= sig.dim()) {
          fail(ErrorKind::index, "diagonal index out of range in "
                                     + to_string(t));
        }
        break;
      default:
        break;
    }
    for (auto const& a : t.args()) {
      check_term_signature(a, sig);
    }
  }

}  // namespace baode
