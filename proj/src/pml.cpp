#include "itfkit/pml.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace itfkit {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { kIdent, kNumber, kString, kPunct, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;  // identifier, digits, unescaped string, or punctuation
  SourceSpan span;
};

class ParseError {
 public:
  explicit ParseError(Diagnostic d) : diagnostic(std::move(d)) {}
  Diagnostic diagnostic;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      SourceSpan span{file_, line_, column_};
      if (pos_ >= text_.size()) {
        out.push_back(Token{Tok::kEnd, "", span});
        return out;
      }
      char c = text_[pos_];
      auto u = static_cast<unsigned char>(c);
      if (std::isalpha(u) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          advance();
        }
        out.push_back(Token{Tok::kIdent, std::string(text_.substr(start, pos_ - start)), span});
      } else if (std::isdigit(u)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          advance();
        }
        out.push_back(Token{Tok::kNumber, std::string(text_.substr(start, pos_ - start)), span});
      } else if (c == '"') {
        out.push_back(Token{Tok::kString, read_string(span), span});
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        advance();
        advance();
        out.push_back(Token{Tok::kPunct, "->", span});
      } else if (std::string_view("{};,:./").find(c) != std::string_view::npos) {
        advance();
        out.push_back(Token{Tok::kPunct, std::string(1, c), span});
      } else {
        throw ParseError(make_error(Code::kParse, "unexpected character '" + std::string(1, c) + "'", span));
      }
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string read_string(const SourceSpan& span) {
    advance();  // opening quote
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      char c = text_[pos_];
      if (c == '\n') break;
      if (c == '\\' && pos_ + 1 < text_.size()) {
        advance();
        char e = text_[pos_];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default:
            throw ParseError(make_error(Code::kParse, std::string("unknown escape '\\") + e + "'",
                                        SourceSpan{file_, line_, column_}));
        }
        advance();
        continue;
      }
      out += c;
      advance();
    }
    if (pos_ >= text_.size() || text_[pos_] != '"') {
      throw ParseError(make_error(Code::kParse, "unterminated string", span));
    }
    advance();
    return out;
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

struct QidRef {
  std::string text;
  SourceSpan span;
};

struct PendingLink {
  std::string scope;
  QidRef from;
  QidRef to;
  SourceSpan span;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Result<Platform> run() {
    try {
      parse_model();
    } catch (const ParseError& e) {
      return Result<Platform>::failure({e.diagnostic});
    }
    resolve();
    if (!errors_.empty()) return Result<Platform>::failure(std::move(errors_));
    auto diagnostics = validate_platform(platform_);
    if (!diagnostics.empty()) return Result<Platform>::failure(std::move(diagnostics));
    return Result<Platform>::success(std::move(platform_));
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != Tok::kEnd) ++pos_;
    return t;
  }

  [[noreturn]] void fail_at(const Token& t, const std::string& expected) {
    std::string found = t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(make_error(Code::kParse, "expected " + expected + ", found " + found, t.span));
  }

  bool at_punct(std::string_view p) const {
    return peek().kind == Tok::kPunct && peek().text == p;
  }
  bool at_keyword(std::string_view k) const {
    return peek().kind == Tok::kIdent && peek().text == k;
  }

  const Token& expect_punct(std::string_view p) {
    if (!at_punct(p)) fail_at(peek(), "'" + std::string(p) + "'");
    return next();
  }
  const Token& expect_keyword(std::string_view k) {
    if (!at_keyword(k)) fail_at(peek(), "'" + std::string(k) + "'");
    return next();
  }
  const Token& expect_ident(std::string_view what) {
    if (peek().kind != Tok::kIdent) fail_at(peek(), std::string(what));
    return next();
  }
  std::uint64_t expect_number(std::string_view what) {
    if (peek().kind != Tok::kNumber) fail_at(peek(), std::string(what));
    const Token& t = next();
    std::uint64_t value = 0;
    for (char c : t.text) {
      std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
      if (value > (UINT64_MAX - digit) / 10) {
        throw ParseError(make_error(Code::kParse, "number '" + t.text + "' is too large", t.span));
      }
      value = value * 10 + digit;
    }
    return value;
  }

  QidRef parse_qid() {
    const Token& first = expect_ident("component reference");
    QidRef ref{first.text, first.span};
    while (at_punct(".")) {
      next();
      ref.text += '.';
      ref.text += expect_ident("identifier after '.'").text;
    }
    return ref;
  }

  void parse_model() {
    const Token& kw = expect_keyword("platform");
    platform_.span = kw.span;
    platform_.name = expect_ident("platform name").text;
    expect_punct("{");
    while (!at_punct("}")) {
      if (peek().kind == Tok::kEnd) fail_at(peek(), "'}'");
      parse_item();
    }
    next();
    if (peek().kind != Tok::kEnd) fail_at(peek(), "end of input");
  }

  static bool is_role(std::string_view word) {
    return word == "initiator" || word == "target" || word == "transporter";
  }

  void parse_item() {
    const Token& t = peek();
    if (t.kind == Tok::kIdent && is_role(t.text)) {
      add_component(platform_.components, parse_atomic(), "");
    } else if (at_keyword("composite")) {
      add_component(platform_.components, parse_composite(""), "");
    } else if (at_keyword("link")) {
      parse_link("");
    } else if (at_keyword("symmetry")) {
      parse_symmetry();
    } else if (at_keyword("application")) {
      parse_application();
    } else {
      fail_at(t, "a declaration (initiator, target, transporter, composite, link, symmetry, "
                 "application)");
    }
  }

  void add_component(std::vector<Component>& into, Component c, const std::string& scope) {
    std::string id = qualify(scope, c.name);
    if (!declared_.insert(id).second) {
      errors_.push_back(make_error(Code::kDupId, "duplicate component '" + id + "'", c.span));
      return;
    }
    into.push_back(std::move(c));
  }

  Component parse_atomic() {
    const Token& role = next();
    Component c;
    c.span = role.span;
    c.role = role.text == "initiator" ? Role::kInitiator
             : role.text == "target"  ? Role::kTarget
                                      : Role::kTransporter;
    c.name = expect_ident("component name").text;
    if (at_punct("{")) {
      next();
      while (!at_punct("}")) parse_attr(c);
      next();
    }
    expect_punct(";");
    return c;
  }

  void parse_attr(Component& c) {
    const Token& kw = peek();
    if (at_keyword("service")) {
      next();
      c.services.insert(expect_ident("service name").text);
      while (at_punct(",")) {
        next();
        c.services.insert(expect_ident("service name").text);
      }
    } else if (at_keyword("capacity")) {
      next();
      if (c.capacity) {
        throw ParseError(make_error(Code::kParse, "capacity declared twice", kw.span));
      }
      c.capacity = expect_number("capacity in Bps");
      expect_keyword("Bps");
    } else if (at_keyword("class")) {
      next();
      if (c.classification) {
        throw ParseError(make_error(Code::kParse, "class declared twice", kw.span));
      }
      DeviceClassification dc;
      const Token& origin = expect_ident("device origin");
      if (origin.text == "cots") dc.origin = Origin::kCotsDevice;
      else if (origin.text == "cots_soft_ip") dc.origin = Origin::kCotsSoftIp;
      else if (origin.text == "cots_hard_ip") dc.origin = Origin::kCotsHardIp;
      else if (origin.text == "custom") dc.origin = Origin::kCustom;
      else fail_at(origin, "cots, cots_soft_ip, cots_hard_ip or custom");
      const Token& complexity = expect_ident("simple or complex");
      if (complexity.text == "simple") dc.complexity = Complexity::kSimple;
      else if (complexity.text == "complex") dc.complexity = Complexity::kComplex;
      else fail_at(complexity, "simple or complex");
      if (peek().kind == Tok::kString) dc.notes = next().text;
      c.classification = std::move(dc);
    } else if (at_keyword("accelerator")) {
      next();
      if (c.accelerator) {
        throw ParseError(make_error(Code::kParse, "accelerator declared twice", kw.span));
      }
      AcceleratorInfo acc;
      const Token& coupling = expect_ident("coupling");
      if (coupling.text == "tightly_coupled") acc.coupling = Coupling::kTightlyCoupled;
      else if (coupling.text == "passive") acc.coupling = Coupling::kPassive;
      else if (coupling.text == "semi_active") acc.coupling = Coupling::kSemiActive;
      else if (coupling.text == "active") acc.coupling = Coupling::kActive;
      else fail_at(coupling, "tightly_coupled, passive, semi_active or active");
      const Token& access = expect_ident("unitary or parallel");
      if (access.text == "parallel") {
        const Token& count = peek();
        std::uint64_t k = expect_number("parallelism");
        if (k < 2 || k > 1u << 20) {
          throw ParseError(make_error(Code::kParse, "parallel access needs 2 or more units", count.span));
        }
        acc.access.parallelism = static_cast<int>(k);
      } else if (access.text != "unitary") {
        fail_at(access, "unitary or parallel");
      }
      c.accelerator = acc;
    } else {
      fail_at(kw, "an attribute (service, capacity, class, accelerator) or '}'");
    }
    expect_punct(";");
  }

  Component parse_composite(const std::string& scope) {
    const Token& kw = next();
    Component c;
    c.role = Role::kComposite;
    c.span = kw.span;
    c.name = expect_ident("composite name").text;
    const std::string id = qualify(scope, c.name);
    expect_punct("{");
    while (!at_punct("}")) {
      const Token& t = peek();
      if (t.kind == Tok::kIdent && is_role(t.text)) {
        add_component(c.children, parse_atomic(), id);
      } else if (at_keyword("composite")) {
        add_component(c.children, parse_composite(id), id);
      } else if (at_keyword("link")) {
        parse_link(id);
      } else {
        fail_at(t, "a component or link inside composite");
      }
    }
    next();
    return c;
  }

  void parse_link(const std::string& scope) {
    const Token& kw = next();
    PendingLink link{scope, parse_qid(), {}, kw.span};
    expect_punct("->");
    link.to = parse_qid();
    expect_punct(";");
    links_.push_back(std::move(link));
  }

  void parse_symmetry() {
    const Token& kw = next();
    SymmetryClass sc;
    sc.span = kw.span;
    sc.name = expect_ident("symmetry name").text;
    expect_punct("{");
    std::vector<QidRef> members{parse_qid()};
    while (at_punct(",")) {
      next();
      members.push_back(parse_qid());
    }
    expect_punct("}");
    for (const auto& m : members) sc.members.push_back(m.text);
    symmetry_refs_.push_back(std::move(members));
    platform_.symmetries.push_back(std::move(sc));
  }

  void parse_application() {
    const Token& kw = next();
    Application app;
    app.span = kw.span;
    app.name = expect_ident("application name").text;
    expect_punct("{");
    std::set<std::string> names;
    while (!at_punct("}")) {
      Transaction t = parse_transaction(app.name);
      if (!names.insert(t.name).second) {
        errors_.push_back(make_error(
            Code::kDupId, "duplicate transaction '" + t.name + "' in application '" + app.name + "'",
            t.span));
      }
      app.transactions.push_back(std::move(t));
    }
    next();
    for (const auto& other : platform_.applications) {
      if (other.name == app.name) {
        errors_.push_back(
            make_error(Code::kDupId, "duplicate application '" + app.name + "'", app.span));
      }
    }
    platform_.applications.push_back(std::move(app));
  }

  Transaction parse_transaction(const std::string& app) {
    const Token& kw = expect_keyword("transaction");
    Transaction t;
    t.span = kw.span;
    t.app = app;
    t.name = expect_ident("transaction name").text;
    expect_punct(":");
    std::vector<QidRef> path{parse_qid()};
    while (at_punct("->")) {
      next();
      path.push_back(parse_qid());
    }
    expect_keyword("uses");
    t.service = expect_ident("service name").text;
    if (at_keyword("rate")) {
      next();
      t.rate = expect_number("rate");
      expect_punct("/");
      expect_keyword("s");
    }
    if (at_keyword("size")) {
      next();
      t.payload = expect_number("size");
      expect_keyword("B");
    }
    expect_punct(";");
    for (const auto& hop : path) t.path.push_back(hop.text);
    path_refs_.push_back(std::move(path));
    return t;
  }

  // Innermost scope first, then enclosing scopes, then top level.
  std::optional<std::string> lookup(const std::string& scope, const std::string& qid) const {
    std::string s = scope;
    while (true) {
      std::string candidate = qualify(s, qid);
      if (declared_.count(candidate)) return candidate;
      if (s.empty()) return std::nullopt;
      auto dot = s.rfind('.');
      s = dot == std::string::npos ? "" : s.substr(0, dot);
    }
  }

  void unknown(const QidRef& ref) {
    errors_.push_back(
        make_error(Code::kUnknownComponent, "unknown component '" + ref.text + "'", ref.span));
  }

  void resolve() {
    for (const auto& pending : links_) {
      auto from = lookup(pending.scope, pending.from.text);
      auto to = lookup(pending.scope, pending.to.text);
      if (!from) unknown(pending.from);
      if (!to) unknown(pending.to);
      if (from && to) platform_.links.push_back(Link{*from, *to, pending.span});
    }
    for (const auto& refs : symmetry_refs_) {
      for (const auto& ref : refs) {
        if (!declared_.count(ref.text)) unknown(ref);
      }
    }
    for (const auto& refs : path_refs_) {
      for (const auto& ref : refs) {
        if (!declared_.count(ref.text)) unknown(ref);
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Platform platform_;
  std::set<std::string> declared_;
  std::vector<PendingLink> links_;
  std::vector<std::vector<QidRef>> symmetry_refs_;
  std::vector<std::vector<QidRef>> path_refs_;
  std::vector<Diagnostic> errors_;
};

// ---------------------------------------------------------------------------
// Rendering

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string indent(int depth) { return std::string(static_cast<std::size_t>(depth) * 2, ' '); }

bool has_attrs(const Component& c) {
  return !c.services.empty() || c.capacity || c.classification || c.accelerator;
}

}  // namespace

Result<Platform> parse(std::string_view text, std::string_view file) {
  std::vector<Token> tokens;
  try {
    tokens = Lexer(text, std::string(file)).run();
  } catch (const ParseError& e) {
    return Result<Platform>::failure({e.diagnostic});
  }
  return Parser(std::move(tokens)).run();
}

Result<Platform> parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return Result<Platform>::failure(
        {make_error(Code::kIo, "cannot read '" + path + "'", SourceSpan{path, 1, 1})});
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

std::string render_component(const Component& c, int depth) {
  std::ostringstream out;
  const std::string pad = indent(depth);
  if (c.role == Role::kComposite) {
    out << pad << "composite " << c.name << " {\n";
    for (const auto& child : c.children) out << render_component(child, depth + 1);
    out << pad << "}\n";
    return out.str();
  }
  out << pad << role_name(c.role) << ' ' << c.name;
  if (!has_attrs(c)) {
    out << ";\n";
    return out.str();
  }
  const std::string inner = indent(depth + 1);
  out << " {\n";
  if (!c.services.empty()) {
    out << inner << "service ";
    bool first = true;
    for (const auto& s : c.services) {
      out << (first ? "" : ", ") << s;
      first = false;
    }
    out << ";\n";
  }
  if (c.capacity) out << inner << "capacity " << *c.capacity << " Bps;\n";
  if (c.classification) {
    const auto& dc = *c.classification;
    out << inner << "class " << origin_name(dc.origin) << ' ' << complexity_name(dc.complexity);
    if (!dc.notes.empty()) out << " \"" << escape(dc.notes) << '"';
    out << ";\n";
  }
  if (c.accelerator) {
    const auto& acc = *c.accelerator;
    out << inner << "accelerator " << coupling_name(acc.coupling) << ' ';
    if (acc.access.unitary()) out << "unitary";
    else out << "parallel " << acc.access.parallelism;
    out << ";\n";
  }
  out << pad << "};\n";
  return out.str();
}

std::string render_link(const Link& link) {
  return "link " + link.from + " -> " + link.to + ";";
}

std::string render_symmetry(const SymmetryClass& sc) {
  std::string out = "symmetry " + sc.name + " { ";
  for (std::size_t i = 0; i < sc.members.size(); ++i) {
    if (i) out += ", ";
    out += sc.members[i];
  }
  return out + " }";
}

std::string render_transaction(const Transaction& t) {
  std::string out = "transaction " + t.name + ": ";
  for (std::size_t i = 0; i < t.path.size(); ++i) {
    if (i) out += " -> ";
    out += t.path[i];
  }
  out += " uses " + t.service;
  if (t.rate) out += " rate " + std::to_string(t.rate) + "/s";
  if (t.payload) out += " size " + std::to_string(t.payload) + " B";
  return out + ";";
}

std::string render(const Platform& input) {
  auto diagnostics = validate_platform(input);
  if (!diagnostics.empty()) {
    throw Error(Code::kNotValidated, "cannot render invalid platform '" + input.name + "'",
                std::move(diagnostics));
  }
  const Platform p = canonical(input);
  std::ostringstream out;
  out << "platform " << p.name << " {\n";
  for (const auto& c : p.components) out << render_component(c, 1);
  if (!p.links.empty()) {
    out << '\n';
    for (const auto& link : p.links) out << indent(1) << render_link(link) << '\n';
  }
  if (!p.symmetries.empty()) {
    out << '\n';
    for (const auto& sc : p.symmetries) out << indent(1) << render_symmetry(sc) << '\n';
  }
  for (const auto& app : p.applications) {
    out << '\n' << indent(1) << "application " << app.name << " {\n";
    for (const auto& t : app.transactions) out << indent(2) << render_transaction(t) << '\n';
    out << indent(1) << "}\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace itfkit
