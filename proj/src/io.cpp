#include "modal/io.hpp"

#include <algorithm>
#include <sstream>

namespace modal {

namespace {

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string join(const std::vector<std::string>& parts, const char* sep = " ") {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// "key: a b\n", or "key:\n" when the list is empty.
std::string list_field(const char* key, const std::vector<std::string>& parts) {
  std::string out = key;
  out += ":";
  if (!parts.empty()) {
    out += " ";
    out += join(parts);
  }
  out += "\n";
  return out;
}

std::string escape(const std::string& raw) {
  std::string out;
  for (char c : raw) {
    switch (c) {
      case '\n':
        out += "\\n";
        break;
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string unescape(const std::string& text, int line) {
  std::string out;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '\\') {
      out += text[i];
      continue;
    }
    if (i + 1 >= text.size())
      throw ParseError(line, static_cast<int>(i) + 1, "dangling escape");
    char c = text[++i];
    if (c == 'n')
      out += '\n';
    else if (c == '"')
      out += '"';
    else if (c == '\\')
      out += '\\';
    else
      throw ParseError(line, static_cast<int>(i) + 1, "unknown escape");
  }
  return out;
}

}  // namespace

std::string serialize_formula(const Hml& f) {
  switch (f.kind()) {
    case Hml::Kind::True:
      return "tt";
    case Hml::Kind::False:
      return "ff";
    case Hml::Kind::And:
      return "(and " + serialize_formula(f.left()) + " " +
             serialize_formula(f.right()) + ")";
    case Hml::Kind::Or:
      return "(or " + serialize_formula(f.left()) + " " +
             serialize_formula(f.right()) + ")";
    case Hml::Kind::Diamond:
      return "(dia " + f.label() + " " + serialize_formula(f.left()) + ")";
    case Hml::Kind::Box:
      return "(box " + f.label() + " " + serialize_formula(f.left()) + ")";
    case Hml::Kind::Var:
      return "(var " + f.name() + ")";
  }
  return "";
}

std::string serialize(const Lts& m) {
  std::ostringstream out;
  out << "kind: lts\n";
  out << list_field("alphabet", m.alphabet().labels());
  out << list_field("states", m.states());
  out << "initial: " << m.state_name(m.initial()) << "\n";
  for (const Lts::Transition& t : m.transitions())
    out << "trans: " << m.state_name(t.src) << " "
        << m.alphabet().label(t.label) << " " << m.state_name(t.dst) << "\n";
  return out.str();
}

std::string serialize(const Hmlr& h) {
  std::ostringstream out;
  out << "kind: hmlr\n";
  out << list_field("alphabet", h.alphabet().labels());
  out << list_field("vars", h.vars());
  out << list_field("initials", h.initials());
  for (const std::string& v : h.vars())
    out << "decl: " << v << " = " << serialize_formula(h.decl(v)) << "\n";
  return out.str();
}

std::string serialize(const NormalForm& s) {
  std::ostringstream out;
  out << "kind: nf\n";
  out << list_field("alphabet", s.alphabet().labels());
  out << list_field("vars", s.vars());
  std::vector<std::string> initials;
  for (int i : s.initials()) initials.push_back(s.var_name(i));
  out << list_field("initials", initials);
  for (int v = 0; v < s.num_vars(); ++v) {
    for (const DiamondSet& n : s.diamonds(v)) {
      out << "dia: " << s.var_name(v) << " {";
      for (size_t i = 0; i < n.size(); ++i) {
        out << (i ? " , " : " ") << s.alphabet().label(n[i].first) << " "
            << s.var_name(n[i].second);
      }
      out << " }\n";
    }
  }
  for (int v = 0; v < s.num_vars(); ++v)
    for (int a = 0; a < s.alphabet().size(); ++a) {
      out << "box: " << s.var_name(v) << " " << s.alphabet().label(a) << " {";
      for (int target : s.boxes(v, a)) out << " " << s.var_name(target);
      out << " }\n";
    }
  return out.str();
}

std::string serialize(const Naa& a) {
  std::ostringstream out;
  out << "kind: naa\n";
  out << list_field("alphabet", a.alphabet().labels());
  out << list_field("states", a.states());
  std::vector<std::string> initials;
  for (int i : a.initials()) initials.push_back(a.state_name(i));
  out << list_field("initials", initials);
  for (int s = 0; s < a.num_states(); ++s)
    for (const AccSet& m : a.tran(s)) {
      out << "acc: " << a.state_name(s) << " {";
      for (size_t i = 0; i < m.size(); ++i)
        out << (i ? " , " : " ") << a.alphabet().label(m[i].first) << " "
            << a.state_name(m[i].second);
      out << " }\n";
    }
  return out.str();
}

std::string serialize(const AuditReport& r) {
  std::ostringstream out;
  out << "kind: report\n";
  out << "seed: " << r.seed << "\n";
  out << "cases: " << r.cases << "\n";
  out << list_field("alphabet", r.alphabet);
  out << "max-states: " << r.max_states << "\n";
  out << "max-vars: " << r.max_vars << "\n";
  for (const LawResult& law : r.laws) {
    out << "law: " << law.suite << " " << law.id << " cases=" << law.cases
        << " failures=" << law.failures;
    if (law.informative) out << " informative";
    if (!law.counterexample.empty())
      out << " counterexample=\"" << escape(law.counterexample) << "\"";
    out << "\n";
  }
  out << "flag: L " << flag_text(r.logical) << "\n";
  out << "flag: C " << flag_text(r.compositional) << "\n";
  out << "flag: Q " << flag_text(r.complete) << "\n";
  out << "unital: " << (r.unital ? "yes" : "no") << "\n";
  out << "classification: " << r.classification << "\n";
  out << "algebra: " << r.algebra << "\n";
  out << "caveat: " << r.caveat << "\n";
  for (const BlowupRow& row : r.blowup)
    out << "blowup: n=" << row.n << " tran-sets=" << row.tran_sets
        << " nf-vars=" << row.nf_vars << " nf-diamond-sets="
        << row.nf_diamond_sets << "\n";
  return out.str();
}

std::string pretty_report(const AuditReport& r) {
  std::ostringstream out;
  out << "algebra audit (seed " << r.seed << ", " << r.cases
      << " cases per law)\n";
  std::string suite;
  for (const LawResult& law : r.laws) {
    if (law.suite != suite) {
      suite = law.suite;
      out << "  " << suite << "\n";
    }
    out << "    " << law.id << ": " << (law.failures == 0 ? "ok" : "FAILED")
        << " (" << law.cases << " cases, " << law.failures << " failures"
        << (law.informative ? ", informative" : "") << ")\n";
  }
  out << "  flags: L=" << flag_text(r.logical)
      << " C=" << flag_text(r.compositional)
      << " Q=" << flag_text(r.complete) << " unital=" << (r.unital ? "yes" : "no")
      << "\n";
  out << "  classification: " << r.classification << " (" << r.algebra
      << ")\n";
  out << "  caveat: " << r.caveat << "\n";
  out << "  translation blow-up (acceptance sets vs diamond sets):\n";
  for (const BlowupRow& row : r.blowup)
    out << "    n=" << row.n << " tran-sets=" << row.tran_sets
        << " nf-vars=" << row.nf_vars
        << " nf-diamond-sets=" << row.nf_diamond_sets << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

struct Cursor {
  struct Line {
    int number;
    std::string key;
    std::string rest;
  };
  std::vector<Line> lines;
  size_t pos = 0;

  explicit Cursor(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' '))
        raw.pop_back();
      if (raw.empty()) continue;
      size_t colon = raw.find(':');
      if (colon == std::string::npos)
        throw ParseError(number, 1, "expected 'key: value'");
      std::string key = raw.substr(0, colon);
      std::string rest = raw.substr(colon + 1);
      if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
      lines.push_back({number, key, rest});
    }
  }

  bool done() const { return pos >= lines.size(); }
  const Line& peek() const {
    if (done()) throw ParseError(last_line() + 1, 1, "unexpected end of document");
    return lines[pos];
  }
  Line take() {
    Line l = peek();
    ++pos;
    return l;
  }
  int last_line() const {
    return lines.empty() ? 0 : lines.back().number;
  }
  std::string expect(const char* key) {
    const Line& l = peek();
    if (l.key != key)
      throw ParseError(l.number, 1, std::string("expected '") + key +
                                        ":' but found '" + l.key + ":'");
    return take().rest;
  }
};

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

long long parse_number(const std::string& token, int line) {
  try {
    size_t used = 0;
    long long value = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument("trailing");
    return value;
  } catch (const std::exception&) {
    throw ParseError(line, 1, "expected a number, found '" + token + "'");
  }
}

// Tokenizes a formula or set line: the reserved punctuation splits,
// everything else is whitespace-separated.
std::vector<std::string> formula_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (c == '(' || c == ')' || c == '{' || c == '}' || c == ',') {
      if (!current.empty()) {
        tokens.push_back(current);
        current.clear();
      }
      tokens.push_back(std::string(1, c));
    } else if (c == ' ' || c == '\t') {
      if (!current.empty()) {
        tokens.push_back(current);
        current.clear();
      }
    } else {
      current += c;
    }
  }
  if (!current.empty()) tokens.push_back(current);
  return tokens;
}

Hml parse_formula_tokens(const std::vector<std::string>& tokens, size_t& pos,
                         int line) {
  auto need = [&](const char* what) -> const std::string& {
    if (pos >= tokens.size())
      throw ParseError(line, 1, std::string("formula ended while expecting ") + what);
    return tokens[pos];
  };
  const std::string& t = need("a formula");
  ++pos;
  if (t == "tt") return Hml::tt();
  if (t == "ff") return Hml::ff();
  if (t != "(")
    throw ParseError(line, 1, "expected 'tt', 'ff' or '(' in formula, found '" + t + "'");
  const std::string& op = need("an operator");
  ++pos;
  Hml result = Hml::tt();
  if (op == "and" || op == "or") {
    Hml l = parse_formula_tokens(tokens, pos, line);
    Hml r = parse_formula_tokens(tokens, pos, line);
    result = op == "and" ? Hml::conj(l, r) : Hml::disj(l, r);
  } else if (op == "dia" || op == "box") {
    const std::string& label = need("a label");
    ++pos;
    Hml sub = parse_formula_tokens(tokens, pos, line);
    result = op == "dia" ? Hml::dia(label, sub) : Hml::box(label, sub);
  } else if (op == "var") {
    const std::string& name = need("a variable name");
    ++pos;
    result = Hml::var(name);
  } else {
    throw ParseError(line, 1, "unknown formula operator '" + op + "'");
  }
  if (need("')'") != ")")
    throw ParseError(line, 1, "expected ')' in formula");
  ++pos;
  return result;
}

// Parses "{ a v , b u }"-style pair sets from a token stream.
std::vector<std::pair<std::string, std::string>> parse_pair_set(
    const std::vector<std::string>& tokens, size_t& pos, int line) {
  std::vector<std::pair<std::string, std::string>> out;
  if (pos >= tokens.size() || tokens[pos] != "{")
    throw ParseError(line, 1, "expected '{'");
  ++pos;
  while (pos < tokens.size() && tokens[pos] != "}") {
    if (!out.empty()) {
      if (tokens[pos] != ",")
        throw ParseError(line, 1, "expected ',' between pairs");
      ++pos;
    }
    if (pos + 1 >= tokens.size())
      throw ParseError(line, 1, "expected 'label target' pair");
    out.emplace_back(tokens[pos], tokens[pos + 1]);
    pos += 2;
  }
  if (pos >= tokens.size())
    throw ParseError(line, 1, "missing '}'");
  ++pos;
  return out;
}

Lts parse_lts_body(Cursor& cur) {
  Alphabet alphabet(split_tokens(cur.expect("alphabet")));
  std::vector<std::string> states = split_tokens(cur.expect("states"));
  std::string initial_line = cur.expect("initial");
  std::vector<std::string> initial_tokens = split_tokens(initial_line);
  if (initial_tokens.size() != 1)
    throw ParseError(cur.last_line(), 1, "expected exactly one initial state");
  std::vector<std::tuple<std::string, std::string, std::string>> trans;
  while (!cur.done()) {
    Cursor::Line l = cur.take();
    if (l.key != "trans")
      throw ParseError(l.number, 1, "unexpected '" + l.key + ":' in lts document");
    std::vector<std::string> t = split_tokens(l.rest);
    if (t.size() != 3)
      throw ParseError(l.number, 1, "expected 'trans: source label target'");
    trans.emplace_back(t[0], t[1], t[2]);
  }
  return Lts(alphabet, states, initial_tokens[0], trans);
}

Hmlr parse_hmlr_body(Cursor& cur) {
  Alphabet alphabet(split_tokens(cur.expect("alphabet")));
  std::vector<std::string> vars = split_tokens(cur.expect("vars"));
  std::vector<std::string> initials = split_tokens(cur.expect("initials"));
  std::map<std::string, Hml> decl;
  while (!cur.done()) {
    Cursor::Line l = cur.take();
    if (l.key != "decl")
      throw ParseError(l.number, 1, "unexpected '" + l.key + ":' in hmlr document");
    std::vector<std::string> tokens = formula_tokens(l.rest);
    if (tokens.size() < 2 || tokens[1] != "=")
      throw ParseError(l.number, 1, "expected 'decl: variable = formula'");
    size_t pos = 2;
    Hml body = parse_formula_tokens(tokens, pos, l.number);
    if (pos != tokens.size())
      throw ParseError(l.number, 1, "trailing tokens after formula");
    if (!decl.emplace(tokens[0], body).second)
      throw ParseError(l.number, 1, "duplicate declaration for '" + tokens[0] + "'");
  }
  return Hmlr(alphabet, vars, initials, decl);
}

NormalForm parse_nf_body(Cursor& cur) {
  Alphabet alphabet(split_tokens(cur.expect("alphabet")));
  std::vector<std::string> vars = split_tokens(cur.expect("vars"));
  std::vector<std::string> initials = split_tokens(cur.expect("initials"));
  std::map<std::string,
           std::vector<std::set<std::pair<std::string, std::string>>>>
      diamonds;
  std::map<std::string, std::map<std::string, std::set<std::string>>> boxes;
  for (const std::string& v : vars) {
    diamonds[v];
    auto& by_label = boxes[v];
    for (const std::string& l : alphabet.labels()) by_label[l];
  }
  while (!cur.done()) {
    Cursor::Line l = cur.take();
    std::vector<std::string> tokens = formula_tokens(l.rest);
    size_t pos = 0;
    if (l.key == "dia") {
      if (tokens.empty())
        throw ParseError(l.number, 1, "expected 'dia: variable { ... }'");
      std::string v = tokens[pos++];
      auto pairs = parse_pair_set(tokens, pos, l.number);
      if (pos != tokens.size())
        throw ParseError(l.number, 1, "trailing tokens after set");
      diamonds[v].push_back({pairs.begin(), pairs.end()});
    } else if (l.key == "box") {
      if (tokens.size() < 2)
        throw ParseError(l.number, 1, "expected 'box: variable label { ... }'");
      std::string v = tokens[pos++];
      std::string label = tokens[pos++];
      if (pos >= tokens.size() || tokens[pos] != "{")
        throw ParseError(l.number, 1, "expected '{'");
      ++pos;
      std::set<std::string> targets;
      while (pos < tokens.size() && tokens[pos] != "}")
        targets.insert(tokens[pos++]);
      if (pos >= tokens.size())
        throw ParseError(l.number, 1, "missing '}'");
      ++pos;
      if (pos != tokens.size())
        throw ParseError(l.number, 1, "trailing tokens after set");
      boxes[v][label] = std::move(targets);
    } else {
      throw ParseError(l.number, 1, "unexpected '" + l.key + ":' in nf document");
    }
  }
  return NormalForm(alphabet, vars, initials, diamonds, boxes);
}

Naa parse_naa_body(Cursor& cur) {
  Alphabet alphabet(split_tokens(cur.expect("alphabet")));
  std::vector<std::string> states = split_tokens(cur.expect("states"));
  std::vector<std::string> initials = split_tokens(cur.expect("initials"));
  std::map<std::string,
           std::vector<std::set<std::pair<std::string, std::string>>>>
      tran;
  for (const std::string& s : states) tran[s];
  while (!cur.done()) {
    Cursor::Line l = cur.take();
    if (l.key != "acc")
      throw ParseError(l.number, 1, "unexpected '" + l.key + ":' in naa document");
    std::vector<std::string> tokens = formula_tokens(l.rest);
    if (tokens.empty())
      throw ParseError(l.number, 1, "expected 'acc: state { ... }'");
    size_t pos = 0;
    std::string s = tokens[pos++];
    auto pairs = parse_pair_set(tokens, pos, l.number);
    if (pos != tokens.size())
      throw ParseError(l.number, 1, "trailing tokens after set");
    tran[s].push_back({pairs.begin(), pairs.end()});
  }
  return Naa(alphabet, states, initials, tran);
}

Flag parse_flag_value(const std::string& text, int line) {
  if (text == "yes") return Flag::Yes;
  if (text == "partial") return Flag::Partial;
  if (text == "no") return Flag::No;
  throw ParseError(line, 1, "expected yes/partial/no, found '" + text + "'");
}

AuditReport parse_report_body(Cursor& cur) {
  AuditReport r;
  r.seed = static_cast<std::uint64_t>(
      parse_number(cur.expect("seed"), cur.last_line()));
  r.cases = static_cast<int>(parse_number(cur.expect("cases"), cur.last_line()));
  r.alphabet = split_tokens(cur.expect("alphabet"));
  r.max_states =
      static_cast<int>(parse_number(cur.expect("max-states"), cur.last_line()));
  r.max_vars =
      static_cast<int>(parse_number(cur.expect("max-vars"), cur.last_line()));

  while (!cur.done() && cur.peek().key == "law") {
    Cursor::Line l = cur.take();
    LawResult law;
    std::istringstream in(l.rest);
    std::string token;
    if (!(in >> law.suite >> law.id))
      throw ParseError(l.number, 1, "expected 'law: suite id ...'");
    while (in >> token) {
      if (token.rfind("cases=", 0) == 0)
        law.cases = static_cast<int>(parse_number(token.substr(6), l.number));
      else if (token.rfind("failures=", 0) == 0)
        law.failures =
            static_cast<int>(parse_number(token.substr(9), l.number));
      else if (token == "informative")
        law.informative = true;
      else if (token.rfind("counterexample=\"", 0) == 0) {
        std::string quoted = token.substr(16);
        std::string rest_of_line;
        std::getline(in, rest_of_line);
        quoted += rest_of_line;
        // Find the closing quote, honoring escapes.
        std::string content;
        bool closed = false;
        for (size_t i = 0; i < quoted.size(); ++i) {
          if (quoted[i] == '\\' && i + 1 < quoted.size()) {
            content += quoted[i];
            content += quoted[++i];
          } else if (quoted[i] == '"') {
            if (i + 1 != quoted.size())
              throw ParseError(l.number, 1,
                               "trailing content after counterexample");
            closed = true;
          } else {
            content += quoted[i];
          }
        }
        if (!closed)
          throw ParseError(l.number, 1, "unterminated counterexample string");
        law.counterexample = unescape(content, l.number);
      } else {
        throw ParseError(l.number, 1, "unknown law attribute '" + token + "'");
      }
    }
    r.laws.push_back(std::move(law));
  }

  for (const char* name : {"L", "C", "Q"}) {
    std::vector<std::string> tokens = split_tokens(cur.expect("flag"));
    if (tokens.size() != 2 || tokens[0] != name)
      throw ParseError(cur.last_line(), 1,
                       std::string("expected 'flag: ") + name + " ...'");
    Flag value = parse_flag_value(tokens[1], cur.last_line());
    if (tokens[0] == "L") r.logical = value;
    if (tokens[0] == "C") r.compositional = value;
    if (tokens[0] == "Q") r.complete = value;
  }
  {
    std::string u = cur.expect("unital");
    if (u != "yes" && u != "no")
      throw ParseError(cur.last_line(), 1, "expected 'unital: yes|no'");
    r.unital = u == "yes";
  }
  r.classification = cur.expect("classification");
  r.algebra = cur.expect("algebra");
  r.caveat = cur.expect("caveat");
  while (!cur.done()) {
    Cursor::Line l = cur.take();
    if (l.key != "blowup")
      throw ParseError(l.number, 1, "unexpected '" + l.key + ":' in report");
    BlowupRow row;
    for (const std::string& token : split_tokens(l.rest)) {
      if (token.rfind("n=", 0) == 0)
        row.n = static_cast<int>(parse_number(token.substr(2), l.number));
      else if (token.rfind("tran-sets=", 0) == 0)
        row.tran_sets =
            static_cast<int>(parse_number(token.substr(10), l.number));
      else if (token.rfind("nf-vars=", 0) == 0)
        row.nf_vars =
            static_cast<int>(parse_number(token.substr(8), l.number));
      else if (token.rfind("nf-diamond-sets=", 0) == 0)
        row.nf_diamond_sets =
            static_cast<int>(parse_number(token.substr(16), l.number));
      else
        throw ParseError(l.number, 1, "unknown blowup attribute '" + token + "'");
    }
    r.blowup.push_back(row);
  }
  return r;
}

}  // namespace

Hml parse_formula(const std::string& text) {
  std::vector<std::string> tokens = formula_tokens(text);
  size_t pos = 0;
  Hml f = parse_formula_tokens(tokens, pos, 1);
  if (pos != tokens.size()) throw ParseError(1, 1, "trailing tokens after formula");
  return f;
}

const char* Document::kind() const {
  switch (body.index()) {
    case 0:
      return "lts";
    case 1:
      return "hmlr";
    case 2:
      return "nf";
    case 3:
      return "naa";
    default:
      return "report";
  }
}

bool Document::operator==(const Document& other) const {
  return body == other.body;
}

Document parse(const std::string& text) {
  Cursor cur(text);
  std::string kind = cur.expect("kind");
  if (kind == "lts") return Document{parse_lts_body(cur)};
  if (kind == "hmlr") return Document{parse_hmlr_body(cur)};
  if (kind == "nf") return Document{parse_nf_body(cur)};
  if (kind == "naa") return Document{parse_naa_body(cur)};
  if (kind == "report") return Document{parse_report_body(cur)};
  throw ParseError(1, 1, "unknown document kind '" + kind + "'");
}

std::string serialize(const Document& doc) {
  return std::visit([](const auto& body) { return serialize(body); }, doc.body);
}

namespace {

template <typename T>
T expect_kind(const std::string& text, const char* kind) {
  Document doc = parse(text);
  if (const T* body = std::get_if<T>(&doc.body)) return *body;
  throw Error(std::string("expected a '") + kind + "' document, found '" +
              doc.kind() + "'");
}

}  // namespace

Lts parse_lts(const std::string& text) { return expect_kind<Lts>(text, "lts"); }
Hmlr parse_hmlr(const std::string& text) {
  return expect_kind<Hmlr>(text, "hmlr");
}
NormalForm parse_nf(const std::string& text) {
  return expect_kind<NormalForm>(text, "nf");
}
Naa parse_naa(const std::string& text) { return expect_kind<Naa>(text, "naa"); }
AuditReport parse_report(const std::string& text) {
  return expect_kind<AuditReport>(text, "report");
}

}  // namespace modal
