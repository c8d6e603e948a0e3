#include "acprg/text_format.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "acprg/error.hpp"

namespace acprg {

namespace {

struct Line {
  std::string_view text;
  std::size_t number;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0, number = 1;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back({line, number++});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_skippable(std::string_view line) {
  line = trim(line);
  return line.empty() || (line.front() == 'c' && (line.size() == 1 || line[1] == ' ' || line[1] == '\t'));
}

std::vector<long> parse_ints(std::string_view line, std::size_t number) {
  std::vector<long> out;
  std::size_t pos = 0;
  while (true) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos >= line.size()) break;
    long v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), v);
    if (ec != std::errc() || (ptr < line.data() + line.size() && !std::isspace(static_cast<unsigned char>(*ptr))))
      throw ParseError("expected an integer literal", number);
    out.push_back(v);
    pos = static_cast<std::size_t>(ptr - line.data());
  }
  return out;
}

struct Header {
  std::string kind;
  std::size_t n = 0;
  std::size_t m = 0;
  bool has_m = false;
};

Header parse_header(std::string_view line, std::size_t number) {
  std::istringstream in{std::string(line)};
  Header h;
  in >> h.kind;
  std::string field;
  bool has_n = false;
  while (in >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError("header fields look like key=value", number);
    const std::string key = field.substr(0, eq);
    std::size_t value = 0;
    const char* b = field.data() + eq + 1;
    const char* e = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(b, e, value);
    if (ec != std::errc() || ptr != e) throw ParseError("bad header value for " + key, number);
    if (key == "n") {
      h.n = value;
      has_n = true;
    } else if (key == "m") {
      h.m = value;
      h.has_m = true;
    } else {
      throw ParseError("unknown header field " + key, number);
    }
  }
  if (!has_n) throw ParseError("header is missing n=", number);
  return h;
}

Term parse_term(std::string_view line, std::size_t number, std::size_t n) {
  auto ints = parse_ints(line, number);
  if (!ints.empty() && ints.back() == 0) ints.pop_back();
  std::vector<Literal> lits;
  for (long v : ints) {
    if (v == 0) throw ParseError("0 may only terminate a line", number);
    if (static_cast<std::size_t>(v < 0 ? -v : v) > n) throw ParseError("literal exceeds n", number);
    lits.push_back(Literal::from_dimacs(static_cast<int>(v)));
  }
  try {
    return Term(std::move(lits));
  } catch (const MalformedInput& e) {
    throw ParseError(e.what(), number);
  }
}

// Parses consecutive blocks of the given kind; each block collects its term lines.
template <typename Sink>
void parse_blocks(std::string_view text, std::string_view kind, Sink&& sink) {
  const auto lines = split_lines(text);
  bool open = false;
  Header header;
  std::vector<Term> terms;
  std::size_t header_line = 0;
  auto close = [&] {
    if (!open) return;
    if (header.has_m && header.m != terms.size())
      throw ParseError("header declares m=" + std::to_string(header.m) + " but block has " +
                           std::to_string(terms.size()) + " lines",
                       header_line);
    sink(header.n, std::move(terms));
    terms.clear();
  };
  for (const auto& [raw, number] : lines) {
    if (is_skippable(raw)) continue;
    const auto line = trim(raw);
    if (std::isalpha(static_cast<unsigned char>(line.front()))) {
      close();
      header = parse_header(line, number);
      if (header.kind != kind) throw ParseError("expected a " + std::string(kind) + " header", number);
      header_line = number;
      open = true;
      continue;
    }
    if (!open) throw ParseError("literal line before header", number);
    terms.push_back(parse_term(line, number, header.n));
  }
  if (!open) throw ParseError("missing " + std::string(kind) + " header", 1);
  close();
}

void write_term(std::string& out, const Term& t) {
  bool first = true;
  for (const auto& l : t.literals()) {
    if (!first) out += ' ';
    out += std::to_string(l.to_dimacs());
    first = false;
  }
  if (t.empty()) out += '0';
  out += '\n';
}

}  // namespace

DnfFormula parse_dnf(std::string_view text) {
  auto family = parse_family(text);
  if (family.size() != 1) throw ParseError("expected exactly one dnf block", 1);
  return std::move(family.front());
}

std::vector<DnfFormula> parse_family(std::string_view text) {
  std::vector<DnfFormula> out;
  parse_blocks(text, "dnf", [&](std::size_t n, std::vector<Term> terms) { out.emplace_back(n, std::move(terms)); });
  return out;
}

CnfFormula parse_cnf(std::string_view text) {
  std::vector<CnfFormula> out;
  parse_blocks(text, "cnf", [&](std::size_t n, std::vector<Term> clauses) { out.emplace_back(n, std::move(clauses)); });
  if (out.size() != 1) throw ParseError("expected exactly one cnf block", 1);
  return std::move(out.front());
}

std::string to_text(const DnfFormula& f) {
  std::string out = "dnf n=" + std::to_string(f.dimension()) + " m=" + std::to_string(f.term_count()) + "\n";
  for (const auto& t : f.terms()) write_term(out, t);
  return out;
}

std::string to_text(const CnfFormula& h) {
  std::string out = "cnf n=" + std::to_string(h.dimension()) + " m=" + std::to_string(h.clause_count()) + "\n";
  for (const auto& c : h.clauses()) write_term(out, c);
  return out;
}

std::string to_text(const std::vector<DnfFormula>& family) {
  std::string out;
  for (const auto& f : family) out += to_text(f);
  return out;
}

Ac0Circuit parse_circuit(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && is_skippable(lines[i].text)) ++i;
  if (i == lines.size()) throw ParseError("missing ac0 header", 1);
  const Header header = parse_header(trim(lines[i].text), lines[i].number);
  if (header.kind != "ac0") throw ParseError("expected an ac0 header", lines[i].number);

  std::string body;
  std::vector<std::size_t> line_of;  // line number of every body character
  for (++i; i < lines.size(); ++i) {
    if (is_skippable(lines[i].text)) continue;
    for (char ch : lines[i].text) {
      body += ch;
      line_of.push_back(lines[i].number);
    }
    body += ' ';
    line_of.push_back(lines[i].number);
  }

  Ac0Circuit c(header.n);
  std::size_t pos = 0;
  auto line_at = [&](std::size_t p) { return line_of.empty() ? 1 : line_of[std::min(p, line_of.size() - 1)]; };
  auto skip = [&] {
    while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos]))) ++pos;
  };
  auto parse = [&](auto&& self) -> std::uint32_t {
    skip();
    if (pos >= body.size()) throw ParseError("unexpected end of circuit", line_at(pos));
    if (body[pos] == '(') {
      ++pos;
      skip();
      const std::size_t start = pos;
      while (pos < body.size() && std::isalpha(static_cast<unsigned char>(body[pos]))) ++pos;
      const std::string op = body.substr(start, pos - start);
      GateKind kind;
      if (op == "and")
        kind = GateKind::And;
      else if (op == "or")
        kind = GateKind::Or;
      else
        throw ParseError("unknown gate '" + op + "'", line_at(start));
      std::vector<std::uint32_t> inputs;
      while (true) {
        skip();
        if (pos >= body.size()) throw ParseError("unterminated gate", line_at(pos));
        if (body[pos] == ')') {
          ++pos;
          break;
        }
        inputs.push_back(self(self));
      }
      try {
        return c.add_gate(kind, std::move(inputs));
      } catch (const MalformedInput& e) {
        throw ParseError(e.what(), line_at(start));
      }
    }
    long v = 0;
    auto [ptr, ec] = std::from_chars(body.data() + pos, body.data() + body.size(), v);
    if (ec != std::errc() || v == 0) throw ParseError("expected a literal or '('", line_at(pos));
    if (static_cast<std::size_t>(v < 0 ? -v : v) > header.n) throw ParseError("literal exceeds n", line_at(pos));
    pos = static_cast<std::size_t>(ptr - body.data());
    return c.add_input(Literal::from_dimacs(static_cast<int>(v)));
  };
  const auto out = parse(parse);
  skip();
  if (pos != body.size()) throw ParseError("trailing text after circuit", line_at(pos));
  c.set_output(out);
  return c;
}

std::string to_sexpr(const Ac0Circuit& c) {
  std::string out;
  auto emit = [&](auto&& self, std::uint32_t id) -> void {
    const Gate& g = c.gate(id);
    if (g.kind == GateKind::Input) {
      out += std::to_string(g.literal.to_dimacs());
      return;
    }
    out += g.kind == GateKind::And ? "(and" : "(or";
    for (auto i : g.inputs) {
      out += ' ';
      self(self, i);
    }
    out += ')';
  };
  emit(emit, c.output());
  return out;
}

std::string to_text(const Ac0Circuit& c) {
  return "ac0 n=" + std::to_string(c.dimension()) + "\n" + to_sexpr(c) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace acprg
