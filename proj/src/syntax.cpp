#include "pnet/syntax.hpp"

#include <cctype>

namespace pnet {

std::string print_tree(const Tree& t) {
  switch (t.kind) {
    case Kind::Var: return t.name;
    case Kind::One: return "1@" + t.name;
    case Kind::Bot: return "bot@" + t.name;
    case Kind::Coweak: return "!0@" + t.name;
    case Kind::Weak: return "?0@" + t.name;
    case Kind::Port: return "port(" + t.name + ", " + std::to_string(t.port) + ")";
    default: break;
  }
  std::string s = kind_name(t.kind);
  s += "(";
  for (std::size_t i = 0; i < t.kids.size(); ++i) {
    if (i) s += ", ";
    s += print_tree(t.kids[i]);
  }
  return s + ")";
}

std::string print_net(const Net& net) {
  std::string s = "(";
  for (std::size_t i = 0; i < net.cuts.size(); ++i) {
    if (i) s += ", ";
    s += "<" + print_tree(net.cuts[i].left) + " | " + print_tree(net.cuts[i].right) + ">";
  }
  s += net.cuts.empty() ? ";" : " ;";
  for (std::size_t i = 0; i < net.conclusions.size(); ++i) s += (i ? ", " : " ") + print_tree(net.conclusions[i]);
  s += ")";
  if (!net.jumps.empty()) {
    s += " jumps {";
    bool first = true;
    for (const auto& [label, target] : net.jumps) {
      s += first ? " " : ", ";
      first = false;
      s += label + " -> " + addr_string(target);
    }
    s += " }";
  }
  return s;
}

std::string print_mell(const MellNet& m) {
  std::string s;
  for (const Box& b : m.boxes)
    s += "box " + b.id + " arity " + std::to_string(b.arity) + " { " + print_mell(b.content) + " } ";
  return s + print_net(m.net);
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  [[noreturn]] void fail(const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Errc::SyntaxError, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  void expect_arrow() {
    skip();
    if (s_.substr(pos_, 2) != "->") fail("expected '->'");
    pos_ += 2;
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(s_.substr(start, pos_ - start));
  }

  int number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected number");
    if (pos_ - start > 9) fail("number too large");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  // Peeks the identifier at the cursor without consuming it.
  std::string peek_ident() {
    skip();
    std::size_t p = pos_;
    while (p < s_.size() && ident_char(s_[p])) ++p;
    return std::string(s_.substr(pos_, p - pos_));
  }

  char char_after_ident() {
    std::size_t save = pos_;
    ident();
    char c = peek();
    pos_ = save;
    return c;
  }

  Tree leaf_after_at(Kind k) {
    expect('@');
    return Tree::leaf(k, ident());
  }

  Tree tree() {
    char c = peek();
    if (c == '!' || c == '?') {
      ++pos_;
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '0') fail("expected '0' after '!'/'?'");
      ++pos_;
      return leaf_after_at(c == '!' ? Kind::Coweak : Kind::Weak);
    }
    if (c == '1' && pos_ + 1 < s_.size() && !ident_char(s_[pos_ + 1])) {
      ++pos_;
      return leaf_after_at(Kind::One);
    }
    std::string w = peek_ident();
    if (w.empty()) fail("expected tree");
    char next = char_after_ident();
    if (w == "bot" && next == '@') {
      ident();
      return leaf_after_at(Kind::Bot);
    }
    if (next == '(') {
      static const std::map<std::string, Kind> conn{
          {"tensor", Kind::Tensor}, {"par", Kind::Par}, {"bang", Kind::Bang}, {"quest", Kind::Quest}};
      ident();
      if (w == "port") {
        expect('(');
        std::string b = ident();
        expect(',');
        int i = number();
        expect(')');
        return Tree::port_of(b, i);
      }
      auto it = conn.find(w);
      if (it == conn.end()) fail("unknown connective '" + w + "'");
      expect('(');
      std::vector<Tree> kids;
      if (peek() == ')') fail("connective '" + w + "' needs at least one premise");
      do {
        kids.push_back(tree());
      } while (accept(','));
      expect(')');
      return Tree::node(it->second, std::move(kids));
    }
    std::string name = ident();
    if (accept('*')) name += "*";
    return Tree::var(name);
  }

  Addr addr() {
    Addr a;
    skip();
    char c = pos_ < s_.size() ? s_[pos_] : '\0';
    if (c != 't' && c != 'c') fail("expected address");
    ++pos_;
    a.in_cut = c == 'c';
    a.index = number() - 1;
    if (a.index < 0) fail("addresses are 1-based");
    if (a.in_cut) {
      expect('.');
      skip();
      char side = pos_ < s_.size() ? s_[pos_] : '\0';
      if (side != 'L' && side != 'R') fail("expected L or R");
      ++pos_;
      a.right = side == 'R';
    }
    while (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      int i = number();
      if (i < 1) fail("premise indices are 1-based");
      a.path.push_back(i);
    }
    return a;
  }

  Net net() {
    Net n;
    expect('(');
    if (peek() != ';') {
      do {
        expect('<');
        Cut cut;
        cut.left = tree();
        expect('|');
        cut.right = tree();
        expect('>');
        n.cuts.push_back(std::move(cut));
      } while (accept(','));
    }
    expect(';');
    if (peek() != ')') {
      do {
        n.conclusions.push_back(tree());
      } while (accept(','));
    }
    expect(')');
    if (peek_ident() == "jumps") {
      ident();
      expect('{');
      if (peek() != '}') {
        do {
          std::string label = ident();
          expect_arrow();
          Addr a = addr();
          if (!n.jumps.emplace(label, a).second) fail("jump for '" + label + "' given twice");
        } while (accept(','));
      }
      expect('}');
    }
    return n;
  }

  MellNet mell() {
    MellNet m;
    while (peek_ident() == "box") {
      ident();
      Box b;
      b.id = ident();
      if (ident() != "arity") fail("expected 'arity'");
      b.arity = number();
      expect('{');
      b.content = mell();
      expect('}');
      m.boxes.push_back(std::move(b));
    }
    m.net = net();
    return m;
  }

  void finish() {
    if (!at_end()) fail("trailing input");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Net parse_net(std::string_view text) {
  Parser p(text);
  Net n = p.net();
  p.finish();
  return n;
}

MellNet parse_mell(std::string_view text) {
  Parser p(text);
  MellNet m = p.mell();
  p.finish();
  return m;
}

Tree parse_tree(std::string_view text) {
  Parser p(text);
  Tree t = p.tree();
  p.finish();
  return t;
}

Addr parse_addr(std::string_view text) {
  Parser p(text);
  Addr a = p.addr();
  p.finish();
  return a;
}

}  // namespace pnet
