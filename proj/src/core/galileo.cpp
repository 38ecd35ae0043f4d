#include "sfpa/galileo.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "sfpa/error.h"

namespace sfpa {

namespace {

struct Token {
  enum class Type { kName, kWord, kSemicolon, kEquals } type;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> tokenize() {
    std::vector<Token> tokens;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == ';') {
        tokens.push_back({Token::Type::kSemicolon, ";", line_, column_});
        advance();
      } else if (c == '=') {
        tokens.push_back({Token::Type::kEquals, "=", line_, column_});
        advance();
      } else if (c == '"') {
        tokens.push_back(quoted());
      } else {
        Token token{Token::Type::kWord, "", line_, column_};
        while (pos_ < text_.size()) {
          char d = text_[pos_];
          if (std::isspace(static_cast<unsigned char>(d)) || d == ';' || d == '=' || d == '"') break;
          if (d == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') break;
          token.text += d;
          advance();
        }
        tokens.push_back(std::move(token));
      }
    }
    end_line_ = line_;
    end_column_ = column_;
    return tokens;
  }

  std::size_t end_line() const { return end_line_; }
  std::size_t end_column() const { return end_column_; }

 private:
  Token quoted() {
    Token token{Token::Type::kName, "", line_, column_};
    advance();
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        throw ParseError("unterminated string", token.line, token.column);
      }
      char c = text_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\' && pos_ + 1 < text_.size()) {
        advance();
        c = text_[pos_];
      }
      token.text += c;
      advance();
    }
    return token;
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  std::size_t end_line_ = 1;
  std::size_t end_column_ = 1;
};

bool is_name(const Token& t) { return t.type == Token::Type::kName || t.type == Token::Type::kWord; }

[[noreturn]] void unexpected(const Token& t, const std::string& expected) {
  throw ParseError("expected " + expected + ", found '" + t.text + "'", t.line, t.column);
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::size_t end_line, std::size_t end_column)
      : tokens_(std::move(tokens)), end_{Token::Type::kSemicolon, "end of input", end_line, end_column} {}

  FaultTree parse() {
    while (pos_ < tokens_.size()) statement();
    return builder_.build();
  }

 private:
  const Token& peek() const { return pos_ < tokens_.size() ? tokens_[pos_] : end_; }
  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token& next() {
    if (at_end()) throw ParseError("unexpected end of input", end_.line, end_.column);
    return tokens_[pos_++];
  }

  std::string name() {
    const Token& t = next();
    if (!is_name(t)) unexpected(t, "a node name");
    return t.text;
  }

  void semicolon() {
    if (at_end()) throw ParseError("expected ';' at end of input", end_.line, end_.column);
    const Token& t = next();
    if (t.type != Token::Type::kSemicolon) unexpected(t, "';'");
  }

  void statement() {
    const Token& first = next();
    if (first.type == Token::Type::kWord && lowercase(first.text) == "toplevel") {
      builder_.set_root(name());
      semicolon();
      return;
    }
    if (!is_name(first)) unexpected(first, "a declaration");
    std::string node = first.text;

    const Token& what = next();
    if (what.type != Token::Type::kWord) unexpected(what, "a gate type or attribute");
    std::string keyword = lowercase(what.text);
    if (keyword == "and" || keyword == "or") {
      std::vector<std::string> children;
      while (!at_end() && peek().type != Token::Type::kSemicolon) children.push_back(name());
      semicolon();
      builder_.add_gate(std::move(node), keyword == "and" ? GateKind::kAnd : GateKind::kOr, std::move(children));
    } else if (keyword == "prob") {
      const Token& eq = next();
      if (eq.type != Token::Type::kEquals) unexpected(eq, "'='");
      const Token& value = next();
      auto probability = value.type == Token::Type::kWord ? parse_decimal(value.text) : std::nullopt;
      if (!probability) unexpected(value, "a decimal probability");
      semicolon();
      builder_.add_basic_event(std::move(node), std::move(*probability));
    } else if (peek().type == Token::Type::kEquals) {
      throw ParseError("unsupported attribute '" + what.text + "' (only prob= is supported)", what.line, what.column);
    } else {
      throw ParseError("unsupported gate type '" + what.text + "' (only and/or are supported)", what.line,
                       what.column);
    }
  }

  std::vector<Token> tokens_;
  Token end_;
  std::size_t pos_ = 0;
  FaultTreeBuilder builder_;
};

std::string quote(const std::string& name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

FaultTree parse_ft(std::string_view text) {
  Lexer lexer(text);
  auto tokens = lexer.tokenize();
  return Parser(std::move(tokens), lexer.end_line(), lexer.end_column()).parse();
}

FaultTree read_ft(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_ft(buffer.str());
}

std::string to_galileo(const FaultTree& tree) {
  if (tree.is_pcft()) throw std::invalid_argument("controllable basic events have no file representation");
  std::ostringstream out;
  out << "toplevel " << quote(tree.name(tree.root())) << ";\n";
  for (NodeId v : tree.topological_order()) {
    if (!is_gate(tree.kind(v))) continue;
    out << quote(tree.name(v)) << ' ' << to_string(tree.kind(v));
    for (NodeId w : tree.children(v)) out << ' ' << quote(tree.name(w));
    out << ";\n";
  }
  std::vector<NodeId> events(tree.basic_events().begin(), tree.basic_events().end());
  std::sort(events.begin(), events.end(), [&](NodeId a, NodeId b) { return tree.name(a) < tree.name(b); });
  for (NodeId v : events) {
    const Rational& p = tree.exact_probability(v);
    std::string text = to_decimal_string(p);
    if (text.find('/') != std::string::npos) text = CoefficientTraits<double>::to_string(nearest_double(p));
    out << quote(tree.name(v)) << " prob=" << text << ";\n";
  }
  return out.str();
}

}  // namespace sfpa
