#include "norman/net_bif.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>
#include <sstream>
#include <unordered_map>

namespace norman {

namespace {

enum class TokenKind { Word, Number, String, Punct, End };

struct Token {
  TokenKind kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    int line = line_, column = column_;
    if (pos_ >= text_.size()) return {TokenKind::End, "", line, column};

    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < text_.size() && is_word_char(text_[pos_])) word += take();
      return {TokenKind::Word, word, line, column};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' ||
        c == '+') {
      std::string num;
      while (pos_ < text_.size() && is_number_char(text_[pos_])) num += take();
      return {TokenKind::Number, num, line, column};
    }
    if (c == '"') {
      take();
      std::string s;
      while (pos_ < text_.size() && text_[pos_] != '"') s += take();
      if (pos_ >= text_.size()) {
        throw ParseError("BIF: unterminated string", line, column);
      }
      take();  // closing quote
      return {TokenKind::String, s, line, column};
    }
    static const std::string punct = "{}()[]|,;";
    if (punct.find(c) != std::string::npos) {
      take();
      return {TokenKind::Punct, std::string(1, c), line, column};
    }
    throw ParseError(std::string("BIF: unexpected character '") + c + "'", line,
                     column);
  }

 private:
  static bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           c == '.';
  }
  static bool is_number_char(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' ||
           c == '+' || c == 'e' || c == 'E';
  }

  char take() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        int line = line_, column = column_;
        take();
        take();
        while (pos_ + 1 < text_.size() &&
               !(text_[pos_] == '*' && text_[pos_ + 1] == '/'))
          take();
        if (pos_ + 1 >= text_.size()) {
          throw ParseError("BIF: unterminated comment", line, column);
        }
        take();
        take();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) { advance(); }

  NetworkDefinition parse() {
    expect_word("network");
    name_ = expect(TokenKind::Word, "network name").text;
    parse_braced_properties();

    while (current_.kind != TokenKind::End) {
      if (current_.kind == TokenKind::Word && current_.text == "variable") {
        parse_variable();
      } else if (current_.kind == TokenKind::Word &&
                 current_.text == "probability") {
        parse_probability();
      } else {
        throw ParseError("BIF: expected 'variable' or 'probability', got '" +
                             current_.text + "'",
                         current_.line, current_.column);
      }
    }
    return finish();
  }

 private:
  void advance() { current_ = lexer_.next(); }

  Token expect(TokenKind kind, const char* what) {
    if (current_.kind != kind) {
      throw ParseError(std::string("BIF: expected ") + what + ", got '" +
                           (current_.kind == TokenKind::End ? "end of input"
                                                            : current_.text) +
                           "'",
                       current_.line, current_.column);
    }
    Token t = current_;
    advance();
    return t;
  }

  Token expect_punct(char c) {
    if (current_.kind != TokenKind::Punct || current_.text[0] != c) {
      throw ParseError(std::string("BIF: expected '") + c + "', got '" +
                           (current_.kind == TokenKind::End ? "end of input"
                                                            : current_.text) +
                           "'",
                       current_.line, current_.column);
    }
    Token t = current_;
    advance();
    return t;
  }

  void expect_word(const char* word) {
    if (current_.kind != TokenKind::Word || current_.text != word) {
      throw ParseError(std::string("BIF: expected '") + word + "', got '" +
                           current_.text + "'",
                       current_.line, current_.column);
    }
    advance();
  }

  bool at_word(const char* word) const {
    return current_.kind == TokenKind::Word && current_.text == word;
  }

  // `property` lines may occur in any block; they carry tool metadata and are
  // skipped through the terminating ';'.
  bool maybe_skip_property() {
    if (!at_word("property")) return false;
    while (!(current_.kind == TokenKind::Punct && current_.text == ";")) {
      if (current_.kind == TokenKind::End) {
        throw ParseError("BIF: unterminated property", current_.line,
                         current_.column);
      }
      advance();
    }
    advance();  // ';'
    return true;
  }

  void parse_braced_properties() {
    expect_punct('{');
    while (!(current_.kind == TokenKind::Punct && current_.text == "}")) {
      if (!maybe_skip_property()) {
        throw ParseError("BIF: expected 'property' or '}', got '" +
                             current_.text + "'",
                         current_.line, current_.column);
      }
    }
    advance();  // '}'
  }

  double parse_number() {
    Token t = expect(TokenKind::Number, "a number");
    char* end = nullptr;
    double v = std::strtod(t.text.c_str(), &end);
    if (end != t.text.c_str() + t.text.size()) {
      throw ParseError("BIF: malformed number '" + t.text + "'", t.line,
                       t.column);
    }
    return v;
  }

  std::vector<double> parse_number_list() {
    std::vector<double> values{parse_number()};
    while (current_.kind == TokenKind::Punct && current_.text == ",") {
      advance();
      values.push_back(parse_number());
    }
    return values;
  }

  void parse_variable() {
    Token kw = current_;
    advance();  // 'variable'
    Token name = expect(TokenKind::Word, "variable name");
    if (node_index_.count(name.text)) {
      throw ParseError("BIF: variable '" + name.text + "' declared twice",
                       name.line, name.column);
    }
    expect_punct('{');
    NodeSpec node;
    node.name = name.text;
    bool have_type = false;
    while (!(current_.kind == TokenKind::Punct && current_.text == "}")) {
      if (maybe_skip_property()) continue;
      expect_word("type");
      Token type = expect(TokenKind::Word, "variable type");
      if (type.text == "continuous") {
        throw UnsupportedFeatureError(
            "BIF: continuous variables are not supported", type.line,
            type.column);
      }
      if (type.text != "discrete") {
        throw ParseError("BIF: unknown variable type '" + type.text + "'",
                         type.line, type.column);
      }
      expect_punct('[');
      Token count = expect(TokenKind::Number, "state count");
      expect_punct(']');
      expect_punct('{');
      node.states.push_back(expect(TokenKind::Word, "state name").text);
      while (current_.kind == TokenKind::Punct && current_.text == ",") {
        advance();
        node.states.push_back(expect(TokenKind::Word, "state name").text);
      }
      expect_punct('}');
      expect_punct(';');
      long declared = std::strtol(count.text.c_str(), nullptr, 10);
      if (declared != static_cast<long>(node.states.size())) {
        throw ParseError("BIF: variable '" + node.name + "' declares " +
                             count.text + " states but lists " +
                             std::to_string(node.states.size()),
                         count.line, count.column);
      }
      have_type = true;
    }
    advance();  // '}'
    if (!have_type) {
      throw ParseError("BIF: variable '" + node.name + "' has no type clause",
                       kw.line, kw.column);
    }
    node_index_[node.name] = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(node));
  }

  int lookup_node(const Token& name) const {
    auto it = node_index_.find(name.text);
    if (it == node_index_.end()) {
      throw ParseError("BIF: unknown variable '" + name.text + "'", name.line,
                       name.column);
    }
    return it->second;
  }

  void parse_probability() {
    Token kw = current_;
    advance();  // 'probability'
    expect_punct('(');
    Token child_token = expect(TokenKind::Word, "variable name");
    int child = lookup_node(child_token);
    std::vector<int> parents;
    if (current_.kind == TokenKind::Punct && current_.text == "|") {
      advance();
      parents.push_back(lookup_node(expect(TokenKind::Word, "parent name")));
      while (current_.kind == TokenKind::Punct && current_.text == ",") {
        advance();
        parents.push_back(lookup_node(expect(TokenKind::Word, "parent name")));
      }
    }
    expect_punct(')');

    if (cpts_.count(child)) {
      throw ParseError("BIF: variable '" + child_token.text +
                           "' has two probability blocks",
                       kw.line, kw.column);
    }

    std::size_t combos = 1;
    for (int p : parents) combos *= nodes_[p].states.size();
    const std::size_t width = nodes_[child].states.size();

    Cpt cpt;
    cpt.node = child;
    cpt.parents = parents;
    cpt.rows.assign(combos, {});

    expect_punct('{');
    bool saw_table = false;
    std::size_t entry_rows_seen = 0;
    while (!(current_.kind == TokenKind::Punct && current_.text == "}")) {
      if (maybe_skip_property()) continue;
      if (at_word("default")) {
        throw UnsupportedFeatureError("BIF: 'default' rows are not supported",
                                      current_.line, current_.column);
      }
      if (at_word("table")) {
        Token table_token = current_;
        advance();
        if (saw_table || entry_rows_seen > 0) {
          throw ParseError("BIF: probability block for '" + child_token.text +
                               "' mixes table and entry rows",
                           table_token.line, table_token.column);
        }
        std::vector<double> values = parse_number_list();
        expect_punct(';');
        if (values.size() != combos * width) {
          throw ParseError(
              "BIF: table for '" + child_token.text + "' lists " +
                  std::to_string(values.size()) + " values, expected " +
                  std::to_string(combos * width),
              table_token.line, table_token.column);
        }
        // Child states slowest: values[state * combos + combo].
        for (std::size_t combo = 0; combo < combos; ++combo) {
          std::vector<double> row(width);
          for (std::size_t s = 0; s < width; ++s)
            row[s] = values[s * combos + combo];
          check_row_sum(child_token.text, row, table_token);
          cpt.rows[combo] = std::move(row);
        }
        saw_table = true;
        entry_rows_seen = combos;
      } else if (current_.kind == TokenKind::Punct && current_.text == "(") {
        Token open = current_;
        advance();
        if (parents.empty()) {
          throw ParseError("BIF: entry row on the parentless variable '" +
                               child_token.text + "'",
                           open.line, open.column);
        }
        std::vector<int> combo_states;
        combo_states.push_back(parse_state_of(parents[0]));
        while (current_.kind == TokenKind::Punct && current_.text == ",") {
          advance();
          if (combo_states.size() >= parents.size()) {
            throw ParseError("BIF: too many states in entry row for '" +
                                 child_token.text + "'",
                             current_.line, current_.column);
          }
          combo_states.push_back(
              parse_state_of(parents[combo_states.size()]));
        }
        if (combo_states.size() != parents.size()) {
          throw ParseError("BIF: entry row for '" + child_token.text +
                               "' names " + std::to_string(combo_states.size()) +
                               " parent states, expected " +
                               std::to_string(parents.size()),
                           open.line, open.column);
        }
        expect_punct(')');
        std::vector<double> values = parse_number_list();
        expect_punct(';');
        if (values.size() != width) {
          throw ParseError("BIF: entry row for '" + child_token.text +
                               "' lists " + std::to_string(values.size()) +
                               " values, expected " + std::to_string(width),
                           open.line, open.column);
        }
        std::size_t combo = 0;
        for (std::size_t i = 0; i < parents.size(); ++i)
          combo = combo * nodes_[parents[i]].states.size() + combo_states[i];
        if (!cpt.rows[combo].empty()) {
          throw ParseError("BIF: duplicate entry row for '" + child_token.text +
                               "'",
                           open.line, open.column);
        }
        check_row_sum(child_token.text, values, open);
        cpt.rows[combo] = std::move(values);
        ++entry_rows_seen;
      } else {
        throw ParseError("BIF: expected 'table', an entry row, or '}', got '" +
                             current_.text + "'",
                         current_.line, current_.column);
      }
    }
    advance();  // '}'

    if (entry_rows_seen != combos || (saw_table && combos == 0)) {
      throw ParseError("BIF: probability block for '" + child_token.text +
                           "' covers " + std::to_string(entry_rows_seen) +
                           " of " + std::to_string(combos) +
                           " parent combinations",
                       kw.line, kw.column);
    }
    cpts_[child] = std::move(cpt);
  }

  int parse_state_of(int node) {
    Token t = expect(TokenKind::Word, "a state name");
    const std::vector<std::string>& states = nodes_[node].states;
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == t.text) return static_cast<int>(i);
    throw ParseError("BIF: '" + t.text + "' is not a state of variable '" +
                         nodes_[node].name + "'",
                     t.line, t.column);
  }

  // Checked here as well as in NetworkDefinition so the rejection points at
  // the offending probability block.
  static void check_row_sum(const std::string& node_name,
                            const std::vector<double>& row, const Token& at) {
    double sum = 0.0;
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ParseError("BIF: probability outside [0, 1] for '" + node_name +
                             "'",
                         at.line, at.column);
      }
      sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
      throw ParseError("BIF: probabilities for '" + node_name + "' sum to " +
                           std::to_string(sum),
                       at.line, at.column);
    }
  }

  NetworkDefinition finish() {
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      if (!cpts_.count(static_cast<int>(v))) {
        throw ParseError("BIF: variable '" + nodes_[v].name +
                             "' has no probability block",
                         1, 1);
      }
    }
    std::vector<Arc> arcs;
    std::vector<Cpt> cpts;
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      Cpt& cpt = cpts_[static_cast<int>(v)];
      for (int p : cpt.parents) arcs.push_back({p, static_cast<int>(v)});
      cpts.push_back(std::move(cpt));
    }
    try {
      return NetworkDefinition(name_, std::move(nodes_), std::move(arcs),
                               std::move(cpts), std::nullopt);
    } catch (const ValidationError& e) {
      // Re-raise with a position so every rejection of a BIF file points at
      // the file. Model-level failures anchor to their probability block when
      // one can be identified, otherwise to the top of the file.
      throw ParseError(std::string("BIF: ") + e.what(), 1, 1);
    }
  }

  Lexer lexer_;
  Token current_{TokenKind::End, "", 0, 0};
  std::string name_;
  std::vector<NodeSpec> nodes_;
  std::unordered_map<std::string, int> node_index_;
  std::map<int, Cpt> cpts_;
};

std::string format_probability(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

}  // namespace

NetworkDefinition parse_network_bif(const std::string& text) {
  return Parser(text).parse();
}

std::string serialize_network_bif(const NetworkDefinition& net) {
  std::ostringstream out;
  out << "network " << net.name() << " {\n}\n";
  for (const NodeSpec& node : net.nodes()) {
    out << "variable " << node.name << " {\n"
        << "  type discrete [ " << node.states.size() << " ] { ";
    for (std::size_t i = 0; i < node.states.size(); ++i) {
      if (i) out << ", ";
      out << node.states[i];
    }
    out << " };\n}\n";
  }
  for (int v = 0; v < net.node_count(); ++v) {
    const Cpt& cpt = net.cpt(v);
    out << "probability ( " << net.node(v).name;
    if (!cpt.parents.empty()) {
      out << " | ";
      for (std::size_t i = 0; i < cpt.parents.size(); ++i) {
        if (i) out << ", ";
        out << net.node(cpt.parents[i]).name;
      }
    }
    out << " ) {\n";
    if (cpt.parents.empty()) {
      out << "  table ";
      for (std::size_t s = 0; s < cpt.rows[0].size(); ++s) {
        if (s) out << ", ";
        out << format_probability(cpt.rows[0][s]);
      }
      out << ";\n";
    } else {
      std::vector<int> combo(cpt.parents.size(), 0);
      for (const std::vector<double>& row : cpt.rows) {
        out << "  ( ";
        for (std::size_t i = 0; i < combo.size(); ++i) {
          if (i) out << ", ";
          out << net.node(cpt.parents[i]).states[combo[i]];
        }
        out << " ) ";
        for (std::size_t s = 0; s < row.size(); ++s) {
          if (s) out << ", ";
          out << format_probability(row[s]);
        }
        out << ";\n";
        // Advance the combination, last parent fastest.
        for (std::size_t i = combo.size(); i-- > 0;) {
          if (++combo[i] < net.state_count(cpt.parents[i])) break;
          combo[i] = 0;
        }
      }
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace norman
