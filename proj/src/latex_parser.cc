#include <cctype>
#include <regex>
#include <string>
#include <string_view>

#include "texmt/latex.h"

namespace texmt {

ParseError::ParseError(Kind kind, SourcePosition pos, const std::string& detail)
    : Error([&] {
        std::string what = kind == Kind::kUnbalancedDelimiter
                               ? "unbalanced delimiter '" + detail + "'"
                               : "unmatched environment '" + detail + "'";
        return what + " at line " + std::to_string(pos.line) + ", column " +
               std::to_string(pos.column);
      }()),
      kind_(kind),
      pos_(pos),
      detail_(detail) {}

MathDelim MathDelim::Canonical(MathMode mode) {
  return mode == MathMode::kInline ? MathDelim{MathDelimKind::kDollar, {}, {}}
                                   : MathDelim{MathDelimKind::kBracket, {}, {}};
}

const char* MathModeName(MathMode mode) {
  return mode == MathMode::kInline ? "inline" : "display";
}

namespace {

bool IsLetter(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool IsBlank(char c) { return c == ' ' || c == '\t' || c == '\r'; }
bool IsSpace(char c) { return IsBlank(c) || c == '\n'; }

int HeadingLevel(std::string_view name) {
  if (name == "part" || name == "chapter" || name == "section") return 1;
  if (name == "subsection") return 2;
  if (name == "subsubsection") return 3;
  if (name == "paragraph") return 4;
  if (name == "subparagraph") return 5;
  return 0;
}

// Accent and letter macros that belong inside a word: Fran\c{c}ais, \ss.
bool IsWordMacro(std::string_view name) {
  static const char* kNames[] = {"c", "v", "H", "u", "r", "k", "d", "b",
                                 "t", "i", "j", "l", "o", "L", "O", "ss",
                                 "ae", "AE", "oe", "OE", "aa", "AA"};
  for (const char* n : kNames)
    if (name == n) return true;
  return false;
}

enum class Context { kTop, kEnvironment, kListItem };
enum class RunMode { kParagraph, kGroup };

class Parser {
 public:
  Parser(std::string_view src, const ParserConfig& config)
      : src_(src), config_(config) {}

  DocumentAst ParseDocument() {
    DocumentAst doc;
    if (config_.infer_wrapper_commands) InferWrappers();
    std::size_t begin = FindUncommented("\\begin{document}", 0);
    if (begin == std::string_view::npos) {
      pos_ = 0;
      end_ = src_.size();
      doc.blocks = ParseBlocks(Context::kTop, {}, 0);
      return doc;
    }
    doc.has_document_env = true;
    doc.preamble = std::string(src_.substr(0, begin));
    const std::size_t body = begin + std::string_view("\\begin{document}").size();
    std::size_t close = src_.rfind("\\end{document}");
    if (close == std::string_view::npos || close < body)
      Fail(ParseError::Kind::kUnmatchedEnvironment, begin, "document");
    pos_ = body;
    end_ = close;
    doc.blocks = ParseBlocks(Context::kTop, {}, begin);
    doc.trailer = std::string(
        src_.substr(close + std::string_view("\\end{document}").size()));
    return doc;
  }

  Inlines ParseLooseInlines() {
    pos_ = 0;
    end_ = src_.size();
    Inlines out = ParseRun(RunMode::kGroup, /*in_list=*/false, /*brace_open=*/
                           std::string_view::npos);
    Finish(out);
    return out;
  }

 private:
  [[noreturn]] void Fail(ParseError::Kind kind, std::size_t offset,
                         const std::string& detail) const {
    SourcePosition p;
    p.offset = offset;
    for (std::size_t i = 0; i < offset && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++p.line;
        p.column = 1;
      } else {
        ++p.column;
      }
    }
    throw ParseError(kind, p, detail);
  }

  bool At(std::string_view s) const {
    return pos_ + s.size() <= end_ && src_.substr(pos_, s.size()) == s;
  }
  char Peek(std::size_t ahead = 0) const {
    return pos_ + ahead < end_ ? src_[pos_ + ahead] : '\0';
  }

  std::size_t FindUncommented(std::string_view needle, std::size_t from) const {
    std::size_t p = src_.find(needle, from);
    while (p != std::string_view::npos) {
      std::size_t line = src_.rfind('\n', p);
      line = line == std::string_view::npos ? 0 : line + 1;
      bool commented = false;
      for (std::size_t i = line; i < p; ++i) {
        if (src_[i] == '\\') {
          ++i;
        } else if (src_[i] == '%') {
          commented = true;
          break;
        }
      }
      if (!commented) return p;
      p = src_.find(needle, p + 1);
    }
    return p;
  }

  // \newcommand{\define}[1]{\textbf{#1}} makes \define translatable.
  void InferWrappers() {
    std::size_t begin = src_.find("\\begin{document}");
    std::string head(src_.substr(0, begin == std::string_view::npos ? 0 : begin));
    static const std::regex kWrapper(
        R"(\\(?:re)?newcommand\*?\s*\{?\\([A-Za-z]+)\}?\s*\[1\]\s*\{\s*\\([A-Za-z]+)\s*\{\s*#1\s*\}\s*\})");
    for (std::sregex_iterator it(head.begin(), head.end(), kWrapper), e; it != e; ++it) {
      if (config_.translatable_commands.count((*it)[2].str()))
        config_.translatable_commands.insert((*it)[1].str());
    }
  }

  // Control word at pos_ (which points at the backslash). Includes a
  // directly following '*'.
  std::string_view PeekControlWord() const {
    std::size_t i = pos_ + 1;
    while (i < end_ && IsLetter(src_[i])) ++i;
    if (i == pos_ + 1) return {};
    if (i < end_ && src_[i] == '*') ++i;
    return src_.substr(pos_ + 1, i - pos_ - 1);
  }

  std::string ReadEnvName() {
    // pos_ at '{'
    std::size_t open = pos_;
    std::size_t close = src_.find('}', pos_);
    if (close == std::string_view::npos || close >= end_)
      Fail(ParseError::Kind::kUnbalancedDelimiter, open, "{");
    std::string name(src_.substr(pos_ + 1, close - pos_ - 1));
    pos_ = close + 1;
    return name;
  }

  std::string PeekEnvName(std::string_view prefix) const {
    std::size_t start = pos_ + prefix.size();
    std::size_t close = src_.find('}', start);
    if (close == std::string_view::npos || close >= end_) return {};
    return std::string(src_.substr(start, close - start));
  }

  // Balanced {...} starting at pos_; returns raw text including braces.
  std::string_view ScanBraceGroup() {
    std::size_t open = pos_;
    int depth = 0;
    for (std::size_t i = pos_; i < end_; ++i) {
      char c = src_[i];
      if (c == '\\') {
        ++i;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (--depth == 0) {
          pos_ = i + 1;
          return src_.substr(open, pos_ - open);
        }
      }
    }
    Fail(ParseError::Kind::kUnbalancedDelimiter, open, "{");
  }

  // [...] at pos_; returns empty view and leaves pos_ if it never closes.
  std::string_view ScanBracketGroup() {
    std::size_t open = pos_;
    int depth = 0;
    for (std::size_t i = pos_ + 1; i < end_; ++i) {
      char c = src_[i];
      if (c == '\\') {
        ++i;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (--depth < 0) return {};
      } else if (c == ']' && depth == 0) {
        pos_ = i + 1;
        return src_.substr(open, pos_ - open);
      } else if (c == '\n' && i + 1 < end_ && src_[i + 1] == '\n') {
        return {};
      }
    }
    return {};
  }

  std::string ScanOptionalArgs() {
    std::string out;
    while (Peek() == '[') {
      std::string_view g = ScanBracketGroup();
      if (g.empty()) break;
      out += g;
    }
    return out;
  }

  // Greedy run of directly adjacent [..] and {..} arguments.
  std::string ScanArgs() {
    std::string out;
    for (;;) {
      if (Peek() == '{') {
        out += ScanBraceGroup();
      } else if (Peek() == '[') {
        std::string_view g = ScanBracketGroup();
        if (g.empty()) break;
        out += g;
      } else {
        break;
      }
    }
    return out;
  }

  void SkipWhitespace() {
    while (pos_ < end_ && IsSpace(src_[pos_])) ++pos_;
  }

  // Position just past "\end{name}" searching from pos_, honouring nesting
  // of the same environment. Returns npos if absent.
  std::size_t FindEnvEnd(const std::string& name, std::size_t* body_end,
                         bool nested = true) const {
    const std::string open = "\\begin{" + name + "}";
    const std::string close = "\\end{" + name + "}";
    int depth = 1;
    std::size_t i = pos_;
    while (i < end_) {
      std::size_t o = src_.find(open, i);
      std::size_t c = src_.find(close, i);
      if (c == std::string_view::npos || c + close.size() > end_) return std::string_view::npos;
      if (nested && o != std::string_view::npos && o < c) {
        ++depth;
        i = o + open.size();
        continue;
      }
      if (--depth == 0) {
        *body_end = c;
        return c + close.size();
      }
      i = c + close.size();
    }
    return std::string_view::npos;
  }

  // ----- blocks -----

  Blocks ParseBlocks(Context ctx, const std::string& env, std::size_t env_pos) {
    Blocks blocks;
    for (;;) {
      SkipWhitespace();
      if (pos_ >= end_) {
        if (ctx != Context::kTop)
          Fail(ParseError::Kind::kUnmatchedEnvironment, env_pos, env);
        return blocks;
      }
      if (At("\\end{")) {
        if (ctx == Context::kListItem) return blocks;
        std::size_t at = pos_;
        std::string name = PeekEnvName("\\end{");
        if (ctx == Context::kEnvironment && name == env) {
          pos_ += 5;
          ReadEnvName();
          return blocks;
        }
        Fail(ParseError::Kind::kUnmatchedEnvironment, at, name);
      }
      if (ctx == Context::kListItem && AtItem()) return blocks;
      if (Peek() == '%') {
        blocks.emplace_back(ParseCommentBlock());
        continue;
      }
      if (At("\\begin{")) {
        std::string name = PeekEnvName("\\begin{");
        if (!config_.math_environments.count(name)) {
          blocks.push_back(ParseEnvironment());
          continue;
        }
      }
      if (Peek() == '\\') {
        std::string_view word = PeekControlWord();
        std::string base(word);
        if (!base.empty() && base.back() == '*') base.pop_back();
        if (HeadingLevel(base) > 0) {
          blocks.push_back(ParseHeading());
          continue;
        }
        if (config_.block_commands.count(std::string(word)) ||
            config_.block_commands.count(base)) {
          blocks.emplace_back(ParseBlockCommand(word));
          continue;
        }
      }
      ParseParagraph(blocks, ctx == Context::kListItem);
    }
  }

  bool AtItem() const {
    return At("\\item") && !IsLetter(Peek(5));
  }

  RawBlock ParseCommentBlock() {
    std::string raw;
    for (;;) {
      std::size_t eol = src_.find('\n', pos_);
      if (eol == std::string_view::npos || eol > end_) eol = end_;
      if (!raw.empty()) raw += '\n';
      raw += src_.substr(pos_, eol - pos_);
      pos_ = eol < end_ ? eol + 1 : end_;
      std::size_t save = pos_;
      while (pos_ < end_ && IsBlank(src_[pos_])) ++pos_;
      if (Peek() != '%') {
        pos_ = save;
        break;
      }
    }
    while (!raw.empty() && IsBlank(raw.back())) raw.pop_back();
    return RawBlock{raw};
  }

  Block ParseBlockCommand(std::string_view word) {
    std::size_t start = pos_;
    pos_ += 1 + word.size();
    if (word == "def") {
      // \def\name<params>{body}
      if (Peek() == '\\') {
        ++pos_;
        while (pos_ < end_ && IsLetter(src_[pos_])) ++pos_;
      }
      while (pos_ < end_ && src_[pos_] != '{' && src_[pos_] != '\n') ++pos_;
      if (Peek() == '{') ScanBraceGroup();
    } else if (word == "let") {
      for (int k = 0; k < 2; ++k) {
        while (IsBlank(Peek()) || Peek() == '=') ++pos_;
        if (Peek() == '\\') {
          ++pos_;
          if (IsLetter(Peek())) {
            while (pos_ < end_ && IsLetter(src_[pos_])) ++pos_;
          } else {
            ++pos_;
          }
        }
      }
    } else {
      ScanArgs();
    }
    return RawBlock{std::string(src_.substr(start, pos_ - start))};
  }

  Block ParseHeading() {
    std::size_t start = pos_;
    std::string_view word = PeekControlWord();
    Heading h;
    h.command = std::string(word);
    if (!h.command.empty() && h.command.back() == '*') {
      h.starred = true;
      h.command.pop_back();
    }
    h.level = HeadingLevel(h.command);
    pos_ += 1 + word.size();
    h.short_title = ScanOptionalArgs();
    if (Peek() != '{') {
      return RawBlock{std::string(src_.substr(start, pos_ - start))};
    }
    std::size_t open = pos_++;
    h.inlines = ParseRun(RunMode::kGroup, false, open);
    Finish(h.inlines);
    return h;
  }

  Block ParseEnvironment() {
    std::size_t start = pos_;
    pos_ += 6;  // "\begin"
    std::string name = ReadEnvName();
    if (config_.opaque_environments.count(name)) {
      std::size_t body_start = pos_;
      std::size_t body_end = 0;
      std::size_t after = FindEnvEnd(name, &body_end, /*nested=*/false);
      if (after == std::string_view::npos)
        Fail(ParseError::Kind::kUnmatchedEnvironment, start, name);
      pos_ = after;
      return VerbatimBlock{name, std::string(src_.substr(body_start, body_end - body_start))};
    }
    if (config_.IsList(name)) return ParseList(name, start);
    EnvironmentBlock env;
    env.name = name;
    env.args = ScanArgs();
    env.blocks = ParseBlocks(Context::kEnvironment, name, start);
    return env;
  }

  Block ParseList(const std::string& name, std::size_t start) {
    ListBlock list;
    list.env = name;
    list.ordered = config_.ordered_lists.count(name) > 0;
    list.args = ScanArgs();
    std::size_t lead_start = pos_;
    for (;;) {
      SkipWhitespace();
      if (pos_ >= end_) Fail(ParseError::Kind::kUnmatchedEnvironment, start, name);
      if (AtItem() || At("\\end{")) break;
      if (Peek() == '%') {
        std::size_t eol = src_.find('\n', pos_);
        pos_ = (eol == std::string_view::npos || eol > end_) ? end_ : eol;
      } else if (Peek() == '\\' && !PeekControlWord().empty()) {
        pos_ += 1 + PeekControlWord().size();
        ScanArgs();
      } else if (Peek() == '{') {
        ScanBraceGroup();
      } else {
        ++pos_;
      }
    }
    std::string_view lead = src_.substr(lead_start, pos_ - lead_start);
    while (!lead.empty() && IsSpace(lead.front())) lead.remove_prefix(1);
    while (!lead.empty() && IsSpace(lead.back())) lead.remove_suffix(1);
    list.lead = std::string(lead);

    while (AtItem()) {
      pos_ += 5;
      ListItem item;
      if (Peek() == '[') item.label = std::string(ScanBracketGroup());
      item.blocks = ParseBlocks(Context::kListItem, name, start);
      list.items.push_back(std::move(item));
    }
    if (!At("\\end{")) Fail(ParseError::Kind::kUnmatchedEnvironment, start, name);
    std::size_t at = pos_;
    std::string close = PeekEnvName("\\end{");
    if (close != name) Fail(ParseError::Kind::kUnmatchedEnvironment, at, close);
    pos_ += 5;
    ReadEnvName();
    return list;
  }

  void ParseParagraph(Blocks& blocks, bool in_list) {
    std::size_t before = pos_;
    Inlines inlines = ParseRun(RunMode::kParagraph, in_list, std::string_view::npos);
    Finish(inlines);
    if (pos_ == before) {
      // Nothing consumed: a stray construct the block loop cannot handle.
      Fail(ParseError::Kind::kUnbalancedDelimiter, pos_, std::string(1, Peek()));
    }
    if (inlines.empty()) return;
    if (inlines.size() == 1 && inlines[0].is<Math>() &&
        inlines[0].as<Math>().mode == MathMode::kDisplay) {
      const Math& m = inlines[0].as<Math>();
      blocks.emplace_back(DisplayMathBlock{StripLayoutNewlines(m.tex), m.delim});
      return;
    }
    blocks.emplace_back(Paragraph{std::move(inlines)});
  }

  static std::string StripLayoutNewlines(std::string_view tex) {
    std::size_t i = 0;
    while (i < tex.size() && IsBlank(tex[i])) ++i;
    if (i < tex.size() && tex[i] == '\n') tex.remove_prefix(i + 1);
    std::size_t j = tex.size();
    while (j > 0 && IsBlank(tex[j - 1])) --j;
    if (j > 0 && tex[j - 1] == '\n') tex = tex.substr(0, j - 1);
    return std::string(tex);
  }

  // ----- inlines -----

  // Trims surrounding Space nodes.
  static void Finish(Inlines& inlines) {
    while (!inlines.empty() && inlines.back().is<Space>()) inlines.pop_back();
    std::size_t lead = 0;
    while (lead < inlines.size() && inlines[lead].is<Space>()) ++lead;
    inlines.erase(inlines.begin(), inlines.begin() + static_cast<std::ptrdiff_t>(lead));
  }

  Math ScanMath(std::string_view open, std::string_view close, MathDelim delim) {
    std::size_t start = pos_;
    pos_ += open.size();
    std::size_t body = pos_;
    for (std::size_t i = pos_; i < end_; ++i) {
      if (src_.substr(i, close.size()) == close) {
        pos_ = i + close.size();
        return Math(std::string(src_.substr(body, i - body)), std::move(delim));
      }
      if (src_[i] == '\\') ++i;
    }
    Fail(ParseError::Kind::kUnbalancedDelimiter, start, std::string(open));
  }

  Math ScanMathEnvironment(const std::string& name, std::size_t start) {
    MathDelim delim{MathDelimKind::kEnvironment, name, {}};
    if (name.rfind("alignat", 0) == 0 || name.rfind("xalignat", 0) == 0) {
      delim.env_args = ScanArgs();
    }
    std::size_t body_start = pos_;
    std::size_t body_end = 0;
    std::size_t after = FindEnvEnd(name, &body_end);
    if (after == std::string_view::npos)
      Fail(ParseError::Kind::kUnmatchedEnvironment, start, name);
    pos_ = after;
    return Math(std::string(src_.substr(body_start, body_end - body_start)), delim);
  }

  // Parses inline material. In paragraph mode stops before a blank line,
  // a block-level construct or \end; in group mode consumes through the
  // closing brace matching `brace_open` (or to end of input if npos).
  Inlines ParseRun(RunMode mode, bool in_list, std::size_t brace_open) {
    Inlines out;
    std::string word;
    auto flush = [&] {
      if (!word.empty()) {
        out.emplace_back(Str{std::move(word)});
        word.clear();
      }
    };
    auto space = [&] {
      flush();
      if (!out.empty() && !out.back().is<Space>()) out.emplace_back(Space{});
    };

    while (pos_ < end_) {
      char c = src_[pos_];
      if (IsSpace(c)) {
        int newlines = 0;
        std::size_t i = pos_;
        while (i < end_ && IsSpace(src_[i])) {
          if (src_[i] == '\n') ++newlines;
          ++i;
        }
        if (newlines >= 2 && mode == RunMode::kParagraph) break;
        pos_ = i;
        space();
        continue;
      }
      if (c == '%') {
        flush();
        std::size_t eol = src_.find('\n', pos_);
        if (eol == std::string_view::npos || eol >= end_) {
          out.emplace_back(RawInline{std::string(src_.substr(pos_, end_ - pos_))});
          pos_ = end_;
          break;
        }
        out.emplace_back(RawInline{std::string(src_.substr(pos_, eol + 1 - pos_))});
        pos_ = eol + 1;
        std::size_t i = pos_;
        while (i < end_ && IsBlank(src_[i])) ++i;
        if (mode == RunMode::kParagraph && (i >= end_ || src_[i] == '\n')) break;
        pos_ = i;
        continue;
      }
      if (c == '$') {
        flush();
        if (Peek(1) == '$') {
          out.emplace_back(ScanMath("$$", "$$", {MathDelimKind::kDoubleDollar, {}, {}}));
        } else {
          out.emplace_back(ScanMath("$", "$", {MathDelimKind::kDollar, {}, {}}));
        }
        continue;
      }
      if (c == '{') {
        flush();
        std::size_t open = pos_++;
        Command group;
        group.content = ParseRun(RunMode::kGroup, in_list, open);
        Finish(*group.content);
        out.emplace_back(std::move(group));
        continue;
      }
      if (c == '}') {
        if (mode == RunMode::kGroup && brace_open != std::string_view::npos) {
          ++pos_;
          flush();
          return out;
        }
        Fail(ParseError::Kind::kUnbalancedDelimiter, pos_, "}");
      }
      if (c == '\\') {
        char n = Peek(1);
        if (n == '(') {
          flush();
          out.emplace_back(ScanMath("\\(", "\\)", {MathDelimKind::kParen, {}, {}}));
          continue;
        }
        if (n == '[') {
          flush();
          out.emplace_back(ScanMath("\\[", "\\]", {MathDelimKind::kBracket, {}, {}}));
          continue;
        }
        if (IsLetter(n)) {
          if (!ParseControlWord(mode, in_list, out, word, flush)) break;
          continue;
        }
        ParseControlSymbol(out, word, flush);
        continue;
      }
      word += c;
      ++pos_;
    }
    if (mode == RunMode::kGroup && brace_open != std::string_view::npos)
      Fail(ParseError::Kind::kUnbalancedDelimiter, brace_open, "{");
    flush();
    return out;
  }

  template <typename Flush>
  void ParseControlSymbol(Inlines& out, std::string& word, Flush& flush) {
    char n = Peek(1);
    std::size_t start = pos_;
    switch (n) {
      case '\\': {
        flush();
        pos_ += 2;
        if (Peek() == '*') ++pos_;
        ScanOptionalArgs();
        out.emplace_back(RawInline{std::string(src_.substr(start, pos_ - start))});
        return;
      }
      case ' ':
      case '\n':
      case '\t': {
        flush();
        pos_ += 2;
        out.emplace_back(RawInline{"\\ "});
        return;
      }
      case '\'': case '`': case '^': case '"': case '~': case '=': case '.': {
        pos_ += 2;
        if (Peek() == '{') {
          ScanBraceGroup();
        } else if (pos_ < end_ && !IsSpace(Peek())) {
          ++pos_;
        }
        word += src_.substr(start, pos_ - start);
        return;
      }
      case '\0':
        word += '\\';
        ++pos_;
        return;
      default:
        word += src_.substr(pos_, 2);
        pos_ += 2;
        return;
    }
  }

  // Returns false when the run must stop before this control word.
  template <typename Flush>
  bool ParseControlWord(RunMode mode, bool in_list, Inlines& out,
                        std::string& word, Flush& flush) {
    std::size_t start = pos_;
    std::string name(PeekControlWord());
    std::string base = name;
    if (!base.empty() && base.back() == '*') base.pop_back();

    if (name == "begin" && Peek(6) == '{') {
      std::string env = PeekEnvName("\\begin{");
      if (config_.math_environments.count(env)) {
        flush();
        pos_ += 6;
        ReadEnvName();
        out.emplace_back(ScanMathEnvironment(env, start));
        return true;
      }
      if (mode == RunMode::kParagraph) return false;
      flush();
      pos_ += 6;
      ReadEnvName();
      std::size_t body_end = 0;
      std::size_t after = FindEnvEnd(env, &body_end);
      if (after == std::string_view::npos)
        Fail(ParseError::Kind::kUnmatchedEnvironment, start, env);
      pos_ = after;
      out.emplace_back(RawInline{std::string(src_.substr(start, pos_ - start))});
      return true;
    }
    if (name == "end") {
      if (mode == RunMode::kParagraph) return false;
      Fail(ParseError::Kind::kUnmatchedEnvironment, start, PeekEnvName("\\end{"));
    }
    if (mode == RunMode::kParagraph) {
      if (HeadingLevel(base) > 0) return false;
      if (in_list && name == "item") return false;
    }
    if (name == "verb" || name == "verb*") {
      flush();
      pos_ += 1 + name.size();
      char delim = Peek();
      std::size_t close = src_.find(delim, pos_ + 1);
      if (delim == '\0' || close == std::string_view::npos || close >= end_)
        Fail(ParseError::Kind::kUnbalancedDelimiter, start, "\\verb");
      pos_ = close + 1;
      out.emplace_back(RawInline{std::string(src_.substr(start, pos_ - start))});
      return true;
    }
    if (IsWordMacro(name) && (!word.empty() || Peek(1 + name.size()) == '{')) {
      pos_ += 1 + name.size();
      if (Peek() == '{') ScanBraceGroup();
      word += src_.substr(start, pos_ - start);
      return true;
    }

    flush();
    pos_ += 1 + name.size();
    Command cmd;
    cmd.name = name;
    if (config_.translatable_commands.count(name)) {
      std::size_t save = pos_;
      std::string opt = ScanOptionalArgs();
      if (Peek() == '{') {
        std::size_t open = pos_++;
        cmd.args = opt;
        cmd.content = ParseRun(RunMode::kGroup, in_list, open);
        Finish(*cmd.content);
        out.emplace_back(std::move(cmd));
        return true;
      }
      pos_ = save;
    }
    cmd.args = ScanArgs();
    out.emplace_back(std::move(cmd));
    return true;
  }

  std::string_view src_;
  ParserConfig config_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
};

}  // namespace

DocumentAst ParseDocument(std::string_view source, const ParserConfig& config) {
  return Parser(source, config).ParseDocument();
}

Inlines ParseInlines(std::string_view text, const ParserConfig& config) {
  return Parser(text, config).ParseLooseInlines();
}

}  // namespace texmt
