#include "texmt/math_tokens.h"

#include <cctype>
#include <unordered_set>

#include "texmt/latex.h"

namespace texmt {

const char* TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kInline: return "inline";
    case TokenKind::kDisplay: return "display";
    case TokenKind::kRaw: return "raw";
    case TokenKind::kOpen: return "open";
    case TokenKind::kClose: return "close";
  }
  return "inline";
}

namespace {

TokenKind TokenKindFromName(const std::string& s) {
  if (s == "inline") return TokenKind::kInline;
  if (s == "display") return TokenKind::kDisplay;
  if (s == "raw") return TokenKind::kRaw;
  if (s == "open") return TokenKind::kOpen;
  if (s == "close") return TokenKind::kClose;
  throw Error("unknown token mode '" + s + "'");
}

bool IsWordByte(unsigned char c) { return std::isalpha(c) || c >= 0x80; }

bool IsWhitespace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace

std::string TokenName(int index) { return "MATH" + std::to_string(index) + "X"; }

std::string MathTokenMap::Add(TokenEntry entry) {
  std::string name = TokenName(next_index_++);
  order_.push_back(name);
  entries_.emplace(name, std::move(entry));
  return name;
}

const TokenEntry* MathTokenMap::Find(std::string_view name) const {
  auto it = entries_.find(std::string(name));
  return it == entries_.end() ? nullptr : &it->second;
}

TokenEntry* MathTokenMap::FindMutable(std::string_view name) {
  auto it = entries_.find(std::string(name));
  return it == entries_.end() ? nullptr : &it->second;
}

nlohmann::ordered_json MathTokenMap::ToJson() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const std::string& name : order_) {
    const TokenEntry& e = entries_.at(name);
    nlohmann::ordered_json v = {{"tex", e.tex}, {"mode", TokenKindName(e.kind)}};
    if (e.kind == TokenKind::kInline || e.kind == TokenKind::kDisplay) {
      if (!(e.delim == MathDelim::Canonical(e.kind == TokenKind::kInline ? MathMode::kInline
                                                                          : MathMode::kDisplay))) {
        v["delim"] = MathOpen(e.delim);
      }
    }
    if (!e.partner.empty()) v["partner"] = e.partner;
    j[name] = std::move(v);
  }
  return j;
}

MathTokenMap MathTokenMap::FromJson(const nlohmann::json& j) {
  // Keys must come back in index order regardless of object ordering.
  std::map<int, std::pair<std::string, const nlohmann::json*>> byIndex;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& name = it.key();
    auto found = FindTokens(name);
    if (found.size() != 1 || found[0].len != name.size())
      throw Error("bad token name '" + name + "'");
    byIndex[std::stoi(name.substr(4, name.size() - 5))] = {name, &it.value()};
  }
  MathTokenMap map;
  for (const auto& [index, entry] : byIndex) {
    const nlohmann::json& v = *entry.second;
    TokenEntry e;
    e.tex = v.at("tex").get<std::string>();
    e.kind = TokenKindFromName(v.at("mode").get<std::string>());
    e.partner = v.value("partner", "");
    if (e.kind == TokenKind::kInline || e.kind == TokenKind::kDisplay) {
      MathMode mode = e.kind == TokenKind::kInline ? MathMode::kInline : MathMode::kDisplay;
      e.delim = MathDelim::Canonical(mode);
      if (v.contains("delim")) {
        std::string open = v.at("delim").get<std::string>();
        if (open.rfind("\\begin{", 0) == 0) {
          std::size_t close = open.find('}');
          e.delim = {MathDelimKind::kEnvironment, open.substr(7, close - 7), open.substr(close + 1)};
        } else if (open == "$$") {
          e.delim = {MathDelimKind::kDoubleDollar, {}, {}};
        } else if (open == "\\(") {
          e.delim = {MathDelimKind::kParen, {}, {}};
        } else if (open == "$") {
          e.delim = {MathDelimKind::kDollar, {}, {}};
        } else if (open == "\\[") {
          e.delim = {MathDelimKind::kBracket, {}, {}};
        }
      }
    }
    map.next_index_ = index;
    map.Add(std::move(e));
  }
  return map;
}

std::vector<TokenMatch> FindTokens(std::string_view text) {
  std::vector<TokenMatch> out;
  std::size_t i = 0;
  while ((i = text.find("MATH", i)) != std::string_view::npos) {
    std::size_t j = i + 4;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i + 4 && j < text.size() && text[j] == 'X' && text[i + 4] != '0') {
      out.push_back({i, j + 1 - i, std::string(text.substr(i, j + 1 - i))});
      i = j + 1;
    } else {
      i += 4;
    }
  }
  return out;
}

std::vector<std::string> TokenNamesIn(std::string_view text) {
  std::vector<std::string> out;
  for (auto& m : FindTokens(text)) out.push_back(std::move(m.name));
  return out;
}

bool HasTranslatableText(const Inlines& inlines) {
  for (const Inline& in : inlines) {
    if (in.is<Str>()) {
      for (unsigned char c : in.as<Str>().text)
        if (IsWordByte(c)) return true;
    } else if (in.is<Command>() && in.as<Command>().content &&
               HasTranslatableText(*in.as<Command>().content)) {
      return true;
    }
  }
  return false;
}

namespace {

void PushSpace(Inlines& out) {
  if (!out.empty() && !out.back().is<Space>()) out.emplace_back(Space{});
}

void TokenizeInto(const Inlines& inlines, MathTokenMap& map, Inlines& out) {
  for (const Inline& in : inlines) {
    if (in.is<Str>()) {
      out.push_back(in);
    } else if (in.is<Space>()) {
      PushSpace(out);
    } else if (in.is<Math>()) {
      const Math& m = in.as<Math>();
      TokenEntry e;
      e.tex = m.tex;
      e.kind = m.mode == MathMode::kInline ? TokenKind::kInline : TokenKind::kDisplay;
      e.delim = m.delim;
      out.emplace_back(Str{map.Add(std::move(e))});
    } else if (in.is<Command>() && in.as<Command>().content &&
               HasTranslatableText(*in.as<Command>().content)) {
      const Command& c = in.as<Command>();
      std::string open_tex = (c.name.empty() ? "" : "\\" + c.name) + c.args + "{";
      std::string open = map.Add({open_tex, TokenKind::kOpen, {}, {}});
      out.emplace_back(Str{open});
      out.emplace_back(Space{});
      TokenizeInto(*c.content, map, out);
      PushSpace(out);
      std::string close = map.Add({"}", TokenKind::kClose, {}, open});
      map.FindMutable(open)->partner = close;
      out.emplace_back(Str{close});
    } else {
      std::string raw = RenderInline(in);
      // A moved comment must not swallow the words after it.
      if (in.is<RawInline>() && !raw.empty() && raw[0] == '%' && raw.back() != '\n')
        raw += '\n';
      out.emplace_back(Str{map.Add({raw, TokenKind::kRaw, {}, {}})});
    }
  }
}

}  // namespace

Inlines TokenizeMath(const Inlines& inlines, MathTokenMap& map) {
  Inlines out;
  TokenizeInto(inlines, map, out);
  return out;
}

TokenError::TokenError(Kind kind, std::vector<std::string> names)
    : Error([&] {
        std::string what = kind == Kind::kMissingToken   ? "unknown math token"
                           : kind == Kind::kDroppedToken ? "math token dropped"
                                                         : "math tokens out of order";
        for (std::size_t i = 0; i < names.size(); ++i) what += (i ? ", " : ": ") + names[i];
        return what;
      }()),
      kind_(kind),
      names_(std::move(names)) {}

namespace {

struct Frame {
  std::string open_name;
  Command cmd;
  Inlines content;
};

void AppendSpace(Inlines& out) {
  if (!out.empty() && !out.back().is<Space>()) out.emplace_back(Space{});
}

void TrimTrailingSpace(Inlines& out) {
  while (!out.empty() && out.back().is<Space>()) out.pop_back();
}

Command CommandFromOpen(const std::string& tex) {
  Command c;
  std::size_t i = 0;
  if (!tex.empty() && tex[0] == '\\') {
    i = 1;
    while (i < tex.size() && std::isalpha(static_cast<unsigned char>(tex[i]))) ++i;
    if (i < tex.size() && tex[i] == '*') ++i;
    c.name = tex.substr(1, i - 1);
  }
  c.args = tex.substr(i, tex.size() - 1 - i);  // drop trailing '{'
  c.content = Inlines{};
  return c;
}

}  // namespace

Inlines Detokenize(std::string_view translated, const MathTokenMap& map,
                   const std::vector<std::string>& expected, const ParserConfig& config) {
  std::vector<Frame> stack(1);
  auto current = [&]() -> Inlines& { return stack.back().content; };
  bool pending_space = false;

  auto emit = [&](Inline in) {
    if (pending_space) {
      // Whitespace right after an open marker belongs to the marker.
      bool after_open = stack.size() > 1 && current().empty();
      if (!after_open) AppendSpace(current());
      pending_space = false;
    }
    current().push_back(std::move(in));
  };

  std::vector<std::string> seen;
  std::size_t i = 0;
  while (i < translated.size()) {
    if (IsWhitespace(translated[i])) {
      while (i < translated.size() && IsWhitespace(translated[i])) ++i;
      pending_space = true;
      continue;
    }
    std::size_t j = i;
    while (j < translated.size() && !IsWhitespace(translated[j])) ++j;
    std::string_view word = translated.substr(i, j - i);
    std::size_t last = 0;
    for (const TokenMatch& m : FindTokens(word)) {
      if (m.pos > last) emit(Str{std::string(word.substr(last, m.pos - last))});
      last = m.pos + m.len;
      const TokenEntry* e = map.Find(m.name);
      if (!e) throw TokenError(TokenError::Kind::kMissingToken, {m.name});
      seen.push_back(m.name);
      switch (e->kind) {
        case TokenKind::kInline:
        case TokenKind::kDisplay:
          emit(Math(e->tex, e->delim));
          break;
        case TokenKind::kRaw: {
          Inlines parsed = ParseInlines(e->tex, config);
          if (parsed.empty()) parsed.emplace_back(RawInline{e->tex});
          for (Inline& p : parsed) emit(std::move(p));
          break;
        }
        case TokenKind::kOpen: {
          if (pending_space) {
            AppendSpace(current());
            pending_space = false;
          }
          Frame f;
          f.open_name = m.name;
          f.cmd = CommandFromOpen(e->tex);
          stack.push_back(std::move(f));
          break;
        }
        case TokenKind::kClose: {
          pending_space = false;
          if (stack.size() < 2 || stack.back().open_name != e->partner)
            throw TokenError(TokenError::Kind::kMisnested, {m.name});
          Frame f = std::move(stack.back());
          stack.pop_back();
          TrimTrailingSpace(f.content);
          f.cmd.content = std::move(f.content);
          current().emplace_back(std::move(f.cmd));
          break;
        }
      }
    }
    if (last < word.size()) emit(Str{std::string(word.substr(last))});
    i = j;
  }
  if (stack.size() > 1) throw TokenError(TokenError::Kind::kMisnested, {stack.back().open_name});

  if (!expected.empty()) {
    std::unordered_multiset<std::string> have(seen.begin(), seen.end());
    std::vector<std::string> dropped;
    for (const std::string& name : expected) {
      auto it = have.find(name);
      if (it == have.end()) {
        dropped.push_back(name);
      } else {
        have.erase(it);
      }
    }
    if (!dropped.empty()) throw TokenError(TokenError::Kind::kDroppedToken, dropped);
  }
  Inlines out = std::move(stack.front().content);
  TrimTrailingSpace(out);
  return out;
}

namespace {

bool Nested(const std::vector<std::string>& names, const MathTokenMap& map) {
  std::vector<std::string> stack;
  for (const std::string& n : names) {
    const TokenEntry* e = map.Find(n);
    if (!e) return false;
    if (e->kind == TokenKind::kOpen) {
      stack.push_back(n);
    } else if (e->kind == TokenKind::kClose) {
      if (stack.empty() || stack.back() != e->partner) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

std::string RemoveTokens(std::string_view text, const std::vector<TokenMatch>& drop) {
  std::string out;
  std::size_t last = 0;
  for (const TokenMatch& m : drop) {
    out.append(text.substr(last, m.pos - last));
    last = m.pos + m.len;
  }
  out.append(text.substr(last));
  // Collapse the whitespace left behind.
  std::string clean;
  for (char c : out) {
    if (IsWhitespace(c)) {
      if (!clean.empty() && clean.back() != ' ') clean += ' ';
    } else {
      clean += c;
    }
  }
  while (!clean.empty() && clean.back() == ' ') clean.pop_back();
  return clean;
}

}  // namespace

bool TokensConserved(std::string_view source, std::string_view output, const MathTokenMap& map) {
  std::vector<std::string> src = TokenNamesIn(source);
  std::vector<std::string> out = TokenNamesIn(output);
  std::unordered_multiset<std::string> a(src.begin(), src.end());
  std::unordered_multiset<std::string> b(out.begin(), out.end());
  if (a != b) return false;
  if (Nested(src, map) && !Nested(out, map)) return false;
  return true;
}

TokenRepair RepairTokens(std::string_view source, std::string_view output, const MathTokenMap& map) {
  TokenRepair r;
  std::vector<std::string> src = TokenNamesIn(source);
  std::unordered_multiset<std::string> budget(src.begin(), src.end());

  std::vector<TokenMatch> drop;
  for (const TokenMatch& m : FindTokens(output)) {
    auto it = budget.find(m.name);
    if (it == budget.end()) {
      drop.push_back(m);
      r.removed.push_back(m.name);
    } else {
      budget.erase(it);
    }
  }
  std::string text = RemoveTokens(output, drop);
  for (const std::string& name : src) {
    auto it = budget.find(name);
    if (it != budget.end()) {
      budget.erase(it);
      r.appended.push_back(name);
      if (!text.empty()) text += ' ';
      text += name;
    }
  }

  // Drop open/close pairs that are out of order.
  std::unordered_set<std::string> unwrap;
  std::vector<std::string> stack;
  for (const std::string& n : TokenNamesIn(text)) {
    const TokenEntry* e = map.Find(n);
    if (!e) continue;
    if (e->kind == TokenKind::kOpen) {
      stack.push_back(n);
    } else if (e->kind == TokenKind::kClose) {
      if (!stack.empty() && stack.back() == e->partner) {
        stack.pop_back();
      } else {
        unwrap.insert(n);
        unwrap.insert(e->partner);
        std::erase(stack, e->partner);
      }
    }
  }
  for (const std::string& n : stack) {
    unwrap.insert(n);
    if (const TokenEntry* e = map.Find(n)) unwrap.insert(e->partner);
  }
  if (!unwrap.empty()) {
    std::vector<TokenMatch> pairs;
    for (const TokenMatch& m : FindTokens(text)) {
      if (unwrap.count(m.name)) pairs.push_back(m);
    }
    for (const TokenMatch& m : pairs) {
      if (map.Find(m.name)->kind == TokenKind::kOpen) r.unwrapped.push_back(m.name);
    }
    text = RemoveTokens(text, pairs);
  }
  r.text = std::move(text);
  return r;
}

Inlines NormalizeInlines(const Inlines& inlines) {
  Inlines out;
  for (const Inline& in : inlines) {
    if (in.is<Space>()) {
      AppendSpace(out);
    } else if (in.is<Str>() && !out.empty() && out.back().is<Str>()) {
      out.back().as<Str>().text += in.as<Str>().text;
    } else if (in.is<Command>() && in.as<Command>().content) {
      Command c = in.as<Command>();
      c.content = NormalizeInlines(*c.content);
      out.emplace_back(std::move(c));
    } else {
      out.push_back(in);
    }
  }
  TrimTrailingSpace(out);
  while (!out.empty() && out.front().is<Space>()) out.erase(out.begin());
  return out;
}

}  // namespace texmt
