#include "texmt/sentences.h"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "texmt/latex.h"

namespace texmt {

namespace {

void AppendSpace(std::string& out) {
  if (!out.empty() && out.back() != ' ') out += ' ';
}

void JoinInto(const Inlines& inlines, std::string& out) {
  for (const Inline& in : inlines) {
    if (in.is<Str>()) {
      out += in.as<Str>().text;
    } else if (in.is<Space>()) {
      AppendSpace(out);
    } else if (in.is<Math>()) {
      throw UntokenizedMathError(in.as<Math>().tex);
    } else if (in.is<Command>() && in.as<Command>().content) {
      JoinInto(*in.as<Command>().content, out);
    } else {
      out += RenderInline(in);
    }
  }
}

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool IsSpaceChar(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool StartsUppercase(std::string_view s) {
  if (s.empty()) return false;
  unsigned char c = static_cast<unsigned char>(s[0]);
  if (c >= 'A' && c <= 'Z') return true;
  // Latin-1 capitals U+00C0..U+00DE except U+00D7.
  if (c == 0xC3 && s.size() > 1) {
    unsigned char d = static_cast<unsigned char>(s[1]);
    return d >= 0x80 && d <= 0x9E && d != 0x97;
  }
  return false;
}

}  // namespace

std::string JoinInlines(const Inlines& inlines) {
  std::string out;
  JoinInto(inlines, out);
  while (!out.empty() && out.back() == ' ') out.pop_back();
  std::size_t lead = out.find_first_not_of(' ');
  return lead == std::string::npos ? std::string() : out.substr(lead);
}

const Abbreviations& Abbreviations::Defaults() {
  static const Abbreviations kDefaults({
      "p.d.f.", "c.d.f.", "i.e.",  "e.g.",   "cf.",   "Thm.",  "Thms.", "Eq.",
      "Eqs.",   "Fig.",   "Figs.", "Prof.",  "Dr.",   "resp.", "w.r.t.", "etc.",
      "vs.",    "Def.",   "Prop.", "Lem.",   "Cor.",  "Sec.",  "Ch.",   "Ref.",
      "Refs.",  "i.i.d.", "a.e.",  "a.s.",   "Mr.",   "Mrs.",  "Ms.",   "St.",
      "No.",    "approx.", "Vol.", "pp.",    "al.",   "Jr.",   "Ex.",   "Exs.",
      "Rem.",   "Alg.",   "Tab.",  "Chap.",  "Eqn.",  "Eqns.", "viz.",  "ibid."});
  return kDefaults;
}

Abbreviations Abbreviations::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open abbreviation list: " + path);
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && IsSpaceChar(line.back())) line.pop_back();
    std::size_t lead = line.find_first_not_of(" \t");
    if (lead == std::string::npos || line[lead] == '#') continue;
    words.insert(line.substr(lead));
  }
  return Abbreviations(std::move(words));
}

bool Abbreviations::Contains(std::string_view word) const {
  // Ignore opening punctuation such as "(" or "``".
  while (!word.empty() && !std::isalnum(static_cast<unsigned char>(word.front())) &&
         static_cast<unsigned char>(word.front()) < 0x80)
    word.remove_prefix(1);
  if (word.empty()) return false;
  if (words_.count(std::string(word))) return true;
  const std::string lower = Lower(word);
  return std::any_of(words_.begin(), words_.end(),
                     [&](const std::string& w) { return Lower(w) == lower; });
}

std::vector<Sentence> SegmentSentences(std::string_view text, int source_block,
                                       const SegmentOptions& options) {
  std::vector<Sentence> out;
  std::vector<TokenMatch> tokens = FindTokens(text);

  // Marker depth after each token, used to keep \emph{...} in one piece.
  std::size_t next_token = 0;
  int depth = 0;
  bool break_pending = false;
  std::size_t start = 0;
  while (start < text.size() && IsSpaceChar(text[start])) ++start;

  auto emit = [&](std::size_t end, std::size_t next) {
    Sentence s;
    s.text = std::string(text.substr(start, end - start));
    s.source_block = source_block;
    s.token_names = TokenNamesIn(s.text);
    out.push_back(std::move(s));
    start = next;
  };

  for (std::size_t i = start; i < text.size(); ++i) {
    while (next_token < tokens.size() && tokens[next_token].pos + tokens[next_token].len <= i + 1 &&
           tokens[next_token].pos <= i) {
      const TokenMatch& t = tokens[next_token];
      if (options.map) {
        if (const TokenEntry* e = options.map->Find(t.name)) {
          if (e->kind == TokenKind::kOpen) ++depth;
          if (e->kind == TokenKind::kClose) --depth;
        }
      }
      if (options.break_after.count(t.name)) break_pending = true;
      ++next_token;
    }
    if (i + 1 >= text.size() || !IsSpaceChar(text[i + 1]) || IsSpaceChar(text[i])) continue;

    std::size_t k = i + 1;
    while (k < text.size() && IsSpaceChar(text[k])) ++k;
    if (k >= text.size()) continue;

    bool boundary = false;
    if (break_pending && depth <= 0) {
      boundary = true;
    } else if ((text[i] == '.' || text[i] == '!' || text[i] == '?') && depth <= 0) {
      std::string_view rest = text.substr(k);
      bool next_ok = StartsUppercase(rest);
      if (!next_ok) {
        auto t = FindTokens(rest.substr(0, std::min<std::size_t>(rest.size(), 24)));
        next_ok = !t.empty() && t[0].pos == 0;
      }
      if (next_ok) {
        std::size_t w = i;
        while (w > start && !IsSpaceChar(text[w - 1])) --w;
        std::string_view word = text.substr(w, i + 1 - w);
        boundary = !(text[i] == '.' && options.abbreviations &&
                     options.abbreviations->Contains(word));
      }
    }
    if (boundary) {
      emit(i + 1, k);
      break_pending = false;
      i = k - 1;
    }
  }
  std::size_t end = text.size();
  while (end > start && IsSpaceChar(text[end - 1])) --end;
  if (end > start) emit(end, text.size());
  return out;
}

}  // namespace texmt
