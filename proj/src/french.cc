#include "texmt/french.h"

#include <regex>
#include <set>
#include <sstream>
#include <vector>

namespace texmt {

namespace {

// Offset of the first unescaped % on the line starting at `begin`, or the
// end of that line.
std::size_t CodeEnd(std::string_view s, std::size_t begin) {
  for (std::size_t i = begin; i < s.size() && s[i] != '\n'; ++i) {
    if (s[i] == '\\') {
      ++i;
    } else if (s[i] == '%') {
      return i;
    }
  }
  std::size_t nl = s.find('\n', begin);
  return nl == std::string_view::npos ? s.size() : nl;
}

std::string StripComments(std::string_view s) {
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t end = CodeEnd(s, i);
    out.append(s.substr(i, end - i));
    std::size_t nl = s.find('\n', i);
    if (nl == std::string_view::npos) break;
    out += '\n';
    i = nl + 1;
  }
  return out;
}

std::size_t FindDocumentClass(std::string_view s) {
  std::size_t line = 0;
  while (line <= s.size()) {
    std::size_t end = CodeEnd(s, line);
    std::size_t at = s.substr(line, end - line).find("\\documentclass");
    if (at != std::string_view::npos) return line + at;
    std::size_t nl = s.find('\n', line);
    if (nl == std::string_view::npos) break;
    line = nl + 1;
  }
  return std::string_view::npos;
}

std::string Trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

std::set<std::string> LoadedPackages(std::string_view preamble) {
  static const std::regex kUse(R"(\\(?:usepackage|RequirePackage)\s*(?:\[[^\]]*\])?\s*\{([^}]*)\})");
  std::set<std::string> out;
  std::string code = StripComments(preamble);
  for (auto it = std::sregex_iterator(code.begin(), code.end(), kUse); it != std::sregex_iterator(); ++it) {
    std::stringstream names((*it)[1].str());
    std::string name;
    while (std::getline(names, name, ',')) out.insert(Trim(name));
  }
  return out;
}

}  // namespace

std::string AddFrenchPreamble(std::string_view preamble) {
  std::size_t at = FindDocumentClass(preamble);
  if (at == std::string_view::npos) throw NoDocumentClassError();
  std::size_t i = at + std::string_view("\\documentclass").size();
  while (i < preamble.size() && (preamble[i] == ' ' || preamble[i] == '\t')) ++i;

  std::string out(preamble.substr(0, i));
  if (i < preamble.size() && preamble[i] == '[') {
    std::size_t close = preamble.find(']', i);
    if (close == std::string_view::npos) throw NoDocumentClassError();
    std::string_view opts = preamble.substr(i + 1, close - i - 1);
    bool has_french = false;
    std::stringstream items{std::string(opts)};
    std::string item;
    while (std::getline(items, item, ',')) has_french |= Trim(item) == "french";
    out += '[';
    out += opts;
    if (!has_french) out += Trim(opts).empty() ? "french" : ",french";
    out += ']';
    i = close + 1;
  } else {
    out += "[french]";
  }
  std::size_t brace_close = preamble.find('}', i);
  if (brace_close == std::string_view::npos) throw NoDocumentClassError();
  out.append(preamble.substr(i, brace_close + 1 - i));

  std::set<std::string> loaded = LoadedPackages(preamble);
  if (!loaded.count("fontenc")) out += "\n\\usepackage[T1]{fontenc}";
  if (!loaded.count("babel")) out += "\n\\usepackage{babel}";
  out.append(preamble.substr(brace_close + 1));
  return out;
}

DocumentAst AddFrenchPreamble(const DocumentAst& ast) {
  DocumentAst out = ast;
  out.preamble = AddFrenchPreamble(ast.preamble);
  return out;
}

QuoteConversion ConvertQuotes(std::string_view text) {
  QuoteConversion r;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t open = text.find("``", i);
    std::size_t stray_close = text.find("''", i);
    if (open == std::string_view::npos) {
      while (stray_close != std::string_view::npos) {
        ++r.unbalanced;
        stray_close = text.find("''", stray_close + 2);
      }
      break;
    }
    while (stray_close != std::string_view::npos && stray_close < open) {
      ++r.unbalanced;
      stray_close = text.find("''", stray_close + 2);
    }
    std::size_t close = text.find("''", open + 2);
    std::size_t next_open = text.find("``", open + 2);
    if (close == std::string_view::npos || (next_open != std::string_view::npos && next_open < close)) {
      ++r.unbalanced;
      r.text.append(text.substr(i, open + 2 - i));
      i = open + 2;
      continue;
    }
    r.text.append(text.substr(i, open - i));
    r.text += "\\og ";
    r.text += Trim(text.substr(open + 2, close - open - 2));
    r.text += "\\fg{}";
    ++r.pairs;
    i = close + 2;
  }
  if (i < text.size()) r.text.append(text.substr(i));
  return r;
}

}  // namespace texmt
