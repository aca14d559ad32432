#include "texmt/glossary.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace texmt {

namespace {

bool IsTermChar(unsigned char c) { return std::isalnum(c) || c >= 0x80 || c == '-'; }

bool IsBlank(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

char Fold(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

// Lower-cased, single-spaced, trimmed.
std::string FoldTerm(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (IsBlank(c)) {
      if (!out.empty() && out.back() != ' ') out += ' ';
    } else {
      out += Fold(c);
    }
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && IsBlank(s[b])) ++b;
  while (e > b && IsBlank(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::size_t WordCount(const std::string& folded) {
  return folded.empty() ? 0 : std::count(folded.begin(), folded.end(), ' ') + 1;
}

std::string FirstWord(std::string_view s, std::size_t i) {
  std::string w;
  while (i < s.size() && IsTermChar(static_cast<unsigned char>(s[i]))) w += Fold(s[i++]);
  return w;
}

// Length of the match of `folded` at s[i], or 0.
std::size_t MatchAt(std::string_view s, std::size_t i, const std::string& folded) {
  std::size_t j = i;
  for (std::size_t k = 0; k < folded.size(); ++k) {
    if (folded[k] == ' ') {
      if (j >= s.size() || !IsBlank(s[j])) return 0;
      while (j < s.size() && IsBlank(s[j])) ++j;
    } else {
      if (j >= s.size() || Fold(s[j]) != folded[k]) return 0;
      ++j;
    }
  }
  if (j < s.size() && IsTermChar(static_cast<unsigned char>(s[j])) &&
      IsTermChar(static_cast<unsigned char>(s[j - 1])))
    return 0;
  return j - i;
}

}  // namespace

Glossary::Glossary(std::vector<GlossaryEntry> entries) {
  std::unordered_set<std::string> seen;
  std::vector<std::pair<std::string, GlossaryEntry>> kept;
  for (GlossaryEntry& e : entries) {
    std::string key = FoldTerm(e.source);
    if (key.empty() || !seen.insert(key).second) continue;
    kept.emplace_back(std::move(key), std::move(e));
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    std::size_t wa = WordCount(a.first), wb = WordCount(b.first);
    if (wa != wb) return wa > wb;
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return a.first < b.first;
  });
  for (auto& [key, e] : kept) {
    by_first_word_[FirstWord(key, 0)].push_back(entries_.size());
    entries_.push_back(std::move(e));
    folded_.push_back(std::move(key));
  }
}

Glossary Glossary::Parse(std::string_view tsv) {
  std::vector<GlossaryEntry> entries;
  std::istringstream in{std::string(tsv)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw GlossaryError(GlossaryError::Kind::kMalformedLine, lineno,
                          "malformed glossary line " + std::to_string(lineno) +
                              ": expected source<TAB>target");
    GlossaryEntry e{Trim(std::string_view(line).substr(0, tab)),
                    Trim(std::string_view(line).substr(tab + 1))};
    if (e.source.empty() || e.target.empty())
      throw GlossaryError(GlossaryError::Kind::kMalformedLine, lineno,
                          "malformed glossary line " + std::to_string(lineno) + ": empty term");
    entries.push_back(std::move(e));
  }
  if (entries.empty())
    throw GlossaryError(GlossaryError::Kind::kEmptyGlossary, 0, "glossary has no entries");
  return Glossary(std::move(entries));
}

Glossary Glossary::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw GlossaryError(GlossaryError::Kind::kUnreadable, 0, "cannot open glossary: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str());
}

const std::vector<std::size_t>* Glossary::Candidates(const std::string& first_word) const {
  auto it = by_first_word_.find(first_word);
  return it == by_first_word_.end() ? nullptr : &it->second;
}

std::vector<TermMatch> FindTerms(std::string_view s, const Glossary& g) {
  std::vector<TermMatch> out;
  if (g.empty()) return out;
  std::size_t i = 0;
  while (i < s.size()) {
    bool word_start = IsTermChar(static_cast<unsigned char>(s[i])) &&
                      (i == 0 || !IsTermChar(static_cast<unsigned char>(s[i - 1])));
    if (word_start) {
      if (const auto* cands = g.Candidates(FirstWord(s, i))) {
        bool hit = false;
        for (std::size_t idx : *cands) {
          if (std::size_t len = MatchAt(s, i, g.folded(idx))) {
            out.push_back({i, len, idx});
            i += len;
            hit = true;
            break;
          }
        }
        if (hit) continue;
      }
    }
    ++i;
  }
  return out;
}

int CountTermMatches(std::string_view sentence, const Glossary& g) {
  return static_cast<int>(FindTerms(sentence, g).size());
}

ProtectedText ProtectTerms(std::string_view sentence, const Glossary& g) {
  ProtectedText p;
  std::size_t last = 0;
  int k = 0;
  for (const TermMatch& m : FindTerms(sentence, g)) {
    p.text.append(sentence.substr(last, m.pos - last));
    std::string name = "TERM" + std::to_string(++k) + "X";
    p.text += name;
    p.restore[name] = g.entries()[m.entry].target;
    last = m.pos + m.len;
  }
  p.text.append(sentence.substr(last));
  return p;
}

std::string UnprotectTerms(std::string_view text, const std::map<std::string, std::string>& restore) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t at = text.find("TERM", i);
    if (at == std::string_view::npos) break;
    std::size_t j = at + 4;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j > at + 4 && j < text.size() && text[j] == 'X') {
      auto it = restore.find(std::string(text.substr(at, j + 1 - at)));
      if (it != restore.end()) {
        out.append(text.substr(i, at - i));
        out += it->second;
        i = j + 1;
        continue;
      }
    }
    out.append(text.substr(i, at + 4 - i));
    i = at + 4;
  }
  out.append(text.substr(i));
  return out;
}

}  // namespace texmt
