#include "texmt/corpus.h"

#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <unordered_set>

namespace texmt {

namespace {

bool IsBlank(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool IsAlnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80;
}
bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

// Characters always split off as tokens of their own.
constexpr std::string_view kPunct = ",;:!?()[]{}\"<>";

// Length of a MATHnX / TERMkX placeholder at s[i], or 0.
std::size_t PlaceholderAt(std::string_view s, std::size_t i) {
  std::string_view rest = s.substr(i);
  if (rest.substr(0, 4) != "MATH" && rest.substr(0, 4) != "TERM") return 0;
  std::size_t j = 4;
  while (j < rest.size() && IsDigit(rest[j])) ++j;
  return (j > 4 && j < rest.size() && rest[j] == 'X') ? j + 1 : 0;
}

void TokenizeChunk(std::string_view w, std::vector<std::string>& out) {
  std::string word;
  auto flush = [&] {
    if (!word.empty()) out.push_back(std::move(word));
    word.clear();
  };
  std::size_t i = 0;
  while (i < w.size()) {
    char c = w[i];
    char prev = i > 0 ? w[i - 1] : '\0';
    char next = i + 1 < w.size() ? w[i + 1] : '\0';
    if (std::size_t len = PlaceholderAt(w, i)) {
      flush();
      out.emplace_back(w.substr(i, len));
      i += len;
    } else if (c == '.') {
      if (!word.empty() && IsAlnum(prev) && IsAlnum(next) && !PlaceholderAt(w, i + 1)) {
        word += c;
        ++i;
      } else {
        flush();
        std::size_t j = i;
        while (j < w.size() && w[j] == '.') ++j;
        out.emplace_back(w.substr(i, j - i));
        i = j;
      }
    } else if (c == '\'' || c == '`') {
      if (c == '\'' && !word.empty() && std::isalpha(static_cast<unsigned char>(prev)) &&
          next != '\'' && IsAlnum(next) && !PlaceholderAt(w, i + 1)) {
        word += c;
        ++i;
      } else {
        flush();
        std::size_t len = next == c ? 2 : 1;
        out.emplace_back(w.substr(i, len));
        i += len;
      }
    } else if (c == ',' && !word.empty() && IsDigit(prev) && IsDigit(next)) {
      word += c;
      ++i;
    } else if (kPunct.find(c) != std::string_view::npos) {
      flush();
      out.emplace_back(1, c);
      ++i;
    } else {
      word += c;
      ++i;
    }
  }
  flush();
}

}  // namespace

std::vector<std::string> WordTokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsBlank(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !IsBlank(text[j])) ++j;
    if (j > i) TokenizeChunk(text.substr(i, j - i), out);
    i = j;
  }
  return out;
}

std::string JoinTokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const std::string& t : tokens) out += (out.empty() ? "" : " ") + t;
  return out;
}

std::vector<std::string> ParallelCorpus::sources() const {
  std::vector<std::string> out;
  for (const auto& p : pairs) out.push_back(p.first);
  return out;
}

std::vector<std::string> ParallelCorpus::targets() const {
  std::vector<std::string> out;
  for (const auto& p : pairs) out.push_back(p.second);
  return out;
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

ParallelCorpus ReadParallel(const std::string& source_path, const std::string& target_path) {
  std::vector<std::string> src = ReadLines(source_path);
  std::vector<std::string> tgt = ReadLines(target_path);
  if (src.size() != tgt.size())
    throw Error("unaligned corpus: " + source_path + " has " + std::to_string(src.size()) +
                " lines, " + target_path + " has " + std::to_string(tgt.size()));
  ParallelCorpus c;
  c.provenance = source_path + "|" + target_path;
  for (std::size_t i = 0; i < src.size(); ++i) c.pairs.emplace_back(std::move(src[i]), std::move(tgt[i]));
  return c;
}

ParallelCorpus ReadParallelTsv(const std::string& path) {
  ParallelCorpus c;
  c.provenance = path;
  int lineno = 0;
  for (std::string& line : ReadLines(path)) {
    ++lineno;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw Error(path + ":" + std::to_string(lineno) + ": expected source<TAB>target");
    c.pairs.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return c;
}

namespace {

void WriteLines(const std::vector<std::string>& lines, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  for (const std::string& l : lines) out << l << '\n';
}

}  // namespace

void WriteParallel(const ParallelCorpus& c, const std::string& source_path, const std::string& target_path) {
  WriteLines(c.sources(), source_path);
  WriteLines(c.targets(), target_path);
}

void WriteParallelTsv(const ParallelCorpus& c, const std::string& path) {
  std::vector<std::string> lines;
  for (const auto& [s, t] : c.pairs) lines.push_back(s + "\t" + t);
  WriteLines(lines, path);
}

ParallelCorpus FilterByGlossary(const ParallelCorpus& c, const Glossary& g, int min_terms) {
  if (min_terms < 1) throw Error("min_terms must be at least 1");
  ParallelCorpus out;
  out.provenance = c.provenance;
  for (const auto& p : c.pairs) {
    if (CountTermMatches(p.first, g) >= min_terms) out.pairs.push_back(p);
  }
  return out;
}

std::array<std::size_t, 3> SplitSizes(std::size_t n, std::array<double, 3> ratios) {
  double sum = 0;
  for (double r : ratios) {
    if (!(r >= 0.0) || r > 1.0) throw BadRatiosError("split ratios must lie in [0, 1]");
    sum += r;
  }
  if (std::fabs(sum - 1.0) > 1e-9) throw BadRatiosError("split ratios must sum to 1");
  // The epsilon keeps 0.1 * 10 from flooring to 0.
  auto part = [&](double r) { return static_cast<std::size_t>(std::floor(r * static_cast<double>(n) + 1e-9)); };
  std::size_t valid = part(ratios[1]);
  std::size_t test = part(ratios[2]);
  return {n - valid - test, valid, test};
}

CorpusSplit ShuffleSplit(const ParallelCorpus& c, std::array<double, 3> ratios, std::uint64_t seed) {
  std::array<std::size_t, 3> sizes = SplitSizes(c.size(), ratios);
  std::vector<std::size_t> order(c.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  // Fisher-Yates with rejection sampling, so the permutation depends only
  // on the engine's output and not on the standard library's distributions.
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::uint64_t bound = i;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = rng();
    } while (x >= limit);
    std::swap(order[i - 1], order[x % bound]);
  }

  CorpusSplit out;
  ParallelCorpus* parts[3] = {&out.train, &out.valid, &out.test};
  std::size_t k = 0;
  for (int p = 0; p < 3; ++p) {
    parts[p]->provenance = c.provenance;
    for (std::size_t j = 0; j < sizes[p]; ++j) parts[p]->pairs.push_back(c.pairs[order[k++]]);
  }
  return out;
}

std::size_t VocabSize(const std::vector<std::string>& sentences, bool casefold) {
  std::unordered_set<std::string> vocab;
  for (const std::string& s : sentences) {
    for (std::string& t : WordTokenize(s)) {
      if (casefold) {
        for (char& ch : t) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      }
      vocab.insert(std::move(t));
    }
  }
  return vocab.size();
}

}  // namespace texmt
