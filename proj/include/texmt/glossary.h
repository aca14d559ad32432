#ifndef TEXMT_GLOSSARY_H_
#define TEXMT_GLOSSARY_H_

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "texmt/errors.h"

namespace texmt {

class GlossaryError : public Error {
 public:
  enum class Kind { kMalformedLine, kEmptyGlossary, kUnreadable };
  GlossaryError(Kind kind, int line, const std::string& what)
      : Error(what), kind_(kind), line_(line) {}
  Kind kind() const { return kind_; }
  int line() const { return line_; }  // 1-based; 0 when not line-specific

 private:
  Kind kind_;
  int line_;
};

struct GlossaryEntry {
  std::string source;
  std::string target;
  bool operator==(const GlossaryEntry&) const = default;
};

// Bilingual term list. Entries are deduplicated on the case-folded source
// (first occurrence wins) and sorted by descending word count, then
// descending length, then source text, so matching does not depend on file
// order.
class Glossary {
 public:
  Glossary() = default;
  explicit Glossary(std::vector<GlossaryEntry> entries);

  // UTF-8 TSV "source<TAB>target"; blank lines and # comments ignored.
  static Glossary Load(const std::string& path);
  static Glossary Parse(std::string_view tsv);

  const std::vector<GlossaryEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Entries whose source starts with `first_word` (case-folded), in
  // matching order.
  const std::vector<std::size_t>* Candidates(const std::string& first_word) const;
  // Case-folded, single-spaced source of entry i.
  const std::string& folded(std::size_t i) const { return folded_[i]; }

 private:
  std::vector<GlossaryEntry> entries_;
  std::vector<std::string> folded_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_first_word_;
};

struct TermMatch {
  std::size_t pos;
  std::size_t len;
  std::size_t entry;  // index into Glossary::entries()
};

// Non-overlapping, whole-word, ASCII-case-insensitive matches, scanning left
// to right and taking the longest entry at each position.
std::vector<TermMatch> FindTerms(std::string_view sentence, const Glossary& g);
int CountTermMatches(std::string_view sentence, const Glossary& g);

struct ProtectedText {
  std::string text;
  std::map<std::string, std::string> restore;  // TERMkX -> target term
};

// Replaces every matched source term with TERMkX (k = 1, 2, ... per call).
ProtectedText ProtectTerms(std::string_view sentence, const Glossary& g);
// Replaces known TERMkX placeholders with their target terms.
std::string UnprotectTerms(std::string_view text, const std::map<std::string, std::string>& restore);

}  // namespace texmt

#endif  // TEXMT_GLOSSARY_H_
