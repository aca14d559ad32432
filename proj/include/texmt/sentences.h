#ifndef TEXMT_SENTENCES_H_
#define TEXMT_SENTENCES_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "texmt/ast.h"
#include "texmt/errors.h"
#include "texmt/math_tokens.h"

namespace texmt {

class UntokenizedMathError : public Error {
 public:
  explicit UntokenizedMathError(const std::string& tex)
      : Error("formula was not tokenized: " + tex) {}
};

// Flattens a tokenized inline sequence into one line of text. Space nodes
// become single spaces; translatable command arguments are flattened in
// place; other commands and raw inlines contribute their LaTeX text.
// Throws UntokenizedMathError if a Math node is left.
std::string JoinInlines(const Inlines& inlines);

// Words that end in a period without ending a sentence ("p.d.f.", "Thm.").
class Abbreviations {
 public:
  Abbreviations() = default;
  explicit Abbreviations(std::set<std::string> words) : words_(std::move(words)) {}

  static const Abbreviations& Defaults();
  // One abbreviation per line; blank lines and # comments ignored.
  static Abbreviations Load(const std::string& path);

  bool Contains(std::string_view word) const;
  const std::set<std::string>& words() const { return words_; }

 private:
  std::set<std::string> words_;
};

struct Sentence {
  std::string text;
  int source_block = 0;
  std::vector<std::string> token_names;  // MATHnX names in order
};

struct SegmentOptions {
  const Abbreviations* abbreviations = &Abbreviations::Defaults();
  // When set, no boundary is placed between an open token and its close
  // token.
  const MathTokenMap* map = nullptr;
  // Tokens after which a sentence always ends (display formulas, when they
  // are configured to terminate sentences).
  std::set<std::string> break_after;
};

// Splits a joined block string at ., ! or ? followed by whitespace and an
// uppercase letter or a MATHnX token, unless the word is an abbreviation.
// Joining the sentences with single spaces gives back `text`.
std::vector<Sentence> SegmentSentences(std::string_view text, int source_block,
                                       const SegmentOptions& options = {});

}  // namespace texmt

#endif  // TEXMT_SENTENCES_H_
