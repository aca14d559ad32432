#ifndef TEXMT_MATH_TOKENS_H_
#define TEXMT_MATH_TOKENS_H_

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "texmt/ast.h"
#include "texmt/errors.h"
#include "texmt/parser_config.h"

namespace texmt {

// What a MATHnX placeholder stands for. Formulas are kInline/kDisplay.
// Opaque LaTeX inside a sentence (\ref{...}, comments, commands whose
// arguments are not translated) is kRaw. A translatable command such as
// \emph{...} is split into a kOpen token ("\emph{") and a kClose token
// ("}") so that its argument stays inside the surrounding sentence.
enum class TokenKind { kInline, kDisplay, kRaw, kOpen, kClose };

const char* TokenKindName(TokenKind kind);

struct TokenEntry {
  std::string tex;
  TokenKind kind = TokenKind::kInline;
  MathDelim delim;      // formulas only
  std::string partner;  // name of the matching kOpen/kClose token
};

// Document-level map from MATHnX names to what they replace. Indices start
// at 1 and increase in document order.
class MathTokenMap {
 public:
  // Registers an entry and returns its token name.
  std::string Add(TokenEntry entry);
  const TokenEntry* Find(std::string_view name) const;
  TokenEntry* FindMutable(std::string_view name);

  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  int next_index() const { return next_index_; }
  const std::vector<std::string>& names() const { return order_; }

  // {"MATH1X": {"tex": "...", "mode": "inline"}, ...} in index order.
  nlohmann::ordered_json ToJson() const;
  static MathTokenMap FromJson(const nlohmann::json& j);

 private:
  std::vector<std::string> order_;
  std::unordered_map<std::string, TokenEntry> entries_;
  int next_index_ = 1;
};

std::string TokenName(int index);

// A MATHnX occurrence inside a piece of text.
struct TokenMatch {
  std::size_t pos;
  std::size_t len;
  std::string name;
};
std::vector<TokenMatch> FindTokens(std::string_view text);
std::vector<std::string> TokenNamesIn(std::string_view text);

// True if any Str (including inside translatable command arguments)
// contains a letter.
bool HasTranslatableText(const Inlines& inlines);

// Replaces every formula (and every opaque inline) by a Str("MATHnX"),
// registering the originals in `map`. The result holds only Str and Space
// nodes.
Inlines TokenizeMath(const Inlines& inlines, MathTokenMap& map);

class TokenError : public Error {
 public:
  enum class Kind { kMissingToken, kDroppedToken, kMisnested };
  TokenError(Kind kind, std::vector<std::string> names);
  Kind kind() const { return kind_; }
  const std::vector<std::string>& names() const { return names_; }

 private:
  Kind kind_;
  std::vector<std::string> names_;
};

// Inverse of TokenizeMath on translated text. Throws TokenError: kMissing
// for names absent from the map, kDropped for `expected` names absent from
// the text, kMisnested for open/close tokens out of order.
Inlines Detokenize(std::string_view translated, const MathTokenMap& map,
                   const std::vector<std::string>& expected = {},
                   const ParserConfig& config = ParserConfig::Defaults());

// True when `output` holds exactly the tokens of `source` (as a multiset)
// with every open/close pair in order and properly nested.
bool TokensConserved(std::string_view source, std::string_view output,
                     const MathTokenMap& map);

struct TokenRepair {
  std::string text;
  std::vector<std::string> appended;  // missing tokens added at the end
  std::vector<std::string> removed;   // unknown or surplus tokens dropped
  std::vector<std::string> unwrapped; // open/close pairs dropped
};

// Makes `output` conserve the tokens of `source`: removes tokens not in the
// source, appends missing ones at the end of the sentence, and removes
// open/close pairs that end up out of order.
TokenRepair RepairTokens(std::string_view source, std::string_view output,
                         const MathTokenMap& map);

// Merges adjacent Str nodes, collapses Space runs and trims. Used to
// compare inline sequences modulo whitespace.
Inlines NormalizeInlines(const Inlines& inlines);

}  // namespace texmt

#endif  // TEXMT_MATH_TOKENS_H_
