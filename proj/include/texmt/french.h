#ifndef TEXMT_FRENCH_H_
#define TEXMT_FRENCH_H_

#include <string>
#include <string_view>

#include "texmt/ast.h"
#include "texmt/errors.h"

namespace texmt {

class NoDocumentClassError : public Error {
 public:
  NoDocumentClassError() : Error("preamble has no \\documentclass") {}
};

// Adds "french" to the \documentclass options and loads fontenc (T1) and
// babel right after it, skipping whatever is already there. Idempotent.
std::string AddFrenchPreamble(std::string_view preamble);
DocumentAst AddFrenchPreamble(const DocumentAst& ast);

struct QuoteConversion {
  std::string text;
  int pairs = 0;       // ``...'' pairs rewritten
  int unbalanced = 0;  // `` or '' left as is
};

// Rewrites each balanced ``...'' as \og ...\fg{}. Unpaired quote marks are
// left untouched and counted.
QuoteConversion ConvertQuotes(std::string_view text);

}  // namespace texmt

#endif  // TEXMT_FRENCH_H_
