#ifndef TEXMT_LATEX_H_
#define TEXMT_LATEX_H_

#include <string>
#include <string_view>

#include "texmt/ast.h"
#include "texmt/errors.h"
#include "texmt/parser_config.h"

namespace texmt {

// Parses a LaTeX source into a DocumentAst. If the source has no
// \begin{document}, the whole text is parsed as a body fragment.
// Throws ParseError on unclosed math/brace delimiters and on mismatched
// \begin/\end pairs.
DocumentAst ParseDocument(std::string_view source,
                          const ParserConfig& config = ParserConfig::Defaults());

// Parses a run of inline material (no paragraph breaks are produced;
// blank lines become Space). Used to rebuild opaque inline pieces.
Inlines ParseInlines(std::string_view text,
                     const ParserConfig& config = ParserConfig::Defaults());

// Renders a DocumentAst back to LaTeX. Whitespace between inlines is
// normalized to single spaces; raw, verbatim and math bytes are emitted
// unchanged.
std::string RenderDocument(const DocumentAst& doc);
std::string RenderBlocks(const Blocks& blocks);
std::string RenderInlines(const Inlines& inlines);
std::string RenderInline(const Inline& in);

// Opening and closing delimiter strings for a formula.
std::string MathOpen(const MathDelim& delim);
std::string MathClose(const MathDelim& delim);

}  // namespace texmt

#endif  // TEXMT_LATEX_H_
