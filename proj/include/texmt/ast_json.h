#ifndef TEXMT_AST_JSON_H_
#define TEXMT_AST_JSON_H_

#include "json.hpp"
#include "texmt/ast.h"

namespace texmt {

// JSON mirror of the AST: every node is {"t": tag, "c": contents}.
// Field names are listed in docs/ast-json.md and are stable.
inline constexpr int kAstJsonSchema = 1;

nlohmann::json AstToJson(const DocumentAst& doc);
nlohmann::json InlinesToJson(const Inlines& inlines);

// Throws Error on documents that do not follow the schema.
DocumentAst AstFromJson(const nlohmann::json& j);

}  // namespace texmt

#endif  // TEXMT_AST_JSON_H_
