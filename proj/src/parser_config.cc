#include "texmt/parser_config.h"

#include <fstream>

#include "texmt/errors.h"

namespace texmt {

ParserConfig ParserConfig::Defaults() {
  ParserConfig c;
  c.math_environments = {
      "equation", "equation*", "align",     "align*",    "gather",
      "gather*",  "multline",  "multline*", "eqnarray",  "eqnarray*",
      "flalign",  "flalign*",  "alignat",   "alignat*",  "displaymath",
      "math"};
  c.opaque_environments = {"verbatim", "verbatim*", "lstlisting",
                           "tikzpicture", "tabular",  "tabular*",
                           "tabularx",    "array",    "minted",
                           "comment",     "filecontents"};
  c.unordered_lists = {"itemize", "description"};
  c.ordered_lists = {"enumerate"};
  c.translatable_commands = {"emph",     "textbf",    "textit",  "textsl",
                             "textsc",   "underline", "caption", "title",
                             "footnote", "text",      "mbox"};
  c.block_commands = {"maketitle",    "tableofcontents",  "listoffigures",
                      "listoftables", "newpage",          "clearpage",
                      "cleardoublepage", "bibliography",  "bibliographystyle",
                      "printbibliography", "newcommand",  "renewcommand",
                      "providecommand", "newtheorem",     "def",
                      "let",          "setlength",        "setcounter",
                      "addtocounter", "vspace",           "vspace*",
                      "bigskip",      "medskip",          "smallskip",
                      "centering",    "raggedright",      "appendix",
                      "includegraphics", "input",         "include",
                      "label",        "pagebreak",
                      "thispagestyle", "pagestyle",       "hline",
                      "frontmatter",  "mainmatter",       "backmatter"};
  c.untranslated_environments = {"thebibliography"};
  return c;
}

namespace {

std::set<std::string> StringSet(const nlohmann::json& j, const char* key,
                                const std::set<std::string>& fallback) {
  if (!j.contains(key)) return fallback;
  std::set<std::string> out;
  for (const auto& v : j.at(key)) out.insert(v.get<std::string>());
  return out;
}

}  // namespace

ParserConfig ParserConfig::FromJson(const nlohmann::json& j) {
  const ParserConfig d = Defaults();
  ParserConfig c;
  c.math_environments = StringSet(j, "math_environments", d.math_environments);
  c.opaque_environments = StringSet(j, "opaque_environments", d.opaque_environments);
  c.unordered_lists = StringSet(j, "unordered_lists", d.unordered_lists);
  c.ordered_lists = StringSet(j, "ordered_lists", d.ordered_lists);
  c.translatable_commands =
      StringSet(j, "translatable_commands", d.translatable_commands);
  c.block_commands = StringSet(j, "block_commands", d.block_commands);
  c.untranslated_environments =
      StringSet(j, "untranslated_environments", d.untranslated_environments);
  c.infer_wrapper_commands =
      j.value("infer_wrapper_commands", d.infer_wrapper_commands);
  return c;
}

ParserConfig ParserConfig::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open parser config: " + path);
  try {
    return FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error("bad parser config " + path + ": " + e.what());
  }
}

nlohmann::json ParserConfig::ToJson() const {
  return {{"math_environments", math_environments},
          {"opaque_environments", opaque_environments},
          {"unordered_lists", unordered_lists},
          {"ordered_lists", ordered_lists},
          {"translatable_commands", translatable_commands},
          {"block_commands", block_commands},
          {"untranslated_environments", untranslated_environments},
          {"infer_wrapper_commands", infer_wrapper_commands}};
}

}  // namespace texmt
