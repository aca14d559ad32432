#ifndef TEXMT_PARSER_CONFIG_H_
#define TEXMT_PARSER_CONFIG_H_

#include <set>
#include <string>

#include "json.hpp"

namespace texmt {

// Which environments and commands the LaTeX parser treats specially.
// Defaults() matches data/parser_config.json.
struct ParserConfig {
  // Parsed as DisplayMathBlock / Math(display).
  std::set<std::string> math_environments;
  // Kept byte-for-byte as VerbatimBlock.
  std::set<std::string> opaque_environments;
  std::set<std::string> unordered_lists;
  std::set<std::string> ordered_lists;
  // Commands whose last mandatory argument holds translatable text.
  std::set<std::string> translatable_commands;
  // Commands that form a RawBlock when they start a block.
  std::set<std::string> block_commands;
  // Environments whose bodies are parsed but never sent for translation.
  std::set<std::string> untranslated_environments;
  // Recognize \newcommand{\foo}[1]{\textbf{#1}}-style wrappers in the
  // preamble and treat \foo as translatable.
  bool infer_wrapper_commands = true;

  static ParserConfig Defaults();
  static ParserConfig FromJson(const nlohmann::json& j);
  static ParserConfig Load(const std::string& path);
  nlohmann::json ToJson() const;

  bool IsList(const std::string& env) const {
    return unordered_lists.count(env) || ordered_lists.count(env);
  }
};

}  // namespace texmt

#endif  // TEXMT_PARSER_CONFIG_H_
