#ifndef TEXMT_AST_H_
#define TEXMT_AST_H_

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace texmt {

// Block/inline tree of a LaTeX document body. Nodes that the parser does
// not understand are kept as raw text and rendered back byte-for-byte.

enum class MathMode { kInline, kDisplay };

// Source delimiter of a formula. kEnvironment uses MathDelim::env_name.
enum class MathDelimKind {
  kDollar,        // $...$
  kParen,         // \(...\)
  kDoubleDollar,  // $$...$$
  kBracket,       // \[...\]
  kEnvironment,   // \begin{equation}...\end{equation}
};

struct MathDelim {
  MathDelimKind kind = MathDelimKind::kDollar;
  std::string env_name;
  std::string env_args;  // e.g. "{2}" for alignat

  static MathDelim Canonical(MathMode mode);
  MathMode mode() const {
    return kind == MathDelimKind::kDollar || kind == MathDelimKind::kParen
               ? MathMode::kInline
               : MathMode::kDisplay;
  }
  bool operator==(const MathDelim&) const = default;
};

struct Inline;
using Inlines = std::vector<Inline>;

// A single word. Never contains whitespace.
struct Str {
  std::string text;
  bool operator==(const Str&) const = default;
};

struct Space {
  bool operator==(const Space&) const = default;
};

// Formula body without its delimiters.
struct Math {
  MathMode mode = MathMode::kInline;
  std::string tex;
  MathDelim delim;

  Math() = default;
  Math(MathMode m, std::string body) : mode(m), tex(std::move(body)), delim(MathDelim::Canonical(m)) {}
  Math(std::string body, MathDelim d) : mode(d.mode()), tex(std::move(body)), delim(std::move(d)) {}
  bool operator==(const Math&) const = default;
};

// A control word. Translatable commands keep the text of their (last)
// mandatory argument in `content` and any arguments before it in `args`;
// all other commands keep every argument verbatim in `args`. A command
// with an empty name is a bare brace group.
struct Command {
  std::string name;
  std::string args;
  std::optional<Inlines> content;
  bool operator==(const Command&) const;
};

struct RawInline {
  std::string raw;
  bool operator==(const RawInline&) const = default;
};

struct Inline {
  std::variant<Str, Space, Math, Command, RawInline> node;

  Inline(Str s) : node(std::move(s)) {}
  Inline(Space s) : node(s) {}
  Inline(Math m) : node(std::move(m)) {}
  Inline(Command c) : node(std::move(c)) {}
  Inline(RawInline r) : node(std::move(r)) {}

  template <typename T>
  bool is() const { return std::holds_alternative<T>(node); }
  template <typename T>
  const T& as() const { return std::get<T>(node); }
  template <typename T>
  T& as() { return std::get<T>(node); }
  bool operator==(const Inline&) const = default;
};

inline bool Command::operator==(const Command& o) const {
  return name == o.name && args == o.args && content == o.content;
}

struct Block;
using Blocks = std::vector<Block>;

struct Paragraph {
  Inlines inlines;
  bool operator==(const Paragraph&) const = default;
};

// \section and friends. `command` is the control word as written
// (section, subsection, ...); `short_title` the raw optional argument.
struct Heading {
  int level = 1;
  std::string command = "section";
  bool starred = false;
  std::string short_title;
  Inlines inlines;
  bool operator==(const Heading&) const = default;
};

struct ListItem {
  std::string label;  // raw "[...]" after \item, empty if none
  Blocks blocks;
  bool operator==(const ListItem&) const;
};

struct ListBlock {
  bool ordered = false;
  std::string env = "itemize";
  std::string args;
  std::string lead;  // raw text between \begin{...} and the first \item
  std::vector<ListItem> items;
  bool operator==(const ListBlock&) const;
};

struct DisplayMathBlock {
  std::string tex;
  MathDelim delim{MathDelimKind::kBracket, {}, {}};
  bool operator==(const DisplayMathBlock&) const = default;
};

struct EnvironmentBlock {
  std::string name;
  std::string args;
  Blocks blocks;
  bool operator==(const EnvironmentBlock&) const;
};

// Opaque environment (verbatim, lstlisting, ...). `raw` is the body.
struct VerbatimBlock {
  std::string env = "verbatim";
  std::string raw;
  bool operator==(const VerbatimBlock&) const = default;
};

struct RawBlock {
  std::string raw;
  bool operator==(const RawBlock&) const = default;
};

struct Block {
  std::variant<Paragraph, Heading, ListBlock, DisplayMathBlock,
               EnvironmentBlock, VerbatimBlock, RawBlock>
      node;

  Block(Paragraph b) : node(std::move(b)) {}
  Block(Heading b) : node(std::move(b)) {}
  Block(ListBlock b) : node(std::move(b)) {}
  Block(DisplayMathBlock b) : node(std::move(b)) {}
  Block(EnvironmentBlock b) : node(std::move(b)) {}
  Block(VerbatimBlock b) : node(std::move(b)) {}
  Block(RawBlock b) : node(std::move(b)) {}

  template <typename T>
  bool is() const { return std::holds_alternative<T>(node); }
  template <typename T>
  const T& as() const { return std::get<T>(node); }
  template <typename T>
  T& as() { return std::get<T>(node); }
  bool operator==(const Block&) const = default;
};

inline bool ListItem::operator==(const ListItem& o) const {
  return label == o.label && blocks == o.blocks;
}
inline bool ListBlock::operator==(const ListBlock& o) const {
  return ordered == o.ordered && env == o.env && args == o.args &&
         lead == o.lead && items == o.items;
}
inline bool EnvironmentBlock::operator==(const EnvironmentBlock& o) const {
  return name == o.name && args == o.args && blocks == o.blocks;
}

struct DocumentAst {
  std::string preamble;  // everything before \begin{document}
  Blocks blocks;
  std::string trailer;   // everything after \end{document}
  // False for fragments without a document environment; the renderer then
  // emits the body only.
  bool has_document_env = false;
  bool operator==(const DocumentAst&) const = default;
};

const char* MathModeName(MathMode mode);

// Walks every formula in the tree (inline Math and DisplayMathBlock),
// including formulas nested in command arguments and list items.
std::vector<std::string> CollectMath(const DocumentAst& doc);
void CollectMath(const Inlines& inlines, std::vector<std::string>& out);
void CollectMath(const Blocks& blocks, std::vector<std::string>& out);

}  // namespace texmt

#endif  // TEXMT_AST_H_
