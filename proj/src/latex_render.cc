#include <string>

#include "texmt/latex.h"

namespace texmt {

std::string MathOpen(const MathDelim& delim) {
  switch (delim.kind) {
    case MathDelimKind::kDollar: return "$";
    case MathDelimKind::kParen: return "\\(";
    case MathDelimKind::kDoubleDollar: return "$$";
    case MathDelimKind::kBracket: return "\\[";
    case MathDelimKind::kEnvironment: return "\\begin{" + delim.env_name + "}" + delim.env_args;
  }
  return "$";
}

std::string MathClose(const MathDelim& delim) {
  switch (delim.kind) {
    case MathDelimKind::kDollar: return "$";
    case MathDelimKind::kParen: return "\\)";
    case MathDelimKind::kDoubleDollar: return "$$";
    case MathDelimKind::kBracket: return "\\]";
    case MathDelimKind::kEnvironment: return "\\end{" + delim.env_name + "}";
  }
  return "$";
}

std::string RenderInline(const Inline& in) {
  struct Visitor {
    std::string operator()(const Str& s) const { return s.text; }
    std::string operator()(const Space&) const { return " "; }
    std::string operator()(const Math& m) const {
      return MathOpen(m.delim) + m.tex + MathClose(m.delim);
    }
    std::string operator()(const Command& c) const {
      std::string out;
      if (!c.name.empty()) out = "\\" + c.name;
      out += c.args;
      if (c.content) out += "{" + RenderInlines(*c.content) + "}";
      return out;
    }
    std::string operator()(const RawInline& r) const { return r.raw; }
  };
  return std::visit(Visitor{}, in.node);
}

std::string RenderInlines(const Inlines& inlines) {
  std::string out;
  for (const Inline& in : inlines) out += RenderInline(in);
  return out;
}

namespace {

// A paragraph ending in a comment drops the comment's newline; the block
// separator supplies it.
std::string RenderParagraphInlines(const Inlines& inlines) {
  std::string out = RenderInlines(inlines);
  if (!inlines.empty() && inlines.back().is<RawInline>() && !out.empty() &&
      out.back() == '\n')
    out.pop_back();
  return out;
}

std::string RenderBlock(const Block& block) {
  struct Visitor {
    std::string operator()(const Paragraph& p) const {
      return RenderParagraphInlines(p.inlines);
    }
    std::string operator()(const Heading& h) const {
      return "\\" + h.command + (h.starred ? "*" : "") + h.short_title + "{" +
             RenderInlines(h.inlines) + "}";
    }
    std::string operator()(const ListBlock& l) const {
      std::string out = "\\begin{" + l.env + "}" + l.args;
      if (!l.lead.empty()) out += "\n" + l.lead;
      for (const ListItem& item : l.items) {
        out += "\n\\item" + item.label;
        if (!item.blocks.empty()) out += " " + RenderBlocks(item.blocks);
      }
      return out + "\n\\end{" + l.env + "}";
    }
    std::string operator()(const DisplayMathBlock& d) const {
      return MathOpen(d.delim) + "\n" + d.tex + "\n" + MathClose(d.delim);
    }
    std::string operator()(const EnvironmentBlock& e) const {
      std::string out = "\\begin{" + e.name + "}" + e.args + "\n";
      if (!e.blocks.empty()) out += RenderBlocks(e.blocks) + "\n";
      return out + "\\end{" + e.name + "}";
    }
    std::string operator()(const VerbatimBlock& v) const {
      return "\\begin{" + v.env + "}" + v.raw + "\\end{" + v.env + "}";
    }
    std::string operator()(const RawBlock& r) const { return r.raw; }
  };
  return std::visit(Visitor{}, block.node);
}

}  // namespace

std::string RenderBlocks(const Blocks& blocks) {
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += "\n\n";
    out += RenderBlock(blocks[i]);
  }
  return out;
}

std::string RenderDocument(const DocumentAst& doc) {
  if (!doc.has_document_env) return RenderBlocks(doc.blocks);
  std::string out = doc.preamble + "\\begin{document}\n";
  if (!doc.blocks.empty()) out += RenderBlocks(doc.blocks) + "\n";
  return out + "\\end{document}" + doc.trailer;
}

namespace {

void CollectInline(const Inline& in, std::vector<std::string>& out) {
  if (in.is<Math>()) {
    out.push_back(in.as<Math>().tex);
  } else if (in.is<Command>() && in.as<Command>().content) {
    CollectMath(*in.as<Command>().content, out);
  }
}

}  // namespace

void CollectMath(const Inlines& inlines, std::vector<std::string>& out) {
  for (const Inline& in : inlines) CollectInline(in, out);
}

void CollectMath(const Blocks& blocks, std::vector<std::string>& out) {
  for (const Block& b : blocks) {
    if (b.is<Paragraph>()) {
      CollectMath(b.as<Paragraph>().inlines, out);
    } else if (b.is<Heading>()) {
      CollectMath(b.as<Heading>().inlines, out);
    } else if (b.is<ListBlock>()) {
      for (const ListItem& item : b.as<ListBlock>().items) CollectMath(item.blocks, out);
    } else if (b.is<DisplayMathBlock>()) {
      out.push_back(b.as<DisplayMathBlock>().tex);
    } else if (b.is<EnvironmentBlock>()) {
      CollectMath(b.as<EnvironmentBlock>().blocks, out);
    }
  }
}

std::vector<std::string> CollectMath(const DocumentAst& doc) {
  std::vector<std::string> out;
  CollectMath(doc.blocks, out);
  return out;
}

}  // namespace texmt
