#include "texmt/ast_json.h"

#include <string>

#include "texmt/errors.h"

namespace texmt {

using nlohmann::json;

namespace {

const char* DelimName(MathDelimKind k) {
  switch (k) {
    case MathDelimKind::kDollar: return "dollar";
    case MathDelimKind::kParen: return "paren";
    case MathDelimKind::kDoubleDollar: return "double_dollar";
    case MathDelimKind::kBracket: return "bracket";
    case MathDelimKind::kEnvironment: return "environment";
  }
  return "dollar";
}

MathDelimKind DelimFromName(const std::string& s) {
  if (s == "dollar") return MathDelimKind::kDollar;
  if (s == "paren") return MathDelimKind::kParen;
  if (s == "double_dollar") return MathDelimKind::kDoubleDollar;
  if (s == "bracket") return MathDelimKind::kBracket;
  if (s == "environment") return MathDelimKind::kEnvironment;
  throw Error("unknown math delimiter '" + s + "'");
}

json DelimToJson(const MathDelim& d) {
  json j = {{"kind", DelimName(d.kind)}};
  if (d.kind == MathDelimKind::kEnvironment) {
    j["env"] = d.env_name;
    if (!d.env_args.empty()) j["env_args"] = d.env_args;
  }
  return j;
}

MathDelim DelimFromJson(const json& j) {
  MathDelim d;
  d.kind = DelimFromName(j.at("kind").get<std::string>());
  d.env_name = j.value("env", "");
  d.env_args = j.value("env_args", "");
  return d;
}

json InlineToJson(const Inline& in) {
  struct Visitor {
    json operator()(const Str& s) const { return {{"t", "Str"}, {"c", s.text}}; }
    json operator()(const Space&) const { return {{"t", "Space"}}; }
    json operator()(const Math& m) const {
      return {{"t", "Math"},
              {"c", {{"mode", MathModeName(m.mode)}, {"delim", DelimToJson(m.delim)}, {"tex", m.tex}}}};
    }
    json operator()(const Command& c) const {
      json body = {{"name", c.name}, {"args", c.args}};
      body["content"] = c.content ? InlinesToJson(*c.content) : json(nullptr);
      return {{"t", "Command"}, {"c", body}};
    }
    json operator()(const RawInline& r) const {
      return {{"t", "RawInline"}, {"c", r.raw}};
    }
  };
  return std::visit(Visitor{}, in.node);
}

json BlocksToJson(const Blocks& blocks);

json BlockToJson(const Block& b) {
  struct Visitor {
    json operator()(const Paragraph& p) const {
      return {{"t", "Para"}, {"c", InlinesToJson(p.inlines)}};
    }
    json operator()(const Heading& h) const {
      return {{"t", "Header"},
              {"c", {{"level", h.level}, {"command", h.command}, {"starred", h.starred},
                     {"short_title", h.short_title}, {"inlines", InlinesToJson(h.inlines)}}}};
    }
    json operator()(const ListBlock& l) const {
      json items = json::array();
      for (const ListItem& it : l.items)
        items.push_back({{"label", it.label}, {"blocks", BlocksToJson(it.blocks)}});
      return {{"t", "List"},
              {"c", {{"env", l.env}, {"ordered", l.ordered}, {"args", l.args},
                     {"lead", l.lead}, {"items", items}}}};
    }
    json operator()(const DisplayMathBlock& d) const {
      return {{"t", "DisplayMath"}, {"c", {{"delim", DelimToJson(d.delim)}, {"tex", d.tex}}}};
    }
    json operator()(const EnvironmentBlock& e) const {
      return {{"t", "Env"},
              {"c", {{"name", e.name}, {"args", e.args}, {"blocks", BlocksToJson(e.blocks)}}}};
    }
    json operator()(const VerbatimBlock& v) const {
      return {{"t", "Verbatim"}, {"c", {{"env", v.env}, {"raw", v.raw}}}};
    }
    json operator()(const RawBlock& r) const { return {{"t", "RawBlock"}, {"c", r.raw}}; }
  };
  return std::visit(Visitor{}, b.node);
}

json BlocksToJson(const Blocks& blocks) {
  json out = json::array();
  for (const Block& b : blocks) out.push_back(BlockToJson(b));
  return out;
}

Inlines InlinesFromJson(const json& j);
Blocks BlocksFromJson(const json& j);

Inline InlineFromJson(const json& j) {
  const std::string t = j.at("t").get<std::string>();
  if (t == "Str") return Str{j.at("c").get<std::string>()};
  if (t == "Space") return Space{};
  if (t == "RawInline") return RawInline{j.at("c").get<std::string>()};
  const json& c = j.at("c");
  if (t == "Math") return Math(c.at("tex").get<std::string>(), DelimFromJson(c.at("delim")));
  if (t == "Command") {
    Command cmd;
    cmd.name = c.at("name").get<std::string>();
    cmd.args = c.value("args", "");
    if (c.contains("content") && !c.at("content").is_null())
      cmd.content = InlinesFromJson(c.at("content"));
    return cmd;
  }
  throw Error("unknown inline tag '" + t + "'");
}

Inlines InlinesFromJson(const json& j) {
  Inlines out;
  for (const json& e : j) out.push_back(InlineFromJson(e));
  return out;
}

Block BlockFromJson(const json& j) {
  const std::string t = j.at("t").get<std::string>();
  const json& c = j.at("c");
  if (t == "Para") return Paragraph{InlinesFromJson(c)};
  if (t == "RawBlock") return RawBlock{c.get<std::string>()};
  if (t == "Header") {
    Heading h;
    h.level = c.at("level").get<int>();
    h.command = c.at("command").get<std::string>();
    h.starred = c.value("starred", false);
    h.short_title = c.value("short_title", "");
    h.inlines = InlinesFromJson(c.at("inlines"));
    return h;
  }
  if (t == "List") {
    ListBlock l;
    l.env = c.at("env").get<std::string>();
    l.ordered = c.value("ordered", false);
    l.args = c.value("args", "");
    l.lead = c.value("lead", "");
    for (const json& it : c.at("items"))
      l.items.push_back({it.value("label", ""), BlocksFromJson(it.at("blocks"))});
    return l;
  }
  if (t == "DisplayMath")
    return DisplayMathBlock{c.at("tex").get<std::string>(), DelimFromJson(c.at("delim"))};
  if (t == "Env")
    return EnvironmentBlock{c.at("name").get<std::string>(), c.value("args", ""),
                            BlocksFromJson(c.at("blocks"))};
  if (t == "Verbatim") return VerbatimBlock{c.at("env").get<std::string>(), c.at("raw").get<std::string>()};
  throw Error("unknown block tag '" + t + "'");
}

Blocks BlocksFromJson(const json& j) {
  Blocks out;
  for (const json& e : j) out.push_back(BlockFromJson(e));
  return out;
}

}  // namespace

json InlinesToJson(const Inlines& inlines) {
  json out = json::array();
  for (const Inline& in : inlines) out.push_back(InlineToJson(in));
  return out;
}

json AstToJson(const DocumentAst& doc) {
  return {{"schema", kAstJsonSchema},
          {"has_document_env", doc.has_document_env},
          {"preamble", doc.preamble},
          {"blocks", BlocksToJson(doc.blocks)},
          {"trailer", doc.trailer}};
}

DocumentAst AstFromJson(const json& j) {
  try {
    if (j.value("schema", 0) != kAstJsonSchema) throw Error("unsupported AST schema");
    DocumentAst doc;
    doc.has_document_env = j.value("has_document_env", false);
    doc.preamble = j.value("preamble", "");
    doc.trailer = j.value("trailer", "");
    doc.blocks = BlocksFromJson(j.at("blocks"));
    return doc;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed AST JSON: ") + e.what());
  }
}

}  // namespace texmt
