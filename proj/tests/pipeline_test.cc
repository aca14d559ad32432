#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "texmt/latex.h"
#include "texmt/pipeline.h"

namespace texmt {
namespace {

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in) << path;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> CorpusFiles() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(TEXMT_FIXTURES "/corpus")) {
    if (e.path().extension() == ".tex") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> SortedMath(const DocumentAst& doc) {
  std::vector<std::string> m = CollectMath(doc);
  std::sort(m.begin(), m.end());
  return m;
}

PipelineConfig MockConfig() {
  PipelineConfig c;
  c.primary = std::string("mock:") + TEXMT_FIXTURES "/defn_dictionary.json";
  return c;
}

TEST(PipelineTest, DefinitionMatchesGolden) {
  PipelineResult r = TranslateTex(Slurp(TEXMT_FIXTURES "/defn.tex"), MockConfig());
  EXPECT_EQ(r.output, Slurp(TEXMT_FIXTURES "/defn.golden.tex"));
  EXPECT_TRUE(r.warnings.empty());
}

TEST(PipelineTest, DefinitionKeepsStructure) {
  std::string in = Slurp(TEXMT_FIXTURES "/defn.tex");
  PipelineResult r = TranslateTex(in, MockConfig());
  const std::string display = "$$\nS_r(x) = \\{y \\in \\F^n \\mid d(x,y) \\leq r\\}.\n$$";
  EXPECT_NE(in.find(display), std::string::npos);
  EXPECT_NE(r.output.find(display), std::string::npos);
  EXPECT_NE(r.output.find("\\begin{defn}"), std::string::npos);
  EXPECT_NE(r.output.find("\\end{defn}"), std::string::npos);
  EXPECT_NE(r.output.find("\\define{boule fermée de rayon $r$ centrée en $x$}"), std::string::npos);
  EXPECT_NE(r.output.find("\\newcommand{\\define}[1]{\\textbf{#1}}"), std::string::npos);
  // The output is itself well-formed and carries the same formulas.
  DocumentAst out = ParseDocument(r.output);
  EXPECT_EQ(SortedMath(out), SortedMath(ParseDocument(in)));
}

TEST(PipelineTest, IdentityBackendReproducesRoundTrip) {
  PipelineConfig c;
  c.primary = "identity";
  c.french_conventions = false;
  for (const std::string& f : CorpusFiles()) {
    std::string in = Slurp(f);
    PipelineResult r = TranslateTex(in, c);
    EXPECT_EQ(r.output, RenderDocument(ParseDocument(in))) << f;
    EXPECT_EQ(SortedMath(ParseDocument(r.output)), SortedMath(ParseDocument(in))) << f;
  }
}

TEST(PipelineTest, MathConservedUnderDictionaryMock) {
  PipelineConfig c = MockConfig();
  c.fallback = "identity";
  for (const std::string& f : CorpusFiles()) {
    std::string in = Slurp(f);
    PipelineResult r = TranslateTex(in, c);
    EXPECT_EQ(SortedMath(ParseDocument(r.output)), SortedMath(ParseDocument(in))) << f;
  }
}

TEST(PipelineTest, TenPageDocumentIsFast) {
  std::string in = Slurp(TEXMT_FIXTURES "/tenpage.tex");
  PipelineConfig c = MockConfig();
  c.fallback = "identity";
  auto start = std::chrono::steady_clock::now();
  PipelineResult r = TranslateTex(in, c);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(secs, 10.0);
  EXPECT_GT(r.doc.report.total(), 500u);
  EXPECT_EQ(SortedMath(ParseDocument(r.output)), SortedMath(ParseDocument(in)));
}

TEST(PipelineTest, OutputIndependentOfConcurrency) {
  std::string in = Slurp(TEXMT_FIXTURES "/tenpage.tex");
  PipelineConfig c = MockConfig();
  c.fallback = "identity";
  c.concurrency = 1;
  PipelineResult serial = TranslateTex(in, c);
  c.concurrency = 8;
  PipelineResult parallel = TranslateTex(in, c);
  EXPECT_EQ(serial.output, parallel.output);
  EXPECT_EQ(serial.doc.report.ToJson(), parallel.doc.report.ToJson());
}

TEST(PipelineTest, FrenchConventionsCanBeDisabled) {
  PipelineConfig c;
  c.primary = "identity";
  std::string in = Slurp(TEXMT_FIXTURES "/corpus/12_quotes.tex");
  EXPECT_NE(TranslateTex(in, c).output.find("\\og pigeonhole principle\\fg{}"), std::string::npos);
  c.french_conventions = false;
  std::string plain = TranslateTex(in, c).output;
  EXPECT_NE(plain.find("``pigeonhole principle''"), std::string::npos);
  EXPECT_EQ(plain.find("babel"), std::string::npos);
  c.french_conventions = true;
  c.target_lang = "de";
  EXPECT_EQ(TranslateTex(in, c).output.find("babel"), std::string::npos);
}

TEST(PipelineTest, FragmentGetsNoPreamble) {
  PipelineConfig c;
  c.primary = "identity";
  PipelineResult r = TranslateTex(Slurp(TEXMT_FIXTURES "/corpus/15_fragment.tex"), c);
  EXPECT_EQ(r.output.find("documentclass"), std::string::npos);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(PipelineTest, MissingDocumentClassWarns) {
  PipelineConfig c;
  c.primary = "identity";
  PipelineResult r = TranslateTex("\\begin{document}\nHello world.\n\\end{document}\n", c);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("documentclass"), std::string::npos);
}

TEST(PipelineTest, GlossaryProtectsTermsOnPrimary) {
  PipelineConfig c = MockConfig();
  c.glossary_path = TEXMT_DATA "/glossary_en_fr.tsv";
  c.french_conventions = false;
  PipelineResult r = TranslateTex("Let $V$ be a vector space.", c);
  EXPECT_NE(r.output.find("espace vectoriel"), std::string::npos) << r.output;
}

TEST(PipelineTest, ParseErrorPropagates) {
  PipelineConfig c;
  c.primary = "identity";
  EXPECT_THROW(TranslateTex("Unclosed $x + y", c), ParseError);
}

TEST(PipelineConfigTest, Validation) {
  PipelineConfig c;
  EXPECT_THROW(c.Validate(), ConfigError);  // no backend
  c.primary = "identity";
  EXPECT_NO_THROW(c.Validate());
  c.threshold = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c.threshold = 2.05;
  c.concurrency = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(PipelineConfigTest, FallbackAloneIsPromoted) {
  PipelineConfig c;
  c.fallback = "identity";
  c.french_conventions = false;
  PipelineResult r = TranslateTex("Hello there.", c);
  EXPECT_EQ(r.output, "Hello there.");
  EXPECT_EQ(r.doc.report.sentences.at(0).backend, "identity");
}

TEST(PipelineConfigTest, FromJson) {
  PipelineConfig c = PipelineConfig::FromJson(nlohmann::json::parse(
      R"({"primary":"identity","threshold":3.5,"concurrency":2,"timeout_ms":500,"french_conventions":false})"));
  EXPECT_EQ(c.primary, "identity");
  EXPECT_EQ(c.threshold, 3.5);
  EXPECT_EQ(c.concurrency, 2);
  EXPECT_EQ(c.http.timeout, std::chrono::milliseconds(500));
  EXPECT_FALSE(c.french_conventions);
  EXPECT_THROW(PipelineConfig::FromJson(nlohmann::json::parse(R"({"primray":"identity"})")), ConfigError);
  EXPECT_THROW(PipelineConfig::FromJson(nlohmann::json::parse(R"({"threshold":"high"})")), ConfigError);
}

TEST(PipelineConfigTest, EnvironmentFillsUnsetFields) {
  ::setenv("TEXMT_BACKEND_URL", "http://127.0.0.1:9/translate", 1);
  ::setenv("TEXMT_API_KEY", "k", 1);
  ::setenv("TEXMT_TIMEOUT_MS", "1500", 1);
  PipelineConfig c;
  c.ApplyEnvironment();
  EXPECT_EQ(c.primary, "http://127.0.0.1:9/translate");
  EXPECT_EQ(c.http.api_key, "k");
  EXPECT_EQ(c.http.timeout, std::chrono::milliseconds(1500));
  PipelineConfig d;
  d.primary = "identity";
  d.ApplyEnvironment();
  EXPECT_EQ(d.primary, "identity");
  ::setenv("TEXMT_TIMEOUT_MS", "soon", 1);
  PipelineConfig e;
  EXPECT_THROW(e.ApplyEnvironment(), ConfigError);
  ::unsetenv("TEXMT_BACKEND_URL");
  ::unsetenv("TEXMT_API_KEY");
  ::unsetenv("TEXMT_TIMEOUT_MS");
}

TEST(PipelineConfigTest, BackendSpecs) {
  EXPECT_EQ(MakeBackend("identity", {})->id(), "identity");
  EXPECT_EQ(MakeBackend(std::string("mock:") + TEXMT_FIXTURES "/defn_dictionary.json", {})->id(), "defn-mock");
  EXPECT_EQ(MakeBackend("http://localhost:8080/t", {})->id(), "http:http://localhost:8080/t");
  EXPECT_THROW(MakeBackend("carrier-pigeon", {}), ConfigError);
}

TEST(ParserConfigFileTest, ShippedFileEqualsDefaults) {
  ParserConfig file = ParserConfig::Load(TEXMT_DATA "/parser_config.json");
  EXPECT_EQ(file.ToJson(), ParserConfig::Defaults().ToJson());
}

TEST(AbbreviationsFileTest, ShippedFileEqualsDefaults) {
  EXPECT_EQ(Abbreviations::Load(TEXMT_DATA "/abbreviations.txt").words(), Abbreviations::Defaults().words());
}

}  // namespace
}  // namespace texmt
