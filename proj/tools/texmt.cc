// texmt: translate LaTeX documents while keeping math and markup intact,
// plus corpus and evaluation utilities.
//
// Exit codes: 0 success, 2 success with warnings, 1 fatal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "texmt/ast_json.h"
#include "texmt/bleu.h"
#include "texmt/corpus.h"
#include "texmt/latex.h"
#include "texmt/pipeline.h"

namespace fs = std::filesystem;
using namespace texmt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitWarnings = 2;

std::string ReadFile(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

// ---- translate ----

struct TranslateArgs {
  std::string input;
  std::string output;
  std::string report;
  std::string config_file;
  std::string batch_dir;
  std::string out_dir;
  bool no_french = false;
  std::optional<double> threshold;
  std::optional<int> concurrency;
  std::optional<long> timeout_ms;
  std::optional<int> retries;
  PipelineConfig config;
};

// Translates one file; returns the exit code for it.
int TranslateOne(const std::string& input, const std::string& output, std::string report,
                 const PipelineConfig& config) {
  std::string source = ReadFile(input);
  PipelineResult r;
  try {
    r = TranslateTex(source, config);
  } catch (const ParseError& e) {
    const SourcePosition& p = e.position();
    std::cerr << input << ":" << p.line << ":" << p.column << ": error: " << e.what() << "\n";
    return kExitFatal;
  }
  WriteFile(output, r.output);

  std::string base = output.empty() || output == "-" ? input : output;
  if (report.empty() && !(output.empty() || output == "-")) report = base + ".report.json";
  if (!report.empty()) WriteFile(report, r.doc.report.ToJson().dump(2) + "\n");
  if (config.dump_intermediate) {
    WriteFile(base + ".intermediate.json", IntermediateJson(r.doc).dump(2) + "\n");
  }
  for (const std::string& w : r.warnings) std::cerr << input << ": warning: " << w << "\n";
  std::cerr << input << ": " << r.doc.report.total() << " sentences, " << r.doc.report.fallback_count()
            << " routed away from the primary backend\n";
  return r.warnings.empty() ? kExitOk : kExitWarnings;
}

int RunTranslate(TranslateArgs& a) {
  PipelineConfig config = a.config_file.empty() ? a.config : PipelineConfig::Load(a.config_file);
  if (!a.config_file.empty()) {
    // Flags given on the command line win over the file.
    if (!a.config.primary.empty()) config.primary = a.config.primary;
    if (!a.config.fallback.empty()) config.fallback = a.config.fallback;
    if (!a.config.glossary_path.empty()) config.glossary_path = a.config.glossary_path;
    if (!a.config.parser_config_path.empty()) config.parser_config_path = a.config.parser_config_path;
    if (!a.config.abbreviations_path.empty()) config.abbreviations_path = a.config.abbreviations_path;
    if (a.config.dump_intermediate) config.dump_intermediate = true;
    if (a.config.display_math_ends_sentence) config.display_math_ends_sentence = true;
    if (a.config.target_lang != "fr") config.target_lang = a.config.target_lang;
    if (a.config.source_lang != "en") config.source_lang = a.config.source_lang;
  }
  if (a.no_french) config.french_conventions = false;
  if (a.threshold) config.threshold = *a.threshold;
  if (a.concurrency) config.concurrency = *a.concurrency;
  if (a.timeout_ms) config.http.timeout = std::chrono::milliseconds(*a.timeout_ms);
  if (a.retries) config.http.retries = *a.retries;
  config.ApplyEnvironment();
  config.Validate();

  if (a.batch_dir.empty()) {
    if (a.input.empty()) throw ConfigError("translate needs an input file or --batch DIR");
    return TranslateOne(a.input, a.output, a.report, config);
  }
  if (a.out_dir.empty()) throw ConfigError("--batch needs --out-dir");
  fs::create_directories(a.out_dir);
  std::vector<fs::path> inputs;
  for (const auto& entry : fs::directory_iterator(a.batch_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tex") inputs.push_back(entry.path());
  }
  std::sort(inputs.begin(), inputs.end());
  int worst = kExitOk;
  for (const fs::path& in : inputs) {
    fs::path out = fs::path(a.out_dir) / in.filename();
    int code = TranslateOne(in.string(), out.string(), out.string() + ".report.json", config);
    if (code == kExitFatal || worst == kExitFatal) {
      worst = kExitFatal;
    } else {
      worst = std::max(worst, code);
    }
  }
  return worst;
}

// ---- parse / render ----

int RunParse(const std::string& input, const std::string& output, const std::string& parser_config) {
  ParserConfig config = parser_config.empty() ? ParserConfig::Defaults() : ParserConfig::Load(parser_config);
  try {
    WriteFile(output, AstToJson(ParseDocument(ReadFile(input), config)).dump(2) + "\n");
  } catch (const ParseError& e) {
    const SourcePosition& p = e.position();
    std::cerr << input << ":" << p.line << ":" << p.column << ": error: " << e.what() << "\n";
    return kExitFatal;
  }
  return kExitOk;
}

int RunRender(const std::string& input, const std::string& output) {
  nlohmann::json j = nlohmann::json::parse(ReadFile(input), nullptr, false);
  if (j.is_discarded()) throw Error(input + ": not valid JSON");
  WriteFile(output, RenderDocument(AstFromJson(j)));
  return kExitOk;
}

// ---- corpus ----

struct CorpusIo {
  std::string src, tgt, tsv;

  ParallelCorpus Read() const {
    if (!tsv.empty()) return ReadParallelTsv(tsv);
    if (src.empty() || tgt.empty()) throw ConfigError("give --src and --tgt, or --tsv");
    return ReadParallel(src, tgt);
  }
};

void AddCorpusInput(CLI::App* cmd, CorpusIo& io) {
  cmd->add_option("--src", io.src, "source side, one sentence per line");
  cmd->add_option("--tgt", io.tgt, "target side, aligned with --src");
  cmd->add_option("--tsv", io.tsv, "source<TAB>target file instead of --src/--tgt");
}

void WriteCorpus(const ParallelCorpus& c, const std::string& prefix, bool tsv) {
  if (tsv) {
    WriteParallelTsv(c, prefix + ".tsv");
  } else {
    WriteParallel(c, prefix + ".src", prefix + ".tgt");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translate LaTeX documents with math and markup preserved"};
  app.require_subcommand(1);

  TranslateArgs ta;
  CLI::App* translate = app.add_subcommand("translate", "translate a LaTeX document");
  translate->add_option("input", ta.input, "input .tex file ('-' for stdin)");
  translate->add_option("-o,--output", ta.output, "output .tex file (default stdout)");
  translate->add_option("--report", ta.report, "routing report JSON (default OUTPUT.report.json)");
  translate->add_option("--config", ta.config_file, "pipeline config JSON");
  translate->add_option("--primary", ta.config.primary, "primary backend: identity, mock:PATH or URL");
  translate->add_option("--fallback", ta.config.fallback, "fallback backend: identity, mock:PATH or URL");
  translate->add_option("--threshold", ta.threshold, "perplexity threshold (default 2.05)");
  translate->add_option("--concurrency", ta.concurrency, "parallel backend calls (default 4)");
  translate->add_option("--glossary", ta.config.glossary_path, "glossary TSV; terms are protected on the primary");
  translate->add_option("--parser-config", ta.config.parser_config_path, "parser config JSON");
  translate->add_option("--abbreviations", ta.config.abbreviations_path, "abbreviation list");
  translate->add_option("--source-lang", ta.config.source_lang, "default en");
  translate->add_option("--target-lang", ta.config.target_lang, "default fr");
  translate->add_option("--timeout-ms", ta.timeout_ms, "HTTP timeout (env TEXMT_TIMEOUT_MS)");
  translate->add_option("--retries", ta.retries, "HTTP retries (env TEXMT_RETRIES)");
  translate->add_flag("--dump-intermediate", ta.config.dump_intermediate,
                      "write token map and tokenized sentences to OUTPUT.intermediate.json");
  translate->add_flag("--no-french-conventions", ta.no_french, "skip babel preamble and quote rewriting");
  translate->add_flag("--display-math-ends-sentence", ta.config.display_math_ends_sentence,
                      "end a sentence after a display formula");
  translate->add_option("--batch", ta.batch_dir, "translate every .tex file in this directory");
  translate->add_option("--out-dir", ta.out_dir, "output directory for --batch");

  std::string parse_in, parse_out, parse_config;
  CLI::App* parse = app.add_subcommand("parse", "dump the document AST as JSON");
  parse->add_option("input", parse_in, "input .tex file")->required();
  parse->add_option("-o,--output", parse_out, "output JSON (default stdout)");
  parse->add_option("--parser-config", parse_config, "parser config JSON");

  CLI::App* defaults = app.add_subcommand("parser-config", "print the built-in parser config as JSON");

  std::string render_in, render_out;
  CLI::App* render = app.add_subcommand("render", "render an AST JSON dump back to LaTeX");
  render->add_option("input", render_in, "AST JSON file")->required();
  render->add_option("-o,--output", render_out, "output .tex (default stdout)");

  CLI::App* corpus = app.add_subcommand("corpus", "parallel corpus tools");
  corpus->require_subcommand(1);

  CorpusIo filter_io;
  std::string filter_glossary, filter_out;
  int min_terms = 2;
  CLI::App* filter = corpus->add_subcommand("filter", "keep pairs with enough glossary terms");
  AddCorpusInput(filter, filter_io);
  filter->add_option("--glossary", filter_glossary, "glossary TSV")->required();
  filter->add_option("--min-terms", min_terms, "default 2");
  filter->add_option("--out", filter_out, "output prefix (PREFIX.src/.tgt or PREFIX.tsv)")->required();

  CorpusIo split_io;
  std::vector<double> ratios = {0.8, 0.1, 0.1};
  std::uint64_t seed = 42;
  std::string split_out;
  CLI::App* split = corpus->add_subcommand("split", "shuffle and split into train/valid/test");
  AddCorpusInput(split, split_io);
  split->add_option("--ratios", ratios, "train valid test (default 0.8 0.1 0.1)")->expected(3)->delimiter(',');
  split->add_option("--seed", seed, "shuffle seed (default 42)");
  split->add_option("--out", split_out, "output prefix; writes PREFIX.train, .valid, .test")->required();

  CorpusIo stats_io;
  bool casefold = false;
  CLI::App* stats = corpus->add_subcommand("stats", "pair count, token and vocabulary sizes");
  AddCorpusInput(stats, stats_io);
  stats->add_flag("--casefold", casefold, "fold ASCII case before counting vocabulary");

  std::string tok_in = "-", tok_out;
  CLI::App* tokenize = corpus->add_subcommand("tokenize", "tokenize one sentence per line");
  tokenize->add_option("input", tok_in, "input file (default stdin)");
  tokenize->add_option("-o,--output", tok_out, "output file (default stdout)");

  std::string hyp, ref;
  bool smooth = false;
  CLI::App* bleu = app.add_subcommand("score-bleu", "corpus BLEU of a hypothesis file against a reference");
  bleu->add_option("--hyp", hyp, "hypotheses, one per line")->required();
  bleu->add_option("--ref", ref, "references, aligned")->required();
  bleu->add_flag("--smooth", smooth, "add-one smoothing for n >= 2");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*translate) return RunTranslate(ta);
    if (*parse) return RunParse(parse_in, parse_out, parse_config);
    if (*render) return RunRender(render_in, render_out);
    if (*defaults) {
      std::cout << ParserConfig::Defaults().ToJson().dump(2) << "\n";
      return kExitOk;
    }
    if (*filter) {
      ParallelCorpus c = filter_io.Read();
      ParallelCorpus kept = FilterByGlossary(c, Glossary::Load(filter_glossary), min_terms);
      WriteCorpus(kept, filter_out, !filter_io.tsv.empty());
      std::cerr << "kept " << kept.size() << " of " << c.size() << " pairs\n";
      return kExitOk;
    }
    if (*split) {
      ParallelCorpus c = split_io.Read();
      CorpusSplit s = ShuffleSplit(c, {ratios[0], ratios[1], ratios[2]}, seed);
      bool tsv = !split_io.tsv.empty();
      WriteCorpus(s.train, split_out + ".train", tsv);
      WriteCorpus(s.valid, split_out + ".valid", tsv);
      WriteCorpus(s.test, split_out + ".test", tsv);
      std::cerr << "train " << s.train.size() << ", valid " << s.valid.size() << ", test " << s.test.size()
                << "\n";
      return kExitOk;
    }
    if (*stats) {
      ParallelCorpus c = stats_io.Read();
      std::vector<std::string> src = c.sources(), tgt = c.targets();
      auto tokens = [](const std::vector<std::string>& lines) {
        std::size_t n = 0;
        for (const std::string& l : lines) n += WordTokenize(l).size();
        return n;
      };
      nlohmann::ordered_json j;
      j["pairs"] = c.size();
      j["source_tokens"] = tokens(src);
      j["target_tokens"] = tokens(tgt);
      j["source_vocab"] = VocabSize(src, casefold);
      j["target_vocab"] = VocabSize(tgt, casefold);
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }
    if (*tokenize) {
      std::istringstream in(ReadFile(tok_in));
      std::string line, out;
      while (std::getline(in, line)) out += JoinTokens(WordTokenize(line)) + "\n";
      WriteFile(tok_out, out);
      return kExitOk;
    }
    if (*bleu) {
      BleuReport r = BleuFromText(ReadLines(hyp), ReadLines(ref), smooth);
      std::cout << r.ToJson().dump(2) << "\n";
      std::printf("BLEU = %.2f, %.1f/%.1f/%.1f/%.1f (BP=%.3f, hyp_len=%zu, ref_len=%zu)\n", r.score * 100,
                  r.precisions[0] * 100, r.precisions[1] * 100, r.precisions[2] * 100, r.precisions[3] * 100,
                  r.brevity_penalty, r.hyp_len, r.ref_len);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFatal;
  }
  return kExitFatal;
}
