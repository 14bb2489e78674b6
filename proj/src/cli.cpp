#include "stallings/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "stallings/group_document.hpp"
#include "stallings/pda.hpp"
#include "stallings/pipeline.hpp"

namespace stallings {

namespace {

namespace fs = std::filesystem;

constexpr char kCoreMagic[5] = {'S', 'T', 'C', 'O', 'R'};
constexpr unsigned char kCoreVersion = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

StallingsSection load_section(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open section file: " + path);
  return StallingsSection::load(in);
}

void save_core(const std::string& path, const Automaton& core) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write core file: " + path);
  out.write(kCoreMagic, sizeof(kCoreMagic));
  out.put(static_cast<char>(kCoreVersion));
  write_binary(out, core);
}

Automaton load_core(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open core file: " + path);
  char magic[sizeof(kCoreMagic)];
  in.read(magic, sizeof(magic));
  if (!in || !std::equal(std::begin(magic), std::end(magic), std::begin(kCoreMagic))) {
    throw std::runtime_error("not a core file: " + path);
  }
  if (in.get() != kCoreVersion) throw std::runtime_error("unsupported core version");
  return read_binary(in);
}

// Alphabet inferred from the word's own tokens, in first-occurrence order.
std::pair<AlphabetPtr, Word> parse_free_word(const std::string& text) {
  std::vector<std::string> names;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token == "1") continue;
    if (token.size() > 3 && token.substr(token.size() - 3) == "^-1") {
      token.resize(token.size() - 3);
    }
    if (std::find(names.begin(), names.end(), token) == names.end()) names.push_back(token);
  }
  AlphabetPtr alphabet = make_alphabet(names);
  return {alphabet, parse_word(*alphabet, text)};
}

void dump_trace_stage(const fs::path& dir, const std::string& name, const Automaton& a) {
  write_file((dir / (name + ".txt")).string(), to_text(a));
  write_file((dir / (name + ".dot")).string(), to_dot(a, name));
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stallings sections and subgroup automata for virtually free groups"};
  app.require_subcommand(1);

  // section build/validate
  auto* section = app.add_subcommand("section", "build or validate a section");
  section->require_subcommand(1);
  std::string group_path, section_out, section_path;
  auto* build = section->add_subcommand("build", "build a section from a group document");
  build->add_option("group", group_path, "group JSON document")->required();
  build->add_option("-o,--output", section_out, "output section file")->required();
  std::size_t budget = 200;
  std::uint64_t seed = 1;
  auto* validate = section->add_subcommand("validate", "sample the section axioms");
  validate->add_option("section", section_path, "section file")->required();
  validate->add_option("--budget", budget, "number of sampled (S2) pairs");
  validate->add_option("--seed", seed, "sampling seed");

  std::string word_text;
  auto* reduce = app.add_subcommand("reduce", "freely reduce a word");
  reduce->add_option("word", word_text, "word, e.g. \"a a^-1 b\"")->required();

  std::string automaton_path;
  auto* benois = app.add_subcommand("benois", "reduce an automaton's language");
  benois->add_option("automaton", automaton_path, "automaton text file")->required();

  auto* wp = app.add_subcommand("wp", "word problem");
  wp->add_option("section", section_path, "section file")->required();
  wp->add_option("word", word_text, "word")->required();

  std::vector<std::string> generator_texts;
  std::string trace_dir, core_out;
  auto* stallings_cmd = app.add_subcommand("stallings", "build the Stallings automaton of H");
  stallings_cmd->add_option("section", section_path, "section file")->required();
  stallings_cmd->add_option("-g,--generator", generator_texts, "generator word (repeatable)")
      ->required();
  stallings_cmd->add_option("--trace-dir", trace_dir, "dump every pipeline stage here");
  stallings_cmd->add_option("-o,--output", core_out, "core output file (default: print)");

  std::string core_path;
  auto* member_cmd = app.add_subcommand("member", "subgroup membership");
  member_cmd->add_option("section", section_path, "section file")->required();
  member_cmd->add_option("core", core_path, "core file")->required();
  member_cmd->add_option("word", word_text, "word")->required();

  auto* index_cmd = app.add_subcommand("index", "finite-index test");
  index_cmd->add_option("section", section_path, "section file")->required();
  index_cmd->add_option("core", core_path, "core file")->required();

  auto* recognize_cmd = app.add_subcommand("recognize", "Stallings-automaton recognition");
  recognize_cmd->add_option("section", section_path, "section file")->required();
  recognize_cmd->add_option("automaton", automaton_path, "automaton text file")->required();

  std::string pda_out;
  auto* emit_cmd = app.add_subcommand("emit-pda", "emit the word-problem pushdown automaton");
  emit_cmd->add_option("section", section_path, "section file")->required();
  emit_cmd->add_option("-o,--output", pda_out, "output file (default: print)");

  std::string pda_path;
  std::size_t cutoff = 8;
  auto* pda_run = app.add_subcommand("pda-run", "bounded pushdown simulation");
  pda_run->add_option("pda", pda_path, "pda text file")->required();
  pda_run->add_option("word", word_text, "word")->required();
  pda_run->add_option("--cutoff", cutoff, "stack height cutoff")->required();

  auto* dot_cmd = app.add_subcommand("export-dot", "export an automaton to DOT");
  dot_cmd->add_option("automaton", automaton_path, "automaton text file")->required();

  try {
    std::vector<const char*> argv;
    argv.push_back("stallings");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 1;
  }

  try {
    if (build->parsed()) {
      std::string json_text = read_file(group_path);
      const char* cache_env = std::getenv("STALLINGS_CACHE_DIR");
      fs::path cached;
      if (cache_env && *cache_env) {
        std::size_t h = std::hash<std::string>{}(json_text);
        std::ostringstream name;
        name << std::hex << h << ".sec";
        cached = fs::path(cache_env) / name.str();
        if (fs::exists(cached)) {
          fs::copy_file(cached, section_out, fs::copy_options::overwrite_existing);
          out << "section written to " << section_out << " (cached)\n";
          return 0;
        }
      }
      StallingsSection sec = build_section_from_json(json_text);
      std::ofstream os(section_out, std::ios::binary);
      if (!os) throw std::runtime_error("cannot write section file: " + section_out);
      sec.save(os);
      os.close();
      if (!cached.empty()) {
        fs::create_directories(cached.parent_path());
        fs::copy_file(section_out, cached, fs::copy_options::overwrite_existing);
      }
      out << "section written to " << section_out << '\n';
      return 0;
    }
    if (validate->parsed()) {
      StallingsSection sec = load_section(section_path);
      SectionValidationReport report = sec.validate(budget, seed);
      out << report.summary();
      return report.ok ? 0 : 1;
    }
    if (reduce->parsed()) {
      auto [alphabet, word] = parse_free_word(word_text);
      out << format_word(*alphabet, reduce_word(word)) << '\n';
      return 0;
    }
    if (benois->parsed()) {
      Automaton a = from_text(read_file(automaton_path));
      out << to_text(minimize(benois_reduce(a)));
      return 0;
    }
    if (wp->parsed()) {
      StallingsSection sec = load_section(section_path);
      Word w = parse_word(*sec.alphabet(), word_text);
      out << (sec.word_problem(w) ? "true" : "false") << '\n';
      return 0;
    }
    if (stallings_cmd->parsed()) {
      StallingsSection sec = load_section(section_path);
      std::vector<Word> generators;
      for (const auto& text : generator_texts) {
        generators.push_back(parse_word(*sec.alphabet(), text));
      }
      PipelineTrace trace = build_stallings(SubgroupInput::make(sec, generators));
      if (!trace_dir.empty()) {
        fs::create_directories(trace_dir);
        dump_trace_stage(trace_dir, "b0", trace.b0);
        dump_trace_stage(trace_dir, "b1", trace.b1);
        dump_trace_stage(trace_dir, "b2", trace.b2);
        dump_trace_stage(trace_dir, "b3", trace.b3);
        dump_trace_stage(trace_dir, "b4", trace.b4);
        dump_trace_stage(trace_dir, "core", trace.core);
        std::ostringstream jp;
        for (const auto& [p, q] : trace.j_pairs) jp << p << ' ' << q << '\n';
        write_file((fs::path(trace_dir) / "j_pairs.txt").string(), jp.str());
      }
      if (core_out.empty()) {
        out << to_text(trace.core);
      } else {
        save_core(core_out, trace.core);
        out << "core written to " << core_out << '\n';
      }
      return 0;
    }
    if (member_cmd->parsed()) {
      StallingsSection sec = load_section(section_path);
      Automaton core = load_core(core_path);
      Word w = parse_word(*sec.alphabet(), word_text);
      out << (member(sec, core, w) ? "true" : "false") << '\n';
      return 0;
    }
    if (index_cmd->parsed()) {
      StallingsSection sec = load_section(section_path);
      Automaton core = load_core(core_path);
      auto reps = finite_index(sec, core);
      if (!reps) {
        out << "infinite\n";
      } else {
        for (const Word& w : *reps) out << format_word(*sec.alphabet(), w) << '\n';
      }
      return 0;
    }
    if (recognize_cmd->parsed()) {
      StallingsSection sec = load_section(section_path);
      Automaton a = from_text(read_file(automaton_path));
      auto gens = recognize(sec, a);
      if (!gens) {
        out << "absent\n";
      } else {
        out << "recognized\n";
        for (const Word& w : *gens) out << format_word(*sec.alphabet(), w) << '\n';
      }
      return 0;
    }
    if (emit_cmd->parsed()) {
      StallingsSection sec = load_section(section_path);
      std::string text = pda_to_text(emit_pda(sec));
      if (pda_out.empty()) {
        out << text;
      } else {
        write_file(pda_out, text);
        out << "pda written to " << pda_out << '\n';
      }
      return 0;
    }
    if (pda_run->parsed()) {
      PdaSpec pda = pda_from_text(read_file(pda_path));
      Word w = parse_word(*pda.alphabet, word_text);
      out << pda_outcome_name(pda_accepts(pda, w, cutoff)) << '\n';
      return 0;
    }
    if (dot_cmd->parsed()) {
      Automaton a = from_text(read_file(automaton_path));
      out << to_dot(a);
      return 0;
    }
  } catch (const HypothesisError& e) {
    err << "refused: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << "no subcommand\n";
  return 1;
}

}  // namespace stallings
