#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "stallings/group_document.hpp"
#include "stallings/pda.hpp"
#include "stallings/pipeline.hpp"

namespace py = pybind11;
using namespace stallings;

namespace {

std::string render_word(const InvolutiveAlphabet& alphabet, const Word& w) {
  return format_word(alphabet, w);
}

}  // namespace

PYBIND11_MODULE(_stallings, m) {
  m.doc() = "Stallings sections and subgroup automata for virtually free groups";

  py::class_<Automaton>(m, "Automaton")
      .def_property_readonly("num_states", &Automaton::num_states)
      .def("accepts",
           [](const Automaton& a, const std::string& w) {
             return a.accepts(parse_word(*a.alphabet(), w));
           })
      .def("to_text", [](const Automaton& a) { return to_text(a); })
      .def("to_dot", [](const Automaton& a) { return to_dot(a, "A"); })
      .def_static("from_text", [](const std::string& text) { return from_text(text); });

  py::class_<PipelineTrace>(m, "PipelineTrace")
      .def_readonly("b0", &PipelineTrace::b0)
      .def_readonly("b1", &PipelineTrace::b1)
      .def_readonly("b2", &PipelineTrace::b2)
      .def_readonly("b3", &PipelineTrace::b3)
      .def_readonly("b4", &PipelineTrace::b4)
      .def_readonly("core", &PipelineTrace::core)
      .def_readonly("j_pairs", &PipelineTrace::j_pairs);

  py::class_<StallingsSection>(m, "Section")
      .def_static("from_group_json",
                  [](const std::string& text) { return build_section_from_json(text); })
      .def_static("load",
                  [](const std::string& path) {
                    std::ifstream in(path, std::ios::binary);
                    if (!in) throw std::runtime_error("cannot open " + path);
                    return StallingsSection::load(in);
                  })
      .def("save",
           [](const StallingsSection& sec, const std::string& path) {
             std::ofstream out(path, std::ios::binary);
             if (!out) throw std::runtime_error("cannot write " + path);
             sec.save(out);
           })
      .def("alphabet",
           [](const StallingsSection& sec) {
             std::vector<std::string> names;
             for (std::size_t i = 0; i < sec.alphabet()->positive_count(); ++i) {
               names.push_back(sec.alphabet()->positive_name(i));
             }
             return names;
           })
      .def("word_problem",
           [](const StallingsSection& sec, const std::string& w) {
             return sec.word_problem(parse_word(*sec.alphabet(), w));
           })
      .def("s_of_g",
           [](const StallingsSection& sec, const std::string& w) {
             return sec.s_of_g(parse_word(*sec.alphabet(), w));
           })
      .def("validate",
           [](const StallingsSection& sec, std::size_t budget, std::uint64_t seed) {
             SectionValidationReport report = sec.validate(budget, seed);
             return py::make_tuple(report.ok, report.summary());
           },
           py::arg("budget") = 200, py::arg("seed") = 1)
      .def_property_readonly("extendable", &StallingsSection::extendable_by_construction)
      .def_property_readonly("s1_nontrivial", &StallingsSection::s1_nontrivial)
      .def("stallings",
           [](const StallingsSection& sec, const std::vector<std::string>& generators) {
             std::vector<Word> words;
             for (const auto& g : generators) words.push_back(parse_word(*sec.alphabet(), g));
             return build_stallings(SubgroupInput::make(sec, words));
           })
      .def("member",
           [](const StallingsSection& sec, const Automaton& core, const std::string& w) {
             return member(sec, core, parse_word(*sec.alphabet(), w));
           })
      .def("finite_index",
           [](const StallingsSection& sec, const Automaton& core) -> py::object {
             auto reps = finite_index(sec, core);
             if (!reps) return py::none();
             std::vector<std::string> out;
             for (const Word& w : *reps) out.push_back(render_word(*sec.alphabet(), w));
             return py::cast(out);
           })
      .def("recognize",
           [](const StallingsSection& sec, const Automaton& a) -> py::object {
             auto gens = recognize(sec, a);
             if (!gens) return py::none();
             std::vector<std::string> out;
             for (const Word& w : *gens) out.push_back(render_word(*sec.alphabet(), w));
             return py::cast(out);
           })
      .def("emit_pda",
           [](const StallingsSection& sec) { return pda_to_text(emit_pda(sec)); });

  m.def("reduce", [](const std::string& text) {
    // alphabet inferred from the word itself
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
    auto alphabet = make_alphabet(names);
    return format_word(*alphabet, reduce_word(parse_word(*alphabet, text)));
  });

  m.def("pda_run", [](const std::string& pda_text, const std::string& w, std::size_t cutoff) {
    PdaSpec pda = pda_from_text(pda_text);
    return pda_outcome_name(pda_accepts(pda, parse_word(*pda.alphabet, w), cutoff));
  });
}
