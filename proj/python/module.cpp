#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "modelborel/battery.hpp"
#include "modelborel/builder.hpp"
#include "modelborel/diagram.hpp"
#include "modelborel/eval.hpp"
#include "modelborel/prenex.hpp"
#include "modelborel/priority.hpp"
#include "modelborel/reductions.hpp"
#include "modelborel/theory.hpp"
#include "modelborel/transducer.hpp"

namespace py = pybind11;
namespace mb = modelborel;

namespace {

class SourceStream final : public mb::StructureStream {
 public:
  SourceStream(mb::Vocabulary v, mb::BitSource src)
      : mb::StructureStream(std::move(v)), src_(std::move(src)) {}

 protected:
  void produce(std::vector<std::uint8_t>& out) override {
    out.push_back(src_(out.size()));
  }

 private:
  mb::BitSource src_;
};

std::pair<mb::Formula, mb::Vocabulary> load_formula(const std::string& text,
                                                    const std::string& vocab) {
  if (!vocab.empty()) {
    mb::Vocabulary v = mb::Vocabulary::parse_spec(vocab);
    return {mb::parse_formula(text, v), v};
  }
  return mb::parse_formula_infer(text);
}

void apply_facts(mb::FiniteStructure& s, const mb::Vocabulary& v,
                 const std::vector<std::pair<std::string, std::vector<std::size_t>>>& facts) {
  for (const auto& [name, tuple] : facts) {
    const int sym = v.index_of(name);
    if (sym < 0) throw std::runtime_error("unknown symbol " + name);
    if (tuple.size() != v.arity(sym))
      throw std::runtime_error("arity mismatch for " + name);
    s.set(sym, std::span<const std::size_t>(tuple.data(), tuple.size()), true);
  }
}

std::string bit_string(const std::vector<std::uint8_t>& bits) {
  std::string out;
  out.reserve(bits.size());
  for (std::uint8_t b : bits) out.push_back(b ? '1' : '0');
  return out;
}

std::string classify_text(const std::string& formula,
                          const std::string& vocab) {
  auto [f, v] = load_formula(formula, vocab);
  return mb::classify(f).str();
}

std::string prenex_text(const std::string& formula, const std::string& vocab) {
  auto [f, v] = load_formula(formula, vocab);
  return mb::prenex(f).to_formula().print(v);
}

std::string encode_text(
    const std::string& vocab, std::size_t size,
    const std::vector<std::pair<std::string, std::vector<std::size_t>>>& facts) {
  mb::Vocabulary v = mb::Vocabulary::parse_spec(vocab);
  mb::FiniteStructure s(v, size);
  apply_facts(s, v, facts);
  return bit_string(mb::encode(s).bits);
}

std::string decode_text(const std::string& vocab, std::size_t size,
                        const std::string& bits) {
  mb::Vocabulary v = mb::Vocabulary::parse_spec(vocab);
  mb::DiagramPrefix p;
  p.vocab = v;
  p.bits = mb::DiagramPrefix::parse_bits(bits);
  mb::AtomEnumeration en(v);
  if (p.bits.size() < en.count_below(size))
    throw std::runtime_error("not enough bits");
  p.bits.resize(en.count_below(size));
  return mb::decode(p, size).describe();
}

bool eval_on(
    const std::string& formula, const std::string& vocab, std::size_t size,
    const std::vector<std::pair<std::string, std::vector<std::size_t>>>& facts) {
  mb::Vocabulary v = mb::Vocabulary::parse_spec(vocab);
  mb::Formula f = mb::parse_formula(formula, v);
  mb::FiniteStructure s(v, size);
  apply_facts(s, v, facts);
  return mb::eval_finite(f, s);
}

bool decide_text(const std::string& config, const std::string& formula) {
  mb::TheoryConfig cfg = mb::parse_theory_config(config);
  return cfg.handle.decide(mb::parse_formula(formula, cfg.handle.vocabulary));
}

std::string reduce_bits(const std::string& name, const std::string& input,
                        std::size_t nbits, const std::string& pipe,
                        std::size_t k) {
  auto by_name = [](const std::string& n) -> std::optional<mb::Transducer> {
    if (n == "infcoinf") return mb::r_infcoinf();
    if (n == "pad") return mb::pad();
    if (n == "matching") return mb::r_matching();
    return std::nullopt;
  };
  std::optional<mb::UPPoint> p;
  if (!input.empty()) p = mb::UPPoint::parse(input);
  if (auto t = by_name(name)) {
    if (!p) throw std::runtime_error("input point required for " + name);
    mb::Transducer machine = *t;
    if (!pipe.empty()) {
      auto t2 = by_name(pipe);
      if (!t2) throw std::runtime_error("pipe takes a bit-machine name");
      machine = mb::Transducer::compose(machine, *t2);
    }
    mb::RunResult rr = mb::run_transducer(machine, *p, nbits);
    if (!rr.productive) throw std::runtime_error("machine starved");
    rr.out.resize(nbits);
    return bit_string(rr.out);
  }
  std::shared_ptr<mb::StructureStream> st;
  if (name == "linord") {
    st = std::make_shared<mb::PlanStream>(mb::linorder_plan());
  } else {
    if (!p) throw std::runtime_error("input point required for " + name);
    auto mon = std::make_shared<SourceStream>(mb::Vocabulary::parse_spec("P/1"),
                                              p->source());
    if (name == "marker") {
      st = mb::marker_extend(mon);
    } else if (name == "diffjoin") {
      auto a = std::make_shared<SourceStream>(
          mb::Vocabulary::parse_spec("PA/1"), p->source());
      auto src = p->source();
      auto b = std::make_shared<SourceStream>(
          mb::Vocabulary::parse_spec("PB/1"),
          [src](std::size_t i) { return std::uint8_t(1 - src(i)); });
      st = mb::diff_join(a, b);
    } else if (name == "section") {
      st = mb::section_structure(k, mon);
    } else if (name == "tograph") {
      st = mb::to_graph(mon);
    } else {
      throw std::runtime_error("unknown reduction " + name);
    }
  }
  return bit_string(st->prefix(nbits));
}

py::tuple simulate(const std::string& demo, const std::string& point,
                   std::size_t stages) {
  mb::SimConfig cfg = mb::demo_config(demo);
  mb::UPPoint p = mb::UPPoint::parse(point);
  mb::SimRun run;
  if (cfg.name == "tower2") {
    run = mb::run_tower(cfg, p, stages);
  } else {
    const int level = cfg.name == "core1" ? 1 : 2;
    run = mb::run_corelemma(level, cfg.levels[0].pair, p, stages);
  }
  mb::VerifyReport vr = mb::verify_run(run.trace, run.diagram, p, cfg);
  return py::make_tuple(vr.clean(), vr.to_text(),
                        mb::trace_to_text(run.trace));
}

py::tuple battery(std::uint64_t seed, std::size_t points, bool inject_broken,
                  const std::vector<int>& only) {
  mb::BatteryOptions opt;
  opt.seed = seed;
  opt.points = points;
  opt.inject_broken = inject_broken;
  opt.only = only;
  mb::BatterySummary sum = mb::run_battery(opt);
  return py::make_tuple(sum.all_pass(), sum.to_text());
}

std::string complete_text(const std::string& config, const std::string& lambda,
                          std::optional<std::size_t> cap,
                          const std::string& witness) {
  mb::TheoryConfig cfg = mb::parse_theory_config(config);
  const std::size_t rank_cap = cap.value_or(cfg.rank_cap);
  const mb::Vocabulary& v = cfg.handle.vocabulary;
  std::string wtext = witness;
  if (wtext.empty()) {
    if (v.index_of("P") >= 0)
      wtext = "(exists x0 (exists x1 (and (P x0) (not (P x1)))))";
    else if (v.index_of("R") >= 0)
      wtext = "(exists x0 (forall x1 (not (R x0 x1))))";
    else
      throw std::runtime_error("witness required");
  }
  mb::Formula wit = mb::parse_formula(wtext, v);
  mb::LindenbaumResult lr = mb::lindenbaum_complete(
      cfg.handle.axioms, wit, mb::Level::parse(lambda), cfg.handle, rank_cap);
  std::ostringstream os;
  os << "witness " << wit.print(v) << "\n"
     << "avoided " << lr.avoided.str() << " containment "
     << lr.containment.str() << " cap " << lr.rank_cap << "\n"
     << lr.plus.label << " decided " << lr.plus.decisions.size() << "\n"
     << lr.minus.label << " decided " << lr.minus.decisions.size() << "\n"
     << "containment checked " << lr.containment_checked << " violations "
     << lr.containment_violations.size() << "\n";
  return os.str();
}

bool member(const std::string& set_name, const std::string& point) {
  mb::BorelCode code = mb::canonical_set(set_name);
  mb::UPPoint p = mb::UPPoint::parse(point);
  if (set_name == "Pi3_infemptycols")
    return mb::member_up(code, mb::MatrixPoint(p));
  return mb::member_up(code, p);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "atomic-diagram codecs, prefix-continuous reductions, theory "
      "completions, and verified finite-injury demos";

  m.def("classify", &classify_text, py::arg("formula"), py::arg("vocab") = "",
        "Minimal quantifier-alternation level of a sentence, e.g. 'A2'.");
  m.def("prenex", &prenex_text, py::arg("formula"), py::arg("vocab") = "",
        "Alternation-minimal prenex form, printed.");
  m.def("encode", &encode_text, py::arg("vocab"), py::arg("size"),
        py::arg("facts") =
            std::vector<std::pair<std::string, std::vector<std::size_t>>>{},
        "Atomic-diagram bits of a finite structure as a 0/1 string.");
  m.def("decode", &decode_text, py::arg("vocab"), py::arg("size"),
        py::arg("bits"), "Rebuild and describe a structure from bits.");
  m.def("eval_on", &eval_on, py::arg("formula"), py::arg("vocab"),
        py::arg("size"),
        py::arg("facts") =
            std::vector<std::pair<std::string, std::vector<std::size_t>>>{},
        "Evaluate a sentence on a finite structure.");
  m.def("decide", &decide_text, py::arg("config"), py::arg("formula"),
        "Decide a sentence with a theory config's oracle.");
  m.def("reduce_bits", &reduce_bits, py::arg("name"), py::arg("input") = "",
        py::arg("nbits") = 64, py::arg("pipe") = "", py::arg("k") = 0,
        "Output bits of a named reduction on an ultimately periodic point.");
  m.def("simulate", &simulate, py::arg("demo"), py::arg("point"),
        py::arg("stages") = 100,
        "Run a finite-injury demo; returns (clean, report, trace).");
  m.def("battery", &battery, py::arg("seed") = 12021, py::arg("points") = 200,
        py::arg("inject_broken") = false,
        py::arg("only") = std::vector<int>{},
        "Run the acceptance battery; returns (all_pass, summary).");
  m.def("complete", &complete_text, py::arg("config"),
        py::arg("lambda_level") = "A1",
        py::arg("cap") = std::optional<std::size_t>{},
        py::arg("witness") = "",
        "Complete a theory around a witness; returns a text report.");
  m.def("member", &member, py::arg("set_name"), py::arg("point"),
        "Membership of an ultimately periodic point in a canonical set.");
  m.def("canonical_sets", &mb::canonical_set_names,
        "Names of the canonical point sets.");
  m.def("theories", &mb::theory_ids, "Identifiers of the shipped theories.");
  m.def("reductions", &mb::reduction_names, "Names of the shipped reductions.");
}
