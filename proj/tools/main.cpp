#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modelborel/battery.hpp"
#include "modelborel/builder.hpp"
#include "modelborel/diagram.hpp"
#include "modelborel/eval.hpp"
#include "modelborel/prenex.hpp"
#include "modelborel/priority.hpp"
#include "modelborel/reductions.hpp"
#include "modelborel/theory.hpp"
#include "modelborel/transducer.hpp"

namespace mb = modelborel;

namespace {

// pull bits from a bit source, pushing to a diagram stream on demand
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

std::string bits_text(const std::vector<std::uint8_t>& bits) {
  std::string out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    out.push_back(bits[i] ? '1' : '0');
    if (i % 64 == 63) out.push_back('\n');
  }
  if (bits.empty() || bits.size() % 64 != 0) out.push_back('\n');
  return out;
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// "P(0);R(0,1)" or whitespace-separated facts over numeric elements
void apply_facts(mb::FiniteStructure& s, const mb::Vocabulary& v,
                 const std::string& text) {
  std::size_t i = 0;
  auto skip = [&]() {
    while (i < text.size() &&
           (text[i] == ' ' || text[i] == ';' || text[i] == ',' ||
            text[i] == '\n' || text[i] == '\t'))
      ++i;
  };
  skip();
  while (i < text.size()) {
    std::size_t j = i;
    while (j < text.size() && text[j] != '(') ++j;
    if (j == text.size())
      throw std::runtime_error("fact needs an argument list: " +
                               text.substr(i));
    const std::string name = text.substr(i, j - i);
    const int sym = v.index_of(name);
    if (sym < 0) throw std::runtime_error("unknown symbol " + name);
    i = j + 1;
    std::vector<std::size_t> tuple;
    while (true) {
      std::size_t k = i;
      while (k < text.size() && text[k] != ',' && text[k] != ')') ++k;
      if (k == text.size()) throw std::runtime_error("unterminated fact");
      tuple.push_back(std::stoul(text.substr(i, k - i)));
      i = k + 1;
      if (text[k] == ')') break;
    }
    if (tuple.size() != v.arity(sym))
      throw std::runtime_error("arity mismatch for " + name);
    for (std::size_t e : tuple)
      if (e >= s.size()) throw std::runtime_error("element out of range");
    s.set(sym, std::span<const std::size_t>(tuple.data(), tuple.size()), true);
    skip();
  }
}

struct FormulaInput {
  std::string formula;
  std::string vocab;  // optional spec; inferred from the formula if empty
};

std::pair<mb::Formula, mb::Vocabulary> load_formula(const FormulaInput& in) {
  if (!in.vocab.empty()) {
    mb::Vocabulary v = mb::Vocabulary::parse_spec(in.vocab);
    return {mb::parse_formula(in.formula, v), v};
  }
  return mb::parse_formula_infer(in.formula);
}

mb::TheoryConfig load_config(const std::string& path) {
  return mb::parse_theory_config(read_text(path));
}

int run_classify(const FormulaInput& in) {
  auto [f, v] = load_formula(in);
  std::cout << mb::classify(f).str() << "\n";
  return 0;
}

int run_prenex(const FormulaInput& in) {
  auto [f, v] = load_formula(in);
  std::cout << mb::prenex(f).to_formula().print(v) << "\n";
  return 0;
}

int run_encode(const std::string& vocab, std::size_t size,
               const std::string& facts) {
  mb::Vocabulary v = mb::Vocabulary::parse_spec(vocab);
  mb::FiniteStructure s(v, size);
  apply_facts(s, v, facts);
  std::cout << bits_text(mb::encode(s).bits);
  return 0;
}

int run_decode(const std::string& vocab, std::size_t size,
               const std::string& bits_arg) {
  mb::Vocabulary v = mb::Vocabulary::parse_spec(vocab);
  std::string text =
      (bits_arg.find_first_not_of("01 \n\t") == std::string::npos &&
       !bits_arg.empty())
          ? bits_arg
          : read_text(bits_arg);
  mb::DiagramPrefix p;
  p.vocab = v;
  p.bits = mb::DiagramPrefix::parse_bits(text);
  mb::AtomEnumeration en(v);
  if (p.bits.size() < en.count_below(size))
    throw std::runtime_error("not enough bits for " + std::to_string(size) +
                             " elements");
  p.bits.resize(en.count_below(size));
  std::cout << mb::decode(p, size).describe();
  return 0;
}

std::optional<mb::Transducer> transducer_by_name(const std::string& name) {
  if (name == "infcoinf") return mb::r_infcoinf();
  if (name == "pad") return mb::pad();
  if (name == "matching") return mb::r_matching();
  return std::nullopt;
}

int run_reduce(const std::string& name, const std::string& input, bool matrix,
               std::size_t nbits, const std::string& pipe, std::size_t k) {
  (void)matrix;  // the flat bit stream is the same either way
  std::optional<mb::UPPoint> p;
  if (!input.empty()) p = mb::UPPoint::parse(input);

  if (auto t = transducer_by_name(name)) {
    if (!p) throw CLI::ValidationError("reduce", "--input required for " + name);
    mb::Transducer machine = *t;
    if (!pipe.empty()) {
      auto t2 = transducer_by_name(pipe);
      if (!t2)
        throw CLI::ValidationError("reduce",
                                   "--pipe takes a bit-machine name: " + pipe);
      machine = mb::Transducer::compose(machine, *t2);
    }
    mb::RunResult rr = mb::run_transducer(machine, *p, nbits);
    if (!rr.productive) {
      std::cerr << "machine starved before " << nbits << " bits\n";
      return 1;
    }
    rr.out.resize(nbits);
    std::cout << bits_text(rr.out);
    return 0;
  }
  if (!pipe.empty())
    throw CLI::ValidationError("reduce", "--pipe only applies to bit machines");

  std::shared_ptr<mb::StructureStream> st;
  if (name == "linord") {
    st = std::make_shared<mb::PlanStream>(mb::linorder_plan());
  } else {
    if (!p) throw CLI::ValidationError("reduce", "--input required for " + name);
    auto mon = std::make_shared<SourceStream>(
        mb::Vocabulary::parse_spec("P/1"), p->source());
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
      throw CLI::ValidationError("reduce", "unknown reduction " + name);
    }
  }
  std::cout << bits_text(st->prefix(nbits));
  return 0;
}

int run_eval(const FormulaInput& in, const std::string& config,
             std::size_t size, const std::string& facts) {
  if (!config.empty()) {
    mb::TheoryConfig cfg = load_config(config);
    mb::Formula f = mb::parse_formula(in.formula, cfg.handle.vocabulary);
    std::cout << (cfg.handle.decide(f) ? "true" : "false") << "\n";
    return 0;
  }
  auto [f, v] = load_formula(in);
  mb::FiniteStructure s(v, size);
  apply_facts(s, v, facts);
  std::cout << (mb::eval_finite(f, s) ? "true" : "false") << "\n";
  return 0;
}

void print_tower(const mb::CompletionTower& t) {
  std::size_t forced = 0;
  for (const auto& d : t.decisions)
    if (d.forced) ++forced;
  std::cout << t.label << " decided " << t.decisions.size() << " sentences ("
            << forced << " forced)\n";
}

int run_complete(const std::string& config, const std::string& lambda,
                 std::optional<std::size_t> cap, const std::string& witness) {
  mb::TheoryConfig cfg = load_config(config);
  const std::size_t rank_cap = cap.value_or(cfg.rank_cap);
  mb::Level avoided = mb::Level::parse(lambda);
  const mb::Vocabulary& v = cfg.handle.vocabulary;

  std::string wtext = witness;
  if (wtext.empty()) {
    if (v.index_of("P") >= 0)
      wtext = "(exists x0 (exists x1 (and (P x0) (not (P x1)))))";
    else if (v.index_of("R") >= 0)
      wtext = "(exists x0 (forall x1 (not (R x0 x1))))";
    else
      throw CLI::ValidationError("complete", "--witness required");
  }
  mb::Formula wit = mb::parse_formula(wtext, v);

  mb::LindenbaumResult lr = mb::lindenbaum_complete(
      cfg.handle.axioms, wit, avoided, cfg.handle, rank_cap);
  std::cout << "witness " << wit.print(v) << "\n";
  std::cout << "avoided " << lr.avoided.str() << " containment "
            << lr.containment.str() << " cap " << lr.rank_cap << "\n";
  print_tower(lr.plus);
  print_tower(lr.minus);
  std::cout << "containment checked " << lr.containment_checked
            << " violations " << lr.containment_violations.size() << "\n";
  for (const auto& s : lr.containment_violations)
    std::cout << "violation " << s.print(v) << "\n";
  return lr.containment_ok() ? 0 : 1;
}

int run_split(const std::string& config, const std::string& lambda,
              std::optional<std::size_t> cap) {
  mb::TheoryConfig cfg = load_config(config);
  const std::size_t rank_cap = cap.value_or(cfg.rank_cap);
  mb::Level lv = mb::Level::parse(lambda);
  mb::SplitResult sr = mb::split_theory(cfg.handle, lv, rank_cap);
  if (!sr.found) {
    std::cout << "inconclusive: " << sr.note << "\n";
    return 0;
  }
  const mb::Vocabulary& v = cfg.handle.vocabulary;
  std::cout << "witness " << sr.witness->print(v) << "\n";
  print_tower(sr.towers->plus);
  print_tower(sr.towers->minus);
  std::cout << "containment checked " << sr.towers->containment_checked
            << " violations " << sr.towers->containment_violations.size()
            << "\n";
  return sr.towers->containment_ok() ? 0 : 1;
}

int run_simulate(const std::string& demo, const std::string& point,
                 std::size_t stages, const std::string& trace_path) {
  if (demo != "core1" && demo != "core2" && demo != "tower2")
    throw CLI::ValidationError("simulate", "unknown demo " + demo);
  mb::SimConfig cfg = mb::demo_config(demo);
  mb::UPPoint p = mb::UPPoint::parse(point);
  mb::SimRun run;
  if (cfg.name == "tower2") {
    run = mb::run_tower(cfg, p, stages);
  } else {
    const int level = cfg.name == "core1" ? 1 : 2;
    run = mb::run_corelemma(level, cfg.levels[0].pair, p, stages);
  }
  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) throw std::runtime_error("cannot write " + trace_path);
    out << mb::trace_to_text(run.trace);
  }
  mb::VerifyReport vr = mb::verify_run(run.trace, run.diagram, p, cfg);
  std::cout << vr.to_text();
  return vr.clean() ? 0 : 1;
}

int run_battery_cmd(std::uint64_t seed, std::size_t points, bool inject,
                    const std::vector<int>& only, const std::string& out_path) {
  mb::BatteryOptions opt;
  opt.seed = seed;
  opt.points = points;
  opt.inject_broken = inject;
  opt.only = only;
  mb::BatterySummary sum = mb::run_battery(opt);
  const std::string text = sum.to_text();
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
  }
  return sum.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "modelborel: atomic-diagram codecs, prefix-continuous reductions, "
      "level-fragment theory completions, and verified finite-injury demos"};
  app.require_subcommand(1);
  int rc = 0;
  auto guard = [&rc](auto fn) {
    try {
      rc = fn();
    } catch (const CLI::ValidationError&) {
      throw;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      rc = 1;
    }
  };

  FormulaInput cls_in;
  auto* cls = app.add_subcommand(
      "classify", "Print the minimal quantifier-alternation level of a "
                  "sentence (E2 = exists-forall, A2 = forall-exists, ...)");
  cls->add_option("--formula", cls_in.formula, "sentence in s-expression form")
      ->required();
  cls->add_option("--vocab", cls_in.vocab,
                  "vocabulary spec like P/1,R/2 (inferred when omitted)");
  cls->callback([&] { guard([&] { return run_classify(cls_in); }); });

  FormulaInput pre_in;
  auto* pre = app.add_subcommand(
      "prenex", "Rewrite a formula into alternation-minimal prenex form");
  pre->add_option("--formula", pre_in.formula, "formula in s-expression form")
      ->required();
  pre->add_option("--vocab", pre_in.vocab, "vocabulary spec");
  pre->callback([&] { guard([&] { return run_prenex(pre_in); }); });

  std::string enc_vocab, enc_facts;
  std::size_t enc_size = 0;
  auto* enc = app.add_subcommand(
      "encode", "Emit the atomic-diagram bits of a finite structure");
  enc->add_option("--vocab", enc_vocab, "vocabulary spec like P/1,R/2")
      ->required();
  enc->add_option("--size", enc_size, "number of elements")->required();
  enc->add_option("--facts", enc_facts, "held facts, e.g. \"P(0);R(0,1)\"");
  enc->callback([&] {
    guard([&] { return run_encode(enc_vocab, enc_size, enc_facts); });
  });

  std::string dec_vocab, dec_bits;
  std::size_t dec_size = 0;
  auto* dec = app.add_subcommand(
      "decode", "Rebuild a finite structure from atomic-diagram bits");
  dec->add_option("--vocab", dec_vocab, "vocabulary spec")->required();
  dec->add_option("--size", dec_size, "number of elements")->required();
  dec->add_option("--bits", dec_bits,
                  "bit text, a file path, or - for standard input")
      ->required();
  dec->callback([&] {
    guard([&] { return run_decode(dec_vocab, dec_size, dec_bits); });
  });

  std::string red_name, red_input, red_pipe;
  bool red_matrix = false;
  std::size_t red_bits = 64, red_k = 0;
  auto* red = app.add_subcommand(
      "reduce",
      "Run a diagram-producing reduction and print output bits.\n"
      "  infcoinf: P(i) holds iff input bit i is one, so the predicate is\n"
      "            infinite and coinfinite exactly for infinitely-many-ones\n"
      "            inputs\n"
      "  pad:      interleave a zero after every input bit\n"
      "  matching: read the input as a matrix; each column's first one\n"
      "            matches that column's left element, so isolated elements\n"
      "            accumulate exactly when infinitely many columns are empty\n"
      "  linord:   staged order of adjacent pairs + middle point + dense\n"
      "            right part, successor pairs marked (ignores --input)\n"
      "  marker:   one-sort re-encoding with per-fact witness gadgets\n"
      "  diffjoin: tagged disjoint union of the input predicate stream and\n"
      "            its complement\n"
      "  section:  the --k tagged copy among four section flags\n"
      "  tograph:  single edge relation; triangles for elements, tagged\n"
      "            cycles with position-coded paths for facts");
  red->add_option("--name", red_name, "reduction name")->required();
  red->add_option("--input", red_input, "source point \"prefix;period\"");
  red->add_flag("--matrix", red_matrix,
                "read the input point through the pairing function");
  red->add_option("--bits", red_bits, "output bits to emit");
  red->add_option("--pipe", red_pipe, "feed the output into a second machine");
  red->add_option("--k", red_k, "section index (section only)");
  red->callback([&] {
    guard([&] {
      return run_reduce(red_name, red_input, red_matrix, red_bits, red_pipe,
                        red_k);
    });
  });

  FormulaInput ev_in;
  std::string ev_config, ev_facts;
  std::size_t ev_size = 0;
  auto* ev = app.add_subcommand(
      "eval", "Evaluate a sentence on a finite structure, or decide it "
              "with a theory config's oracle");
  ev->add_option("--formula", ev_in.formula, "sentence")->required();
  ev->add_option("--vocab", ev_in.vocab, "vocabulary spec");
  ev->add_option("--config", ev_config, "theory config file (oracle mode)");
  ev->add_option("--size", ev_size, "structure size (finite mode)");
  ev->add_option("--facts", ev_facts, "held facts (finite mode)");
  ev->callback([&] {
    guard([&] { return run_eval(ev_in, ev_config, ev_size, ev_facts); });
  });

  std::string cmp_config, cmp_lambda = "A1", cmp_witness;
  std::optional<std::size_t> cmp_cap;
  auto* cmp = app.add_subcommand(
      "complete",
      "Complete a theory around a witness sentence, avoiding the --lambda "
      "level; certifies dual-level fragment containment");
  cmp->add_option("--config", cmp_config, "theory config file")->required();
  cmp->add_option("--lambda", cmp_lambda, "avoided level, e.g. A1 or A2");
  cmp->add_option("--cap", cmp_cap, "rank cap (default from the config)");
  cmp->add_option("--witness", cmp_witness,
                  "witness sentence (family default when omitted)");
  cmp->callback([&] {
    guard([&] {
      return run_complete(cmp_config, cmp_lambda, cmp_cap, cmp_witness);
    });
  });

  std::string spl_config, spl_lambda = "A1";
  std::optional<std::size_t> spl_cap;
  auto* spl = app.add_subcommand(
      "split", "Search for a witness the --lambda fragment cannot pin down "
               "and build the two completions around it");
  spl->add_option("--config", spl_config, "theory config file")->required();
  spl->add_option("--lambda", spl_lambda, "fragment level, e.g. A1 or A2");
  spl->add_option("--cap", spl_cap, "rank cap (default from the config)");
  spl->callback(
      [&] { guard([&] { return run_split(spl_config, spl_lambda, spl_cap); }); });

  std::string sim_demo, sim_point, sim_trace;
  std::size_t sim_stages = 100;
  auto* sim = app.add_subcommand(
      "simulate",
      "Run a finite-injury demo against one point and verify the run.\n"
      "  core1:  one-switch monadic construction (target: some bit is one)\n"
      "  core2:  matched-pair construction with injury repair (target:\n"
      "          eventually zero)\n"
      "  tower2: two-level tower over both tracks of the point");
  sim->add_option("--demo", sim_demo, "core1, core2, or tower2")->required();
  sim->add_option("--point", sim_point, "point \"prefix;period\"")->required();
  sim->add_option("--stages", sim_stages, "stages to run");
  sim->add_option("--trace", sim_trace, "write the event trace to this file");
  sim->callback([&] {
    guard([&] { return run_simulate(sim_demo, sim_point, sim_stages, sim_trace); });
  });

  std::uint64_t bat_seed = 12021;
  std::size_t bat_points = 200;
  bool bat_inject = false;
  std::vector<int> bat_only;
  std::string bat_out;
  auto* bat = app.add_subcommand(
      "battery", "Run the acceptance battery and print one line per check");
  bat->add_option("--seed", bat_seed, "seed for the randomized harnesses");
  bat->add_option("--points", bat_points, "certificate battery size floor");
  bat->add_flag("--inject-broken", bat_inject,
                "add deliberately broken fixtures (must be caught)");
  bat->add_option("--only", bat_only, "run only these criterion numbers");
  bat->add_option("--out", bat_out, "also write the summary to this file");
  bat->callback([&] {
    guard([&] {
      return run_battery_cmd(bat_seed, bat_points, bat_inject, bat_only,
                             bat_out);
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return rc;
}
