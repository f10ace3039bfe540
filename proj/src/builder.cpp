#include "modelborel/builder.hpp"

#include <sstream>

namespace modelborel {

std::string TraceEvent::line() const {
  std::ostringstream os;
  os << stage << ' ' << kind;
  if (!detail.empty()) os << ' ' << detail;
  return os.str();
}

TraceEvent TraceEvent::parse_line(const std::string& line) {
  std::istringstream is(line);
  TraceEvent ev;
  if (!(is >> ev.stage >> ev.kind))
    throw BuildError("bad trace line: " + line);
  std::string rest;
  std::getline(is, rest);
  if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
  ev.detail = rest;
  return ev;
}

std::string trace_to_text(const std::vector<TraceEvent>& events) {
  std::string out;
  for (const auto& ev : events) {
    out += ev.line();
    out += '\n';
  }
  return out;
}

std::vector<TraceEvent> trace_from_text(const std::string& text) {
  std::vector<TraceEvent> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    out.push_back(TraceEvent::parse_line(line));
  }
  return out;
}

DiagramBuilder::DiagramBuilder(Vocabulary v) : enumeration_(std::move(v)) {}

std::size_t DiagramBuilder::append_element() {
  ++elements_;
  return elements_ - 1;
}

void DiagramBuilder::commit(int sym, std::span<const std::size_t> tuple) {
  const Vocabulary& v = vocab();
  if (sym < 0 || static_cast<std::size_t>(sym) >= v.size())
    throw BuildError("commit: unknown symbol");
  if (tuple.size() != v.arity(sym))
    throw BuildError("commit: arity mismatch for " + v.name(sym));
  if (elements_ == 0) throw BuildError("commit before any element exists");
  std::size_t mx = 0;
  for (std::size_t t : tuple) {
    if (t >= elements_) throw BuildError("commit: element out of range");
    mx = std::max(mx, t);
  }
  if (mx != elements_ - 1)
    throw BuildError("commit must involve the newest element (rank " +
                     std::to_string(elements_ - 1) + ")");
  auto key = std::make_pair(sym, std::vector<std::size_t>(tuple.begin(), tuple.end()));
  if (facts_.count(key)) throw BuildError("fact committed twice");
  facts_.insert(std::move(key));
  std::ostringstream os;
  os << v.name(sym) << '(';
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) os << ',';
    os << tuple[i];
  }
  os << ')';
  events_.push_back({stage_, "commit", os.str()});
}

void DiagramBuilder::commit_sym(int sym, std::size_t a, std::size_t b) {
  commit(sym, {a, b});
  commit(sym, {b, a});
}

bool DiagramBuilder::fact(int sym, std::span<const std::size_t> tuple) const {
  auto key = std::make_pair(sym, std::vector<std::size_t>(tuple.begin(), tuple.end()));
  return facts_.count(key) != 0;
}

std::uint8_t DiagramBuilder::diagram_bit(std::size_t index) const {
  auto [sym, tuple] = enumeration_.atom(index);
  std::size_t rank = 0;
  for (std::size_t t : tuple) rank = std::max(rank, t);
  if (rank >= sealed_ranks())
    throw BuildError("diagram bit not sealed yet");
  return fact(sym, tuple) ? 1 : 0;
}

FiniteStructure DiagramBuilder::snapshot() const {
  if (elements_ == 0) throw BuildError("snapshot of empty builder");
  FiniteStructure s(vocab(), elements_);
  for (const auto& [sym, tuple] : facts_) s.set(sym, tuple, true);
  return s;
}

void DiagramBuilder::note(const std::string& kind, const std::string& detail) {
  events_.push_back({stage_, kind, detail});
}

PlanStream::PlanStream(std::shared_ptr<StagePlan> plan)
    : StructureStream(plan->vocab()), plan_(std::move(plan)),
      builder_(plan_->vocab()) {}

void PlanStream::run_stages(std::size_t count) {
  while (stages_run_ < count) {
    builder_.begin_stage(stages_run_);
    plan_->run_stage(stages_run_, builder_);
    ++stages_run_;
  }
}

void PlanStream::produce(std::vector<std::uint8_t>& out) {
  // emit the next rank segment once it is sealed
  const std::size_t rank = emitted_ranks_;
  std::size_t guard = 0;
  while (builder_.sealed_ranks() <= rank) {
    builder_.begin_stage(stages_run_);
    plan_->run_stage(stages_run_, builder_);
    ++stages_run_;
    if (++guard > 100000)
      throw BuildError("plan made no progress over many stages");
  }
  const auto& en = builder_.enumeration();
  const std::size_t lo = en.count_below(rank);
  const std::size_t hi = en.count_below(rank + 1);
  for (std::size_t i = lo; i < hi; ++i) out.push_back(builder_.diagram_bit(i));
  ++emitted_ranks_;
}

}  // namespace modelborel
