#pragma once

#include <memory>
#include <set>

#include "modelborel/diagram.hpp"

namespace modelborel {

struct BuildError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One line of a construction log: what happened at which stage.
struct TraceEvent {
  std::size_t stage;
  std::string kind;  // "commit", "switch", "injury-repair", "note", ...
  std::string detail;

  std::string line() const;
  static TraceEvent parse_line(const std::string& line);
};

std::string trace_to_text(const std::vector<TraceEvent>& events);
std::vector<TraceEvent> trace_from_text(const std::string& text);

// Grows a structure one element at a time with commit-once facts.  A fact
// may only be committed while its highest element is the newest one, so
// everything about element k is frozen the moment element k+1 appears.
// That makes diagram bits of rank r final as soon as element r+1 exists.
class DiagramBuilder {
 public:
  explicit DiagramBuilder(Vocabulary v);

  const Vocabulary& vocab() const { return enumeration_.vocab(); }
  const AtomEnumeration& enumeration() const { return enumeration_; }

  std::size_t append_element();
  void commit(int sym, std::span<const std::size_t> tuple);
  void commit(int sym, std::initializer_list<std::size_t> t) {
    commit(sym, std::span<const std::size_t>(t.begin(), t.size()));
  }
  // commit both orientations of a binary symbol
  void commit_sym(int sym, std::size_t a, std::size_t b);

  bool fact(int sym, std::span<const std::size_t> tuple) const;
  bool fact(int sym, std::initializer_list<std::size_t> t) const {
    return fact(sym, std::span<const std::size_t>(t.begin(), t.size()));
  }

  std::size_t elements() const { return elements_; }
  // ranks whose bits are final (= elements()-1, the newest is still open)
  std::size_t sealed_ranks() const {
    return elements_ == 0 ? 0 : elements_ - 1;
  }
  std::uint8_t diagram_bit(std::size_t index) const;

  FiniteStructure snapshot() const;  // includes the still-open element

  void begin_stage(std::size_t s) { stage_ = s; }
  void note(const std::string& kind, const std::string& detail);
  const std::vector<TraceEvent>& trace() const { return events_; }

 private:
  AtomEnumeration enumeration_;
  std::size_t elements_ = 0;
  std::size_t stage_ = 0;
  std::set<std::pair<int, std::vector<std::size_t>>> facts_;
  std::vector<TraceEvent> events_;
};

// A stagewise construction plan; stage s may read external bits and must
// append at least one element every few stages.
class StagePlan {
 public:
  virtual ~StagePlan() = default;
  virtual Vocabulary vocab() const = 0;
  virtual void run_stage(std::size_t s, DiagramBuilder& b) = 0;
};

// Adapts a plan into a diagram stream: runs stages until enough ranks are
// sealed, then emits bits rank segment by rank segment.
class PlanStream : public StructureStream {
 public:
  explicit PlanStream(std::shared_ptr<StagePlan> plan);

  DiagramBuilder& builder() { return builder_; }
  std::size_t stages_run() const { return stages_run_; }
  void run_stages(std::size_t count);  // ensure at least count stages ran

 protected:
  void produce(std::vector<std::uint8_t>& out) override;

 private:
  std::shared_ptr<StagePlan> plan_;
  DiagramBuilder builder_;
  std::size_t stages_run_ = 0;
  std::size_t emitted_ranks_ = 0;
};

}  // namespace modelborel
