#pragma once

#include "modelborel/theory.hpp"
#include "modelborel/transducer.hpp"

namespace modelborel {

struct ReductionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- the three transducer reductions -----------------------------------

// copies input bits into the diagram of a one-predicate structure:
// P(i) holds iff input bit i is 1
Transducer r_infcoinf();

// doubles the index and fills odd positions with zeros, so "infinitely
// many ones" in the input becomes "infinitely many ones and zeros"
Transducer pad();

// reads the input as a matrix through the pairing function and builds a
// partial matching: per stage one matched pair c_s-d_s plus a candidate
// a_s; column j's first 1 produces a partner b for a_j.  The limit has
// infinitely many unmatched elements iff infinitely many columns are empty.
Transducer r_matching();

// stage counts of the matching construction without materializing bits
struct MatchingCounts {
  std::size_t stages = 0;
  std::size_t matched_pairs = 0;  // the c-d pairs
  std::size_t matched_a = 0;      // a-elements with a partner
  std::size_t unmatched_a = 0;    // a-elements still isolated
};
MatchingCounts replay_matching_counts(const BitSource& bits,
                                      std::size_t stages);

// Decision by replay: count isolated a-elements over enough rows that the
// two limit behaviours separate.  Rows beyond the preamble have a
// (2*period)-periodic emptiness pattern, so a member gains isolated
// elements linearly while a non-member's count is bounded by the preamble.
struct MatchingTrend {
  std::size_t rows = 0;        // rows examined
  std::size_t horizon = 0;     // stages replayed
  std::size_t threshold = 0;   // separation bound
  std::size_t isolated = 0;    // isolated a-elements among those rows
  bool unmatched_infinite = false;
};
MatchingTrend analyze_matching_trend(const UPPoint& p);

// ---- order presentations -----------------------------------------------

Vocabulary order_vocabulary();  // lt/2, S/2

// presentation of the order made of a dense block of adjacent pairs, one
// middle element, and a dense block of single elements; S holds exactly on
// the committed pairs
std::shared_ptr<StagePlan> linorder_plan();
// plain dense order without endpoints, S empty
std::shared_ptr<StagePlan> dense_plan();

// the sentence pinning the pairs-middle-singles shape; classifies E(3)
Formula sentence_star();

// ---- marker extension --------------------------------------------------

// extended signature: sort tag O/1, then per original symbol X a positive
// species pX/1, a negative species nX/1, and a witness link wX/(arity+1)
Vocabulary marker_vocabulary(const Vocabulary& v);

// relativize quantifiers to O and replace literals by species witnesses;
// shifts E(n) axioms to E(n+1) for n >= 2
Formula lift_axiom(const Formula& axiom, const Vocabulary& v);

std::shared_ptr<StructureStream> marker_extend(
    std::shared_ptr<StructureStream> st);

// stagewise readback: structures converge to the source stages once the
// relevant witness gadgets have appeared
class MarkerRecovery {
 public:
  MarkerRecovery(std::shared_ptr<StructureStream> extended,
                 Vocabulary original);

  // view after consuming `stage` input ranks' worth of extended elements
  FiniteStructure stage_view(std::size_t stage);

 private:
  std::shared_ptr<StructureStream> extended_;
  Vocabulary original_;
};

// ---- joins, sections, graphs -------------------------------------------

// disjoint union with a side tag U/1: element 2i is the U-side image of
// a's element i, element 2i+1 the other side's
std::shared_ptr<StructureStream> diff_join(std::shared_ptr<StructureStream> a,
                                           std::shared_ptr<StructureStream> b);

inline constexpr std::size_t kSectionCount = 4;

// embeds st with every element tagged by section flag k; other flags empty
std::shared_ptr<StructureStream> section_structure(
    std::size_t k, std::shared_ptr<StructureStream> st);

inline constexpr std::size_t kGraphArityBound = 4;

// one symmetric edge relation: elements become triangle-tagged vertices,
// each held fact a gadget vertex on a symbol-coded cycle with
// position-coded paths to its arguments
std::shared_ptr<StructureStream> to_graph(std::shared_ptr<StructureStream> st);

// parses the gadget format back into the original diagram, stagewise
std::shared_ptr<StructureStream> decode_graph(
    std::shared_ptr<StructureStream> graph, const Vocabulary& original);

// ---- certificates ------------------------------------------------------

struct ReductionCertificate {
  std::string name;
  Transducer transducer;
  BorelCode source;
  std::string target_name;
  // oracle verdict for the structure the transducer builds from p
  std::function<bool(const UPPoint&)> target_on_output;
};

ReductionCertificate infcoinf_certificate();  // pad then infcoinf, vs Pi2
ReductionCertificate matching_certificate();  // matching vs Pi3

struct CertificateCheck {
  std::size_t points = 0;
  std::vector<UPPoint> mismatches;
  bool clean() const { return mismatches.empty(); }
};
CertificateCheck check_certificate(const ReductionCertificate& cert,
                                   const std::vector<UPPoint>& battery);

std::vector<std::string> reduction_names();

}  // namespace modelborel
