// Finite-depth evaluator: observes closed terms of observable types at a
// fixed depth, serving as a semantic oracle independent of conversion.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gdtt/typecheck.hpp"

namespace gdtt {

struct Observation {
  enum class Tag { Star, BoolV, NatV, PairV, LaterV };
  Tag tag{Tag::Star};
  bool b{false};
  std::uint64_t n{0};
  std::vector<Observation> kids;  // PairV: 2, LaterV: 1

  bool operator==(const Observation&) const = default;

  static Observation star() { return Observation{}; }
  static Observation boolean(bool v) {
    Observation o;
    o.tag = Tag::BoolV;
    o.b = v;
    return o;
  }
  static Observation numeral(std::uint64_t v) {
    Observation o;
    o.tag = Tag::NatV;
    o.n = v;
    return o;
  }
  static Observation pairv(Observation a, Observation b) {
    Observation o;
    o.tag = Tag::PairV;
    o.kids = {std::move(a), std::move(b)};
    return o;
  }
  static Observation laterv(Observation a) {
    Observation o;
    o.tag = Tag::LaterV;
    o.kids = {std::move(a)};
    return o;
  }
};

struct NotObservable : std::exception {
  std::string message;
  explicit NotObservable(std::string m) : message(std::move(m)) {}
  const char* what() const noexcept override { return message.c_str(); }
};

// Observe `t : A` at depth n >= 1.
Observation eval_at_depth(Kernel& k, const ClockSet& D, const ExprPtr& t,
                          const ExprPtr& A, int n);

// Restrict an observation to a shallower depth.
Observation truncate_observation(const Observation& o, int m);

// Do t and u agree as observations at every depth 1..max_depth?
bool prefix_agree(Kernel& k, const ClockSet& D, const ExprPtr& t,
                  const ExprPtr& u, const ExprPtr& A, int max_depth);

// "(1 , (1 , *))" tuple form; stream-shaped observations print as "[1,1,1]".
std::string print_observation(const Observation& o);

}  // namespace gdtt
