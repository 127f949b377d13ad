#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>

#include "lambdad/term.hpp"

// Defunctionalized interpreter with a continuation κ, a trail t and a meta
// continuation m. All structures are immutable and shared.
namespace lambdad::machine {

struct Frame;
struct TrailCell;
struct MetaCell;
struct EnvCell;
struct Value;

// A continuation is a stack of frames; nullptr is the initial continuation idk.
using Cont = std::shared_ptr<const Frame>;
// Trails are lists of continuations, composed left to right; nullptr is ().
using Trail = std::shared_ptr<const TrailCell>;
// Meta continuations are stacks of (κ, t) layers; nullptr is empty.
using MetaCont = std::shared_ptr<const MetaCell>;
using Env = std::shared_ptr<const EnvCell>;

struct Closure {
  std::string param;
  Term body;
  Env env;
};

// The continuation bound by a control operator. `delimited` for shift and
// shift0, whose application pushes the caller's (κ', t') onto the meta
// continuation; control and control0 append it to the captured trail.
struct CapturedCont {
  bool delimited;
  Cont k;
  Trail trail;
};

struct Value {
  std::variant<std::int64_t, bool, Closure, CapturedCont> v;
};

struct Frame {
  enum class Kind : std::uint8_t { AppFun, AppArg, AddL, AddR, Is0, If };
  Kind kind;
  std::shared_ptr<const TermNode> a;  // pending term (AppFun: argument, AddL: rhs, If: then)
  std::shared_ptr<const TermNode> b;  // If: else
  Env env;
  Value value;  // AppArg: function, AddR: left operand
  Cont next;
};

struct TrailCell {
  Cont k;
  Trail rest;
};

struct MetaCell {
  Cont k;
  Trail trail;
  MetaCont rest;
};

struct EnvCell {
  std::string name;
  Value value;
  Env rest;
};

// () @ t = t and (k1..kn) @ t = k1..kn t.
Trail append(const Trail& t1, const Trail& t2);
// k :: t
Trail cons(const Cont& k, const Trail& t);
std::size_t length(const Trail& t);
std::size_t length(const MetaCont& m);

struct Options {
  std::size_t fuel = 1'000'000;
  // One call per step: construct, trail depth, meta depth.
  std::function<void(const std::string& construct, std::size_t trail, std::size_t meta)> trace;
};

struct Result {
  Value value;
  std::size_t steps;
};

// Runs `e` with idk, an empty trail and an empty meta continuation.
// Throws EvalError.
Result run(const Term& e, const Options& opts = {});

Result eval(const Term& e, const Env& env, const Cont& k, const Trail& t, const MetaCont& m,
            const Options& opts = {});
Result apply_cont(const Cont& k, const Value& v, const Trail& t, const MetaCont& m,
                  const Options& opts = {});

// Numerals and booleans print literally; closures and continuations as <fun>/<cont>.
std::string show(const Value& v);
bool is_first_order(const Value& v);

}  // namespace lambdad::machine
