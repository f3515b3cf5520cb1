// Copyright 2026 The MutaLM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Big-step MiniJ interpreter used as the test oracle.

#include <deque>
#include <limits>
#include <set>
#include <utility>

#include "mutalm/errors.h"
#include "mutalm/harness.h"
#include "mutalm/lang/validator.h"

namespace mutalm::harness {

using lang::ClassDecl;
using lang::Expr;
using lang::ExprKind;
using lang::Method;
using lang::Stmt;
using lang::StmtKind;
using lang::TypeRef;
using nlohmann::json;

const char* ErrorKindName(RuntimeErrorKind kind) {
  switch (kind) {
    case RuntimeErrorKind::kDivisionByZero: return "division-by-zero";
    case RuntimeErrorKind::kNullDereference: return "null-dereference";
    case RuntimeErrorKind::kArrayIndexOutOfBounds: return "array-index-out-of-bounds";
    case RuntimeErrorKind::kOverflow: return "overflow";
    case RuntimeErrorKind::kStackOverflow: return "stack-overflow";
  }
  return "?";
}

std::optional<RuntimeErrorKind> ParseErrorKind(const std::string& name) {
  for (auto k : {RuntimeErrorKind::kDivisionByZero, RuntimeErrorKind::kNullDereference,
                 RuntimeErrorKind::kArrayIndexOutOfBounds, RuntimeErrorKind::kOverflow,
                 RuntimeErrorKind::kStackOverflow}) {
    if (name == ErrorKindName(k)) return k;
  }
  return std::nullopt;
}

const char* VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPass: return "pass";
    case Verdict::kFailValue: return "fail-value";
    case Verdict::kRuntimeError: return "runtime-error";
    case Verdict::kTimeout: return "timeout";
  }
  return "?";
}

bool TestOutcome::SameAs(const TestOutcome& other) const {
  return verdict == other.verdict && value == other.value && error == other.error;
}

namespace {

struct Value {
  enum class Tag { kNull, kInt, kBool, kString, kRef };
  Tag tag = Tag::kNull;
  std::int64_t i = 0;
  bool b = false;
  std::string s;
  std::size_t ref = 0;

  static Value Int(std::int64_t v) { Value x; x.tag = Tag::kInt; x.i = v; return x; }
  static Value Bool(bool v) { Value x; x.tag = Tag::kBool; x.b = v; return x; }
  static Value Str(std::string v) { Value x; x.tag = Tag::kString; x.s = std::move(v); return x; }
  static Value Ref(std::size_t r) { Value x; x.tag = Tag::kRef; x.ref = r; return x; }
};

struct HeapObject {
  const ClassDecl* cls = nullptr;  // nullptr for arrays
  std::vector<Value> slots;
};

struct Trap {
  RuntimeErrorKind kind;
};
struct OutOfFuel {};

Value DefaultValue(const TypeRef& t) {
  if (t.IsInt()) return Value::Int(0);
  if (t.IsBoolean()) return Value::Bool(false);
  return Value{};
}

std::size_t FieldIndex(const ClassDecl& cls, const std::string& name) {
  for (std::size_t i = 0; i < cls.fields.size(); ++i) {
    if (cls.fields[i].name == name) return i;
  }
  return cls.fields.size();
}

class Interpreter {
 public:
  Interpreter(const lang::SourceUnit& unit, std::uint64_t fuel) : unit_(unit), fuel_(fuel) {}

  TestOutcome Run(const TestCase& test) {
    const auto dot = test.entry.find('.');
    const ClassDecl* cls =
        dot == std::string::npos ? nullptr : unit_.FindClass(test.entry.substr(0, dot));
    const Method* method = cls ? cls->FindMethod(test.entry.substr(dot + 1)) : nullptr;
    if (method == nullptr) {
      throw SuiteInvalid("test " + test.name + ": entry " + test.entry + " not found");
    }
    if (method->params.size() != test.args.size()) {
      throw SuiteInvalid("test " + test.name + ": " + test.entry + " takes " +
                         std::to_string(method->params.size()) + " arguments");
    }
    const std::size_t self = Allocate(cls);
    if (test.receiver) {
      if (!test.receiver->is_object()) {
        throw SuiteInvalid("test " + test.name + ": receiver must be an object");
      }
      FillObject(self, *test.receiver, test.name);
    }
    std::vector<Value> args;
    for (std::size_t i = 0; i < test.args.size(); ++i) {
      args.push_back(Decode(test.args[i], method->params[i].type, test.name));
    }
    TestOutcome out;
    try {
      const Value result = Invoke(*cls, *method, self, std::move(args));
      out.value = Snapshot(result);
      const bool ok = test.expect.value && *test.expect.value == *out.value;
      out.verdict = ok ? Verdict::kPass : Verdict::kFailValue;
    } catch (const Trap& trap) {
      out.error = trap.kind;
      out.verdict = test.expect.error == trap.kind ? Verdict::kPass : Verdict::kRuntimeError;
    } catch (const OutOfFuel&) {
      out.verdict = Verdict::kTimeout;
    }
    return out;
  }

 private:
  struct Frame {
    const ClassDecl* cls;
    std::size_t self;
    std::vector<std::vector<std::pair<std::string, Value>>> scopes;
  };

  enum class Flow { kNormal, kReturn };

  // Argument decoding ------------------------------------------------------

  std::size_t Allocate(const ClassDecl* cls) {
    HeapObject obj;
    obj.cls = cls;
    for (const auto& f : cls->fields) obj.slots.push_back(DefaultValue(f.type));
    heap_.push_back(std::move(obj));
    return heap_.size() - 1;
  }

  void FillObject(std::size_t ref, const json& fields, const std::string& test) {
    const ClassDecl* cls = heap_[ref].cls;
    for (const auto& [key, val] : fields.items()) {
      const std::size_t idx = FieldIndex(*cls, key);
      if (idx == cls->fields.size()) {
        throw SuiteInvalid("test " + test + ": " + cls->name + " has no field " + key);
      }
      Value v = Decode(val, cls->fields[idx].type, test);
      heap_[ref].slots[idx] = std::move(v);
    }
  }

  Value Decode(const json& j, const TypeRef& t, const std::string& test) {
    auto bad = [&]() {
      return SuiteInvalid("test " + test + ": value " + j.dump() + " does not fit type " +
                          t.ToString());
    };
    if (t.IsInt()) {
      if (j.is_number_integer()) {
        if (j.is_number_unsigned() &&
            j.get<std::uint64_t>() > static_cast<std::uint64_t>(
                                         std::numeric_limits<std::int64_t>::max())) {
          throw bad();
        }
        return Value::Int(j.get<std::int64_t>());
      }
      throw bad();
    }
    if (t.IsBoolean()) {
      if (j.is_boolean()) return Value::Bool(j.get<bool>());
      throw bad();
    }
    if (j.is_null()) return Value{};
    if (t.IsString()) {
      if (j.is_string()) return Value::Str(j.get<std::string>());
      throw bad();
    }
    if (t.IsArray()) {
      if (!j.is_array()) throw bad();
      HeapObject arr;
      for (const auto& e : j) arr.slots.push_back(Decode(e, t.Element(), test));
      heap_.push_back(std::move(arr));
      return Value::Ref(heap_.size() - 1);
    }
    const ClassDecl* cls = unit_.FindClass(t.base);
    if (cls == nullptr || !j.is_object()) throw bad();
    const std::size_t ref = Allocate(cls);
    FillObject(ref, j, test);
    return Value::Ref(ref);
  }

  json Snapshot(const Value& v) {
    std::set<std::size_t> active;
    return Snapshot(v, active);
  }

  json Snapshot(const Value& v, std::set<std::size_t>& active) {
    switch (v.tag) {
      case Value::Tag::kNull: return nullptr;
      case Value::Tag::kInt: return v.i;
      case Value::Tag::kBool: return v.b;
      case Value::Tag::kString: return v.s;
      case Value::Tag::kRef: break;
    }
    if (!active.insert(v.ref).second) return "<cycle>";
    const HeapObject& obj = heap_[v.ref];
    json out;
    if (obj.cls == nullptr) {
      out = json::array();
      for (const auto& e : obj.slots) out.push_back(Snapshot(e, active));
    } else {
      out = json::object();
      for (std::size_t i = 0; i < obj.slots.size(); ++i) {
        out[obj.cls->fields[i].name] = Snapshot(obj.slots[i], active);
      }
    }
    active.erase(v.ref);
    return out;
  }

  // Execution ---------------------------------------------------------------

  void Tick() {
    if (fuel_ == 0) throw OutOfFuel{};
    --fuel_;
  }

  Value Invoke(const ClassDecl& cls, const Method& method, std::size_t self,
               std::vector<Value> args) {
    if (static_cast<int>(frames_.size()) >= kMaxCallDepth) {
      throw Trap{RuntimeErrorKind::kStackOverflow};
    }
    Frame frame{&cls, self, {}};
    frame.scopes.emplace_back();
    for (std::size_t i = 0; i < args.size(); ++i) {
      frame.scopes.back().emplace_back(method.params[i].name, std::move(args[i]));
    }
    frames_.push_back(std::move(frame));
    Value result;
    ExecBlock(method.body, result);
    frames_.pop_back();
    return result;
  }

  Flow ExecBlock(const std::vector<Stmt>& block, Value& result) {
    frames_.back().scopes.emplace_back();
    Flow flow = Flow::kNormal;
    for (const auto& s : block) {
      flow = Exec(s, result);
      if (flow == Flow::kReturn) break;
    }
    frames_.back().scopes.pop_back();
    return flow;
  }

  Flow Exec(const Stmt& s, Value& result) {
    Tick();
    switch (s.kind) {
      case StmtKind::kVarDecl: {
        Value v = s.exprs.empty() ? DefaultValue(s.decl_type) : Eval(s.exprs[0]);
        frames_.back().scopes.back().emplace_back(s.name, std::move(v));
        return Flow::kNormal;
      }
      case StmtKind::kAssign:
        Assign(s);
        return Flow::kNormal;
      case StmtKind::kIf:
        if (Truth(s.exprs[0])) return ExecBlock(s.body, result);
        if (s.has_else) return ExecBlock(s.else_body, result);
        return Flow::kNormal;
      case StmtKind::kWhile:
        while (Truth(s.exprs[0])) {
          if (ExecBlock(s.body, result) == Flow::kReturn) return Flow::kReturn;
          Tick();
        }
        return Flow::kNormal;
      case StmtKind::kDoWhile:
        do {
          if (ExecBlock(s.body, result) == Flow::kReturn) return Flow::kReturn;
          Tick();
        } while (Truth(s.exprs[0]));
        return Flow::kNormal;
      case StmtKind::kReturn:
        result = s.exprs.empty() ? Value{} : Eval(s.exprs[0]);
        return Flow::kReturn;
      case StmtKind::kExprStmt:
        Eval(s.exprs[0]);
        return Flow::kNormal;
    }
    return Flow::kNormal;
  }

  bool Truth(const Expr& e) { return Eval(e).b; }

  // A resolved storage location.
  struct Place {
    Value* direct = nullptr;   // local variable
    std::size_t ref = 0;       // heap object or array
    std::size_t slot = 0;
  };

  Value& At(const Place& p) { return p.direct ? *p.direct : heap_[p.ref].slots[p.slot]; }

  Value* FindLocal(const std::string& name) {
    auto& scopes = frames_.back().scopes;
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      for (auto& [n, v] : *it) {
        if (n == name) return &v;
      }
    }
    return nullptr;
  }

  bool IsVariable(const std::string& name) {
    return FindLocal(name) != nullptr ||
           FieldIndex(*frames_.back().cls, name) < frames_.back().cls->fields.size();
  }

  std::size_t Deref(const Value& v) {
    if (v.tag != Value::Tag::kRef) throw Trap{RuntimeErrorKind::kNullDereference};
    return v.ref;
  }

  Place Locate(const Expr& e) {
    Tick();
    switch (e.kind) {
      case ExprKind::kName: {
        if (Value* local = FindLocal(e.text)) return Place{local, 0, 0};
        const Frame& f = frames_.back();
        return Place{nullptr, f.self, FieldIndex(*f.cls, e.text)};
      }
      case ExprKind::kField: {
        const std::size_t ref = Deref(Eval(e.children[0]));
        return Place{nullptr, ref, FieldIndex(*heap_[ref].cls, e.text)};
      }
      case ExprKind::kIndex: {
        const std::size_t ref = Deref(Eval(e.children[0]));
        const std::int64_t idx = Eval(e.children[1]).i;
        if (idx < 0 || static_cast<std::size_t>(idx) >= heap_[ref].slots.size()) {
          throw Trap{RuntimeErrorKind::kArrayIndexOutOfBounds};
        }
        return Place{nullptr, ref, static_cast<std::size_t>(idx)};
      }
      default:
        throw Error("expression is not assignable");
    }
  }

  void Assign(const Stmt& s) {
    const Place place = Locate(s.exprs[0]);
    if (s.op == "=") {
      Value v = Eval(s.exprs[1]);
      At(place) = std::move(v);
      return;
    }
    const Value current = At(place);
    const Value rhs = Eval(s.exprs[1]);
    const std::string op = s.op.substr(0, 1);
    At(place) = current.tag == Value::Tag::kString || (current.tag == Value::Tag::kNull && op == "+")
                    ? Value::Str(Stringify(current) + Stringify(rhs))
                    : Value::Int(Arith(op, current.i, rhs.i));
  }

  static std::int64_t Arith(const std::string& op, std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (op == "+") {
      if (__builtin_add_overflow(a, b, &r)) throw Trap{RuntimeErrorKind::kOverflow};
    } else if (op == "-") {
      if (__builtin_sub_overflow(a, b, &r)) throw Trap{RuntimeErrorKind::kOverflow};
    } else if (op == "*") {
      if (__builtin_mul_overflow(a, b, &r)) throw Trap{RuntimeErrorKind::kOverflow};
    } else if (op == "/" || op == "%") {
      if (b == 0) throw Trap{RuntimeErrorKind::kDivisionByZero};
      if (a == std::numeric_limits<std::int64_t>::min() && b == -1) {
        if (op == "%") return 0;
        throw Trap{RuntimeErrorKind::kOverflow};
      }
      r = op == "/" ? a / b : a % b;
    }
    return r;
  }

  std::string Stringify(const Value& v) {
    switch (v.tag) {
      case Value::Tag::kNull: return "null";
      case Value::Tag::kInt: return std::to_string(v.i);
      case Value::Tag::kBool: return v.b ? "true" : "false";
      case Value::Tag::kString: return v.s;
      case Value::Tag::kRef: {
        const HeapObject& obj = heap_[v.ref];
        return obj.cls ? "<" + obj.cls->name + ">" : "<array>";
      }
    }
    return "";
  }

  static bool Equal(const Value& a, const Value& b) {
    if (a.tag != b.tag) return false;
    switch (a.tag) {
      case Value::Tag::kNull: return true;
      case Value::Tag::kInt: return a.i == b.i;
      case Value::Tag::kBool: return a.b == b.b;
      case Value::Tag::kString: return a.s == b.s;
      case Value::Tag::kRef: return a.ref == b.ref;
    }
    return false;
  }

  Value Eval(const Expr& e) {
    Tick();
    switch (e.kind) {
      case ExprKind::kIntLit: return Value::Int(e.int_value);
      case ExprKind::kBoolLit: return Value::Bool(e.bool_value);
      case ExprKind::kStringLit: return Value::Str(e.text);
      case ExprKind::kNullLit: return Value{};
      case ExprKind::kName: {
        if (Value* local = FindLocal(e.text)) return *local;
        const Frame& f = frames_.back();
        return heap_[f.self].slots[FieldIndex(*f.cls, e.text)];
      }
      case ExprKind::kUnary: return EvalUnary(e);
      case ExprKind::kBinary: return EvalBinary(e);
      case ExprKind::kField: {
        const Expr& obj = e.children[0];
        if (obj.kind == ExprKind::kName && !IsVariable(obj.text) &&
            lang::IsBuiltinClass(obj.text)) {
          return Value::Int(e.text == "MAX_VALUE" ? std::numeric_limits<std::int64_t>::max()
                                                  : std::numeric_limits<std::int64_t>::min());
        }
        const std::size_t ref = Deref(Eval(obj));
        const HeapObject& h = heap_[ref];
        if (h.cls == nullptr) return Value::Int(static_cast<std::int64_t>(h.slots.size()));
        return h.slots[FieldIndex(*h.cls, e.text)];
      }
      case ExprKind::kCall: return EvalCall(e);
      case ExprKind::kIndex: {
        const Place p = Locate(e);
        return At(p);
      }
      case ExprKind::kMask:
        throw Error("mask placeholder reached the interpreter");
    }
    return Value{};
  }

  Value EvalUnary(const Expr& e) {
    if (e.text == "!") return Value::Bool(!Eval(e.children[0]).b);
    if (e.text == "-") {
      const std::int64_t v = Eval(e.children[0]).i;
      if (v == std::numeric_limits<std::int64_t>::min()) throw Trap{RuntimeErrorKind::kOverflow};
      return Value::Int(-v);
    }
    const Place p = Locate(e.children[0]);
    Value& slot = At(p);
    slot = Value::Int(Arith(e.text == "++" ? "+" : "-", slot.i, 1));
    return slot;
  }

  Value EvalBinary(const Expr& e) {
    const std::string& op = e.text;
    if (op == "&&") {
      if (!Eval(e.children[0]).b) return Value::Bool(false);
      return Value::Bool(Eval(e.children[1]).b);
    }
    if (op == "||") {
      if (Eval(e.children[0]).b) return Value::Bool(true);
      return Value::Bool(Eval(e.children[1]).b);
    }
    const Value a = Eval(e.children[0]);
    const Value b = Eval(e.children[1]);
    if (op == "==") return Value::Bool(Equal(a, b));
    if (op == "!=") return Value::Bool(!Equal(a, b));
    if (op == "+" && (a.tag != Value::Tag::kInt || b.tag != Value::Tag::kInt)) {
      return Value::Str(Stringify(a) + Stringify(b));
    }
    if (op == "<") return Value::Bool(a.i < b.i);
    if (op == "<=") return Value::Bool(a.i <= b.i);
    if (op == ">") return Value::Bool(a.i > b.i);
    if (op == ">=") return Value::Bool(a.i >= b.i);
    return Value::Int(Arith(op, a.i, b.i));
  }

  std::vector<Value> EvalArgs(const Expr& call) {
    std::vector<Value> args;
    for (std::size_t i = call.FirstArg(); i < call.children.size(); ++i) {
      args.push_back(Eval(call.children[i]));
    }
    return args;
  }

  Value EvalCall(const Expr& e) {
    if (!e.has_receiver) {
      const Frame& f = frames_.back();
      const ClassDecl& cls = *f.cls;
      const std::size_t self = f.self;
      return Invoke(cls, *cls.FindMethod(e.text), self, EvalArgs(e));
    }
    const Expr& recv = e.children[0];
    if (recv.kind == ExprKind::kName && !IsVariable(recv.text) &&
        lang::IsBuiltinClass(recv.text)) {
      return CallMath(e.text, EvalArgs(e));
    }
    const Value target = Eval(recv);
    std::vector<Value> args = EvalArgs(e);
    if (target.tag == Value::Tag::kString) {
      if (e.text == "length") return Value::Int(static_cast<std::int64_t>(target.s.size()));
      return Value::Bool(args[0].tag == Value::Tag::kString && args[0].s == target.s);
    }
    const std::size_t ref = Deref(target);
    const ClassDecl& cls = *heap_[ref].cls;
    return Invoke(cls, *cls.FindMethod(e.text), ref, std::move(args));
  }

  Value CallMath(const std::string& name, const std::vector<Value>& args) {
    if (name == "abs") {
      if (args[0].i == std::numeric_limits<std::int64_t>::min()) {
        throw Trap{RuntimeErrorKind::kOverflow};
      }
      return Value::Int(args[0].i < 0 ? -args[0].i : args[0].i);
    }
    if (name == "max") return Value::Int(std::max(args[0].i, args[1].i));
    if (name == "min") return Value::Int(std::min(args[0].i, args[1].i));
    // random: fixed LCG stream restarted for every test.
    random_state_ = random_state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return Value::Int(static_cast<std::int64_t>((random_state_ >> 33) & 0x7fffffff));
  }

  const lang::SourceUnit& unit_;
  std::uint64_t fuel_;
  std::uint64_t random_state_ = 0x2545f4914f6cdd1dULL;
  std::vector<HeapObject> heap_;
  std::deque<Frame> frames_;  // stable addresses while calls nest
};

}  // namespace

TestOutcome RunTest(const lang::SourceUnit& program, const TestCase& test,
                    std::uint64_t fuel) {
  Interpreter interp(program, fuel);
  return interp.Run(test);
}

}  // namespace mutalm::harness
