#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "usynth/error.hpp"
#include "usynth/rules.hpp"

namespace usynth {

namespace {

constexpr double kWeightTolerance = 1e-9;

struct Token {
  enum class Kind { kIdent, kNumber, kArrow, kLParen, kRParen, kLBrace, kRBrace, kComma, kColon, kTilde, kEnd };
  Kind kind;
  std::string text;
  double number = 0.0;
  int column = 0;
};

class LineLexer {
 public:
  LineLexer(const std::string& line, int lineNo) : line_(line), lineNo_(lineNo) { Advance(); }

  const Token& Peek() const { return current_; }
  Token Take()
  {
    Token t = current_;
    Advance();
    return t;
  }
  Token Expect(Token::Kind kind, const char* what)
  {
    if (current_.kind != kind)
      throw ParseError(std::string("expected ") + what, lineNo_, current_.column);
    return Take();
  }
  int LineNo() const { return lineNo_; }

 private:
  void Advance()
  {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    current_ = Token{Token::Kind::kEnd, "", 0.0, static_cast<int>(pos_) + 1};
    if (pos_ >= line_.size() || line_[pos_] == '#') return;

    const char c = line_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < line_.size() &&
             (std::isalnum(static_cast<unsigned char>(line_[end])) || line_[end] == '_'))
        ++end;
      current_ = {Token::Kind::kIdent, line_.substr(pos_, end - pos_), 0.0,
                  static_cast<int>(pos_) + 1};
      pos_ = end;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
        (c == '-' && pos_ + 1 < line_.size() &&
         (std::isdigit(static_cast<unsigned char>(line_[pos_ + 1])) || line_[pos_ + 1] == '.'))) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(line_.substr(pos_), &used);
      } catch (const std::exception&) {
        throw ParseError("malformed number", lineNo_, static_cast<int>(pos_) + 1);
      }
      current_ = {Token::Kind::kNumber, line_.substr(pos_, used), v, static_cast<int>(pos_) + 1};
      pos_ += used;
      return;
    }
    if (line_.compare(pos_, 3, "-->") == 0) {
      current_ = {Token::Kind::kArrow, "-->", 0.0, static_cast<int>(pos_) + 1};
      pos_ += 3;
      return;
    }
    const auto single = [&](Token::Kind k) {
      current_ = {k, std::string(1, c), 0.0, static_cast<int>(pos_) + 1};
      ++pos_;
    };
    switch (c) {
      case '(': single(Token::Kind::kLParen); return;
      case ')': single(Token::Kind::kRParen); return;
      case '{': single(Token::Kind::kLBrace); return;
      case '}': single(Token::Kind::kRBrace); return;
      case ',': single(Token::Kind::kComma); return;
      case ':': single(Token::Kind::kColon); return;
      case '~': single(Token::Kind::kTilde); return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", lineNo_,
                         static_cast<int>(pos_) + 1);
    }
  }

  const std::string& line_;
  int lineNo_;
  std::size_t pos_ = 0;
  Token current_;
};

Axis ParseAxis(const Token& t, int line)
{
  if (t.text == "x") return Axis::kX;
  if (t.text == "y") return Axis::kY;
  if (t.text == "z") return Axis::kZ;
  throw ParseError("unknown axis '" + t.text + "' (expected x, y, or z)", line, t.column);
}

PrimitiveKind ParsePrimitive(const Token& t, int line)
{
  if (t.text == "box") return PrimitiveKind::kBox;
  if (t.text == "cylinder") return PrimitiveKind::kCylinder;
  if (t.text == "cone") return PrimitiveKind::kCone;
  if (t.text == "quad") return PrimitiveKind::kQuad;
  throw ParseError("unknown primitive '" + t.text + "'", line, t.column);
}

class RuleParser {
 public:
  explicit RuleParser(LineLexer& lex) : lex_(lex) {}

  std::vector<ShapeOp> ParseOps(bool stopAtBraceOrComma)
  {
    std::vector<ShapeOp> ops;
    for (;;) {
      const Token& t = lex_.Peek();
      if (t.kind == Token::Kind::kEnd) break;
      if (stopAtBraceOrComma &&
          (t.kind == Token::Kind::kRBrace || t.kind == Token::Kind::kComma))
        break;
      ops.push_back(ParseOp());
    }
    if (ops.empty())
      throw ParseError("expected at least one operation", lex_.LineNo(), lex_.Peek().column);
    return ops;
  }

 private:
  ShapeOp ParseOp()
  {
    const Token name = lex_.Expect(Token::Kind::kIdent, "operation or symbol name");
    const int line = lex_.LineNo();
    ShapeOp op;
    if (name.text == "extrude") {
      op.kind = ShapeOp::Kind::kExtrude;
      lex_.Expect(Token::Kind::kLParen, "'('");
      const Token h = lex_.Expect(Token::Kind::kNumber, "height");
      if (h.number <= 0.0) throw ParseError("extrude height must be > 0", line, h.column);
      op.extrudeHeight = h.number;
      lex_.Expect(Token::Kind::kRParen, "')'");
    } else if (name.text == "split") {
      op.kind = ShapeOp::Kind::kSplit;
      lex_.Expect(Token::Kind::kLParen, "'('");
      op.axis = ParseAxis(lex_.Expect(Token::Kind::kIdent, "axis"), line);
      lex_.Expect(Token::Kind::kRParen, "')'");
      lex_.Expect(Token::Kind::kLBrace, "'{'");
      for (;;) {
        SplitPart part;
        if (lex_.Peek().kind == Token::Kind::kTilde) {
          lex_.Take();
          part.flexible = true;
        }
        const Token v = lex_.Expect(Token::Kind::kNumber, "split size");
        if (v.number <= 0.0) throw ParseError("split sizes must be > 0", line, v.column);
        part.value = v.number;
        lex_.Expect(Token::Kind::kColon, "':'");
        part.symbol = lex_.Expect(Token::Kind::kIdent, "symbol").text;
        op.parts.push_back(std::move(part));
        if (lex_.Peek().kind == Token::Kind::kComma) {
          lex_.Take();
          continue;
        }
        lex_.Expect(Token::Kind::kRBrace, "'}' or ','");
        break;
      }
    } else if (name.text == "repeat") {
      op.kind = ShapeOp::Kind::kRepeat;
      lex_.Expect(Token::Kind::kLParen, "'('");
      op.axis = ParseAxis(lex_.Expect(Token::Kind::kIdent, "axis"), line);
      lex_.Expect(Token::Kind::kComma, "','");
      const Token s = lex_.Expect(Token::Kind::kNumber, "piece size");
      if (s.number <= 0.0) throw ParseError("repeat size must be > 0", line, s.column);
      op.repeatSize = s.number;
      lex_.Expect(Token::Kind::kComma, "','");
      op.symbol = lex_.Expect(Token::Kind::kIdent, "symbol").text;
      lex_.Expect(Token::Kind::kRParen, "')'");
    } else if (name.text == "setback") {
      op.kind = ShapeOp::Kind::kSetback;
      lex_.Expect(Token::Kind::kLParen, "'('");
      const Token d = lex_.Expect(Token::Kind::kNumber, "distance");
      if (d.number < 0.0) throw ParseError("setback distance must be >= 0", line, d.column);
      op.setbackDistance = d.number;
      lex_.Expect(Token::Kind::kRParen, "')'");
      lex_.Expect(Token::Kind::kLBrace, "'{'");
      op.symbol = lex_.Expect(Token::Kind::kIdent, "symbol").text;
      lex_.Expect(Token::Kind::kRBrace, "'}'");
    } else if (name.text == "color") {
      op.kind = ShapeOp::Kind::kColor;
      lex_.Expect(Token::Kind::kLParen, "'('");
      double rgb[3];
      for (int i = 0; i < 3; ++i) {
        const Token v = lex_.Expect(Token::Kind::kNumber, "color component");
        if (v.number < 0.0 || v.number > 1.0)
          throw ParseError("color components must be in [0, 1]", line, v.column);
        rgb[i] = v.number;
        if (i < 2) lex_.Expect(Token::Kind::kComma, "','");
      }
      lex_.Expect(Token::Kind::kRParen, "')'");
      op.color = {rgb[0], rgb[1], rgb[2]};
    } else if (name.text == "class") {
      op.kind = ShapeOp::Kind::kClass;
      lex_.Expect(Token::Kind::kLParen, "'('");
      const Token cls = lex_.Expect(Token::Kind::kIdent, "class name");
      const auto id = ClassFromName(cls.text);
      if (!id) throw ParseError("unknown class '" + cls.text + "'", line, cls.column);
      op.classId = *id;
      lex_.Expect(Token::Kind::kRParen, "')'");
    } else if (name.text == "choose") {
      op.kind = ShapeOp::Kind::kChoose;
      lex_.Expect(Token::Kind::kLBrace, "'{'");
      double sum = 0.0;
      for (;;) {
        WeightedBranch branch;
        const Token w = lex_.Expect(Token::Kind::kNumber, "branch probability");
        if (w.number < 0.0) throw ParseError("branch probability must be >= 0", line, w.column);
        branch.weight = w.number;
        sum += w.number;
        lex_.Expect(Token::Kind::kColon, "':'");
        branch.ops = ParseOps(/*stopAtBraceOrComma=*/true);
        op.branches.push_back(std::move(branch));
        if (lex_.Peek().kind == Token::Kind::kComma) {
          lex_.Take();
          continue;
        }
        lex_.Expect(Token::Kind::kRBrace, "'}' or ','");
        break;
      }
      if (std::abs(sum - 1.0) > kWeightTolerance) {
        std::ostringstream msg;
        msg << "choose probabilities must sum to 1, got " << sum;
        throw ParseError(msg.str(), line, name.column);
      }
    } else if (name.text == "primitive") {
      op.kind = ShapeOp::Kind::kPrimitive;
      lex_.Expect(Token::Kind::kLParen, "'('");
      op.primitive = ParsePrimitive(lex_.Expect(Token::Kind::kIdent, "primitive kind"), line);
      lex_.Expect(Token::Kind::kRParen, "')'");
    } else if (name.text == "NIL") {
      op.kind = ShapeOp::Kind::kCall;
      op.symbol = "NIL";
    } else {
      // Bare identifier: invoke another rule on a copy of the current shape.
      op.kind = ShapeOp::Kind::kCall;
      op.symbol = name.text;
    }
    return op;
  }

  LineLexer& lex_;
};

void CollectReferences(const std::vector<ShapeOp>& ops, std::vector<std::string>& out)
{
  for (const ShapeOp& op : ops) {
    switch (op.kind) {
      case ShapeOp::Kind::kSplit:
        for (const SplitPart& p : op.parts) out.push_back(p.symbol);
        break;
      case ShapeOp::Kind::kRepeat:
      case ShapeOp::Kind::kSetback:
      case ShapeOp::Kind::kCall:
        out.push_back(op.symbol);
        break;
      case ShapeOp::Kind::kChoose:
        for (const WeightedBranch& b : op.branches) CollectReferences(b.ops, out);
        break;
      default:
        break;
    }
  }
}

}  // namespace

RuleProgram ParseRules(const std::string& source)
{
  RuleProgram program;

  std::istringstream stream(source);
  std::string line;
  int lineNo = 0;
  while (std::getline(stream, line)) {
    ++lineNo;
    LineLexer lex(line, lineNo);
    if (lex.Peek().kind == Token::Kind::kEnd) continue;  // blank or comment

    const Token lhs = lex.Expect(Token::Kind::kIdent, "rule name");
    if (lhs.text == "NIL") throw ParseError("NIL is reserved", lineNo, lhs.column);
    lex.Expect(Token::Kind::kArrow, "'-->'");

    Production prod;
    if (lex.Peek().kind == Token::Kind::kNumber) {
      // Lookahead for "weight :" prefix.
      const Token w = lex.Take();
      if (lex.Peek().kind == Token::Kind::kColon) {
        lex.Take();
        if (w.number < 0.0 || w.number > 1.0)
          throw ParseError("production weight must be in [0, 1]", lineNo, w.column);
        prod.weight = w.number;
      } else {
        throw ParseError("expected ':' after production weight", lineNo, w.column);
      }
    }
    RuleParser parser(lex);
    prod.ops = parser.ParseOps(/*stopAtBraceOrComma=*/false);

    if (!program.rules.contains(lhs.text)) program.ruleOrder.push_back(lhs.text);
    program.rules[lhs.text].push_back(std::move(prod));
  }

  if (program.ruleOrder.empty()) throw ParseError("missing axiom: no rules defined", lineNo == 0 ? 1 : lineNo);
  program.axiom = program.ruleOrder.front();

  // Weighted-production consistency per rule.
  for (const auto& name : program.ruleOrder) {
    const auto& prods = program.rules.at(name);
    const std::size_t weighted =
        static_cast<std::size_t>(std::count_if(prods.begin(), prods.end(),
                                               [](const Production& p) { return p.weight.has_value(); }));
    if (weighted == 0) {
      if (prods.size() > 1)
        throw ParseError("rule '" + name + "' has multiple productions without weights", 1);
      continue;
    }
    if (weighted != prods.size())
      throw ParseError("rule '" + name + "' mixes weighted and unweighted productions", 1);
    double sum = 0.0;
    for (const Production& p : prods) sum += *p.weight;
    if (std::abs(sum - 1.0) > kWeightTolerance) {
      std::ostringstream msg;
      msg << "production weights of rule '" << name << "' must sum to 1, got " << sum;
      throw ParseError(msg.str(), 1);
    }
  }

  // Undefined non-terminal check.
  std::vector<std::string> refs;
  for (const auto& [name, prods] : program.rules)
    for (const Production& p : prods) CollectReferences(p.ops, refs);
  for (const std::string& ref : refs) {
    if (ref == "NIL") continue;
    if (!program.rules.contains(ref))
      throw ParseError("undefined non-terminal '" + ref + "'", 1);
  }

  return program;
}

RuleProgram ParseRulesFile(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open rule file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseRules(buf.str());
}

}  // namespace usynth
