#include "usynth/osm.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "usynth/error.hpp"

namespace usynth {

namespace {

// Minimal XML pull scanner for the element/attribute subset OSM exports use.
// Tracks line/column for error reporting; text content is skipped.
class XmlScanner {
 public:
  struct Attribute {
    std::string name;
    std::string value;
  };
  struct Element {
    std::string name;
    std::vector<Attribute> attributes;
    bool selfClosing = false;
    bool closing = false;  // </name>
  };

  explicit XmlScanner(const std::string& text) : text_(text) {}

  // Returns false at end of input.
  bool Next(Element& out)
  {
    for (;;) {
      SkipUntil('<');
      if (AtEnd()) return false;
      const int line = line_, col = col_;
      Advance();  // consume '<'
      if (Peek() == '?') {
        SkipPastSequence("?>", "unterminated XML declaration", line);
        continue;
      }
      if (Peek() == '!') {
        if (text_.compare(pos_, 3, "!--") == 0) {
          SkipPastSequence("-->", "unterminated comment", line);
        } else {
          SkipPastSequence(">", "unterminated markup declaration", line);
        }
        continue;
      }
      out = Element{};
      if (Peek() == '/') {
        Advance();
        out.closing = true;
      }
      out.name = ReadName(line, col);
      ReadAttributes(out, line);
      return true;
    }
  }

  int Line() const { return line_; }

 private:
  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek() const { return AtEnd() ? '\0' : text_[pos_]; }
  void Advance()
  {
    if (AtEnd()) return;
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void SkipUntil(char c)
  {
    while (!AtEnd() && text_[pos_] != c) Advance();
  }
  void SkipPastSequence(const char* seq, const char* errMsg, int startLine)
  {
    const std::size_t found = text_.find(seq, pos_);
    if (found == std::string::npos) throw ParseError(errMsg, startLine);
    while (pos_ < found) Advance();
    for (const char* p = seq; *p; ++p) Advance();
  }
  void SkipWhitespace()
  {
    while (!AtEnd() && (Peek() == ' ' || Peek() == '\t' || Peek() == '\n' || Peek() == '\r'))
      Advance();
  }
  static bool IsNameChar(char c)
  {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == ':' || c == '.';
  }
  std::string ReadName(int line, int col)
  {
    std::string name;
    while (!AtEnd() && IsNameChar(Peek())) {
      name.push_back(Peek());
      Advance();
    }
    if (name.empty()) throw ParseError("expected element name after '<'", line, col);
    return name;
  }
  void ReadAttributes(Element& out, int startLine)
  {
    for (;;) {
      SkipWhitespace();
      if (AtEnd()) throw ParseError("unterminated element '" + out.name + "'", startLine);
      if (Peek() == '>') {
        Advance();
        return;
      }
      if (Peek() == '/') {
        Advance();
        if (Peek() != '>') throw ParseError("expected '>' after '/'", line_, col_);
        Advance();
        out.selfClosing = true;
        return;
      }
      Attribute attr;
      const int line = line_, col = col_;
      while (!AtEnd() && IsNameChar(Peek())) {
        attr.name.push_back(Peek());
        Advance();
      }
      if (attr.name.empty()) throw ParseError("expected attribute name", line, col);
      SkipWhitespace();
      if (Peek() != '=') throw ParseError("expected '=' after attribute name", line_, col_);
      Advance();
      SkipWhitespace();
      const char quote = Peek();
      if (quote != '"' && quote != '\'')
        throw ParseError("expected quoted attribute value", line_, col_);
      Advance();
      while (!AtEnd() && Peek() != quote) {
        if (Peek() == '&') {
          attr.value += ReadEntity();
        } else {
          attr.value.push_back(Peek());
          Advance();
        }
      }
      if (AtEnd()) throw ParseError("unterminated attribute value", line, col);
      Advance();  // closing quote
      out.attributes.push_back(std::move(attr));
    }
  }
  std::string ReadEntity()
  {
    const int line = line_, col = col_;
    Advance();  // '&'
    std::string name;
    while (!AtEnd() && Peek() != ';' && name.size() < 8) {
      name.push_back(Peek());
      Advance();
    }
    if (Peek() != ';') throw ParseError("unterminated entity reference", line, col);
    Advance();
    if (name == "amp") return "&";
    if (name == "lt") return "<";
    if (name == "gt") return ">";
    if (name == "quot") return "\"";
    if (name == "apos") return "'";
    if (!name.empty() && name[0] == '#') {
      const int base = name.size() > 1 && (name[1] == 'x' || name[1] == 'X') ? 16 : 10;
      const char* first = name.c_str() + (base == 16 ? 2 : 1);
      unsigned code = 0;
      const auto res = std::from_chars(first, name.c_str() + name.size(), code, base);
      if (res.ec == std::errc() && code > 0 && code < 128) return std::string(1, char(code));
    }
    throw ParseError("unknown entity '&" + name + ";'", line, col);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const std::string* FindAttr(const XmlScanner::Element& el, const char* name)
{
  for (const auto& a : el.attributes) {
    if (a.name == name) return &a.value;
  }
  return nullptr;
}

double RequireDouble(const XmlScanner::Element& el, const char* name, int line)
{
  const std::string* s = FindAttr(el, name);
  if (!s) throw ParseError("<" + el.name + "> missing attribute '" + name + "'", line);
  try {
    std::size_t used = 0;
    const double v = std::stod(*s, &used);
    if (used != s->size()) throw std::invalid_argument(*s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("attribute '" + std::string(name) + "' is not a number: " + *s, line);
  }
}

std::int64_t RequireId(const XmlScanner::Element& el, const char* name, int line)
{
  const std::string* s = FindAttr(el, name);
  if (!s) throw ParseError("<" + el.name + "> missing attribute '" + name + "'", line);
  std::int64_t v = 0;
  const auto res = std::from_chars(s->c_str(), s->c_str() + s->size(), v);
  if (res.ec != std::errc() || res.ptr != s->c_str() + s->size())
    throw ParseError("attribute '" + std::string(name) + "' is not an integer: " + *s, line);
  return v;
}

std::string XmlEscape(const std::string& s)
{
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string FormatCoord(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.7f", v);
  return buf;
}

}  // namespace

MapData ParseOsm(const std::string& xmlText)
{
  MapData map;
  bool haveBoundsElement = false;
  bool sawOsmRoot = false;

  XmlScanner scanner(xmlText);
  XmlScanner::Element el;

  // Current open container, if any.
  enum class Container { kNone, kNode, kWay, kOther };
  Container container = Container::kNone;
  std::int64_t currentNodeId = 0;
  OsmWay currentWay;
  int otherDepth = 0;

  while (scanner.Next(el)) {
    const int line = scanner.Line();
    if (el.closing) {
      if (el.name == "node" && container == Container::kNode) {
        container = Container::kNone;
      } else if (el.name == "way" && container == Container::kWay) {
        map.ways.push_back(std::move(currentWay));
        currentWay = OsmWay{};
        container = Container::kNone;
      } else if (container == Container::kOther && --otherDepth == 0) {
        container = Container::kNone;
      }
      continue;
    }
    if (el.name == "osm") {
      sawOsmRoot = true;
      continue;
    }
    if (el.name == "bounds") {
      map.bounds.minLat = RequireDouble(el, "minlat", line);
      map.bounds.minLon = RequireDouble(el, "minlon", line);
      map.bounds.maxLat = RequireDouble(el, "maxlat", line);
      map.bounds.maxLon = RequireDouble(el, "maxlon", line);
      haveBoundsElement = true;
      continue;
    }
    if (el.name == "node" && container == Container::kNone) {
      currentNodeId = RequireId(el, "id", line);
      OsmNode node;
      node.position.lat = RequireDouble(el, "lat", line);
      node.position.lon = RequireDouble(el, "lon", line);
      map.nodes[currentNodeId] = std::move(node);
      if (!el.selfClosing) container = Container::kNode;
      continue;
    }
    if (el.name == "way" && container == Container::kNone) {
      currentWay = OsmWay{};
      currentWay.id = RequireId(el, "id", line);
      if (el.selfClosing) {
        map.ways.push_back(std::move(currentWay));
        currentWay = OsmWay{};
      } else {
        container = Container::kWay;
      }
      continue;
    }
    if (el.name == "nd" && container == Container::kWay) {
      currentWay.nodeRefs.push_back(RequireId(el, "ref", line));
      continue;
    }
    if (el.name == "tag") {
      const std::string* k = FindAttr(el, "k");
      const std::string* v = FindAttr(el, "v");
      if (!k || !v) throw ParseError("<tag> requires both k and v attributes", line);
      if (container == Container::kWay) {
        currentWay.tags[*k] = *v;
      } else if (container == Container::kNode) {
        map.nodes[currentNodeId].tags[*k] = *v;
      }
      continue;
    }
    // Anything else (relations, metadata) is skipped, tracking nesting so
    // nested <tag> elements do not leak into nodes or ways.
    if (!el.selfClosing) {
      if (container == Container::kNone) {
        container = Container::kOther;
        otherDepth = 1;
      } else if (container == Container::kOther) {
        ++otherDepth;
      }
    }
  }

  if (!sawOsmRoot) throw ParseError("document has no <osm> root element", 1);

  // Referential integrity: every way ref must resolve.
  for (const OsmWay& way : map.ways) {
    if (way.nodeRefs.size() < 2)
      throw ValidationError("way " + std::to_string(way.id) + " has fewer than 2 node refs");
    for (const std::int64_t ref : way.nodeRefs) {
      if (!map.nodes.contains(ref))
        throw ValidationError("way " + std::to_string(way.id) + " references missing node " +
                              std::to_string(ref));
    }
  }

  if (!haveBoundsElement && !map.nodes.empty()) {
    auto it = map.nodes.begin();
    map.bounds = {it->second.position.lat, it->second.position.lon, it->second.position.lat,
                  it->second.position.lon};
    for (const auto& [id, node] : map.nodes) {
      map.bounds.minLat = std::min(map.bounds.minLat, node.position.lat);
      map.bounds.minLon = std::min(map.bounds.minLon, node.position.lon);
      map.bounds.maxLat = std::max(map.bounds.maxLat, node.position.lat);
      map.bounds.maxLon = std::max(map.bounds.maxLon, node.position.lon);
    }
  }
  return map;
}

MapData ParseOsmFile(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open OSM file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseOsm(buf.str());
}

std::string SerializeOsm(const MapData& map)
{
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<osm version=\"0.6\" generator=\"urbansynth\">\n";
  out << "  <bounds minlat=\"" << FormatCoord(map.bounds.minLat) << "\" minlon=\""
      << FormatCoord(map.bounds.minLon) << "\" maxlat=\"" << FormatCoord(map.bounds.maxLat)
      << "\" maxlon=\"" << FormatCoord(map.bounds.maxLon) << "\"/>\n";
  for (const auto& [id, node] : map.nodes) {
    out << "  <node id=\"" << id << "\" lat=\"" << FormatCoord(node.position.lat) << "\" lon=\""
        << FormatCoord(node.position.lon) << "\"";
    if (node.tags.empty()) {
      out << "/>\n";
    } else {
      out << ">\n";
      for (const auto& [k, v] : node.tags)
        out << "    <tag k=\"" << XmlEscape(k) << "\" v=\"" << XmlEscape(v) << "\"/>\n";
      out << "  </node>\n";
    }
  }
  for (const OsmWay& way : map.ways) {
    out << "  <way id=\"" << way.id << "\">\n";
    for (const std::int64_t ref : way.nodeRefs) out << "    <nd ref=\"" << ref << "\"/>\n";
    for (const auto& [k, v] : way.tags)
      out << "    <tag k=\"" << XmlEscape(k) << "\" v=\"" << XmlEscape(v) << "\"/>\n";
    out << "  </way>\n";
  }
  out << "</osm>\n";
  return out.str();
}

}  // namespace usynth
